#include "potlab/stats.hpp"

#include <algorithm>
#include <cmath>

#include "potlab/errors.hpp"

namespace potlab {

void ExactSum::add(double x) {
  std::size_t i = 0;
  for (double y : partials_) {
    if (std::abs(x) < std::abs(y)) std::swap(x, y);
    const double hi = x + y;
    const double lo = y - (hi - x);
    if (lo != 0.0) partials_[i++] = lo;
    x = hi;
  }
  partials_.resize(i);
  partials_.push_back(x);
}

double ExactSum::value() const {
  if (partials_.empty()) return 0.0;
  // Round the partials to nearest, handling the half-way case as Python's fsum does.
  std::size_t n = partials_.size();
  double hi = partials_[--n];
  double lo = 0.0;
  while (n > 0) {
    const double x = hi;
    const double y = partials_[--n];
    hi = x + y;
    const double yr = hi - x;
    lo = y - yr;
    if (lo != 0.0) break;
  }
  if (n > 0 && ((lo < 0.0 && partials_[n - 1] < 0.0) || (lo > 0.0 && partials_[n - 1] > 0.0))) {
    const double y = lo * 2.0;
    const double x = hi + y;
    if (y == x - hi) hi = x;
  }
  return hi;
}

double exact_sum(std::span<const double> xs) {
  ExactSum s;
  for (double x : xs) s.add(x);
  return s.value();
}

McEstimate mc_estimate(std::span<const double> samples) {
  if (samples.empty()) throw DomainError("mc_estimate: no samples");
  const auto n = samples.size();
  const double mean = exact_sum(samples) / static_cast<double>(n);
  if (n == 1) return {mean, 0.0, 1};
  ExactSum ss;
  for (double x : samples) ss.add((x - mean) * (x - mean));
  const double var = ss.value() / static_cast<double>(n - 1);
  return {mean, std::sqrt(var / static_cast<double>(n)), n};
}

McEstimate proportion(std::size_t hits, std::size_t n) {
  if (n == 0) throw DomainError("proportion: no samples");
  const double p = static_cast<double>(hits) / static_cast<double>(n);
  return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(n)), n};
}

KsResult ks_one_sample(std::span<const double> samples, const std::function<double(double)>& cdf) {
  const auto n = samples.size();
  if (n < kKsMinSamples) throw DomainError("ks_one_sample: need at least 50 samples");
  std::vector<double> xs(samples.begin(), samples.end());
  std::sort(xs.begin(), xs.end());
  const double nn = static_cast<double>(n);
  double d = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double f = cdf(xs[i]);
    d = std::max({d, static_cast<double>(i + 1) / nn - f, f - static_cast<double>(i) / nn});
  }
  d = std::clamp(d, 0.0, 1.0);
  const double threshold = 1.36 / std::sqrt(nn);
  return {d, threshold, d < threshold};
}

KsResult ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.size() < kKsMinSamples || b.size() < kKsMinSamples) {
    throw DomainError("ks_two_sample: need at least 50 samples per side");
  }
  std::vector<double> xa(a.begin(), a.end()), xb(b.begin(), b.end());
  std::sort(xa.begin(), xa.end());
  std::sort(xb.begin(), xb.end());
  const double na = static_cast<double>(xa.size());
  const double nb = static_cast<double>(xb.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < xa.size() && j < xb.size()) {
    const double x = std::min(xa[i], xb[j]);
    while (i < xa.size() && xa[i] == x) ++i;
    while (j < xb.size() && xb[j] == x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  const double threshold = 1.36 * std::sqrt((na + nb) / (na * nb));
  return {d, threshold, d < threshold};
}

}  // namespace potlab
