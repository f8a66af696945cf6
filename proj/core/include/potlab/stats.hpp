#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace potlab {

/// Correctly rounded floating-point sum (Shewchuk partials).
///
/// The result is independent of the order of the inputs, which keeps Monte
/// Carlo aggregates bit-identical however the samples were produced.
class ExactSum {
 public:
  void add(double x);
  double value() const;

 private:
  std::vector<double> partials_;
};

double exact_sum(std::span<const double> xs);

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;  // unbiased sample std / sqrt(n)
  std::size_t n = 0;

  double lower(double sigmas = 3.0) const { return mean - sigmas * std_error; }
  double upper(double sigmas = 3.0) const { return mean + sigmas * std_error; }
};

/// Throws DomainError on empty input. A single sample has std_error 0.
McEstimate mc_estimate(std::span<const double> samples);

/// Estimate of a proportion from a hit count (binomial standard error).
McEstimate proportion(std::size_t hits, std::size_t n);

struct KsResult {
  double statistic = 0.0;
  double threshold = 0.0;  // asymptotic 5% critical value
  bool pass = false;
};

inline constexpr std::size_t kKsMinSamples = 50;

/// One-sample Kolmogorov-Smirnov test against a continuous CDF.
/// Threshold 1.36 / sqrt(n); throws DomainError for n < 50.
KsResult ks_one_sample(std::span<const double> samples, const std::function<double(double)>& cdf);

/// Two-sample test, threshold 1.36 sqrt((na + nb) / (na nb)).
KsResult ks_two_sample(std::span<const double> a, std::span<const double> b);

}  // namespace potlab
