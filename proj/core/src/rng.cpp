#include "potlab/rng.hpp"

#include <boost/random/normal_distribution.hpp>
#include <boost/random/uniform_01.hpp>

namespace potlab {

namespace {

std::seed_seq make_seed_seq(std::uint64_t seed, std::uint64_t stream_id) {
  return std::seed_seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                       static_cast<std::uint32_t>(stream_id),
                       static_cast<std::uint32_t>(stream_id >> 32)};
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id) {
  auto seq = make_seed_seq(seed, stream_id);
  engine_.seed(seq);
}

double RngStream::uniform() { return boost::random::uniform_01<double>{}(engine_); }

// Ziggurat; stateless, so a fresh distribution per call costs nothing.
double RngStream::normal() { return boost::random::normal_distribution<double>{}(engine_); }

}  // namespace potlab
