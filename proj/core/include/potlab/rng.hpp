#pragma once

#include <cstdint>
#include <random>

namespace potlab {

/// Reproducible random stream keyed by (seed, stream id).
///
/// Every Monte Carlo path owns one stream, so results depend only on the
/// seed and the path index and never on how paths are scheduled. The
/// variates come from Boost.Random, whose algorithms are fixed, so streams
/// also agree across standard libraries.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  double uniform();  // [0, 1)
  double normal();   // standard Gaussian

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
};

/// Stream id for path `index` of experiment `tag`; distinct tags never
/// share a stream.
constexpr std::uint64_t stream_for(std::uint64_t tag, std::uint64_t index) {
  return (tag << 40) ^ index;
}

}  // namespace potlab
