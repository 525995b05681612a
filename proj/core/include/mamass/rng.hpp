#pragma once

#include <cstdint>
#include <random>

namespace mamass {

// Random stream keyed by (seed, stream id). Each stream is seeded
// independently, so parallel shards reproduce bit-for-bit regardless of the
// order in which they run.
class Stream {
 public:
  Stream(std::uint64_t seed, std::uint64_t stream);

  double uniform() { return uni_(engine_); }
  double normal() { return gauss_(engine_); }

 private:
  std::mt19937_64 engine_;
  std::uniform_real_distribution<double> uni_{0.0, 1.0};
  std::normal_distribution<double> gauss_{0.0, 1.0};
};

}  // namespace mamass
