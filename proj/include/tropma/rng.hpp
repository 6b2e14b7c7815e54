#pragma once

// Counter-based random stream: value k of stream (seed, stream_id) is a pure
// function of (seed, stream_id, k), so work split into blocks draws the same
// numbers regardless of how blocks are scheduled.

#include <cmath>
#include <cstdint>
#include <span>

namespace tropma {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream)
      : key_(splitmix64(seed ^ splitmix64(stream + 0x632be59bd9b4e019ULL))) {}

  std::uint64_t next_u64() { return splitmix64(key_ ^ splitmix64(counter_++)); }

  /// Uniform on the open interval (0, 1).
  double uniform() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Uniform point of the standard simplex {w >= 0, sum w = 1} in out.size() weights.
  void simplex_point(std::span<double> out) {
    double total = 0.0;
    for (double& w : out) {
      w = -std::log(uniform());
      total += w;
    }
    for (double& w : out) w /= total;
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace tropma
