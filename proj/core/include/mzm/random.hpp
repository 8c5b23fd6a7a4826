#pragma once

#include <cstdint>
#include <limits>

namespace mzm {

// Stateless mixing function; every draw is a pure function of
// (seed, stream, index).
std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t stream,
                           std::uint64_t index) noexcept;

// Derives a child seed, e.g. one per Monte Carlo sample.
std::uint64_t derive_seed(std::uint64_t master_seed,
                          std::uint64_t stream) noexcept;

/// Counter-based random stream satisfying UniformRandomBitGenerator.
///
/// Draw k of stream s under seed m is counter_hash(m, s, k); two streams
/// never share state, so tasks can own their generators and still
/// reproduce the serial result exactly.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  CounterRng(std::uint64_t seed, std::uint64_t stream) noexcept
      : seed_(seed), stream_(stream) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept {
    return counter_hash(seed_, stream_, index_++);
  }

  // Uniform on the open interval (0, 1).
  double uniform() noexcept;

  // Standard normal via Box-Muller; both variates of a pair are used.
  double normal() noexcept;

  std::uint64_t draws() const noexcept { return index_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t index_ = 0;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace mzm
