#include "mzm/random.hpp"

#include <cmath>
#include <numbers>

namespace mzm {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

constexpr std::uint64_t splitmix64(std::uint64_t z) noexcept {
  z += kGolden;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t stream,
                           std::uint64_t index) noexcept {
  const std::uint64_t key = splitmix64(splitmix64(seed) ^ (stream * kGolden));
  return splitmix64(key ^ splitmix64(index));
}

std::uint64_t derive_seed(std::uint64_t master_seed,
                          std::uint64_t stream) noexcept {
  return counter_hash(master_seed, stream, ~std::uint64_t{0});
}

double CounterRng::uniform() noexcept {
  // 53 random mantissa bits, shifted off zero.
  return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
}

double CounterRng::normal() noexcept {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

}  // namespace mzm
