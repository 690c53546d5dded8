#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace crowdsel {

// SplitMix64 mixer (Steele, Lea & Flood). All randomness in the toolkit is
// derived from this one primitive so that runs reproduce bit-for-bit across
// platforms and standard-library versions.
inline constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Seed for derived stream `index` of a master seed. Repetition r of a
// repeated evaluation runs on derive_seed(master, r); nested components
// (fold shuffling, classifier init) derive again from that.
inline constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(master ^ (0xA0761D6478BD642FULL * (index + 1)));
}

// Small deterministic generator: the SplitMix64 sequence itself.
class Rng {
 public:
  explicit constexpr Rng(std::uint64_t seed) : state_(seed) {}

  constexpr std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, bound). Modulo bias is below 2^-50 for the bounds used
  // here (dataset sizes), and the modulo form is portable and exact.
  constexpr std::uint64_t next_below(std::uint64_t bound) { return next_u64() % bound; }

  // Uniform in [0, 1) with 53 random bits.
  constexpr double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

// Fisher-Yates with our own generator; std::shuffle is implementation-defined.
template <typename T>
void deterministic_shuffle(std::vector<T>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng.next_below(i));
    std::swap(v[i - 1], v[j]);
  }
}

}  // namespace crowdsel
