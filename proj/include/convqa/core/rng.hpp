#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace convqa {

// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t x);
std::uint64_t fnv1a64(std::string_view bytes);

// Independent child streams: derive_seed(campaign, dialog_index),
// derive_seed(dialog_seed, "include:I5"), ...
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t salt);
std::uint64_t derive_seed(std::uint64_t base, std::string_view salt);

// mt19937_64 output is fixed by the standard; the helpers below avoid the
// implementation-defined std distributions so streams replay identically on
// every toolchain.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  // Uniform on [0, 1) with 53 bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  // Uniform on [0, n); n must be > 0.
  std::uint64_t below(std::uint64_t n);
  bool bernoulli(double p) { return uniform01() < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace convqa
