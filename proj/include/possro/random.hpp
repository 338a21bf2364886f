#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace possro {

/// Identifies the generator family in reports.
inline constexpr std::string_view kRngName = "mt19937_64/splitmix64-split";

/// SplitMix64 finalizer (Steele, Lea, Flood 2014 constants).
std::uint64_t splitmix64_mix(std::uint64_t z);

/// Seed of stream `stream`, item `index`, under `master`. Counter-based: the
/// result depends only on the three inputs, never on evaluation order.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index);

/// Thin wrapper around std::mt19937_64 with platform-independent conversions
/// (the std distributions are implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform01();
  /// a + (b - a) * uniform01(); returns a exactly when a == b.
  double uniform(double a, double b);
  /// Uniform integer on [lo, hi] by rejection.
  long long uniform_int(long long lo, long long hi);

 private:
  std::mt19937_64 engine_;
};

}  // namespace possro
