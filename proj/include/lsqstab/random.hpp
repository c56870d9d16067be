#pragma once

#include <cstdint>
#include <random>

namespace lsqstab {

/// SplitMix64 finalizer.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Seed of one (m, n, trial) task in a sweep:
/// splitmix64(master ^ splitmix64(m ^ splitmix64(n ^ splitmix64(trial)))).
/// Depends only on its arguments, never on scheduling.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t m, std::uint64_t n,
                          std::uint64_t trial) noexcept;

/// Task-local generator with every transformation pinned in this file, so
/// draws are bit-identical across platforms and standard libraries:
///  - engine: std::mt19937_64 seeded with the 64-bit seed;
///  - uniform: ((u >> 11) + 0.5) * 2^-53, strictly inside (0, 1);
///  - normal: Marsaglia polar method, second variate discarded;
///  - gamma(k): Marsaglia-Tsang squeeze for k >= 1, gamma(k+1) U^{1/k} below;
///  - beta(a, b): X / (X + Y) with X ~ gamma(a), Y ~ gamma(b).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  double uniform();
  double normal();
  double gamma(double shape);
  double beta(double a, double b);

 private:
  std::mt19937_64 engine_;
};

}  // namespace lsqstab
