#ifndef TGINFER_RANDOM_HPP
#define TGINFER_RANDOM_HPP

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace tginfer {

// Deterministic stream derivation: mixes a stream index into a root seed
// through splitmix64 so parallel chains get decorrelated, reproducible
// engines. derive_seed(root, c) is the documented per-chain rule.
std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t derive_seed(std::uint64_t root, std::uint64_t stream);

// Seeded generator with the variate recipes the sampler needs. All draws go
// through this class so a run is a pure function of its seed; no wall-clock
// or OS entropy anywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Standard normal via the polar method.
  double normal();

  // Gamma(shape, 1) via Marsaglia-Tsang, with the usual boost for shape < 1.
  double gamma(double shape);

  // Dirichlet by gamma normalization; result sums to 1 up to rounding.
  std::vector<double> dirichlet(std::span<const double> concentrations);

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0;
};

}  // namespace tginfer

#endif
