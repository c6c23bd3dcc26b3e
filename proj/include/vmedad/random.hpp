#pragma once

#include <cstdint>
#include <optional>
#include <random>

namespace vmedad {

/// SplitMix64 finalizer applied to seed + stream * golden-ratio increment.
/// Used to derive independent per-replicate seeds from one master seed.
std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t stream);

/// Seeded variate source.
///
/// Engine: std::mt19937_64 seeded with substream_seed(seed, stream).
/// Uniforms: top 53 bits of one engine output, scaled to [0, 1).
/// Normals: Marsaglia polar method; the second variate of each accepted pair
/// is cached and returned by the next call.
/// Gamma: Marsaglia-Tsang squeeze for shape >= 1; shape < 1 uses
/// Gamma(shape + 1) * U^(1/shape).
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next_u64() { return engine_(); }
  double uniform();
  double normal();
  double gamma(double shape);
  double chi_square(double nu) { return 2.0 * gamma(0.5 * nu); }
  /// Uniform integer in [0, bound), by rejection.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

}  // namespace vmedad
