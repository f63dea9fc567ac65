#pragma once

#include <cmath>
#include <cstdint>

#include "gammarad/errors.hpp"

namespace gammarad {

// Deterministic random number generation.
//
// Every stochastic routine in the library draws from streams defined here and
// nowhere else.  The generators are fully specified in this header (no
// reliance on implementation-defined std::normal_distribution behaviour), so
// a (seed, stream index) pair reproduces the same draws on every run of the
// same binary.  Sub-streams are derived by hashing, which lets batches and
// coordinates consume independent streams without coordination.

// SplitMix64: used for seeding and stream derivation.
struct SplitMix64 {
  std::uint64_t state = 0;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
};

// Derives an independent stream seed from a base seed and a stream index.
inline std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t stream) {
  SplitMix64 mix(seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1)));
  mix.next();
  return mix.next();
}

// xoshiro256++ (Blackman & Vigna), seeded through SplitMix64.
class Xoshiro256pp {
 public:
  explicit Xoshiro256pp(std::uint64_t seed) {
    SplitMix64 mix(seed);
    for (auto& word : s_) word = mix.next();
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform double in (0, 1]: 53 high bits, shifted into (0,1] so that
  // log(u) below is always finite.
  double next_unit() { return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53; }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }
  std::uint64_t s_[4] = {};
};

// Stream of independent standard normal draws via the Box-Muller transform.
// Real draws only: complex-scalar computations still use real standard
// normals for their random sums, so second moments are directly comparable
// between the real and complex settings.
class GaussianStream {
 public:
  explicit GaussianStream(std::uint64_t seed) : gen_(seed) {}

  double next() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = gen_.next_unit();
    const double u2 = gen_.next_unit();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * M_PI * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

 private:
  Xoshiro256pp gen_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

// Sampling plan for Monte Carlo second-moment estimates.  Samples are split
// into batch_count equal batches; the reported standard error is the sample
// standard deviation of the batch means divided by sqrt(batch_count).  Batch b
// draws from the stream derived from (seed, b), so the estimate does not
// depend on evaluation order.
struct GaussianDrawConfig {
  std::uint64_t seed = 1;
  std::int64_t n_samples = 10000;
  int batch_count = 10;

  void validate() const {
    if (batch_count < 2) {
      throw ValidationError("GaussianDrawConfig: batch_count must be at least 2");
    }
    if (n_samples < 10 * static_cast<std::int64_t>(batch_count)) {
      throw ValidationError(
          "GaussianDrawConfig: n_samples must be at least 10 * batch_count");
    }
  }

  // Equal batch sizes, rounding the total up so every batch has the same
  // sample count; samples_per_batch() * batch_count is the effective total.
  std::int64_t samples_per_batch() const {
    return (n_samples + batch_count - 1) / batch_count;
  }

  GaussianStream batch_stream(int batch) const {
    return GaussianStream(derive_stream_seed(seed, static_cast<std::uint64_t>(batch)));
  }
};

}  // namespace gammarad
