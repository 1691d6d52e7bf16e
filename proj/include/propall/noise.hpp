#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace propall {

// Noise magnitude schedule: lambda holds at peak_lambda for the first
// plateau_fraction of total_steps, then anneals linearly to 0.
struct NoiseSchedule {
  double plateau_fraction = 0.8;
  double peak_lambda = 1.0;
  uint64_t total_steps = 1;
};

double lambda_at(const NoiseSchedule& sched, uint64_t step);

// Mixes a 64-bit value; used to derive independent stream seeds so shuffle,
// init and noise draws never interleave.
uint64_t splitmix64(uint64_t x);
uint64_t derive_stream_seed(uint64_t seed, uint64_t stream_id);

// Deterministic generator: identical seed => identical stream.
class RandomSource {
public:
  explicit RandomSource(uint64_t seed) : seed_(seed), engine_(seed) {}

  uint64_t next_u64() { return engine_(); }

  // Uniform on the open interval (0,1).
  double next_open01() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1p-53;
  }

  // Uniform over [0, bound), bound >= 1. Masked rejection sampling, so the
  // stream mapping is fixed by this code rather than the standard library.
  uint64_t next_below(uint64_t bound);

  uint64_t seed() const { return seed_; }
  static constexpr const char* algorithm() { return "mt19937_64"; }

private:
  uint64_t seed_;
  std::mt19937_64 engine_;
};

// U - V with independent standard Gumbel draws. Sampled through the logistic
// identity: for u uniform on (0,1), log(u) - log(1-u) has exactly the
// distribution of the Gumbel difference (Logistic(0,1)).
double gumbel_difference_sample(RandomSource& rng);

// r_i + lambda * (U_i - V_i) per coordinate; the input is left untouched.
std::vector<double> perturb_logits(std::span<const double> logits, double lambda,
                                   RandomSource& rng);
void perturb_logits_inplace(std::span<double> logits, double lambda, RandomSource& rng);

}  // namespace propall
