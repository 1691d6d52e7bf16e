#include "propall/noise.hpp"

#include <cmath>
#include <stdexcept>

namespace propall {

double lambda_at(const NoiseSchedule& sched, uint64_t step) {
  if (step > sched.total_steps) throw std::out_of_range("schedule step out of range");
  const double total = static_cast<double>(sched.total_steps);
  const double plateau_end = sched.plateau_fraction * total;
  const double t = static_cast<double>(step);
  if (t <= plateau_end) return sched.peak_lambda;
  return sched.peak_lambda * (total - t) / (total - plateau_end);
}

uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

uint64_t derive_stream_seed(uint64_t seed, uint64_t stream_id) {
  return splitmix64(seed + 0x632be59bd9b4e019ULL * (stream_id + 1));
}

uint64_t RandomSource::next_below(uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("bound must be positive");
  if (bound == 1) return 0;
  uint64_t mask = bound - 1;
  mask |= mask >> 1;
  mask |= mask >> 2;
  mask |= mask >> 4;
  mask |= mask >> 8;
  mask |= mask >> 16;
  mask |= mask >> 32;
  for (;;) {
    const uint64_t v = next_u64() & mask;
    if (v < bound) return v;
  }
}

double gumbel_difference_sample(RandomSource& rng) {
  const double u = rng.next_open01();
  return std::log(u) - std::log1p(-u);
}

void perturb_logits_inplace(std::span<double> logits, double lambda, RandomSource& rng) {
  if (lambda < 0.0) throw std::invalid_argument("lambda must be nonnegative");
  for (double& r : logits) r += lambda * gumbel_difference_sample(rng);
}

std::vector<double> perturb_logits(std::span<const double> logits, double lambda,
                                   RandomSource& rng) {
  std::vector<double> out(logits.begin(), logits.end());
  perturb_logits_inplace(out, lambda, rng);
  return out;
}

}  // namespace propall
