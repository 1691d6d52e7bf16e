#pragma once

#include <cstdint>
#include <span>
#include <type_traits>
#include <vector>

#include "propall/candidate_set.hpp"
#include "propall/double_double.hpp"

// Brute-force and high-precision references. Test/gradcheck use only; these
// may be exponential in k and make no performance promises.
namespace propall::oracle {

// A single draw b in {0,1}^k of the per-class Bernoulli outputs.
struct BinaryOutcome {
  std::vector<uint8_t> bits;
};

// P(b) = prod p_i^{b_i} (1-p_i)^{1-b_i}.
double outcome_probability(std::span<const double> probs, const BinaryOutcome& b);

// Sum of outcome probabilities over every b with at least one 1 inside S and
// all zeros outside S. Enumerates all 2^k outcomes; k <= 24.
double enumerate_event_probability(std::span<const double> probs, const CandidateSet& s);

inline constexpr uint32_t kMaxEnumerationClasses = 24;

// Central differences (f(r + step*e_i) - f(r - step*e_i)) / (2*step).
// f may return double or DoubleDouble; the difference is taken in f's own
// type so a double-double cost keeps its headroom.
template <class F>
std::vector<double> finite_difference_gradient(F&& f, std::span<const double> r, double step) {
  if (!(step > 0.0)) throw std::invalid_argument("finite differences need a positive step");
  std::vector<double> x(r.begin(), r.end());
  std::vector<double> grad(r.size());
  for (size_t i = 0; i < x.size(); ++i) {
    const double saved = x[i];
    x[i] = saved + step;
    const auto fp = f(std::span<const double>(x));
    x[i] = saved - step;
    const auto fm = f(std::span<const double>(x));
    x[i] = saved;
    if constexpr (std::is_same_v<std::decay_t<decltype(fp)>, DoubleDouble>) {
      grad[i] = dd::sub(fp, fm).to_double() / (2.0 * step);
    } else {
      grad[i] = (fp - fm) / (2.0 * step);
    }
  }
  return grad;
}

// -log P(S) from logits, evaluated branch-free in double-double log-domain
// arithmetic. Accurate to <= 1 ulp of double for |r_i| <= 700.
DoubleDouble high_precision_cost_dd(std::span<const double> logits, const CandidateSet& s);
double high_precision_cost(std::span<const double> logits, const CandidateSet& s);

}  // namespace propall::oracle
