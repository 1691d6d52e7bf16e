#include "propall/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace propall::oracle {

double outcome_probability(std::span<const double> probs, const BinaryOutcome& b) {
  if (b.bits.size() != probs.size())
    throw std::invalid_argument("outcome and probability vector disagree on k");
  double prod = 1.0;
  for (size_t i = 0; i < probs.size(); ++i) {
    prod *= b.bits[i] ? probs[i] : 1.0 - probs[i];
  }
  return prod;
}

double enumerate_event_probability(std::span<const double> probs, const CandidateSet& s) {
  const size_t k = probs.size();
  if (s.num_classes() != k) throw std::invalid_argument("candidate set disagrees on k");
  if (s.empty()) throw std::invalid_argument("candidate set is empty");
  if (k > kMaxEnumerationClasses) throw std::invalid_argument("enumeration capped at k = 24");

  uint32_t cand_mask = 0;
  s.for_each([&](uint32_t i) { cand_mask |= uint32_t{1} << i; });
  const uint32_t all = k == 32 ? ~uint32_t{0} : (uint32_t{1} << k) - 1;

  double total = 0.0;
  for (uint32_t b = 0; b <= all; ++b) {
    const bool one_in_s = (b & cand_mask) != 0;
    const bool zero_outside = (b & ~cand_mask & all) == 0;
    if (!(one_in_s && zero_outside)) continue;
    double prod = 1.0;
    for (size_t i = 0; i < k; ++i) {
      prod *= (b >> i) & 1 ? probs[i] : 1.0 - probs[i];
    }
    total += prod;
  }
  return total;
}

DoubleDouble high_precision_cost_dd(std::span<const double> logits, const CandidateSet& s) {
  if (s.num_classes() != logits.size())
    throw std::invalid_argument("candidate set and logit vector disagree on k");
  if (s.empty()) throw std::invalid_argument("candidate set is empty");

  DoubleDouble h;       // sum_{i in S} log(1 + e^{r_i})
  DoubleDouble part2;   // sum_{j not in S} log(1 + e^{r_j})
  for (size_t i = 0; i < logits.size(); ++i) {
    const DoubleDouble t = dd::log1p_exp(logits[i]);
    if (s.contains(static_cast<uint32_t>(i)))
      h = dd::add(h, t);
    else
      part2 = dd::add(part2, t);
  }

  DoubleDouble part1;
  if (h.hi > 0.0) {
    // -log(1 - e^{-h}) = -log1p(-(expm1(-h) + 1)).
    const DoubleDouble em1 = dd::expm1(dd::neg(h));
    part1 = dd::neg(dd::log1p(dd::neg(dd::add(em1, 1.0))));
  } else {
    // Every candidate term underflowed (r_i < ~-745): shifted LogSumExp over
    // candidate logits, exact at this depth.
    double m = -std::numeric_limits<double>::infinity();
    s.for_each([&](uint32_t i) { m = std::max(m, logits[i]); });
    DoubleDouble sum;
    s.for_each([&](uint32_t i) { sum = dd::add(sum, dd::exp(DoubleDouble(logits[i] - m))); });
    part1 = dd::neg(dd::add(dd::log(sum), m));
  }
  return dd::add(part1, part2);
}

double high_precision_cost(std::span<const double> logits, const CandidateSet& s) {
  return high_precision_cost_dd(logits, s).to_double();
}

}  // namespace propall::oracle
