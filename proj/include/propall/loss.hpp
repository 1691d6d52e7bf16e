#pragma once

#include <limits>
#include <span>
#include <vector>

#include "propall/candidate_set.hpp"

namespace propall {

// Constants of the stabilized candidate-set cost. min_finite masks
// non-candidate classes inside the fallback LogSumExp (exp(min_finite) == 0);
// branch_threshold selects the below-threshold evaluation path.
struct StableConstants {
  double min_finite = std::numeric_limits<double>::lowest();
  double branch_threshold = -10.0;
};

// sigma(r) = 1 / (1 + exp(-r)). Saturation-safe over all finite inputs.
double sigmoid(double r);

// log(1 + exp(r)), i.e. LogSumExp(0, r), without overflow or cancellation.
double log1p_exp(double r);

// Binary cross entropy of class c against logits, computed entirely in the
// log domain: LogSumExp(0, -r_c) + sum_{j != c} LogSumExp(0, r_j).
double bce_cost_logits(std::span<const double> logits, uint32_t c);

// P(S) = (1 - prod_{i in S}(1 - p_i)) * prod_{j not in S}(1 - p_j):
// probability that at least one candidate output fires and no other does.
double propall_probability(std::span<const double> probs, const CandidateSet& s);

// -log P(S) in logit space. Two-branch scheme: above branch_threshold the
// candidate part is -log(-expm1(-h)) with h = sum_{i in S} LogSumExp(0, r_i);
// at or below the threshold the same quantity is evaluated in h-space as
// h - log(expm1(h)), falling back to the min_finite-masked LogSumExp over
// logits once h underflows to zero. Finite for every finite input.
double propall_cost_logits(std::span<const double> logits, const CandidateSet& s,
                           const StableConstants& consts = {});

// d cost / d r. Component i in S equals -p_i * Q / (1 - Q) with
// Q = prod_{i in S}(1 - p_i); component j not in S equals p_j.
void propall_grad_logits(std::span<const double> logits, const CandidateSet& s,
                         std::span<double> grad_out);
std::vector<double> propall_grad_logits(std::span<const double> logits, const CandidateSet& s);

// LogSumExp over (r_i if i in S else min_finite), evaluated with a max shift.
// This is the underflow fallback of the stable branch; exact once every
// candidate logit is below the exp() underflow point.
double candidate_masked_lse(std::span<const double> logits, const CandidateSet& s,
                            const StableConstants& consts = {});

// Textbook evaluation of the cost, -log(1 - prod(1-p)) - sum log(1-p), with
// raw exp/log only. Underflows to +inf for deeply negative candidate logits;
// kept as the negative control for the verification suites.
double propall_cost_logits_unstable(std::span<const double> logits, const CandidateSet& s);

struct BatchCostResult {
  double mean_cost = 0.0;
  std::vector<double> grad;  // n x k, d mean_cost / d logits (already scaled by 1/n)
};

// Mean cost over an n x k row-major logits matrix with one candidate set per row.
BatchCostResult batch_cost(std::span<const double> logits, std::span<const CandidateSet> sets,
                           size_t n, size_t k, const StableConstants& consts = {});

}  // namespace propall
