#include "propall/loss.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace propall {

namespace {

void check_args(std::span<const double> logits, const CandidateSet& s) {
  if (s.num_classes() != logits.size())
    throw std::invalid_argument("candidate set and logit vector disagree on k");
  if (s.empty()) throw std::invalid_argument("candidate set is empty");
}

double max_candidate_logit(std::span<const double> logits, const CandidateSet& s) {
  double m = -std::numeric_limits<double>::infinity();
  s.for_each([&](uint32_t i) { m = std::max(m, logits[i]); });
  return m;
}

double candidate_h(std::span<const double> logits, const CandidateSet& s) {
  double h = 0.0;
  s.for_each([&](uint32_t i) { h += log1p_exp(logits[i]); });
  return h;
}

// Gradient components for candidates switch to a shifted softmax once the
// whole set sits this deep; below it sigmoid/expm1 start to lose bits and the
// softmax form is identical to within O(exp(-40)).
constexpr double kGradSoftmaxThreshold = -40.0;

}  // namespace

double sigmoid(double r) {
  if (r >= 0.0) return 1.0 / (1.0 + std::exp(-r));
  const double t = std::exp(r);
  return t / (1.0 + t);
}

double log1p_exp(double r) {
  if (r <= 0.0) return std::log1p(std::exp(r));
  return r + std::log1p(std::exp(-r));
}

double bce_cost_logits(std::span<const double> logits, uint32_t c) {
  if (c >= logits.size()) throw std::out_of_range("class index out of range");
  double cost = log1p_exp(-logits[c]);
  for (size_t j = 0; j < logits.size(); ++j) {
    if (j != c) cost += log1p_exp(logits[j]);
  }
  return cost;
}

double propall_probability(std::span<const double> probs, const CandidateSet& s) {
  check_args(probs, s);
  double in_prod = 1.0;   // prod_{i in S} (1 - p_i)
  double out_prod = 1.0;  // prod_{j not in S} (1 - p_j)
  for (size_t i = 0; i < probs.size(); ++i) {
    const double q = 1.0 - probs[i];
    if (s.contains(static_cast<uint32_t>(i)))
      in_prod *= q;
    else
      out_prod *= q;
  }
  return (1.0 - in_prod) * out_prod;
}

double candidate_masked_lse(std::span<const double> logits, const CandidateSet& s,
                            const StableConstants& consts) {
  check_args(logits, s);
  double m = consts.min_finite;
  for (size_t i = 0; i < logits.size(); ++i) {
    const double v = s.contains(static_cast<uint32_t>(i)) ? logits[i] : consts.min_finite;
    m = std::max(m, v);
  }
  double sum = 0.0;
  for (size_t i = 0; i < logits.size(); ++i) {
    const double v = s.contains(static_cast<uint32_t>(i)) ? logits[i] : consts.min_finite;
    sum += std::exp(v - m);
  }
  return m + std::log(sum);
}

double propall_cost_logits(std::span<const double> logits, const CandidateSet& s,
                           const StableConstants& consts) {
  check_args(logits, s);
  double part2 = 0.0;
  for (size_t j = 0; j < logits.size(); ++j) {
    if (!s.contains(static_cast<uint32_t>(j))) part2 += log1p_exp(logits[j]);
  }

  double part1;
  if (max_candidate_logit(logits, s) > consts.branch_threshold) {
    const double h = candidate_h(logits, s);
    part1 = -std::log(-std::expm1(-h));
  } else {
    // Every candidate sits at or below the threshold, so h <= k*log(1+e^-10)
    // and expm1(h) cannot overflow. h == 0 only once exp() underflowed for
    // every candidate; the masked LogSumExp is exact there.
    const double h = candidate_h(logits, s);
    part1 = h > 0.0 ? h - std::log(std::expm1(h)) : -candidate_masked_lse(logits, s, consts);
  }
  return part1 + part2;
}

double propall_cost_logits_unstable(std::span<const double> logits, const CandidateSet& s) {
  check_args(logits, s);
  double in_prod = 1.0;
  double cost = 0.0;
  for (size_t i = 0; i < logits.size(); ++i) {
    const double p = sigmoid(logits[i]);
    if (s.contains(static_cast<uint32_t>(i)))
      in_prod *= 1.0 - p;
    else
      cost += -std::log(1.0 - p);
  }
  return cost - std::log(1.0 - in_prod);
}

void propall_grad_logits(std::span<const double> logits, const CandidateSet& s,
                         std::span<double> grad_out) {
  check_args(logits, s);
  if (grad_out.size() != logits.size())
    throw std::invalid_argument("gradient output size mismatch");

  const double m = max_candidate_logit(logits, s);
  for (size_t j = 0; j < logits.size(); ++j) {
    if (!s.contains(static_cast<uint32_t>(j))) grad_out[j] = sigmoid(logits[j]);
  }
  if (m > kGradSoftmaxThreshold) {
    // -p_i * Q/(1-Q) with Q = exp(-h): Q/(1-Q) = 1/expm1(h).
    const double em = std::expm1(candidate_h(logits, s));
    s.for_each([&](uint32_t i) { grad_out[i] = -sigmoid(logits[i]) / em; });
  } else {
    // All candidates deeply negative: p_i ~ exp(r_i), h ~ sum exp(r_i), so the
    // ratio collapses to a softmax over candidate logits.
    double denom = 0.0;
    s.for_each([&](uint32_t i) { denom += std::exp(logits[i] - m); });
    s.for_each([&](uint32_t i) { grad_out[i] = -std::exp(logits[i] - m) / denom; });
  }
}

std::vector<double> propall_grad_logits(std::span<const double> logits, const CandidateSet& s) {
  std::vector<double> g(logits.size());
  propall_grad_logits(logits, s, g);
  return g;
}

BatchCostResult batch_cost(std::span<const double> logits, std::span<const CandidateSet> sets,
                           size_t n, size_t k, const StableConstants& consts) {
  if (logits.size() != n * k) throw std::invalid_argument("logit matrix shape mismatch");
  if (sets.size() != n) throw std::invalid_argument("one candidate set per row required");
  if (n == 0) throw std::invalid_argument("empty batch");

  BatchCostResult res;
  res.grad.resize(n * k);
  const double inv_n = 1.0 / static_cast<double>(n);
  double total = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const auto row = logits.subspan(i * k, k);
    total += propall_cost_logits(row, sets[i], consts);
    propall_grad_logits(row, sets[i], std::span<double>(res.grad).subspan(i * k, k));
  }
  for (double& g : res.grad) g *= inv_n;
  res.mean_cost = total * inv_n;
  return res;
}

}  // namespace propall
