#include "dpsim/classical.hpp"

#include <cassert>
#include <cmath>

#include "dpsim/rng.hpp"

namespace dpsim {

std::int64_t compute_n_term(const DiscreteParams& dp, double delta) {
  dp.validate();
  if (!std::isfinite(delta) || delta <= 0.0 || delta > 1.0)
    throw InvalidParameterError("delta must be in (0, 1]");
  const double threshold = delta * (1.0 - survival(dp, 1));
  // threshold < 1 = Phi(0), so the scan always advances at least once.
  double t1 = dp.p;
  double t2 = 1.0 - dp.p;
  std::int64_t n = 0;
  while (t1 + t2 > threshold) {
    t1 *= dp.Gamma1;
    t2 *= dp.Gamma2;
    ++n;
  }
  return n;
}

TruncatedEpsilonMachine build_machine(const DiscreteParams& dp, double delta) {
  TruncatedEpsilonMachine machine;
  machine.dp = dp;
  machine.n_term = compute_n_term(dp, delta);
  machine.emit_prob.resize(static_cast<std::size_t>(machine.n_term));
  double phi_n = 1.0;  // Phi(n), advanced incrementally
  double t1 = dp.p;
  double t2 = 1.0 - dp.p;
  for (std::int64_t n = 0; n < machine.n_term; ++n) {
    t1 *= dp.Gamma1;
    t2 *= dp.Gamma2;
    const double phi_next = t1 + t2;  // Phi(n+1)
    machine.emit_prob[static_cast<std::size_t>(n)] = 1.0 - phi_next / phi_n;
    phi_n = phi_next;
  }
  // Stationary-weight average of emissions over the merged states telescopes
  // to Phi(t) / sum_{n >= t} Phi(n).
  machine.terminal_emit =
      survival(dp, machine.n_term) / survival_tail_sum(dp, machine.n_term);
  return machine;
}

std::vector<std::uint8_t> simulate(const TruncatedEpsilonMachine& machine,
                                   std::int64_t start_state,
                                   std::int64_t steps, std::uint64_t seed) {
  if (start_state < 0 || start_state > machine.n_term)
    throw InvalidParameterError("start_state must be in [0, n_term]");
  if (steps <= 0) throw InvalidParameterError("steps must be positive");
  RandomStream rng(seed, 0);
  std::vector<std::uint8_t> out(static_cast<std::size_t>(steps));
  std::int64_t state = start_state;
  for (auto& symbol : out) {
    symbol = rng.uniform() < machine.emit_at(state) ? 1 : 0;
    state = machine.next_state(state, symbol);
  }
  return out;
}

std::vector<double> aggregated_state_distribution(const DiscreteParams& dp,
                                                  std::int64_t n_term) {
  assert(n_term >= 0);
  const double mu = normalization_mu(dp);
  std::vector<double> dist(static_cast<std::size_t>(n_term) + 1);
  double t1 = dp.p;
  double t2 = 1.0 - dp.p;
  double phi = 1.0;
  for (std::int64_t n = 0; n < n_term; ++n) {
    dist[static_cast<std::size_t>(n)] = mu * phi;
    t1 *= dp.Gamma1;
    t2 *= dp.Gamma2;
    phi = t1 + t2;
  }
  dist.back() = mu * survival_tail_sum(dp, n_term);
  return dist;
}

std::vector<double> stationary_distribution(
    const TruncatedEpsilonMachine& machine) {
  const std::int64_t t = machine.n_term;
  std::vector<double> pi(static_cast<std::size_t>(t) + 1);
  pi[0] = 1.0;
  for (std::int64_t n = 1; n < t; ++n)
    pi[static_cast<std::size_t>(n)] =
        pi[static_cast<std::size_t>(n - 1)] *
        (1.0 - machine.emit_prob[static_cast<std::size_t>(n - 1)]);
  if (t >= 1) {
    // Terminal balance: pi_t * e_t = pi_{t-1} * (1 - e_{t-1}).
    pi[static_cast<std::size_t>(t)] =
        pi[static_cast<std::size_t>(t - 1)] *
        (1.0 - machine.emit_prob[static_cast<std::size_t>(t - 1)]) /
        machine.terminal_emit;
  }
  double total = 0.0;
  for (double x : pi) total += x;
  for (double& x : pi) x /= total;
  return pi;
}

double stat_complexity_truncated_at(const DiscreteParams& dp,
                                    std::int64_t n_term) {
  assert(n_term >= 0);
  const double mu = normalization_mu(dp);
  double t1 = dp.p;
  double t2 = 1.0 - dp.p;
  double h = 0.0;
  double phi = 1.0;
  for (std::int64_t n = 0; n < n_term; ++n) {
    const double prob = mu * phi;
    if (prob > 0.0) h -= prob * std::log2(prob);
    t1 *= dp.Gamma1;
    t2 *= dp.Gamma2;
    phi = t1 + t2;
  }
  const double tail = mu * survival_tail_sum(dp, n_term);
  if (tail > 0.0) h -= tail * std::log2(tail);
  return h;
}

double stat_complexity_truncated(const DiscreteParams& dp, double delta) {
  return stat_complexity_truncated_at(dp, compute_n_term(dp, delta));
}

double top_complexity_truncated(std::int64_t n_term) {
  assert(n_term >= 0);
  return std::log2(static_cast<double>(n_term) + 1.0);
}

double stat_complexity_exact(const DiscreteParams& dp) {
  dp.validate();
  const double mu = normalization_mu(dp);
  const double gmax = std::max(dp.Gamma1, dp.Gamma2);
  const double tail_coef = mu / (1.0 - gmax);
  double t1 = dp.p;
  double t2 = 1.0 - dp.p;
  double gpow = 1.0;  // gmax^(n+1) after the update below
  double h = 0.0;
  for (;;) {
    const double prob = mu * (t1 + t2);
    if (prob > 0.0) h -= prob * std::log2(prob);
    gpow *= gmax;
    if (tail_coef * gpow < 1e-12) break;
    t1 *= dp.Gamma1;
    t2 *= dp.Gamma2;
  }
  return h;
}

}  // namespace dpsim
