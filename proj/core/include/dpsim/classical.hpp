#pragma once

#include <cstdint>
#include <vector>

#include "dpsim/process.hpp"

namespace dpsim {

// Finite-state causal model: states 0..n_term count timesteps since the last
// event; all states from n_term onward are merged into one terminal state.
// Transitions: on output 1 go to state 0; on output 0 go to min(n+1, n_term).
struct TruncatedEpsilonMachine {
  DiscreteParams dp;
  std::int64_t n_term = 0;
  // emit_prob[n] = emission_prob(dp, n) for n < n_term.
  std::vector<double> emit_prob;
  // Stationary-weight average of emission_prob over all merged states.
  double terminal_emit = 0.0;

  std::int64_t state_count() const noexcept { return n_term + 1; }

  double emit_at(std::int64_t state) const {
    return state < n_term ? emit_prob[static_cast<std::size_t>(state)]
                          : terminal_emit;
  }

  std::int64_t next_state(std::int64_t state, int symbol) const noexcept {
    if (symbol != 0) return 0;
    return state < n_term ? state + 1 : n_term;
  }
};

// Smallest n with Phi(n) <= delta * (1 - Phi(1)): the first state whose reach
// probability is below a fraction delta of the one-step event probability.
// delta in (0, 1]; delta = 1 is allowed and gives the coarsest truncation.
std::int64_t compute_n_term(const DiscreteParams& dp, double delta);

TruncatedEpsilonMachine build_machine(const DiscreteParams& dp, double delta);

// Generates `steps` output symbols starting from `start_state`.
// Deterministic given (seed); uses the child stream rule with stream index 0.
std::vector<std::uint8_t> simulate(const TruncatedEpsilonMachine& machine,
                                   std::int64_t start_state,
                                   std::int64_t steps, std::uint64_t seed);

// Aggregated steady-state distribution over the truncated state set:
// {mu Phi(0), ..., mu Phi(n_term - 1), mu * sum_{n >= n_term} Phi(n)}.
std::vector<double> aggregated_state_distribution(const DiscreteParams& dp,
                                                  std::int64_t n_term);

// Stationary distribution of the truncated chain itself, solved from the
// transition structure. With stationary-weight terminal emission it
// coincides with aggregated_state_distribution; kept as a diagnostic.
std::vector<double> stationary_distribution(
    const TruncatedEpsilonMachine& machine);

// Ctilde_mu: entropy in bits of the aggregated truncated distribution.
double stat_complexity_truncated(const DiscreteParams& dp, double delta);
double stat_complexity_truncated_at(const DiscreteParams& dp,
                                    std::int64_t n_term);

// Dtilde_mu = log2(n_term + 1).
double top_complexity_truncated(std::int64_t n_term);

// C_mu: entropy in bits of the untruncated steady-state distribution,
// summed to the analytic tail cutoff.
double stat_complexity_exact(const DiscreteParams& dp);

}  // namespace dpsim
