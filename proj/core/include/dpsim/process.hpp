#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>

namespace dpsim {

// Parameters that violate their stated domain (negative rates, p outside
// [0,1], non-positive dt, Gamma outside (0,1)).
class InvalidParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Parameters that are valid for the process itself but outside the domain of
// the requested construction (identical decay rates collapse the generator
// states, so the quantum model is undefined there).
class DegenerateParameterError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Continuous-time description: two decay channels with rates gamma1, gamma2,
// channel-1 probability p, sampled at timestep dt.
struct ProcessParams {
  double gamma1 = 0.0;
  double gamma2 = 0.0;
  double p = 0.0;
  double dt = 0.0;

  // Throws InvalidParameterError unless gamma1 > 0, gamma2 > 0, dt > 0 and
  // 0 <= p <= 1 (all finite).
  void validate() const;

  // True iff p is not 0 or 1 and the rates differ. Everything degenerate
  // (single effective channel, hence a memoryless or pure-state model)
  // has this false.
  bool non_extremal() const noexcept;
};

// Discrete-time description: per-step survival factors Gammaj = exp(-gammaj dt).
struct DiscreteParams {
  double Gamma1 = 0.0;
  double Gamma2 = 0.0;
  double p = 0.0;

  // Throws InvalidParameterError unless 0 < Gammaj < 1 and 0 <= p <= 1.
  void validate() const;

  bool non_extremal() const noexcept;

  // Exchanged-channel parameters (Gamma2, Gamma1, 1-p). The process they
  // describe is identical, which several symmetry checks rely on.
  DiscreteParams exchanged() const noexcept;
};

DiscreteParams discretize(const ProcessParams& params);

// Survival probability Phi(n) = p Gamma1^n + (1-p) Gamma2^n: the probability
// that a gap between events lasts at least n timesteps. Phi(0) = 1.
double survival(const DiscreteParams& dp, std::int64_t n);

// P(next event exactly n_future steps ahead | last event n_past steps ago)
//   = (Phi(n_past + n_future) - Phi(n_past + n_future + 1)) / Phi(n_past).
double conditional_gap(const DiscreteParams& dp, std::int64_t n_past,
                       std::int64_t n_future);

// Probability of emitting symbol 1 from causal state n:
//   1 - Phi(n+1)/Phi(n).
// Strictly decreasing in n for non-extremal parameters, with limit
// 1 - max(Gamma1, Gamma2).
double emission_prob(const DiscreteParams& dp, std::int64_t n);

// Steady-state normalization mu with mu * sum_n Phi(n) = 1:
//   mu = (1-Gamma1)(1-Gamma2) / (p(1-Gamma2) + (1-p)(1-Gamma1)).
double normalization_mu(const DiscreteParams& dp);

// Steady-state probability of causal state n: mu * Phi(n).
double steady_state_prob(const DiscreteParams& dp, std::int64_t n);

// Smallest N such that the steady-state tail mass beyond N is provably below
// tail_eps: mu * Gmax^(N+1) / (1-Gmax) < tail_eps with Gmax = max(Gamma1,
// Gamma2). Infinite sums over the steady state may stop after index N.
std::int64_t tail_cutoff_index(const DiscreteParams& dp,
                               double tail_eps = 1e-12);

// Closed form of sum_{n >= t} Phi(n) = p Gamma1^t/(1-Gamma1)
//                                    + (1-p) Gamma2^t/(1-Gamma2).
double survival_tail_sum(const DiscreteParams& dp, std::int64_t t);

// Survival functions of general discrete renewal processes. Only the dual
// Poisson member ships; the interface is the seam where other renewal
// processes would plug in.
class SurvivalFunction {
 public:
  virtual ~SurvivalFunction() = default;
  virtual double operator()(std::int64_t n) const = 0;
};

class DualPoissonSurvival final : public SurvivalFunction {
 public:
  explicit DualPoissonSurvival(DiscreteParams dp);
  double operator()(std::int64_t n) const override;
  const DiscreteParams& params() const noexcept { return dp_; }

 private:
  DiscreteParams dp_;
};

}  // namespace dpsim
