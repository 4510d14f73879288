#include "dpsim/process.hpp"

#include <cassert>
#include <cmath>
#include <string>

namespace dpsim {

namespace {

bool in_unit_interval(double x) { return x >= 0.0 && x <= 1.0; }

[[noreturn]] void fail(const std::string& what) {
  throw InvalidParameterError(what);
}

}  // namespace

void ProcessParams::validate() const {
  if (!std::isfinite(gamma1) || gamma1 <= 0.0)
    fail("gamma1 must be finite and > 0");
  if (!std::isfinite(gamma2) || gamma2 <= 0.0)
    fail("gamma2 must be finite and > 0");
  if (!std::isfinite(p) || !in_unit_interval(p)) fail("p must be in [0, 1]");
  if (!std::isfinite(dt) || dt <= 0.0) fail("dt must be finite and > 0");
}

bool ProcessParams::non_extremal() const noexcept {
  return p != 0.0 && p != 1.0 && gamma1 != gamma2;
}

void DiscreteParams::validate() const {
  if (!std::isfinite(Gamma1) || Gamma1 <= 0.0 || Gamma1 >= 1.0)
    fail("Gamma1 must be in (0, 1)");
  if (!std::isfinite(Gamma2) || Gamma2 <= 0.0 || Gamma2 >= 1.0)
    fail("Gamma2 must be in (0, 1)");
  if (!std::isfinite(p) || !in_unit_interval(p)) fail("p must be in [0, 1]");
}

bool DiscreteParams::non_extremal() const noexcept {
  return p != 0.0 && p != 1.0 && Gamma1 != Gamma2;
}

DiscreteParams DiscreteParams::exchanged() const noexcept {
  return DiscreteParams{Gamma2, Gamma1, 1.0 - p};
}

DiscreteParams discretize(const ProcessParams& params) {
  params.validate();
  DiscreteParams dp{std::exp(-params.gamma1 * params.dt),
                    std::exp(-params.gamma2 * params.dt), params.p};
  // exp(-x) for x > 0 can round to 1.0 when x is below ~1e-17; that dt is
  // outside the supported precision range.
  dp.validate();
  return dp;
}

double survival(const DiscreteParams& dp, std::int64_t n) {
  assert(n >= 0);
  if (n == 0) return 1.0;
  return dp.p * std::pow(dp.Gamma1, static_cast<double>(n)) +
         (1.0 - dp.p) * std::pow(dp.Gamma2, static_cast<double>(n));
}

double conditional_gap(const DiscreteParams& dp, std::int64_t n_past,
                       std::int64_t n_future) {
  assert(n_past >= 0 && n_future >= 0);
  const std::int64_t m = n_past + n_future;
  return (survival(dp, m) - survival(dp, m + 1)) / survival(dp, n_past);
}

double emission_prob(const DiscreteParams& dp, std::int64_t n) {
  assert(n >= 0);
  return 1.0 - survival(dp, n + 1) / survival(dp, n);
}

double normalization_mu(const DiscreteParams& dp) {
  const double q1 = 1.0 - dp.Gamma1;
  const double q2 = 1.0 - dp.Gamma2;
  return q1 * q2 / (dp.p * q2 + (1.0 - dp.p) * q1);
}

double steady_state_prob(const DiscreteParams& dp, std::int64_t n) {
  return normalization_mu(dp) * survival(dp, n);
}

std::int64_t tail_cutoff_index(const DiscreteParams& dp, double tail_eps) {
  const double gmax = std::max(dp.Gamma1, dp.Gamma2);
  const double mu = normalization_mu(dp);
  // mu * gmax^(N+1) / (1-gmax) < tail_eps
  const double rhs = tail_eps * (1.0 - gmax) / mu;
  if (rhs >= gmax) return 0;
  const double n = std::log(rhs) / std::log(gmax) - 1.0;
  std::int64_t cut = static_cast<std::int64_t>(std::ceil(n));
  // The log-based estimate can be off by one ulp; settle it exactly.
  while (mu * std::pow(gmax, static_cast<double>(cut + 1)) / (1.0 - gmax) >=
         tail_eps)
    ++cut;
  return cut;
}

double survival_tail_sum(const DiscreteParams& dp, std::int64_t t) {
  assert(t >= 0);
  const double td = static_cast<double>(t);
  return dp.p * std::pow(dp.Gamma1, td) / (1.0 - dp.Gamma1) +
         (1.0 - dp.p) * std::pow(dp.Gamma2, td) / (1.0 - dp.Gamma2);
}

DualPoissonSurvival::DualPoissonSurvival(DiscreteParams dp) : dp_(dp) {
  dp_.validate();
}

double DualPoissonSurvival::operator()(std::int64_t n) const {
  return survival(dp_, n);
}

}  // namespace dpsim
