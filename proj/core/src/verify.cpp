#include "dpsim/verify.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "dpsim/classical.hpp"
#include "dpsim/metrics.hpp"
#include "dpsim/quantum.hpp"

namespace dpsim {

namespace {

CheckResult checked(std::string name, double value, double bound,
                    std::string note = {}) {
  CheckResult r;
  r.name = std::move(name);
  r.value = value;
  r.bound = bound;
  r.status = value <= bound ? CheckStatus::pass : CheckStatus::fail;
  r.note = std::move(note);
  return r;
}

CheckResult skipped(std::string name, std::string note) {
  CheckResult r;
  r.name = std::move(name);
  r.status = CheckStatus::skip;
  r.note = std::move(note);
  return r;
}

// |mu * sum_n Phi(n) - 1| with the geometric tail added back analytically.
CheckResult check_survival_normalization(const DiscreteParams& dp,
                                         std::int64_t tail_index) {
  const double mu = normalization_mu(dp);
  double partial = 0.0;
  for (std::int64_t n = 0; n < tail_index; ++n) partial += survival(dp, n);
  const double total = mu * (partial + survival_tail_sum(dp, tail_index));
  return checked("survival-normalization", std::abs(total - 1.0), 1e-10);
}

// The gap distribution conditioned on any past must sum to 1. The partial sum
// telescopes to (Phi(a) - Phi(a+B)) / Phi(a); the remainder Phi(a+B) / Phi(a)
// is added back so the check targets rounding, not truncation.
CheckResult check_conditional_normalization(const DiscreteParams& dp,
                                            std::int64_t n_term,
                                            std::int64_t tail_index) {
  const std::int64_t pasts[] = {0, 1, n_term};
  const std::int64_t gaps = tail_index + 16;
  double worst = 0.0;
  for (const std::int64_t a : pasts) {
    double sum = 0.0;
    for (std::int64_t b = 0; b < gaps; ++b) sum += conditional_gap(dp, a, b);
    sum += survival(dp, a + gaps) / survival(dp, a);
    worst = std::max(worst, std::abs(sum - 1.0));
  }
  return checked("conditional-gap-normalization", worst, 1e-10);
}

CheckResult check_survival_symmetry(const DiscreteParams& dp,
                                    std::int64_t tail_index, double bound) {
  const DiscreteParams ex = dp.exchanged();
  double worst = 0.0;
  for (std::int64_t n = 0; n <= 2 * tail_index; ++n) {
    worst = std::max(worst, std::abs(survival(dp, n) - survival(ex, n)));
  }
  return checked("survival-symmetry", worst, bound,
                 "survival is invariant under channel exchange");
}

CheckResult check_stationary_match(const DiscreteParams& dp, double delta,
                                   double bound) {
  const TruncatedEpsilonMachine machine = build_machine(dp, delta);
  const std::vector<double> pi = stationary_distribution(machine);
  const std::vector<double> agg =
      aggregated_state_distribution(dp, machine.n_term);
  double worst = 0.0;
  for (std::size_t i = 0; i < pi.size(); ++i) {
    worst = std::max(worst, std::abs(pi[i] - agg[i]));
  }
  return checked("stationary-aggregated-match", worst, bound,
                 "truncated-chain stationary distribution vs aggregation");
}

CheckResult check_cmu_merging(const DiscreteParams& dp, double delta) {
  const double trunc = stat_complexity_truncated(dp, delta);
  const double exact = stat_complexity_exact(dp);
  return checked("cmu-merging", trunc - exact, 1e-12,
                 "merging states cannot raise statistical complexity");
}

CheckResult check_unitarity(const QuantumModel& model, double bound) {
  const Eigen::Matrix4cd& u = model.unitary().matrix;
  const Eigen::Matrix4cd gap =
      u.adjoint() * u - Eigen::Matrix4cd::Identity();
  return checked("unitarity", gap.cwiseAbs().maxCoeff(), bound);
}

CheckResult check_kraus_completeness(const QuantumModel& model, double bound) {
  const KrausPair& k = model.kraus();
  const Eigen::Matrix2cd gap = k.E0.adjoint() * k.E0 +
                               k.E1.adjoint() * k.E1 -
                               Eigen::Matrix2cd::Identity();
  return checked("kraus-completeness", gap.cwiseAbs().maxCoeff(), bound);
}

// Both Kraus branches applied to sigma(n) must reproduce the conditional
// branch probabilities (amplitude check) and land on the rays of sigma(n+1)
// and sigma(0) (fidelity check, phase-insensitive).
std::pair<CheckResult, CheckResult> check_recurrence(const QuantumModel& model,
                                                     std::int64_t n_term,
                                                     double bound) {
  const DiscreteParams& dp = model.params();
  const KrausPair& k = model.kraus();
  const QubitState reset = memory_state(dp, 0);
  double worst_amp = 0.0;
  double worst_deficit = 0.0;
  for (std::int64_t n = 0; n <= n_term + 10; ++n) {
    const QubitState sn = memory_state(dp, n);
    const Eigen::Vector2cd v(sn.amp0, sn.amp1);
    const Eigen::Vector2cd v0 = k.E0 * v;
    const Eigen::Vector2cd v1 = k.E1 * v;
    const double ratio = survival(dp, n + 1) / survival(dp, n);
    worst_amp = std::max(worst_amp, std::abs(v0.norm() - std::sqrt(ratio)));
    worst_amp =
        std::max(worst_amp, std::abs(v1.norm() - std::sqrt(1.0 - ratio)));

    const QubitState cont{v0(0) / v0.norm(), v0(1) / v0.norm()};
    const QubitState jump{v1(0) / v1.norm(), v1(1) / v1.norm()};
    worst_deficit =
        std::max(worst_deficit, 1.0 - fidelity(memory_state(dp, n + 1), cont));
    worst_deficit = std::max(worst_deficit, 1.0 - fidelity(reset, jump));
  }
  return {checked("recurrence-amplitude", worst_amp, bound),
          checked("recurrence-fidelity", worst_deficit, bound,
                  "fidelity deficit from 1")};
}

// Single incremental sweep of the projected evolution (Pi_0 U)^n so the whole
// range costs O(n_max) matrix applications.
CheckResult check_quantum_survival(const QuantumModel& model,
                                   std::int64_t n_term, double bound) {
  const DiscreteParams& dp = model.params();
  const Eigen::Matrix4cd& u = model.unitary().matrix;
  const QubitState s0 = model.memory(0);
  Eigen::Vector4cd s;
  s << s0.amp0, std::complex<double>(0.0), s0.amp1, std::complex<double>(0.0);
  double worst = std::abs(s.squaredNorm() - survival(dp, 0));
  const std::int64_t n_max = std::max<std::int64_t>(2 * n_term, 32);
  for (std::int64_t n = 1; n <= n_max; ++n) {
    s = u * s;
    s(1) = 0.0;
    s(3) = 0.0;
    worst = std::max(worst, std::abs(s.squaredNorm() - survival(dp, n)));
  }
  return checked("quantum-survival", worst, bound);
}

CheckResult check_density(const DiscreteParams& dp, double bound) {
  const DensityMatrix2 closed = density_matrix(dp);
  const DensityMatrix2 direct = density_matrix_direct(dp);
  const double entry = (closed.m - direct.m).cwiseAbs().maxCoeff();
  const double dcq = std::abs(cq(closed) - cq(direct));
  return checked("density-cross-check", std::max(entry, dcq), bound,
                 "closed form vs direct steady-state sum");
}

// Every 3x3 Gram determinant over consecutive memory states must vanish:
// the states never leave a two-dimensional span.
CheckResult check_span_rank(const DiscreteParams& dp, std::int64_t n_term) {
  const std::int64_t top = std::min<std::int64_t>(n_term, 40);
  std::vector<Eigen::Vector2cd> states;
  states.reserve(static_cast<std::size_t>(top) + 1);
  for (std::int64_t n = 0; n <= top; ++n) {
    const QubitState s = memory_state(dp, n);
    states.emplace_back(s.amp0, s.amp1);
  }
  double worst = 0.0;
  for (std::size_t i = 0; i + 2 < states.size(); ++i) {
    Eigen::Matrix3cd gram;
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) {
        gram(r, c) = states[i + static_cast<std::size_t>(r)].dot(
            states[i + static_cast<std::size_t>(c)]);
      }
    }
    worst = std::max(worst, std::abs(gram.determinant()));
  }
  return checked("memory-span-rank", worst, 1e-10,
                 "memory states stay inside a qubit");
}

CheckResult check_cq_symmetry(const DiscreteParams& dp, double bound) {
  const QuantumMetrics a = quantum_memory_metrics(dp);
  const QuantumMetrics b = quantum_memory_metrics(dp.exchanged());
  return checked("cq-exchange-symmetry", std::abs(a.cq - b.cq), bound);
}

}  // namespace

std::vector<CheckResult> run_invariant_suite(const ProcessParams& params,
                                             double delta,
                                             const VerifyTolerances& tol) {
  params.validate();
  const DiscreteParams dp = discretize(params);
  const std::int64_t n_term = compute_n_term(dp, delta);
  const std::int64_t tail_index = tail_cutoff_index(dp);

  std::vector<CheckResult> results;
  results.push_back(check_survival_normalization(dp, tail_index));
  results.push_back(check_conditional_normalization(dp, n_term, tail_index));
  results.push_back(check_survival_symmetry(dp, tail_index, tol.symmetry));
  results.push_back(check_stationary_match(dp, delta, tol.stationary));
  results.push_back(check_cmu_merging(dp, delta));

  if (!dp.non_extremal()) {
    const std::string note =
        "degenerate parameters: single pure memory state, no quantum model";
    for (const char* name :
         {"unitarity", "kraus-completeness", "recurrence-amplitude",
          "recurrence-fidelity", "quantum-survival", "density-cross-check",
          "memory-span-rank", "cq-exchange-symmetry"}) {
      results.push_back(skipped(name, note));
    }
    return results;
  }

  const QuantumModel model = QuantumModel::build(dp);
  results.push_back(check_unitarity(model, tol.unitarity));
  results.push_back(check_kraus_completeness(model, tol.kraus));
  auto [amp, fid] = check_recurrence(model, n_term, tol.recurrence);
  results.push_back(std::move(amp));
  results.push_back(std::move(fid));
  results.push_back(check_quantum_survival(model, n_term, tol.survival));
  results.push_back(check_density(dp, tol.density));
  results.push_back(check_span_rank(dp, n_term));
  results.push_back(check_cq_symmetry(dp, tol.symmetry));
  return results;
}

bool all_passed(const std::vector<CheckResult>& results) {
  for (const CheckResult& r : results) {
    if (r.status == CheckStatus::fail) return false;
  }
  return true;
}

}  // namespace dpsim
