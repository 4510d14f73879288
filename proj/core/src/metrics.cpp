#include "dpsim/metrics.hpp"

#include <cmath>

#include "dpsim/classical.hpp"
#include "dpsim/quantum.hpp"

namespace dpsim {

DensityMatrix2 density_matrix(const DiscreteParams& dp) {
  dp.validate();
  const double g = overlap_g(dp);
  if (!(g < 1.0))
    throw DegenerateParameterError(
        "density matrix closed form requires g < 1 (Gamma1 != Gamma2)");
  const double mu = normalization_mu(dp);
  const double pbar = 1.0 - dp.p;
  const double root = std::sqrt(1.0 - g * g);
  const double q2 = 1.0 - dp.Gamma2;
  const double r00 = mu * (dp.p / (1.0 - dp.Gamma1) + g * g * pbar / q2);
  const double r11 = mu * (1.0 - g * g) * pbar / q2;
  const double re01 = mu * g * root * pbar / q2;
  const double im01 = -mu * root * std::sqrt(dp.p * pbar) /
                      (1.0 - std::sqrt(dp.Gamma1 * dp.Gamma2));
  DensityMatrix2 rho;
  rho.m << std::complex<double>(r00, 0.0), std::complex<double>(re01, im01),
      std::complex<double>(re01, -im01), std::complex<double>(r11, 0.0);
  return rho;
}

DensityMatrix2 density_matrix_direct(const DiscreteParams& dp,
                                     double tail_eps) {
  dp.validate();
  const std::int64_t cutoff = tail_cutoff_index(dp, tail_eps);
  const double mu = normalization_mu(dp);
  Eigen::Matrix2cd acc = Eigen::Matrix2cd::Zero();
  double t1 = dp.p;
  double t2 = 1.0 - dp.p;
  double phi = 1.0;
  for (std::int64_t n = 0; n <= cutoff; ++n) {
    const QubitState s = memory_state(dp, n);
    const Eigen::Vector2cd v(s.amp0, s.amp1);
    acc += (mu * phi) * (v * v.adjoint());
    t1 *= dp.Gamma1;
    t2 *= dp.Gamma2;
    phi = t1 + t2;
  }
  return DensityMatrix2{acc};
}

std::pair<double, double> eigvals2(const DensityMatrix2& rho) {
  const double a = rho.m(0, 0).real();
  const double d = rho.m(1, 1).real();
  const double off2 = std::norm(rho.m(0, 1));
  const double half_trace = 0.5 * (a + d);
  const double disc = std::sqrt(0.25 * (a - d) * (a - d) + off2);
  const double l1 = half_trace + disc;
  const double det = a * d - off2;
  const double l2 = l1 > 0.0 ? det / l1 : 0.0;
  return {l1, l2};
}

double cq(const DensityMatrix2& rho) {
  const auto [l1, l2] = eigvals2(rho);
  double h = 0.0;
  if (l1 > 0.0) h -= l1 * std::log2(l1);
  if (l2 > 0.0) h -= l2 * std::log2(l2);
  return h;
}

double dq(const DensityMatrix2& rho, double rank_tol) {
  const auto [l1, l2] = eigvals2(rho);
  const int rank = 1 + (l2 > rank_tol * l1 ? 1 : 0);
  return std::log2(static_cast<double>(rank));
}

QuantumMetrics quantum_memory_metrics(const DiscreteParams& dp) {
  dp.validate();
  // A single effective channel (or coinciding generator states) keeps the
  // memory in one pure state, so the steady state has entropy 0 and rank 1.
  if (!dp.non_extremal()) return {0.0, 0.0};
  const DensityMatrix2 rho = density_matrix(dp);
  return {cq(rho), dq(rho)};
}

ContinuumResult continuum_metrics(double gamma, double p, double tol) {
  if (!std::isfinite(gamma) || gamma <= 0.0)
    throw InvalidParameterError("gamma must be finite and > 0");
  if (!std::isfinite(p) || p < 0.0 || p > 1.0)
    throw InvalidParameterError("p must be in [0, 1]");
  if (!std::isfinite(tol) || tol <= 0.0)
    throw InvalidParameterError("tol must be > 0");
  // Canonical orientation: (gamma, p) and (1/gamma, 1-p) describe the same
  // process, so evaluate every point with the faster channel first.
  double cg = gamma;
  double cp = p;
  if (cg < 1.0) {
    cg = 1.0 / cg;
    cp = 1.0 - cp;
  }
  if (cg == 1.0 || cp == 0.0 || cp == 1.0) return {0.0, 0.0, 0.0, 0, true};

  const auto eval = [&](double dt) {
    return quantum_memory_metrics(discretize(ProcessParams{cg, 1.0, cp, dt}));
  };
  constexpr int kMaxHalvings = 30;
  double dt = 0.1 / cg;
  QuantumMetrics prev = eval(dt);
  for (int k = 1; k <= kMaxHalvings; ++k) {
    dt *= 0.5;
    const QuantumMetrics cur = eval(dt);
    if (std::abs(cur.cq - prev.cq) < tol)
      return {cur.cq, cur.dq, dt, k, false};
    prev = cur;
  }
  return {prev.cq, prev.dq, dt, kMaxHalvings, false};
}

double continuum_cq(double gamma, double p, double tol) {
  return continuum_metrics(gamma, p, tol).cq;
}

MetricsReport report(const ProcessParams& params, double delta) {
  params.validate();
  const DiscreteParams dp = discretize(params);
  MetricsReport r;
  r.params = params;
  r.delta = delta;
  r.g = overlap_g(dp);
  r.mu = normalization_mu(dp);
  r.n_term = compute_n_term(dp, delta);
  r.cmu_exact = stat_complexity_exact(dp);
  r.cmu_trunc = stat_complexity_truncated_at(dp, r.n_term);
  r.dmu_trunc = top_complexity_truncated(r.n_term);
  const QuantumMetrics qm = quantum_memory_metrics(dp);
  r.cq = qm.cq;
  r.dq = qm.dq;
  return r;
}

}  // namespace dpsim
