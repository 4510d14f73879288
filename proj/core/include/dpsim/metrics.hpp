#pragma once

#include <cstdint>
#include <utility>

#include <Eigen/Dense>

#include "dpsim/process.hpp"

namespace dpsim {

// Steady-state memory density matrix. Hermitian within 1e-12, trace 1 within
// 1e-12, eigenvalues >= -1e-12.
struct DensityMatrix2 {
  Eigen::Matrix2cd m;
};

// Closed form of the steady-state density matrix. Throws
// DegenerateParameterError when Gamma1 == Gamma2 (g = 1).
DensityMatrix2 density_matrix(const DiscreteParams& dp);

// Independent route: direct sum of mu Phi(n) |sigma(n)><sigma(n)| truncated
// at the analytic tail bound. Cross-validates the closed form.
DensityMatrix2 density_matrix_direct(const DiscreteParams& dp,
                                     double tail_eps = 1e-12);

// Eigenvalues (lambda1 >= lambda2, lambda1 + lambda2 = trace). lambda2 comes
// from det/lambda1, which stays accurate when the matrix is nearly pure.
std::pair<double, double> eigvals2(const DensityMatrix2& rho);

// Binary entropy of the spectrum in bits, with the 0 log 0 = 0 convention
// (slightly negative eigenvalues from rounding contribute 0).
double cq(const DensityMatrix2& rho);

// log2 of the number of eigenvalues above rank_tol * lambda1. The tolerance
// is relative to the leading eigenvalue so the cutoff is scale-free.
double dq(const DensityMatrix2& rho, double rank_tol = 1e-12);

struct QuantumMetrics {
  double cq = 0.0;
  double dq = 0.0;
};

// Cq and Dq for one parameter point. Degenerate parameters (p in {0,1} or
// Gamma1 == Gamma2) occupy a single pure memory state, so both metrics are
// exactly 0; that analytic path avoids evaluating the quantum construction
// where it is undefined.
QuantumMetrics quantum_memory_metrics(const DiscreteParams& dp);

// Continuum-limit metrics for the (gamma, p) family with gamma = gamma1 /
// gamma2. The point is first brought to the canonical orientation gamma >= 1
// via (gamma, p) -> (1/gamma, 1-p) (same model), then dt is halved from
// 0.1/gamma until Cq moves by less than tol between halvings.
struct ContinuumResult {
  double cq = 0.0;
  double dq = 0.0;
  double final_dt = 0.0;
  int halvings = 0;
  bool degenerate = false;
};

ContinuumResult continuum_metrics(double gamma, double p, double tol = 1e-4);
double continuum_cq(double gamma, double p, double tol = 1e-4);

// All memory metrics for one parameter point.
struct MetricsReport {
  ProcessParams params;
  double delta = 0.0;
  double g = 0.0;
  double mu = 0.0;
  std::int64_t n_term = 0;
  double cmu_exact = 0.0;
  double cmu_trunc = 0.0;
  double dmu_trunc = 0.0;
  double cq = 0.0;
  double dq = 0.0;
};

MetricsReport report(const ProcessParams& params, double delta = 0.01);

}  // namespace dpsim
