#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

#include <Eigen/Dense>

#include "doctest.h"
#include "dpsim/metrics.hpp"
#include "dpsim/process.hpp"

using namespace dpsim;

namespace {

const ProcessParams kRefPoint{12.0, 1.0, 0.9, 0.1};

DiscreteParams ref_point() { return discretize(kRefPoint); }

doctest::Approx near(double x, double eps = 1e-15) {
  return doctest::Approx(x).epsilon(eps);
}

double u(std::mt19937_64& g, double lo, double hi) {
  const double x = static_cast<double>(g() >> 11) * 0x1.0p-53;
  return lo + x * (hi - lo);
}

DiscreteParams random_point(std::mt19937_64& g) {
  const double gamma2 = std::exp(u(g, std::log(0.1), std::log(2.0)));
  const double ratio = std::exp(u(g, std::log(1.5), std::log(100.0)));
  const double p = u(g, 0.05, 0.95);
  const double dt = std::exp(u(g, std::log(0.01), std::log(0.3)));
  return discretize(ProcessParams{ratio * gamma2, gamma2, p, dt});
}

}  // namespace

TEST_CASE("closed-form density matrix frozen values") {
  const DensityMatrix2 rho = density_matrix(ref_point());
  CHECK(rho.m(0, 0).real() == near(0.68148293607900597, 1e-13));
  CHECK(rho.m(1, 1).real() == near(0.31851706392099403, 1e-13));
  CHECK(rho.m(0, 1).real() == near(0.20411122490872716, 1e-13));
  CHECK(rho.m(0, 1).imag() == near(-0.22596595187060605, 1e-13));
  // Hermitian, unit trace.
  CHECK(rho.m(1, 0) == std::conj(rho.m(0, 1)));
  CHECK(rho.m(0, 0).imag() == 0.0);
  CHECK((rho.m(0, 0) + rho.m(1, 1)).real() == near(1.0, 1e-13));
  CHECK_THROWS_AS(density_matrix(DiscreteParams{0.5, 0.5, 0.3}),
                  DegenerateParameterError);
}

TEST_CASE("direct steady-state sum reproduces the closed form") {
  std::mt19937_64 gen(4242);
  for (int i = 0; i < 25; ++i) {
    const DiscreteParams dp = random_point(gen);
    const DensityMatrix2 closed = density_matrix(dp);
    const DensityMatrix2 direct = density_matrix_direct(dp);
    CHECK((closed.m - direct.m).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("eigvals2 frozen values and stability route") {
  const DensityMatrix2 rho = density_matrix(ref_point());
  const auto [l1, l2] = eigvals2(rho);
  CHECK(l1 == near(0.85448280582615939, 1e-13));
  CHECK(l2 == near(0.14551719417384061, 1e-13));
  CHECK(l1 + l2 == near(1.0, 1e-13));
}

TEST_CASE("eigvals2 agrees with a self-adjoint eigensolver") {
  std::mt19937_64 gen(99);
  for (int i = 0; i < 20; ++i) {
    const DiscreteParams dp = random_point(gen);
    const DensityMatrix2 rho = density_matrix(dp);
    const auto [l1, l2] = eigvals2(rho);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> solver(rho.m);
    REQUIRE(solver.info() == Eigen::Success);
    // Solver returns ascending eigenvalues.
    CHECK(l2 == near(solver.eigenvalues()(0), 1e-10));
    CHECK(l1 == near(solver.eigenvalues()(1), 1e-10));
  }
}

TEST_CASE("cq and dq frozen values at the reference point") {
  const DensityMatrix2 rho = density_matrix(ref_point());
  CHECK(cq(rho) == near(0.5985074410361166, 1e-12));
  CHECK(dq(rho) == 1.0);  // rank 2 -> log2(2)
}

TEST_CASE("quantum metrics vanish exactly on the degenerate lines") {
  for (const DiscreteParams dp :
       {DiscreteParams{0.3, 0.9, 0.0}, DiscreteParams{0.3, 0.9, 1.0},
        DiscreteParams{0.6, 0.6, 0.4}}) {
    const QuantumMetrics m = quantum_memory_metrics(dp);
    CHECK(m.cq == 0.0);
    CHECK(m.dq == 0.0);
  }
}

TEST_CASE("cq is invariant under channel exchange") {
  std::mt19937_64 gen(7);
  for (int i = 0; i < 20; ++i) {
    const DiscreteParams dp = random_point(gen);
    const QuantumMetrics a = quantum_memory_metrics(dp);
    const QuantumMetrics b = quantum_memory_metrics(dp.exchanged());
    CHECK(std::abs(a.cq - b.cq) < 1e-12);
    CHECK(a.dq == b.dq);
  }
}

TEST_CASE("continuum metrics canonicalize the family coordinates") {
  const ContinuumResult res = continuum_metrics(12.0, 0.9);
  CHECK_FALSE(res.degenerate);
  CHECK(res.cq == near(0.6029092221934031, 1e-9));
  CHECK(res.dq == 1.0);
  CHECK(res.halvings == 5);
  CHECK(res.final_dt == near(0.1 / 12.0 / 32.0, 1e-12));
  // Mirror point maps to the same canonical evaluation.
  CHECK(continuum_cq(1.0 / 12.0, 0.1) == near(res.cq, 1e-12));
}

TEST_CASE("continuum metrics flag the degenerate family lines") {
  for (const auto& [gamma, p] :
       {std::pair{1.0, 0.5}, std::pair{5.0, 0.0}, std::pair{5.0, 1.0},
        std::pair{0.2, 1.0}}) {
    const ContinuumResult res = continuum_metrics(gamma, p);
    CHECK(res.degenerate);
    CHECK(res.cq == 0.0);
    CHECK(res.dq == 0.0);
  }
  CHECK_THROWS_AS(continuum_metrics(-1.0, 0.5), InvalidParameterError);
  CHECK_THROWS_AS(continuum_metrics(2.0, 1.5), InvalidParameterError);
  CHECK_THROWS_AS(continuum_metrics(2.0, 0.5, -1.0), InvalidParameterError);
}

TEST_CASE("report composes every metric at the reference point") {
  const MetricsReport r = report(kRefPoint, 0.01);
  CHECK(r.params.gamma1 == 12.0);
  CHECK(r.delta == 0.01);
  CHECK(r.g == near(0.53954174445136957));
  CHECK(r.mu == near(0.42757980763602567));
  CHECK(r.n_term == 28);
  CHECK(r.cmu_exact == near(3.3748762726700177, 1e-11));
  CHECK(r.cmu_trunc == near(3.2446766421815846, 1e-12));
  CHECK(r.dmu_trunc == near(4.8579809951275721));
  CHECK(r.cq == near(0.5985074410361166, 1e-12));
  CHECK(r.dq == 1.0);
}

TEST_CASE("report handles the degenerate lines without the quantum model") {
  const MetricsReport equal_rates = report(ProcessParams{3.0, 3.0, 0.5, 0.1});
  CHECK(equal_rates.g == 1.0);
  CHECK(equal_rates.cq == 0.0);
  CHECK(equal_rates.dq == 0.0);
  CHECK(equal_rates.cmu_exact > 0.0);

  const MetricsReport extremal = report(ProcessParams{12.0, 1.0, 1.0, 0.1});
  CHECK(extremal.cq == 0.0);
  CHECK(extremal.dq == 0.0);
}
