#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <vector>

#include "doctest.h"
#include "dpsim/experiments.hpp"
#include "dpsim/metrics.hpp"
#include "dpsim/process.hpp"

using namespace dpsim;

namespace {

const ProcessParams kRefPoint{12.0, 1.0, 0.9, 0.1};

doctest::Approx near(double x, double eps = 1e-15) {
  return doctest::Approx(x).epsilon(eps);
}

}  // namespace

TEST_CASE("precision grid is geometric, descending, endpoint-exact") {
  const PrecisionGrid grid;  // defaults
  const std::vector<double> v = grid.values();
  REQUIRE(v.size() == 11);
  CHECK(v.front() == 0.2);
  CHECK(v.back() == 0.2 / 1024.0);  // power-of-two ratio: exact
  for (std::size_t i = 1; i < v.size(); ++i) {
    CHECK(v[i] < v[i - 1]);
    CHECK(v[i] > 0.0);
    // Constant ratio of 1/2 between neighbors for the default grid.
    CHECK(v[i] / v[i - 1] == near(0.5, 1e-12));
  }
}

TEST_CASE("grid validation rejects reversed or empty axes") {
  CHECK_THROWS_AS((PrecisionGrid{0.1, 0.2, 5}.values()),
                  InvalidParameterError);
  CHECK_THROWS_AS((PrecisionGrid{0.2, 0.1, 0}.values()),
                  InvalidParameterError);
  CHECK_THROWS_AS((PrecisionGrid{0.2, -0.1, 5}.values()),
                  InvalidParameterError);
  CHECK_THROWS_AS((FamilyGrid{10.0, 1.0, 5, 0.1, 0.9, 5}.gamma_values()),
                  InvalidParameterError);
  CHECK_THROWS_AS((FamilyGrid{1.0, 10.0, 5, -0.1, 0.9, 5}.p_values()),
                  InvalidParameterError);
  CHECK_THROWS_AS((FamilyGrid{1.0, 10.0, 5, 0.1, 1.1, 5}.p_values()),
                  InvalidParameterError);
}

TEST_CASE("single-point grids are allowed") {
  const PrecisionGrid grid{0.1, 0.1, 1};
  const std::vector<double> v = grid.values();
  REQUIRE(v.size() == 1);
  CHECK(v[0] == 0.1);
}

TEST_CASE("family grid axes carry the documented shape") {
  const FamilyGrid grid;  // defaults
  const std::vector<double> gammas = grid.gamma_values();
  const std::vector<double> ps = grid.p_values();
  REQUIRE(gammas.size() == 40);
  REQUIRE(ps.size() == 40);
  CHECK(gammas.front() == near(1.1, 1e-12));
  CHECK(gammas.back() == 1000.0);
  for (std::size_t i = 1; i < gammas.size(); ++i)
    CHECK(gammas[i] > gammas[i - 1]);
  CHECK(ps.front() == 0.02);
  CHECK(ps.back() == 0.98);
  for (std::size_t i = 1; i < ps.size(); ++i) CHECK(ps[i] > ps[i - 1]);
  // Linear spacing.
  const double step = ps[1] - ps[0];
  for (std::size_t i = 1; i < ps.size(); ++i)
    CHECK(ps[i] - ps[i - 1] == near(step, 1e-12));
}

TEST_CASE("precision sweep rows compose the single-point metrics") {
  SweepSpec spec;
  spec.mode = SweepMode::precision;
  spec.base = kRefPoint;
  spec.precision_grid = PrecisionGrid{0.2, 0.05, 3};
  const SweepTable table = sweep_precision(spec);
  REQUIRE(table.precision.size() == 3);
  for (const PrecisionRow& row : table.precision) {
    const MetricsReport r =
        report({kRefPoint.gamma1, kRefPoint.gamma2, kRefPoint.p, row.dt}, spec.delta);
    CHECK(row.cmu_exact == near(r.cmu_exact, 1e-13));
    CHECK(row.cmu_trunc == near(r.cmu_trunc, 1e-13));
    CHECK(row.dmu_trunc == r.dmu_trunc);
    CHECK(row.cq == near(r.cq, 1e-13));
    CHECK(row.dq == r.dq);
  }
  CHECK(table.precision[0].dt == 0.2);
  CHECK(table.precision[2].dt == 0.05);
}

TEST_CASE("precision sweep rejects degenerate fixed parameters") {
  SweepSpec spec;
  spec.mode = SweepMode::precision;
  spec.base = ProcessParams{3.0, 3.0, 0.5, 0.1};
  CHECK_THROWS_AS(sweep_precision(spec), DegenerateParameterError);
  spec.base = ProcessParams{12.0, 1.0, 1.0, 0.1};
  CHECK_THROWS_AS(sweep_precision(spec), DegenerateParameterError);
}

TEST_CASE("sweeps are deterministic and thread-count independent") {
  SweepSpec serial;
  serial.mode = SweepMode::family;
  serial.family_grid = FamilyGrid{1.5, 50.0, 5, 0.1, 0.9, 4};
  serial.threads = 1;
  SweepSpec parallel = serial;
  parallel.threads = 0;  // hardware concurrency
  const std::string a = to_csv(sweep_family(serial));
  const std::string b = to_csv(sweep_family(parallel));
  const std::string c = to_csv(sweep_family(parallel));
  CHECK(a == b);
  CHECK(b == c);
}

TEST_CASE("family sweep marks degenerate cells instead of failing") {
  SweepSpec spec;
  spec.mode = SweepMode::family;
  spec.family_grid = FamilyGrid{0.5, 2.0, 3, 0.0, 1.0, 3};
  const SweepTable table = sweep_family(spec);
  REQUIRE(table.family.size() == 9);
  int degenerate_rows = 0;
  for (const FamilyRow& row : table.family) {
    if (row.degenerate) {
      ++degenerate_rows;
      CHECK(row.cq == 0.0);
      CHECK(row.dq == 0.0);
    }
  }
  // p in {0, 1} at every gamma: at least 6 of 9 cells are degenerate.
  CHECK(degenerate_rows >= 6);

  // Ordering: gamma-major, p fastest.
  CHECK(table.family[0].gamma == table.family[1].gamma);
  CHECK(table.family[0].p < table.family[1].p);
  CHECK(table.family[3].gamma > table.family[0].gamma);
}

TEST_CASE("CSV output carries exact headers and round-trip floats") {
  SweepSpec spec;
  spec.mode = SweepMode::precision;
  spec.base = kRefPoint;
  spec.precision_grid = PrecisionGrid{0.2, 0.1, 2};
  const std::string csv = to_csv(sweep_precision(spec));
  CHECK(csv.rfind("dt,cmu_exact,cmu_trunc,dmu_trunc,cq,dq\n", 0) == 0);
  // Two data rows after the header.
  std::size_t lines = 0;
  for (const char ch : csv) lines += ch == '\n';
  CHECK(lines == 3);
  // First data cell parses back to the exact grid value.
  const std::size_t start = csv.find('\n') + 1;
  const std::size_t comma = csv.find(',', start);
  const double parsed = std::strtod(csv.substr(start, comma - start).c_str(),
                                    nullptr);
  CHECK(parsed == 0.2);

  SweepSpec fam;
  fam.mode = SweepMode::family;
  fam.family_grid = FamilyGrid{2.0, 4.0, 2, 0.3, 0.7, 2};
  const std::string fam_csv = to_csv(sweep_family(fam));
  CHECK(fam_csv.rfind("gamma,p,cq,dq,degenerate\n", 0) == 0);
}

TEST_CASE("equivalence study validates the two engines against each other") {
  const EquivalenceReport rep = equivalence_study(kRefPoint, 0.01, 400000, 7);
  CHECK(rep.steps == 400000);
  REQUIRE(rep.survival.size() == 11);
  CHECK(rep.survival[0].analytic == 1.0);
  CHECK(rep.survival[0].classical_emp == 1.0);
  CHECK(rep.survival[0].quantum_emp == 1.0);
  // Both engines produce roughly mu * steps events.
  const double expect =
      normalization_mu(discretize(kRefPoint)) * static_cast<double>(rep.steps);
  CHECK(std::abs(static_cast<double>(rep.classical_gap_count) - expect) <
        0.05 * expect);
  CHECK(std::abs(static_cast<double>(rep.quantum_gap_count) - expect) <
        0.05 * expect);
  CHECK(rep.max_dev_sigma < rep.sigma_threshold);
  CHECK(rep.tv_distance < rep.tv_threshold);
  CHECK(rep.survival_pass());
  CHECK(rep.tv_pass());
  CHECK(rep.pass());
}

TEST_CASE("equivalence study works at extremal p") {
  const EquivalenceReport rep =
      equivalence_study({12.0, 1.0, 1.0, 0.1}, 0.01, 400000, 3);
  CHECK(rep.pass());
  CHECK(rep.tv_distance < 0.005);
}

TEST_CASE("equivalence study rejects impossible configurations") {
  CHECK_THROWS_AS(equivalence_study({3.0, 3.0, 0.5, 0.1}, 0.01, 1000, 1),
                  DegenerateParameterError);
  CHECK_THROWS_AS(equivalence_study(kRefPoint, 0.01, 0, 1),
                  InvalidParameterError);
  CHECK_THROWS_AS(equivalence_study(kRefPoint, 0.01, -10, 1),
                  InvalidParameterError);
}
