#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "dpsim/metrics.hpp"
#include "dpsim/process.hpp"

namespace dpsim {

// Geometric dt grid, descending from dt_max to dt_min. points >= 1;
// 0 < dt_min <= dt_max (reversed bounds are an error).
struct PrecisionGrid {
  double dt_max = 0.2;
  double dt_min = 0.2 / 1024.0;
  int points = 11;

  std::vector<double> values() const;
};

// Log-spaced gamma = gamma1/gamma2 axis crossed with a linear p axis.
struct FamilyGrid {
  double gamma_min = 1.1;
  double gamma_max = 1000.0;
  int gamma_points = 40;
  double p_min = 0.02;
  double p_max = 0.98;
  int p_points = 40;

  std::vector<double> gamma_values() const;
  std::vector<double> p_values() const;
};

enum class SweepMode { precision, family };

struct SweepSpec {
  SweepMode mode = SweepMode::precision;
  // gamma1, gamma2, p fix the process for precision mode; dt comes from the
  // grid. Unused in family mode.
  ProcessParams base{12.0, 1.0, 0.9, 0.1};
  double delta = 0.01;
  PrecisionGrid precision_grid;
  FamilyGrid family_grid;
  double continuum_tol = 1e-4;
  // 0 selects hardware concurrency. Parallelism never changes row values
  // or ordering.
  int threads = 0;
  // Output path, empty for standard output. Consumed by the CLI layer.
  std::string out;
};

struct PrecisionRow {
  double dt = 0.0;
  double cmu_exact = 0.0;
  double cmu_trunc = 0.0;
  double dmu_trunc = 0.0;
  double cq = 0.0;
  double dq = 0.0;
};

struct FamilyRow {
  double gamma = 0.0;
  double p = 0.0;
  double cq = 0.0;
  double dq = 0.0;
  bool degenerate = false;
};

// One row per grid point, in grid order: descending dt for precision mode,
// gamma-major (gamma outer, p inner, both ascending) for family mode.
struct SweepTable {
  SweepMode mode = SweepMode::precision;
  std::vector<PrecisionRow> precision;
  std::vector<FamilyRow> family;
};

// Fails fast: degenerate fixed parameters (p in {0,1} or equal rates) throw
// DegenerateParameterError since they are a caller mistake here.
SweepTable sweep_precision(const SweepSpec& spec);

// Degenerate grid cells (gamma == 1 or p in {0,1}) are kept as rows marked
// degenerate with the analytic pure-state values Cq = Dq = 0.
SweepTable sweep_family(const SweepSpec& spec);

// CSV with a header row; precision columns dt,cmu_exact,cmu_trunc,dmu_trunc,
// cq,dq; family columns gamma,p,cq,dq,degenerate. Floats are shortest
// round-trip, '.' decimal separator, ',' field separator, '\n' line ends.
void write_csv(std::ostream& os, const SweepTable& table);
std::string to_csv(const SweepTable& table);

// Monte Carlo comparison of the classical and quantum engines against the
// analytic survival function and against each other.
struct SurvivalPoint {
  std::int64_t n = 0;
  double analytic = 0.0;
  double classical_emp = 0.0;
  double quantum_emp = 0.0;
  // |empirical - analytic| in units of the binomial sigma at the observed
  // gap count; 0 when sigma is 0 and the values agree exactly.
  double classical_dev_sigma = 0.0;
  double quantum_dev_sigma = 0.0;
};

struct EquivalenceReport {
  std::int64_t steps = 0;
  std::int64_t classical_gap_count = 0;
  std::int64_t quantum_gap_count = 0;
  std::vector<SurvivalPoint> survival;  // n = 0..10
  double max_dev_sigma = 0.0;
  double tv_distance = 0.0;  // gap-length histograms restricted to gaps <= 20
  double sigma_threshold = 4.0;
  double tv_threshold = 0.01;

  bool survival_pass() const { return max_dev_sigma < sigma_threshold; }
  bool tv_pass() const { return tv_distance < tv_threshold; }
  bool pass() const { return survival_pass() && tv_pass(); }
};

// Runs both engines for `steps` outputs from the reset state, with child
// seed streams 0 (classical) and 1 (quantum) derived from `seed`. Requires
// gamma1 != gamma2 (the quantum engine must exist); extremal p is allowed.
EquivalenceReport equivalence_study(const ProcessParams& params, double delta,
                                    std::int64_t steps, std::uint64_t seed);

}  // namespace dpsim
