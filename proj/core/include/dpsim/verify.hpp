#pragma once

#include <string>
#include <vector>

#include "dpsim/process.hpp"

namespace dpsim {

enum class CheckStatus { pass, fail, skip };

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::skip;
  // Worst measured deviation (for fidelity checks: deficit from 1).
  double value = 0.0;
  // Bound the value was compared against.
  double bound = 0.0;
  std::string note;
};

struct VerifyTolerances {
  double unitarity = 1e-10;
  double kraus = 1e-10;
  // Amplitude deviation bound; fidelities must exceed 1 - recurrence.
  double recurrence = 1e-9;
  double survival = 1e-9;
  double symmetry = 1e-12;
  double density = 1e-8;
  double stationary = 1e-12;
};

// Runs every analytic invariant of the models at one parameter point.
// Quantum checks are skipped (not failed) for degenerate parameters, where
// the quantum construction does not exist.
std::vector<CheckResult> run_invariant_suite(const ProcessParams& params,
                                             double delta,
                                             const VerifyTolerances& tol = {});

// True iff no check failed (skips are fine).
bool all_passed(const std::vector<CheckResult>& results);

}  // namespace dpsim
