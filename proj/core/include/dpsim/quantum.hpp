#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "dpsim/process.hpp"
#include "dpsim/rng.hpp"

namespace dpsim {

// Raised if the orthonormal completion of the unitary loses rank. Cannot
// happen for valid parameters; kept as a guard rather than an assert so the
// failure is reportable.
class CompletionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Single-qubit pure state, |amp0|^2 + |amp1|^2 = 1 within 1e-12.
struct QubitState {
  std::complex<double> amp0{0.0, 0.0};
  std::complex<double> amp1{0.0, 0.0};

  double norm() const noexcept {
    return std::sqrt(std::norm(amp0) + std::norm(amp1));
  }
};

// <a|b>, conjugate-linear in a.
std::complex<double> inner(const QubitState& a, const QubitState& b);

// |<a|b>|: ray comparison, insensitive to global phase.
double fidelity(const QubitState& a, const QubitState& b);

// Basis ordering |memory> (x) |probe>, index = 2*mem + probe, i.e.
// {|00>, |01>, |10>, |11>}. U^dagger U = I within 1e-10.
struct TwoQubitUnitary {
  Eigen::Matrix4cd matrix;
};

// Conditional memory updates for outputs 0 and 1, E_j = <j|U|0> on the probe
// subspace. Completeness E0^dag E0 + E1^dag E1 = I within 1e-10.
struct KrausPair {
  Eigen::Matrix2cd E0;
  Eigen::Matrix2cd E1;
};

// Overlap of the generator states, g = sqrt((1-Gamma1)(1-Gamma2))
// / (1 - sqrt(Gamma1 Gamma2)); real, in (0, 1], and 1 iff Gamma1 == Gamma2.
double overlap_g(const DiscreteParams& dp);

// |phi1> = |0>, |phi2> = g|0> + sqrt(1-g^2)|1>.
// Throws DegenerateParameterError when g = 1 (the states coincide).
std::pair<QubitState, QubitState> generator_states(const DiscreteParams& dp);

// Memory state after n consecutive 0s:
//   sigma(n) = [sqrt(p Gamma1^n) + i g sqrt(pbar Gamma2^n)] / sqrt(Phi(n)) |0>
//            + [i sqrt((1-g^2) pbar Gamma2^n)] / sqrt(Phi(n)) |1>.
// Evaluated with channel-ratio scaling so large n cannot underflow.
QubitState memory_state(const DiscreteParams& dp, std::int64_t n);

// Columns for probe-|0> inputs are fixed by the model; the probe-|1> input
// columns are a deterministic orthonormal completion (canonical basis
// candidates e1, e3, e0, e2 through modified Gram-Schmidt), so the matrix is
// bit-reproducible.
TwoQubitUnitary build_unitary(const DiscreteParams& dp);

KrausPair kraus_ops(const TwoQubitUnitary& u);

// Simulation engine choice: 2x2 Kraus updates on the memory alone, or the
// full two-qubit statevector with explicit probe measurement. Mathematically
// identical; the equivalence is itself under test.
enum class SimBackend { kraus, full_unitary };

class QuantumModel {
 public:
  // Throws DegenerateParameterError when Gamma1 == Gamma2.
  static QuantumModel build(const DiscreteParams& dp);

  const DiscreteParams& params() const noexcept { return dp_; }
  const TwoQubitUnitary& unitary() const noexcept { return u_; }
  const KrausPair& kraus() const noexcept { return kraus_; }
  QubitState memory(std::int64_t n) const { return memory_state(dp_, n); }

 private:
  QuantumModel(DiscreteParams dp, TwoQubitUnitary u, KrausPair k)
      : dp_(dp), u_(std::move(u)), kraus_(std::move(k)) {}
  DiscreteParams dp_;
  TwoQubitUnitary u_;
  KrausPair kraus_;
};

// One protocol round: output 1 with probability |E1 memory|^2, else 0;
// the new memory is the normalized conditional update.
std::pair<int, QubitState> step(const QuantumModel& model,
                                const QubitState& memory, RandomStream& rng);

// Iterated protocol starting from memory sigma(start_n). Deterministic given
// (seed); uses the child stream rule with stream index 0.
std::vector<std::uint8_t> simulate(const QuantumModel& model,
                                   std::int64_t start_n, std::int64_t steps,
                                   std::uint64_t seed,
                                   SimBackend backend = SimBackend::kraus);

// Survival probability realized by the model: squared norm of
// (Pi_0 U)^n applied to sigma(0) (x) |0>.
double quantum_survival(const QuantumModel& model, std::int64_t n);

// U, E0, E1 as a JSON document, row-major [re, im] pairs at full double
// precision.
std::string model_to_json(const QuantumModel& model);

}  // namespace dpsim
