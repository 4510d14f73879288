#include "dpsim/quantum.hpp"

#include <array>
#include <cassert>
#include <cmath>

#include <nlohmann/json.hpp>

namespace dpsim {

namespace {

constexpr std::complex<double> kImag{0.0, 1.0};

double require_nondegenerate_g(const DiscreteParams& dp) {
  dp.validate();
  const double g = overlap_g(dp);
  if (!(g < 1.0))
    throw DegenerateParameterError(
        "generator states coincide (Gamma1 == Gamma2 gives g = 1)");
  return g;
}

// Orthonormal completion of columns 1 and 3 given fixed columns 0 and 2.
// Candidates are canonical basis vectors in the fixed order e1, e3, e0, e2;
// two Gram-Schmidt passes keep the result orthonormal to ~1e-15.
void complete_columns(Eigen::Matrix4cd& u) {
  std::vector<Eigen::Vector4cd> have = {u.col(0), u.col(2)};
  const std::array<int, 4> candidates = {1, 3, 0, 2};
  const std::array<int, 2> targets = {1, 3};
  std::size_t found = 0;
  for (int ci : candidates) {
    if (found == targets.size()) break;
    Eigen::Vector4cd v = Eigen::Vector4cd::Unit(ci);
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : have) v -= b.dot(v) * b;
    const double nrm = v.norm();
    if (nrm <= 1e-6) continue;  // candidate (nearly) inside the span
    v /= nrm;
    u.col(targets[found++]) = v;
    have.push_back(v);
  }
  if (found != targets.size())
    throw CompletionError("orthonormal completion of U lost rank");
}

}  // namespace

std::complex<double> inner(const QubitState& a, const QubitState& b) {
  return std::conj(a.amp0) * b.amp0 + std::conj(a.amp1) * b.amp1;
}

double fidelity(const QubitState& a, const QubitState& b) {
  return std::abs(inner(a, b));
}

double overlap_g(const DiscreteParams& dp) {
  dp.validate();
  return std::sqrt((1.0 - dp.Gamma1) * (1.0 - dp.Gamma2)) /
         (1.0 - std::sqrt(dp.Gamma1 * dp.Gamma2));
}

std::pair<QubitState, QubitState> generator_states(const DiscreteParams& dp) {
  const double g = require_nondegenerate_g(dp);
  QubitState phi1{1.0, 0.0};
  QubitState phi2{g, std::sqrt(1.0 - g * g)};
  return {phi1, phi2};
}

QubitState memory_state(const DiscreteParams& dp, std::int64_t n) {
  assert(n >= 0);
  const double g = require_nondegenerate_g(dp);
  const double pbar = 1.0 - dp.p;
  // Work with ratios to the dominant channel so Gamma^n never underflows:
  // the common factor Gmax^(n/2) cancels between numerators and sqrt(Phi).
  const double gmax = std::max(dp.Gamma1, dp.Gamma2);
  const double nd = static_cast<double>(n);
  const double r1 = std::pow(dp.Gamma1 / gmax, nd);
  const double r2 = std::pow(dp.Gamma2 / gmax, nd);
  const double scale = 1.0 / std::sqrt(dp.p * r1 + pbar * r2);
  const double a1 = std::sqrt(dp.p * r1) * scale;
  const double a2 = std::sqrt(pbar * r2) * scale;
  return QubitState{{a1, g * a2}, {0.0, std::sqrt(1.0 - g * g) * a2}};
}

TwoQubitUnitary build_unitary(const DiscreteParams& dp) {
  const double g = require_nondegenerate_g(dp);
  const double root = std::sqrt(1.0 - g * g);
  const double sp = std::sqrt(dp.p);
  const double spb = std::sqrt(1.0 - dp.p);
  const double sg1 = std::sqrt(dp.Gamma1);
  const double sg2 = std::sqrt(dp.Gamma2);
  const double sq1 = std::sqrt(1.0 - dp.Gamma1);
  const double sq2 = std::sqrt(1.0 - dp.Gamma2);
  // Reset-state pattern sqrt(p) + i sqrt(pbar) g shared by both columns.
  const std::complex<double> reset(sp, spb * g);

  Eigen::Matrix4cd u = Eigen::Matrix4cd::Zero();
  // U |0>|0>:
  u(0, 0) = sg1;
  u(1, 0) = sq1 * reset;
  u(3, 0) = kImag * (sq1 * spb * root);
  // U |1>|0>:
  const double w = sq2 - sq1 * g;
  u(0, 2) = (sg2 - sg1) * g / root;
  u(2, 2) = sg2;
  u(1, 2) = (w / root) * reset;
  u(3, 2) = kImag * (w * spb);

  complete_columns(u);
  return TwoQubitUnitary{u};
}

KrausPair kraus_ops(const TwoQubitUnitary& u) {
  KrausPair k;
  for (int j = 0; j < 2; ++j) {
    Eigen::Matrix2cd& e = (j == 0) ? k.E0 : k.E1;
    for (int row = 0; row < 2; ++row)
      for (int col = 0; col < 2; ++col) e(row, col) = u.matrix(2 * row + j, 2 * col);
  }
  return k;
}

QuantumModel QuantumModel::build(const DiscreteParams& dp) {
  TwoQubitUnitary u = build_unitary(dp);
  KrausPair k = kraus_ops(u);
  return QuantumModel(dp, std::move(u), std::move(k));
}

std::pair<int, QubitState> step(const QuantumModel& model,
                                const QubitState& memory, RandomStream& rng) {
  const KrausPair& k = model.kraus();
  const Eigen::Vector2cd m(memory.amp0, memory.amp1);
  const Eigen::Vector2cd v1 = k.E1 * m;
  const double p1 = v1.squaredNorm();
  if (rng.uniform() < p1) {
    const double nrm = std::sqrt(p1);
    return {1, QubitState{v1(0) / nrm, v1(1) / nrm}};
  }
  const Eigen::Vector2cd v0 = k.E0 * m;
  const double nrm = v0.norm();
  return {0, QubitState{v0(0) / nrm, v0(1) / nrm}};
}

std::vector<std::uint8_t> simulate(const QuantumModel& model,
                                   std::int64_t start_n, std::int64_t steps,
                                   std::uint64_t seed, SimBackend backend) {
  if (start_n < 0) throw InvalidParameterError("start_n must be >= 0");
  if (steps <= 0) throw InvalidParameterError("steps must be positive");
  RandomStream rng(seed, 0);
  std::vector<std::uint8_t> out(static_cast<std::size_t>(steps));
  const QubitState initial = model.memory(start_n);

  if (backend == SimBackend::kraus) {
    const KrausPair& k = model.kraus();
    Eigen::Vector2cd m(initial.amp0, initial.amp1);
    for (auto& symbol : out) {
      const Eigen::Vector2cd v1 = k.E1 * m;
      const double p1 = v1.squaredNorm();
      if (rng.uniform() < p1) {
        symbol = 1;
        m = v1 / std::sqrt(p1);
      } else {
        symbol = 0;
        const Eigen::Vector2cd v0 = k.E0 * m;
        m = v0 / v0.norm();
      }
    }
    return out;
  }

  const Eigen::Matrix4cd& u = model.unitary().matrix;
  Eigen::Vector2cd m(initial.amp0, initial.amp1);
  for (auto& symbol : out) {
    // memory (x) |0> = (m0, 0, m1, 0)
    const Eigen::Vector4cd s = u * Eigen::Vector4cd(m(0), 0.0, m(1), 0.0);
    const double p1 = std::norm(s(1)) + std::norm(s(3));
    if (rng.uniform() < p1) {
      symbol = 1;
      m = Eigen::Vector2cd(s(1), s(3)) / std::sqrt(p1);
    } else {
      symbol = 0;
      const Eigen::Vector2cd v(s(0), s(2));
      m = v / v.norm();
    }
  }
  return out;
}

double quantum_survival(const QuantumModel& model, std::int64_t n) {
  assert(n >= 0);
  const QubitState reset = model.memory(0);
  Eigen::Vector4cd s(reset.amp0, 0.0, reset.amp1, 0.0);
  const Eigen::Matrix4cd& u = model.unitary().matrix;
  for (std::int64_t i = 0; i < n; ++i) {
    s = u * s;
    s(1) = 0.0;  // project the probe onto |0>
    s(3) = 0.0;
  }
  return s.squaredNorm();
}

std::string model_to_json(const QuantumModel& model) {
  using json = nlohmann::ordered_json;
  auto matrix_to_json = [](const auto& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      for (Eigen::Index c = 0; c < m.cols(); ++c)
        rows.push_back({m(r, c).real(), m(r, c).imag()});
    return rows;
  };
  const DiscreteParams& dp = model.params();
  json doc;
  doc["Gamma1"] = dp.Gamma1;
  doc["Gamma2"] = dp.Gamma2;
  doc["p"] = dp.p;
  doc["g"] = overlap_g(dp);
  doc["basis"] = "memory-probe";
  doc["U"] = matrix_to_json(model.unitary().matrix);
  doc["E0"] = matrix_to_json(model.kraus().E0);
  doc["E1"] = matrix_to_json(model.kraus().E1);
  return doc.dump();
}

}  // namespace dpsim
