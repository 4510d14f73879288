#include "dpsim/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <ostream>
#include <sstream>
#include <thread>

#include "dpsim/classical.hpp"
#include "dpsim/io.hpp"
#include "dpsim/quantum.hpp"
#include "dpsim/rng.hpp"

namespace dpsim {

namespace {

// Runs fn(0..count-1) on up to `threads` workers. Each index writes only its
// own output slot, so results and ordering match the serial run exactly.
void parallel_for(std::int64_t count, int threads,
                  const std::function<void(std::int64_t)>& fn) {
  int workers = threads > 0
                    ? threads
                    : static_cast<int>(std::thread::hardware_concurrency());
  if (workers < 1) workers = 1;
  if (workers == 1 || count < 2) {
    for (std::int64_t i = 0; i < count; ++i) fn(i);
    return;
  }
  if (workers > count) workers = static_cast<int>(count);
  std::atomic<std::int64_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::int64_t i = next.fetch_add(1);
      if (i >= count) return;
      fn(i);
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
}

void check_grid_axis(double lo, double hi, int points, const char* what) {
  if (points < 1)
    throw InvalidParameterError(std::string(what) + ": points must be >= 1");
  if (!std::isfinite(lo) || !std::isfinite(hi) || lo > hi)
    throw InvalidParameterError(std::string(what) + ": bounds must be ordered");
}

std::vector<double> geometric_axis(double lo, double hi, int points) {
  // Descending from hi to lo; endpoints exact. Chained multiplication keeps
  // power-of-two ladders (e.g. successive dt halvings) bit-exact, because the
  // per-step ratio itself rounds to an exact power of two.
  std::vector<double> v(static_cast<std::size_t>(points));
  if (points == 1) {
    v[0] = hi;
    return v;
  }
  const double step = std::pow(lo / hi, 1.0 / (points - 1));
  v[0] = hi;
  for (int k = 1; k < points - 1; ++k)
    v[static_cast<std::size_t>(k)] = v[static_cast<std::size_t>(k - 1)] * step;
  v[static_cast<std::size_t>(points - 1)] = lo;
  return v;
}

}  // namespace

std::vector<double> PrecisionGrid::values() const {
  check_grid_axis(dt_min, dt_max, points, "dt grid");
  if (dt_min <= 0.0) throw InvalidParameterError("dt grid: dt_min must be > 0");
  return geometric_axis(dt_min, dt_max, points);
}

std::vector<double> FamilyGrid::gamma_values() const {
  check_grid_axis(gamma_min, gamma_max, gamma_points, "gamma grid");
  if (gamma_min <= 0.0)
    throw InvalidParameterError("gamma grid: gamma_min must be > 0");
  std::vector<double> v = geometric_axis(gamma_min, gamma_max, gamma_points);
  std::reverse(v.begin(), v.end());  // ascending
  return v;
}

std::vector<double> FamilyGrid::p_values() const {
  check_grid_axis(p_min, p_max, p_points, "p grid");
  if (p_min < 0.0 || p_max > 1.0)
    throw InvalidParameterError("p grid: bounds must be in [0, 1]");
  std::vector<double> v(static_cast<std::size_t>(p_points));
  if (p_points == 1) {
    v[0] = p_min;
    return v;
  }
  for (int j = 0; j < p_points; ++j)
    v[static_cast<std::size_t>(j)] =
        j == p_points - 1
            ? p_max
            : p_min + (p_max - p_min) * (static_cast<double>(j) / (p_points - 1));
  return v;
}

SweepTable sweep_precision(const SweepSpec& spec) {
  ProcessParams base = spec.base;
  base.dt = 1.0;  // grid supplies dt; validate the fixed part
  base.validate();
  if (!base.non_extremal())
    throw DegenerateParameterError(
        "precision sweep requires non-extremal fixed parameters");
  const std::vector<double> dts = spec.precision_grid.values();

  SweepTable table;
  table.mode = SweepMode::precision;
  table.precision.resize(dts.size());
  parallel_for(
      static_cast<std::int64_t>(dts.size()), spec.threads,
      [&](std::int64_t i) {
        const double dt = dts[static_cast<std::size_t>(i)];
        const DiscreteParams dp = discretize(
            ProcessParams{base.gamma1, base.gamma2, base.p, dt});
        if (!dp.non_extremal())
          throw DegenerateParameterError(
              "dt grid point discretizes to degenerate parameters");
        PrecisionRow row;
        row.dt = dt;
        const std::int64_t n_term = compute_n_term(dp, spec.delta);
        row.cmu_exact = stat_complexity_exact(dp);
        row.cmu_trunc = stat_complexity_truncated_at(dp, n_term);
        row.dmu_trunc = top_complexity_truncated(n_term);
        const QuantumMetrics qm = quantum_memory_metrics(dp);
        row.cq = qm.cq;
        row.dq = qm.dq;
        table.precision[static_cast<std::size_t>(i)] = row;
      });
  return table;
}

SweepTable sweep_family(const SweepSpec& spec) {
  const std::vector<double> gammas = spec.family_grid.gamma_values();
  const std::vector<double> ps = spec.family_grid.p_values();

  SweepTable table;
  table.mode = SweepMode::family;
  table.family.resize(gammas.size() * ps.size());
  const std::int64_t cells = static_cast<std::int64_t>(table.family.size());
  parallel_for(cells, spec.threads, [&](std::int64_t idx) {
    const std::size_t i = static_cast<std::size_t>(idx) / ps.size();
    const std::size_t j = static_cast<std::size_t>(idx) % ps.size();
    const ContinuumResult res =
        continuum_metrics(gammas[i], ps[j], spec.continuum_tol);
    table.family[static_cast<std::size_t>(idx)] =
        FamilyRow{gammas[i], ps[j], res.cq, res.dq, res.degenerate};
  });
  return table;
}

void write_csv(std::ostream& os, const SweepTable& table) {
  if (table.mode == SweepMode::precision) {
    os << "dt,cmu_exact,cmu_trunc,dmu_trunc,cq,dq\n";
    for (const PrecisionRow& r : table.precision)
      os << format_double(r.dt) << ',' << format_double(r.cmu_exact) << ','
         << format_double(r.cmu_trunc) << ',' << format_double(r.dmu_trunc)
         << ',' << format_double(r.cq) << ',' << format_double(r.dq) << '\n';
    return;
  }
  os << "gamma,p,cq,dq,degenerate\n";
  for (const FamilyRow& r : table.family)
    os << format_double(r.gamma) << ',' << format_double(r.p) << ','
       << format_double(r.cq) << ',' << format_double(r.dq) << ','
       << (r.degenerate ? '1' : '0') << '\n';
}

std::string to_csv(const SweepTable& table) {
  std::ostringstream os;
  write_csv(os, table);
  return os.str();
}

namespace {

std::vector<std::int64_t> gap_lengths(const std::vector<std::uint8_t>& seq) {
  std::vector<std::int64_t> gaps;
  std::int64_t since_event = -1;  // -1 until the first event
  for (std::uint8_t s : seq) {
    if (s == 1) {
      if (since_event >= 0) gaps.push_back(since_event);
      since_event = 0;
    } else if (since_event >= 0) {
      ++since_event;
    }
  }
  return gaps;
}

double empirical_survival(const std::vector<std::int64_t>& sorted_gaps,
                          std::int64_t n) {
  if (sorted_gaps.empty()) return 0.0;
  const auto it =
      std::lower_bound(sorted_gaps.begin(), sorted_gaps.end(), n);
  return static_cast<double>(sorted_gaps.end() - it) /
         static_cast<double>(sorted_gaps.size());
}

}  // namespace

EquivalenceReport equivalence_study(const ProcessParams& params, double delta,
                                    std::int64_t steps, std::uint64_t seed) {
  params.validate();
  if (steps <= 0) throw InvalidParameterError("steps must be positive");
  const DiscreteParams dp = discretize(params);
  const TruncatedEpsilonMachine machine = build_machine(dp, delta);
  const QuantumModel model = QuantumModel::build(dp);

  const std::vector<std::uint8_t> classical_seq =
      simulate(machine, 0, steps, child_seed(seed, 0));
  const std::vector<std::uint8_t> quantum_seq =
      simulate(model, 0, steps, child_seed(seed, 1));

  std::vector<std::int64_t> cgaps = gap_lengths(classical_seq);
  std::vector<std::int64_t> qgaps = gap_lengths(quantum_seq);
  std::sort(cgaps.begin(), cgaps.end());
  std::sort(qgaps.begin(), qgaps.end());

  EquivalenceReport rep;
  rep.steps = steps;
  rep.classical_gap_count = static_cast<std::int64_t>(cgaps.size());
  rep.quantum_gap_count = static_cast<std::int64_t>(qgaps.size());

  constexpr std::int64_t kSurvivalMaxN = 10;
  for (std::int64_t n = 0; n <= kSurvivalMaxN; ++n) {
    SurvivalPoint pt;
    pt.n = n;
    pt.analytic = survival(dp, n);
    pt.classical_emp = empirical_survival(cgaps, n);
    pt.quantum_emp = empirical_survival(qgaps, n);
    const auto dev = [&](double emp, std::int64_t count) {
      const double sigma =
          std::sqrt(pt.analytic * (1.0 - pt.analytic) /
                    std::max<std::int64_t>(count, 1));
      const double diff = std::abs(emp - pt.analytic);
      if (sigma == 0.0) return diff == 0.0 ? 0.0 : HUGE_VAL;
      return diff / sigma;
    };
    pt.classical_dev_sigma = dev(pt.classical_emp, rep.classical_gap_count);
    pt.quantum_dev_sigma = dev(pt.quantum_emp, rep.quantum_gap_count);
    rep.max_dev_sigma = std::max(
        {rep.max_dev_sigma, pt.classical_dev_sigma, pt.quantum_dev_sigma});
    rep.survival.push_back(pt);
  }

  constexpr std::int64_t kTvMaxGap = 20;
  const auto histogram = [&](const std::vector<std::int64_t>& gaps) {
    std::vector<double> h(static_cast<std::size_t>(kTvMaxGap) + 1, 0.0);
    std::int64_t total = 0;
    for (std::int64_t gap : gaps) {
      if (gap > kTvMaxGap) break;  // sorted
      ++h[static_cast<std::size_t>(gap)];
      ++total;
    }
    if (total > 0)
      for (double& x : h) x /= static_cast<double>(total);
    return h;
  };
  const std::vector<double> hc = histogram(cgaps);
  const std::vector<double> hq = histogram(qgaps);
  double tv = 0.0;
  for (std::size_t k = 0; k < hc.size(); ++k) tv += std::abs(hc[k] - hq[k]);
  rep.tv_distance = 0.5 * tv;
  return rep;
}

}  // namespace dpsim
