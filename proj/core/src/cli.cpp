#include "dpsim/cli.hpp"

#include <cstdint>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include <nlohmann/json.hpp>

#include "dpsim/classical.hpp"
#include "dpsim/experiments.hpp"
#include "dpsim/io.hpp"
#include "dpsim/metrics.hpp"
#include "dpsim/process.hpp"
#include "dpsim/quantum.hpp"
#include "dpsim/verify.hpp"

namespace dpsim {

namespace {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Writes to the path, or to standard output when the path is empty.
void emit(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content << std::flush;
    return;
  }
  std::ofstream ofs(path, std::ios::binary);
  if (!ofs) throw IoError("cannot open output file: " + path);
  ofs << content;
  ofs.flush();
  if (!ofs.good()) throw IoError("failed writing output file: " + path);
}

struct PointArgs {
  double gamma1 = 0.0;
  double gamma2 = 0.0;
  double p = 0.0;
  double dt = 0.0;

  ProcessParams params() const { return ProcessParams{gamma1, gamma2, p, dt}; }
};

void add_point_options(CLI::App* cmd, PointArgs& a) {
  cmd->add_option("--gamma1", a.gamma1, "decay rate of channel 1")->required();
  cmd->add_option("--gamma2", a.gamma2, "decay rate of channel 2")->required();
  cmd->add_option("--p", a.p, "probability of channel 1 at reset")->required();
  cmd->add_option("--dt", a.dt, "discretization timestep")->required();
}

struct MetricsArgs {
  PointArgs point;
  double delta = 0.01;
  std::string out;
};

int cmd_metrics(const MetricsArgs& a) {
  const ProcessParams params = a.point.params();
  params.validate();
  if (params.gamma1 == params.gamma2) {
    throw DegenerateParameterError(
        "gamma1 == gamma2: the memory states coincide and the metrics "
        "degenerate to 0");
  }
  const MetricsReport rep = report(params, a.delta);

  nlohmann::ordered_json j;
  j["gamma1"] = rep.params.gamma1;
  j["gamma2"] = rep.params.gamma2;
  j["p"] = rep.params.p;
  j["dt"] = rep.params.dt;
  j["delta"] = rep.delta;
  j["g"] = rep.g;
  j["mu"] = rep.mu;
  j["n_term"] = rep.n_term;
  j["cmu_exact"] = rep.cmu_exact;
  j["cmu_trunc"] = rep.cmu_trunc;
  j["dmu_trunc"] = rep.dmu_trunc;
  j["cq"] = rep.cq;
  j["dq"] = rep.dq;
  emit(a.out, j.dump(2) + "\n");
  return 0;
}

struct SweepArgs {
  std::string mode;
  PointArgs point;  // only gamma1/gamma2/p are meaningful (precision mode)
  bool have_point = false;
  double delta = 0.01;
  PrecisionGrid precision_grid;
  FamilyGrid family_grid;
  double continuum_tol = 1e-4;
  int threads = 0;
  std::string format = "csv";
  std::string out;
};

std::string sweep_json(const SweepTable& table) {
  nlohmann::ordered_json j;
  auto rows = nlohmann::ordered_json::array();
  if (table.mode == SweepMode::precision) {
    j["mode"] = "precision";
    for (const PrecisionRow& r : table.precision) {
      nlohmann::ordered_json row;
      row["dt"] = r.dt;
      row["cmu_exact"] = r.cmu_exact;
      row["cmu_trunc"] = r.cmu_trunc;
      row["dmu_trunc"] = r.dmu_trunc;
      row["cq"] = r.cq;
      row["dq"] = r.dq;
      rows.push_back(std::move(row));
    }
  } else {
    j["mode"] = "family";
    for (const FamilyRow& r : table.family) {
      nlohmann::ordered_json row;
      row["gamma"] = r.gamma;
      row["p"] = r.p;
      row["cq"] = r.cq;
      row["dq"] = r.dq;
      row["degenerate"] = r.degenerate;
      rows.push_back(std::move(row));
    }
  }
  j["rows"] = std::move(rows);
  return j.dump(2) + "\n";
}

int cmd_sweep(const SweepArgs& a) {
  SweepSpec spec;
  spec.delta = a.delta;
  spec.continuum_tol = a.continuum_tol;
  spec.threads = a.threads;
  spec.out = a.out;

  SweepTable table;
  if (a.mode == "precision") {
    if (!a.have_point) {
      throw InvalidParameterError(
          "sweep --mode precision requires --gamma1, --gamma2 and --p");
    }
    spec.mode = SweepMode::precision;
    spec.base = ProcessParams{a.point.gamma1, a.point.gamma2, a.point.p,
                              a.precision_grid.dt_max};
    spec.precision_grid = a.precision_grid;
    table = sweep_precision(spec);
  } else {
    spec.mode = SweepMode::family;
    spec.family_grid = a.family_grid;
    table = sweep_family(spec);
  }

  emit(a.out, a.format == "json" ? sweep_json(table) : to_csv(table));
  return 0;
}

struct SimulateArgs {
  std::string model;
  PointArgs point;
  double delta = 0.01;
  std::int64_t steps = 0;
  std::uint64_t seed = 0;
  std::int64_t start_n = 0;
  std::string backend = "kraus";
  std::string out;
};

// Completed gaps only: runs of 0s strictly between consecutive 1s.
std::vector<std::int64_t> gap_histogram(const std::vector<std::uint8_t>& bits) {
  std::vector<std::int64_t> histogram;
  std::int64_t since_event = -1;
  for (const std::uint8_t b : bits) {
    if (b == 0) {
      if (since_event >= 0) ++since_event;
      continue;
    }
    if (since_event >= 0) {
      if (static_cast<std::size_t>(since_event) >= histogram.size()) {
        histogram.resize(static_cast<std::size_t>(since_event) + 1, 0);
      }
      ++histogram[static_cast<std::size_t>(since_event)];
    }
    since_event = 0;
  }
  return histogram;
}

int cmd_simulate(const SimulateArgs& a) {
  const ProcessParams params = a.point.params();
  params.validate();
  const DiscreteParams dp = discretize(params);

  std::vector<std::uint8_t> bits;
  if (a.model == "classical") {
    const TruncatedEpsilonMachine machine = build_machine(dp, a.delta);
    bits = simulate(machine, a.start_n, a.steps, a.seed);
  } else {
    const QuantumModel model = QuantumModel::build(dp);
    const SimBackend backend =
        a.backend == "full" ? SimBackend::full_unitary : SimBackend::kraus;
    bits = simulate(model, a.start_n, a.steps, a.seed, backend);
  }

  constexpr std::size_t kWrap = 80;
  std::string text;
  text.reserve(bits.size() + bits.size() / kWrap + 256);
  std::int64_t ones = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    text.push_back(bits[i] ? '1' : '0');
    ones += bits[i];
    if ((i + 1) % kWrap == 0) text.push_back('\n');
  }
  if (bits.size() % kWrap != 0) text.push_back('\n');

  nlohmann::ordered_json trailer;
  trailer["model"] = a.model;
  trailer["steps"] = a.steps;
  trailer["seed"] = a.seed;
  trailer["ones"] = ones;
  trailer["gap_histogram"] = gap_histogram(bits);
  text += trailer.dump();
  text.push_back('\n');

  emit(a.out, text);
  return 0;
}

struct VerifyArgs {
  PointArgs point;
  double delta = 0.01;
  VerifyTolerances tol;
  std::string out;
};

const char* status_word(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass:
      return "pass";
    case CheckStatus::fail:
      return "fail";
    default:
      return "skip";
  }
}

int cmd_verify(const VerifyArgs& a) {
  const std::vector<CheckResult> results =
      run_invariant_suite(a.point.params(), a.delta, a.tol);

  std::string text;
  int passed = 0;
  int failed = 0;
  int skips = 0;
  for (const CheckResult& r : results) {
    text += status_word(r.status);
    text += ' ';
    text += r.name;
    if (r.status != CheckStatus::skip) {
      text += " value=" + format_double(r.value);
      text += " bound=" + format_double(r.bound);
    }
    if (!r.note.empty()) {
      text += "  # " + r.note;
    }
    text.push_back('\n');
    switch (r.status) {
      case CheckStatus::pass:
        ++passed;
        break;
      case CheckStatus::fail:
        ++failed;
        break;
      default:
        ++skips;
        break;
    }
  }
  text += "verify: " + std::to_string(results.size()) + " checks, " +
          std::to_string(passed) + " passed, " + std::to_string(failed) +
          " failed, " + std::to_string(skips) + " skipped\n";
  emit(a.out, text);
  return failed == 0 ? 0 : 1;
}

struct ExportArgs {
  PointArgs point;
  std::string out;
};

int cmd_export_model(const ExportArgs& a) {
  const ProcessParams params = a.point.params();
  params.validate();
  const QuantumModel model = QuantumModel::build(discretize(params));
  emit(a.out, model_to_json(model) + "\n");
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"dual Poisson renewal process models and memory metrics",
               "dpsim"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "dpsim 0.1.0");

  MetricsArgs metrics_args;
  CLI::App* metrics_cmd = app.add_subcommand(
      "metrics", "memory metrics for one parameter point, as JSON");
  add_point_options(metrics_cmd, metrics_args.point);
  metrics_cmd->add_option("--delta", metrics_args.delta,
                          "truncation threshold in (0, 1]");
  metrics_cmd->add_option("--out", metrics_args.out,
                          "output file (default: standard output)");

  SweepArgs sweep_args;
  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "grid experiments, as CSV or JSON");
  sweep_cmd->add_option("--mode", sweep_args.mode, "grid to sweep")
      ->required()
      ->check(CLI::IsMember({"precision", "family"}));
  CLI::Option* sg1 = sweep_cmd->add_option("--gamma1", sweep_args.point.gamma1,
                                           "decay rate of channel 1");
  CLI::Option* sg2 = sweep_cmd->add_option("--gamma2", sweep_args.point.gamma2,
                                           "decay rate of channel 2");
  CLI::Option* sp = sweep_cmd->add_option("--p", sweep_args.point.p,
                                          "probability of channel 1 at reset");
  sweep_cmd->add_option("--delta", sweep_args.delta,
                        "truncation threshold in (0, 1]");
  sweep_cmd->add_option("--dt-max", sweep_args.precision_grid.dt_max,
                        "largest timestep of the precision grid");
  sweep_cmd->add_option("--dt-min", sweep_args.precision_grid.dt_min,
                        "smallest timestep of the precision grid");
  sweep_cmd->add_option("--dt-points", sweep_args.precision_grid.points,
                        "number of precision grid points");
  sweep_cmd->add_option("--gamma-min", sweep_args.family_grid.gamma_min,
                        "smallest rate ratio of the family grid");
  sweep_cmd->add_option("--gamma-max", sweep_args.family_grid.gamma_max,
                        "largest rate ratio of the family grid");
  sweep_cmd->add_option("--gamma-points", sweep_args.family_grid.gamma_points,
                        "number of rate-ratio grid points");
  sweep_cmd->add_option("--p-min", sweep_args.family_grid.p_min,
                        "smallest p of the family grid");
  sweep_cmd->add_option("--p-max", sweep_args.family_grid.p_max,
                        "largest p of the family grid");
  sweep_cmd->add_option("--p-points", sweep_args.family_grid.p_points,
                        "number of p grid points");
  sweep_cmd->add_option("--continuum-tol", sweep_args.continuum_tol,
                        "convergence tolerance of the continuum limit");
  sweep_cmd->add_option("--threads", sweep_args.threads,
                        "worker threads (0 = hardware concurrency)");
  sweep_cmd->add_option("--format", sweep_args.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));
  sweep_cmd->add_option("--out", sweep_args.out,
                        "output file (default: standard output)");

  SimulateArgs sim_args;
  CLI::App* sim_cmd =
      app.add_subcommand("simulate", "generate an output sequence");
  sim_cmd->add_option("--model", sim_args.model, "engine to run")
      ->required()
      ->check(CLI::IsMember({"classical", "quantum"}));
  add_point_options(sim_cmd, sim_args.point);
  sim_cmd->add_option("--steps", sim_args.steps, "number of output symbols")
      ->required();
  sim_cmd->add_option("--seed", sim_args.seed, "master seed");
  sim_cmd->add_option("--start-n", sim_args.start_n,
                      "initial memory state index");
  sim_cmd->add_option("--delta", sim_args.delta,
                      "truncation threshold in (0, 1]");
  sim_cmd->add_option("--backend", sim_args.backend,
                      "quantum engine implementation")
      ->check(CLI::IsMember({"kraus", "full"}));
  sim_cmd->add_option("--out", sim_args.out,
                      "output file (default: standard output)");

  VerifyArgs verify_args;
  CLI::App* verify_cmd = app.add_subcommand(
      "verify", "run the invariant suite at one parameter point");
  add_point_options(verify_cmd, verify_args.point);
  verify_cmd->add_option("--delta", verify_args.delta,
                         "truncation threshold in (0, 1]");
  verify_cmd->add_option("--unitarity-tol", verify_args.tol.unitarity,
                         "bound for the unitarity check");
  verify_cmd->add_option("--kraus-tol", verify_args.tol.kraus,
                         "bound for the Kraus completeness check");
  verify_cmd->add_option("--recurrence-tol", verify_args.tol.recurrence,
                         "bound for the recurrence checks");
  verify_cmd->add_option("--survival-tol", verify_args.tol.survival,
                         "bound for the quantum survival check");
  verify_cmd->add_option("--symmetry-tol", verify_args.tol.symmetry,
                         "bound for the exchange symmetry checks");
  verify_cmd->add_option("--density-tol", verify_args.tol.density,
                         "bound for the density cross-check");
  verify_cmd->add_option("--stationary-tol", verify_args.tol.stationary,
                         "bound for the stationary distribution check");
  verify_cmd->add_option("--out", verify_args.out,
                         "output file (default: standard output)");

  ExportArgs export_args;
  CLI::App* export_cmd = app.add_subcommand(
      "export-model", "emit the unitary and Kraus operators as JSON");
  add_point_options(export_cmd, export_args.point);
  export_cmd->add_option("--out", export_args.out,
                         "output file (default: standard output)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (metrics_cmd->parsed()) return cmd_metrics(metrics_args);
    if (sweep_cmd->parsed()) {
      sweep_args.have_point =
          sg1->count() > 0 && sg2->count() > 0 && sp->count() > 0;
      return cmd_sweep(sweep_args);
    }
    if (sim_cmd->parsed()) return cmd_simulate(sim_args);
    if (verify_cmd->parsed()) return cmd_verify(verify_args);
    if (export_cmd->parsed()) return cmd_export_model(export_args);
  } catch (const DegenerateParameterError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const InvalidParameterError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;  // unreachable with require_subcommand(1)
}

}  // namespace dpsim
