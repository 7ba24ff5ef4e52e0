#include <algorithm>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "zenochain/config_io.hpp"
#include "zenochain/csv.hpp"

namespace {

using namespace zenochain;

struct CommonArgs {
  std::string config_path;
  std::string out_path;
  int jobs = 1;
  int samples = 0;  // 0 = config value
};

// CSV goes to --out (or the config's output_path); without either it goes to
// stdout and the summary moves to stderr so the data stays pipeable.
struct OutputTarget {
  std::ofstream file;
  bool to_file = false;

  std::ostream& data() { return to_file ? file : std::cout; }
  std::ostream& info() { return to_file ? std::cout : std::cerr; }
};

OutputTarget open_output(const CommonArgs& args, const ExperimentConfig& exp) {
  OutputTarget target;
  std::string path = !args.out_path.empty() ? args.out_path : exp.output_path;
  if (!path.empty()) {
    target.file.open(path);
    if (!target.file) {
      throw ConfigError("cannot open output file: " + path);
    }
    target.to_file = true;
  }
  return target;
}

ExperimentConfig load_for(const CommonArgs& args) {
  if (args.config_path.empty()) {
    throw ConfigError("--config is required");
  }
  ExperimentConfig exp = load_experiment(args.config_path);
  if (args.samples > 0) exp.n_samples = args.samples;
  if (exp.n_samples < 2) throw ConfigError("sample count must be >= 2");
  return exp;
}

bool resolve_decoherence(const std::string& mode, const ChainConfig& chain) {
  if (mode == "on") return true;
  if (mode == "off") return false;
  return chain.has_decoherence();
}

void write_population_csv(std::ostream& out, const Trajectory& traj) {
  write_csv_row(out, {"gt", "p_initial", "p_c", "p_f", "p_e", "p_final",
                      "norm2"});
  for (size_t k = 0; k < traj.times.size(); ++k) {
    const PopulationSample& s = traj.populations[k];
    write_csv_numbers(out, {traj.times[k], s.p_initial, s.p_c, s.p_f, s.p_e,
                            s.p_final, traj.states[k].squaredNorm()});
  }
}

int cmd_ghz(const CommonArgs& args) {
  ExperimentConfig exp = load_for(args);
  std::string mode = exp.ghz ? exp.ghz->decoherence : std::string("auto");
  GhzReport report = run_ghz(exp.chain, resolve_decoherence(mode, exp.chain),
                             exp.n_samples);
  OutputTarget target = open_output(args, exp);
  std::ostream& info = target.info();
  info << "tau = " << format_number(report.tau) << " (units 1/g)";
  if (report.tau_seconds > 0.0) {
    info << " = " << format_number(report.tau_seconds) << " s";
  }
  info << ", fidelity = " << format_number(report.fidelity) << '\n';
  info << "max P_c = " << format_number(report.max_p_c)
       << ", max P_f = " << format_number(report.max_p_f)
       << ", max P_e = " << format_number(report.max_p_e)
       << (report.decoherent ? " (decoherent evolution)" : "") << '\n';
  write_population_csv(target.data(), report.trajectory);
  return 0;
}

int cmd_populations(const CommonArgs& args) {
  ExperimentConfig exp = load_for(args);
  PopulationsSpec spec =
      exp.populations ? *exp.populations : PopulationsSpec{};
  double t_final =
      spec.t_final > 0.0 ? spec.t_final : ghz_pulse_time(exp.chain);
  bool decoherent = resolve_decoherence(spec.decoherence, exp.chain);
  Operator h = decoherent ? assemble_decoherent(exp.chain)
                          : assemble_total(exp.chain);
  Trajectory traj = evolve(h, basis_vector(initial_index(), exp.chain),
                           t_final, exp.n_samples);
  OutputTarget target = open_output(args, exp);
  target.info() << "t_final = " << format_number(t_final)
                << " (units 1/g), samples = " << exp.n_samples
                << (decoherent ? ", decoherent evolution" : "") << '\n';
  write_population_csv(target.data(), traj);
  return 0;
}

int cmd_sweep(const CommonArgs& args) {
  ExperimentConfig exp = load_for(args);
  if (!exp.sweep) {
    throw ConfigError("config has no 'sweep' block");
  }
  SweepObservable obs = parse_observable(exp.sweep->observable);
  SweepResult result = sweep(exp.chain, exp.sweep->axes, obs, exp.n_samples,
                             args.jobs);
  OutputTarget target = open_output(args, exp);

  std::vector<std::string> header;
  for (const SweepAxis& axis : result.axes) header.push_back(axis.label);
  header.push_back(observable_name(obs));
  std::ostream& out = target.data();
  write_csv_row(out, header);
  if (result.axes.size() == 1) {
    for (size_t i = 0; i < result.grids[0].size(); ++i) {
      write_csv_numbers(out, {result.grids[0][i], result.values[i]});
    }
  } else {
    size_t inner = result.grids[1].size();
    for (size_t i = 0; i < result.grids[0].size(); ++i) {
      for (size_t j = 0; j < inner; ++j) {
        write_csv_numbers(out, {result.grids[0][i], result.grids[1][j],
                                result.values[i * inner + j]});
      }
    }
  }
  auto [min_it, max_it] =
      std::minmax_element(result.values.begin(), result.values.end());
  target.info() << result.values.size() << " grid points, "
                << observable_name(obs) << " in ["
                << format_number(*min_it) << ", " << format_number(*max_it)
                << "]\n";
  return 0;
}

int cmd_compare_eff(const CommonArgs& args) {
  ExperimentConfig exp = load_for(args);
  CompareResult result = compare_effective(exp.chain, exp.n_samples);
  OutputTarget target = open_output(args, exp);
  std::ostream& out = target.data();
  write_csv_row(out, {"gt", "p_full", "p_eff"});
  for (size_t k = 0; k < result.times.size(); ++k) {
    write_csv_numbers(out, {result.times[k], result.p_full[k],
                            result.p_eff[k]});
  }
  target.info() << "max |p_full - p_eff| = "
                << format_number(result.max_abs_diff) << '\n';
  return 0;
}

int cmd_epr(const CommonArgs& args) {
  ExperimentConfig exp = load_for(args);
  EprSpec spec = exp.epr ? *exp.epr : EprSpec{};
  int measured =
      spec.measured_atom > 0 ? spec.measured_atom : (exp.chain.n_atoms + 1) / 2;

  std::string mode = exp.ghz ? exp.ghz->decoherence : std::string("auto");
  GhzReport report = run_ghz(exp.chain, resolve_decoherence(mode, exp.chain),
                             exp.n_samples);
  AtomicRegister reg = to_atomic_register(report.final_state, exp.chain);
  EprResult result = epr_reduce(reg, measured);

  OutputTarget target = open_output(args, exp);
  target.info() << "GHZ fidelity = " << format_number(report.fidelity)
                << ", measured atom " << measured << '\n';

  int rest = reg.n_atoms - 1;
  std::vector<std::string> header = {"branch", "probability", "concurrence"};
  for (int x = 0; x < (1 << rest); ++x) {
    std::string bits;
    for (int b = rest - 1; b >= 0; --b) bits += (x >> b & 1) ? '1' : '0';
    header.push_back("re_" + bits);
    header.push_back("im_" + bits);
  }
  std::ostream& out = target.data();
  write_csv_row(out, header);
  for (int outcome = 0; outcome < 2; ++outcome) {
    const EprBranch& branch = result.branches[static_cast<size_t>(outcome)];
    if (!branch.present) {
      target.info() << "branch " << outcome << " has zero probability\n";
      continue;
    }
    std::vector<double> row = {static_cast<double>(outcome),
                               branch.probability};
    row.push_back(rest == 2 ? concurrence(branch.state.amplitudes) : -1.0);
    for (int x = 0; x < (1 << rest); ++x) {
      row.push_back(branch.state.amplitudes(x).real());
      row.push_back(branch.state.amplitudes(x).imag());
    }
    write_csv_numbers(out, row);
  }
  return 0;
}

struct CheckReporter {
  bool all_ok = true;

  void report(const std::string& name, bool ok, const std::string& detail) {
    all_ok = all_ok && ok;
    std::cout << (ok ? "ok   " : "FAIL ") << name;
    if (!detail.empty()) std::cout << " (" << detail << ")";
    std::cout << '\n';
  }
};

ChainConfig operating_point() {
  ChainConfig config;
  config.n_atoms = 3;
  config.omega_n = 0.04;
  config.omega_1 = (std::numbers::sqrt2 + 1.0) * 0.04;
  return config;
}

int cmd_validate(const CommonArgs& args) {
  ExperimentConfig exp;
  if (!args.config_path.empty()) {
    exp = load_experiment(args.config_path);
  } else {
    exp.chain = operating_point();
  }
  std::mt19937 rng(20240811u);
  std::uniform_real_distribution<double> coupling(0.5, 2.0);
  std::uniform_real_distribution<double> dev(-0.1, 0.1);
  std::uniform_real_distribution<double> drive(0.0, 0.1);
  CheckReporter checks;

  {
    double worst_diff = 0.0, worst_residual = 0.0;
    for (int trial = 0; trial < 4; ++trial) {
      ChainConfig config = operating_point();
      if (trial > 0) {
        config.g = coupling(rng);
        config.v = coupling(rng);
        config.g_dev = {dev(rng) * config.g, dev(rng) * config.g};
        config.v_dev = {dev(rng) * config.v, dev(rng) * config.v};
        config.omega_1 = drive(rng);
        config.omega_n = drive(rng);
      }
      OracleResult oracle = full_space_oracle(config);
      worst_diff = std::max(
          worst_diff, (oracle.projected.entries - assemble_total(config).entries)
                          .cwiseAbs()
                          .maxCoeff());
      worst_residual = std::max(worst_residual, oracle.invariance_residual);
    }
    checks.report("product-space assembly matches restricted assembly",
                  worst_diff < 1e-12 && worst_residual < 1e-12,
                  "max diff " + format_number(worst_diff) + ", span residual " +
                      format_number(worst_residual));
  }

  {
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      double g = coupling(rng), v = coupling(rng);
      ChainConfig config;
      config.g = g;
      config.v = v;
      ClosedFormEigensystem sys = closed_form_eigensystem(g, v);
      Matrix h = assemble_acf(config).entries;
      for (int k = 0; k < 9; ++k) {
        worst = std::max(
            worst, (h * sys.vectors.col(k) - sys.lambdas[k] * sys.vectors.col(k))
                       .norm());
      }
    }
    checks.report("closed-form eigensystem solves the exchange Hamiltonian",
                  worst < 1e-10, "max residual " + format_number(worst));
  }

  {
    double worst_complete = 0.0, worst_cross = 0.0;
    for (int trial = 0; trial < 6; ++trial) {
      ChainConfig config;
      config.n_atoms = (trial % 2) ? 5 : 3;
      config.g = coupling(rng);
      config.v = coupling(rng);
      ZenoDecomposition decomp = zeno_decompose(config);
      Matrix sum = Matrix::Zero(config.dim(), config.dim());
      for (const ZenoCluster& cluster : decomp.clusters) {
        sum += cluster.projector;
        worst_cross = std::max(
            worst_cross,
            (cluster.projector * cluster.projector - cluster.projector)
                .cwiseAbs()
                .maxCoeff());
      }
      for (size_t a = 0; a < decomp.clusters.size(); ++a) {
        for (size_t b = a + 1; b < decomp.clusters.size(); ++b) {
          worst_cross = std::max(
              worst_cross,
              (decomp.clusters[a].projector * decomp.clusters[b].projector)
                  .cwiseAbs()
                  .maxCoeff());
        }
      }
      worst_complete = std::max(
          worst_complete,
          (sum - Matrix::Identity(config.dim(), config.dim()))
              .cwiseAbs()
              .maxCoeff());
    }
    checks.report("eigenprojections are complete and orthogonal",
                  worst_complete < 1e-10 && worst_cross < 1e-10,
                  "completeness " + format_number(worst_complete) +
                      ", cross/idempotence " + format_number(worst_cross));
  }

  {
    double worst = 0.0;
    for (int n = 3; n <= 11; n += 2) {
      ChainConfig config;
      config.n_atoms = n;
      config.g = coupling(rng);
      config.v = coupling(rng);
      worst = std::max(
          worst, (assemble_acf(config).entries * dark_state(config)).norm());
    }
    checks.report("uniform dark state is annihilated by the exchange",
                  worst < 1e-12, "max norm " + format_number(worst));
  }

  {
    ChainConfig config = exp.chain;
    double worst = 0.0;
    double tau = ghz_pulse_time(config);
    StateVector start = StateVector::Zero(3);
    start(0) = 1.0;
    Trajectory eff = evolve(effective_hamiltonian(config), start, tau, 257);
    double n1 = dark_normalization(config.n_atoms, config.g, config.v);
    for (size_t k = 0; k < eff.times.size(); ++k) {
      auto amps = analytic_dark_evolution(eff.times[k], config.omega_1,
                                          config.omega_n, n1);
      for (int i = 0; i < 3; ++i) {
        worst = std::max(worst, std::abs(amps[static_cast<size_t>(i)] -
                                         eff.states[k](i)));
      }
    }
    checks.report("analytic dark-subspace amplitudes match propagation",
                  worst < 1e-8, "max deviation " + format_number(worst));
  }

  {
    ChainConfig config = exp.chain;
    GhzReport report = run_ghz(config, false, 501);
    double worst = 0.0;
    for (const StateVector& psi : report.trajectory.states) {
      worst = std::max(worst, std::abs(psi.norm() - 1.0));
    }
    ChainConfig damped = config;
    damped.gamma = 0.005;
    GhzReport damped_report = run_ghz(damped, true, 501);
    bool monotone = true;
    for (size_t k = 1; k < damped_report.trajectory.states.size(); ++k) {
      if (damped_report.trajectory.states[k].norm() >
          damped_report.trajectory.states[k - 1].norm() + 1e-9) {
        monotone = false;
      }
    }
    checks.report("norm is conserved (Hermitian) and monotone (damped)",
                  worst < 1e-9 && monotone,
                  "conservation " + format_number(worst) +
                      (monotone ? ", decay monotone" : ", decay NOT monotone"));
  }

  std::cout << (checks.all_ok ? "validate: all checks passed\n"
                              : "validate: FAILURES above\n");
  return checks.all_ok ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Simulator for excitation transfer and GHZ generation in a chain of "
      "lambda atoms in fiber-linked cavities"};
  app.require_subcommand(1);

  CommonArgs args;
  auto add_common = [&](CLI::App* cmd, bool config_required) {
    CLI::Option* opt =
        cmd->add_option("--config", args.config_path, "JSON experiment config");
    if (config_required) opt->required();
    cmd->add_option("--out", args.out_path,
                    "output CSV path (default: config output_path or stdout)");
    cmd->add_option("--samples", args.samples,
                    "time samples per run (default: config n_samples or 2001)")
        ->check(CLI::PositiveNumber);
    return cmd;
  };

  CLI::App* ghz = add_common(app.add_subcommand(
      "ghz", "run the GHZ pulse and report fidelity and populations"), true);
  CLI::App* sweep_cmd = add_common(app.add_subcommand(
      "sweep", "scan one or two parameters and tabulate an observable"), true);
  sweep_cmd->add_option("--jobs", args.jobs, "worker threads for grid points")
      ->check(CLI::PositiveNumber);
  CLI::App* populations = add_common(app.add_subcommand(
      "populations", "tabulate category populations over time"), true);
  CLI::App* compare = add_common(app.add_subcommand(
      "compare-eff",
      "initial-state occupation: full vs effective Hamiltonian"), true);
  CLI::App* epr = add_common(app.add_subcommand(
      "epr", "rotate and measure one atom of the generated GHZ state"), true);
  CLI::App* validate = add_common(app.add_subcommand(
      "validate", "run the built-in cross-check suite"), false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (ghz->parsed()) return cmd_ghz(args);
    if (sweep_cmd->parsed()) return cmd_sweep(args);
    if (populations->parsed()) return cmd_populations(args);
    if (compare->parsed()) return cmd_compare_eff(args);
    if (epr->parsed()) return cmd_epr(args);
    if (validate->parsed()) return cmd_validate(args);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
