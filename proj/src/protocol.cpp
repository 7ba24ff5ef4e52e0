#include "zenochain/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <thread>

namespace zenochain {

namespace {

constexpr double kGhzRatio = std::numbers::sqrt2 + 1.0;

double axis_value(const SweepAxis& axis, int step) {
  if (axis.steps == 1) return axis.lo;
  return axis.lo + (axis.hi - axis.lo) * step / (axis.steps - 1);
}

}  // namespace

double ghz_pulse_time(const ChainConfig& config) {
  config.validate();
  if (!(config.omega_1 > 0.0) || !(config.omega_n > 0.0)) {
    throw ConfigError("pulse time undefined for zero drive amplitudes");
  }
  double n1 = dark_normalization(config.n_atoms, config.g, config.v);
  return std::numbers::pi /
         (n1 * std::hypot(config.omega_1, config.omega_n));
}

double ghz_pulse_time_seconds(const ChainConfig& config) {
  if (!(config.g_hz > 0.0)) {
    throw ConfigError("absolute time requires g_hz > 0");
  }
  // Frequencies are in units of g and g_hz is g/2pi, so one time unit is
  // 1/(2pi g_hz) seconds.
  return ghz_pulse_time(config) / (2.0 * std::numbers::pi * config.g_hz);
}

StateVector ideal_ghz_state(const ChainConfig& config) {
  StateVector psi = StateVector::Zero(config.dim());
  const double a = -1.0 / std::numbers::sqrt2;
  psi(initial_index()) = a;
  psi(final_index(config)) = a;
  return psi;
}

GhzReport run_ghz(const ChainConfig& config, bool use_decoherence,
                  int n_samples) {
  GhzReport report;
  report.config = config;
  report.decoherent = use_decoherence && config.has_decoherence();
  report.tau = ghz_pulse_time(config);
  report.tau_seconds =
      config.g_hz > 0.0 ? ghz_pulse_time_seconds(config) : 0.0;

  Operator h =
      use_decoherence ? assemble_decoherent(config) : assemble_total(config);
  report.trajectory =
      evolve(h, basis_vector(initial_index(), config), report.tau, n_samples);
  report.final_state = report.trajectory.states.back();
  report.fidelity = fidelity(ideal_ghz_state(config), report.final_state);
  for (const PopulationSample& s : report.trajectory.populations) {
    report.max_p_c = std::max(report.max_p_c, s.p_c);
    report.max_p_f = std::max(report.max_p_f, s.p_f);
    report.max_p_e = std::max(report.max_p_e, s.p_e);
  }
  return report;
}

double ghz_fidelity(const ChainConfig& config, bool use_decoherence) {
  double tau = ghz_pulse_time(config);
  Operator h =
      use_decoherence ? assemble_decoherent(config) : assemble_total(config);
  StateVector final_state =
      propagate(h, basis_vector(initial_index(), config), tau);
  return fidelity(ideal_ghz_state(config), final_state);
}

AtomicRegister to_atomic_register(const StateVector& psi,
                                  const ChainConfig& config) {
  if (psi.size() != config.dim()) {
    throw NumericalError("state/config dimension mismatch");
  }
  const int n = config.n_atoms;
  AtomicRegister reg;
  reg.n_atoms = n;
  reg.amplitudes = Eigen::VectorXcd::Zero(1 << n);
  // Initial carries |10...0>, Final |01...1>; atom 1 is the most significant
  // bit.
  reg.amplitudes(1 << (n - 1)) = psi(initial_index());
  reg.amplitudes((1 << (n - 1)) - 1) = psi(final_index(config));
  double norm = reg.amplitudes.norm();
  if (norm < 1e-12) {
    throw NumericalError("state has no qubit-register content");
  }
  reg.amplitudes /= norm;
  return reg;
}

EprResult epr_reduce(const AtomicRegister& reg, int measured_atom) {
  if (reg.n_atoms < 2) {
    throw ConfigError("epr_reduce needs at least two atoms");
  }
  if (measured_atom < 1 || measured_atom > reg.n_atoms) {
    throw ConfigError("measured atom out of range");
  }
  const int n = reg.n_atoms;
  const int dim = 1 << n;
  const int bit = n - measured_atom;  // atom 1 is the most significant bit
  const Complex i_unit(0.0, 1.0);
  const double inv_rt2 = 1.0 / std::numbers::sqrt2;

  // exp(i sigma_x pi/4) = (I + i sigma_x)/sqrt(2) on the measured atom.
  Eigen::VectorXcd rotated(dim);
  for (int x = 0; x < dim; ++x) {
    rotated(x) =
        inv_rt2 * (reg.amplitudes(x) + i_unit * reg.amplitudes(x ^ (1 << bit)));
  }

  EprResult result;
  for (int outcome = 0; outcome < 2; ++outcome) {
    Eigen::VectorXcd branch = Eigen::VectorXcd::Zero(dim / 2);
    for (int x = 0; x < dim; ++x) {
      if ((x >> bit & 1) != outcome) continue;
      int rest = 0;
      for (int src = n - 1, dst = n - 2; src >= 0; --src) {
        if (src == bit) continue;
        rest |= (x >> src & 1) << dst;
        --dst;
      }
      branch(rest) = rotated(x);
    }
    double p = branch.squaredNorm();
    EprBranch& out = result.branches[static_cast<size_t>(outcome)];
    out.probability = p;
    out.present = p > 1e-15;
    if (out.present) {
      out.state.n_atoms = n - 1;
      out.state.amplitudes = branch / std::sqrt(p);
    }
  }
  return result;
}

double concurrence(const Eigen::VectorXcd& two_qubit_state) {
  if (two_qubit_state.size() != 4) {
    throw NumericalError("concurrence expects a two-qubit state");
  }
  return 2.0 * std::abs(two_qubit_state(0) * two_qubit_state(3) -
                        two_qubit_state(1) * two_qubit_state(2));
}

SweepObservable parse_observable(const std::string& name) {
  if (name == "fidelity") return SweepObservable::Fidelity;
  if (name == "max_p_c" || name == "max_pc") return SweepObservable::MaxPc;
  if (name == "max_p_f" || name == "max_pf") return SweepObservable::MaxPf;
  if (name == "max_p_e" || name == "max_pe") return SweepObservable::MaxPe;
  throw ConfigError("unknown observable: " + name);
}

std::string observable_name(SweepObservable obs) {
  switch (obs) {
    case SweepObservable::Fidelity:
      return "fidelity";
    case SweepObservable::MaxPc:
      return "max_p_c";
    case SweepObservable::MaxPf:
      return "max_p_f";
    case SweepObservable::MaxPe:
      return "max_p_e";
  }
  return "?";
}

std::string canonical_param(const std::string& name,
                            const ChainConfig& config) {
  static const char* const direct[] = {"omega_1", "omega_n",  "g",
                                       "v",       "gamma",    "kappa_c",
                                       "kappa_f", "delta_g1", "delta_gn"};
  for (const char* d : direct) {
    if (name == d) return name;
  }
  const std::string n_str = std::to_string(config.n_atoms);
  if (name == "omega_" + n_str) return "omega_n";
  if (name == "delta_g" + n_str) return "delta_gn";
  if (name.rfind("delta_v", 0) == 0) {
    const std::string idx_str = name.substr(7);
    try {
      size_t pos = 0;
      int idx = std::stoi(idx_str, &pos);
      if (pos == idx_str.size() && idx >= 1 && idx <= config.n_links()) {
        return name;
      }
    } catch (const std::exception&) {
    }
    throw ConfigError("fiber deviation index out of range in: " + name);
  }
  throw ConfigError("unknown sweep parameter: " + name);
}

void apply_sweep_param(ChainConfig& config, const std::string& canonical,
                       double value) {
  if (canonical == "omega_1") {
    config.omega_1 = value;
  } else if (canonical == "omega_n") {
    config.omega_n = value;
  } else if (canonical == "g") {
    config.g = value;
  } else if (canonical == "v") {
    config.v = value;
  } else if (canonical == "gamma") {
    config.gamma = value;
  } else if (canonical == "kappa_c") {
    config.kappa_c = value;
  } else if (canonical == "kappa_f") {
    config.kappa_f = value;
  } else if (canonical == "delta_g1") {
    config.g_dev[0] = value;
  } else if (canonical == "delta_gn") {
    config.g_dev[1] = value;
  } else if (canonical.rfind("delta_v", 0) == 0) {
    int idx = std::stoi(canonical.substr(7));
    if (idx < 1 || idx > config.n_links()) {
      throw ConfigError("fiber deviation index out of range in: " + canonical);
    }
    if (config.v_dev.empty()) {
      config.v_dev.assign(static_cast<size_t>(config.n_links()), 0.0);
    }
    config.v_dev[static_cast<size_t>(idx - 1)] = value;
  } else {
    throw ConfigError("unknown sweep parameter: " + canonical);
  }
}

SweepResult sweep(const ChainConfig& base, const std::vector<SweepAxis>& axes,
                  SweepObservable observable, int n_samples, int jobs) {
  base.validate();
  if (axes.empty() || axes.size() > 2) {
    throw ConfigError("sweep needs one or two axes");
  }
  bool sets_omega_1 = false;
  for (const SweepAxis& axis : axes) {
    if (axis.steps < 1) {
      throw ConfigError("sweep axis needs at least one step");
    }
    canonical_param(axis.param, base);  // reject unknown params up front
    if (axis.param == "omega_1") sets_omega_1 = true;
  }

  SweepResult result;
  result.axes.assign(axes.begin(), axes.end());
  result.observable = observable;
  size_t total = 1;
  for (const SweepAxis& axis : axes) {
    std::vector<double> grid(static_cast<size_t>(axis.steps));
    for (int k = 0; k < axis.steps; ++k) {
      grid[static_cast<size_t>(k)] = axis_value(axis, k);
    }
    total *= static_cast<size_t>(axis.steps);
    result.grids.push_back(std::move(grid));
  }
  result.values.assign(total, 0.0);

  const bool relock = base.omega_1_locked && !sets_omega_1;
  auto evaluate = [&](size_t flat) {
    ChainConfig config = base;
    if (axes.size() == 1) {
      apply_sweep_param(config, axes[0].param, result.grids[0][flat]);
    } else {
      size_t inner = result.grids[1].size();
      apply_sweep_param(config, axes[0].param, result.grids[0][flat / inner]);
      apply_sweep_param(config, axes[1].param, result.grids[1][flat % inner]);
    }
    if (relock) config.omega_1 = kGhzRatio * config.omega_n;
    bool decoherent = config.has_decoherence();
    if (observable == SweepObservable::Fidelity) {
      return ghz_fidelity(config, decoherent);
    }
    GhzReport report = run_ghz(config, decoherent, n_samples);
    switch (observable) {
      case SweepObservable::MaxPc:
        return report.max_p_c;
      case SweepObservable::MaxPf:
        return report.max_p_f;
      case SweepObservable::MaxPe:
        return report.max_p_e;
      default:
        return report.fidelity;
    }
  };

  int worker_count = std::clamp(
      jobs, 1, static_cast<int>(std::max(1u, std::thread::hardware_concurrency())));
  if (worker_count <= 1 || total < 2) {
    for (size_t flat = 0; flat < total; ++flat) {
      result.values[flat] = evaluate(flat);
    }
    return result;
  }

  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> workers;
  workers.reserve(static_cast<size_t>(worker_count));
  for (int w = 0; w < worker_count; ++w) {
    workers.emplace_back([&, w]() {
      try {
        for (size_t flat = static_cast<size_t>(w); flat < total;
             flat += static_cast<size_t>(worker_count)) {
          result.values[flat] = evaluate(flat);
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (std::thread& t : workers) t.join();
  if (first_error) std::rethrow_exception(first_error);
  return result;
}

CompareResult compare_effective(const ChainConfig& config, int n_samples) {
  double tau = ghz_pulse_time(config);

  Trajectory full = evolve(assemble_total(config),
                           basis_vector(initial_index(), config), tau,
                           n_samples);
  StateVector start3 = StateVector::Zero(3);
  start3(0) = 1.0;
  Trajectory eff = evolve(effective_hamiltonian(config), start3, tau,
                          n_samples);

  CompareResult result;
  result.times = full.times;
  result.p_full.reserve(full.states.size());
  result.p_eff.reserve(eff.states.size());
  for (size_t k = 0; k < full.states.size(); ++k) {
    double pf = std::norm(full.states[k](0));
    double pe = std::norm(eff.states[k](0));
    result.p_full.push_back(pf);
    result.p_eff.push_back(pe);
    result.max_abs_diff = std::max(result.max_abs_diff, std::abs(pf - pe));
  }
  return result;
}

}  // namespace zenochain
