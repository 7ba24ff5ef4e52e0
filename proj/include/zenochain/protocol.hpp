#pragma once

// End-to-end GHZ generation: pulse time, full-Hamiltonian run with fidelity
// and population maxima, reduction to an atomic qubit register, the
// EPR-by-measurement step, parameter sweeps, and the full-vs-effective
// occupation comparison.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "zenochain/dynamics.hpp"
#include "zenochain/zeno.hpp"

namespace zenochain {

// tau = pi / (N_1 sqrt(omega_1^2 + omega_n^2)), units 1/g. Uses the
// uniform-coupling N_1; coupling deviations are treated as unknown to the
// experimenter and do not reschedule the pulse.
double ghz_pulse_time(const ChainConfig& config);

// Same in seconds; requires config.g_hz > 0.
double ghz_pulse_time_seconds(const ChainConfig& config);

// -(phi_first + phi_last)/sqrt(2) on the restricted basis.
StateVector ideal_ghz_state(const ChainConfig& config);

struct GhzReport {
  ChainConfig config;
  bool decoherent = false;
  double tau = 0.0;          // units 1/g
  double tau_seconds = 0.0;  // 0 unless config.g_hz > 0
  StateVector final_state;
  double fidelity = 0.0;     // against ideal_ghz_state
  double max_p_c = 0.0;
  double max_p_f = 0.0;
  double max_p_e = 0.0;
  Trajectory trajectory;
};

GhzReport run_ghz(const ChainConfig& config, bool use_decoherence,
                  int n_samples = 2001);

// Final-state fidelity only (single propagation to tau; no trajectory).
double ghz_fidelity(const ChainConfig& config, bool use_decoherence);

// Qubit amplitudes over |a_1 a_2 ... a_N>, atom 1 in the most significant
// position. Valid once no excited-state population remains.
struct AtomicRegister {
  int n_atoms = 0;
  Eigen::VectorXcd amplitudes;  // size 2^n_atoms
};

// Projects a restricted-basis state onto its qubit content
// (Initial -> |10...0>, Final -> |01...1>) and renormalizes.
AtomicRegister to_atomic_register(const StateVector& psi,
                                  const ChainConfig& config);

struct EprBranch {
  bool present = false;
  double probability = 0.0;
  AtomicRegister state;  // remaining atoms, ascending label order
};

struct EprResult {
  std::array<EprBranch, 2> branches;  // outcome |0>, outcome |1>
};

// Applies exp(i sigma_x pi/4) = (I + i sigma_x)/sqrt(2) to the measured atom
// (1-based), then projects it onto |0>/|1>. Branches with zero probability
// are flagged absent.
EprResult epr_reduce(const AtomicRegister& reg, int measured_atom);

// Two-qubit pure-state concurrence, 2|a00 a11 - a01 a10| for a normalized
// input over |00>,|01>,|10>,|11>.
double concurrence(const Eigen::VectorXcd& two_qubit_state);

enum class SweepObservable { Fidelity, MaxPc, MaxPf, MaxPe };

SweepObservable parse_observable(const std::string& name);
std::string observable_name(SweepObservable obs);

struct SweepAxis {
  std::string param;  // canonical parameter id
  std::string label;  // spelling echoed in output headers
  double lo = 0.0;
  double hi = 0.0;
  int steps = 1;
};

// Resolves user spellings (including N-specific aliases like omega_3 or
// delta_g3 for a 3-atom chain) to a canonical parameter id. Throws
// ConfigError for unknown names.
std::string canonical_param(const std::string& name, const ChainConfig& config);
void apply_sweep_param(ChainConfig& config, const std::string& canonical,
                       double value);

struct SweepResult {
  std::vector<SweepAxis> axes;  // 1 or 2
  std::vector<std::vector<double>> grids;  // axis values, grids[a][i]
  std::vector<double> values;  // row-major over axis grids
  SweepObservable observable = SweepObservable::Fidelity;
};

// Evaluates run_ghz per grid point (decoherence switched on automatically at
// points where any rate is nonzero). Points are independent; `jobs` > 1
// splits them over threads with order-deterministic assembly. When a config
// derived omega_1 from omega_n, the ratio lock is reapplied after each axis
// assignment unless an axis sets omega_1 explicitly.
SweepResult sweep(const ChainConfig& base, const std::vector<SweepAxis>& axes,
                  SweepObservable observable, int n_samples = 2001,
                  int jobs = 1);

struct CompareResult {
  std::vector<double> times;
  std::vector<double> p_full;  // |<phi_first|psi_full(t)>|^2
  std::vector<double> p_eff;   // same under the three-level effective model
  double max_abs_diff = 0.0;
};

// Occupation of the initial state over [0, tau] under the full Hamiltonian
// versus the effective dark-subspace Hamiltonian.
CompareResult compare_effective(const ChainConfig& config,
                                int n_samples = 2001);

}  // namespace zenochain
