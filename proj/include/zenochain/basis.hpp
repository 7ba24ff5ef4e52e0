#pragma once

// Restricted single-excitation basis for a chain of N lambda-type atoms in
// fiber-linked cavities. Starting from atom 1 in |1> with all other atoms in
// |0> and every boson mode empty, the dynamics only ever visits 4N-1 states:
// the initial state, one excited-atom state per atom, two cavity-photon
// states and one fiber-photon state per link, and the final state with the
// excitation transferred to atoms 2..N.

#include <array>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace zenochain {

using Complex = std::complex<double>;
using StateVector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DegeneracyError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// All frequencies are in units of the common atom-cavity coupling g and time
// in units of 1/g, unless g_hz supplies an absolute scale (g/2pi in Hz) for
// reporting times in seconds.
struct ChainConfig {
  int n_atoms = 3;            // odd, >= 3
  double g = 1.0;             // common atom-cavity coupling
  double v = 1.0;             // common cavity-fiber coupling
  std::array<double, 2> g_dev{0.0, 0.0};  // end-coupling deviations dg_1, dg_N
  std::vector<double> v_dev;  // per-fiber deviations; empty means all zero
  double omega_1 = 0.0;       // drive on atom 1
  double omega_n = 0.0;       // drive on atom N
  double gamma = 0.0;         // atomic spontaneous emission rate
  double kappa_c = 0.0;       // cavity photon decay rate
  double kappa_f = 0.0;       // fiber photon decay rate
  double g_hz = 0.0;          // absolute g/2pi in Hz; 0 = dimensionless only
  // Set when omega_1 was derived from omega_n via the (sqrt(2)+1) ratio, so
  // sweeps that move omega_n keep the ratio locked.
  bool omega_1_locked = false;

  int dim() const { return 4 * n_atoms - 1; }
  int n_links() const { return n_atoms - 1; }

  double end_coupling_1() const { return g + g_dev[0]; }
  double end_coupling_n() const { return g + g_dev[1]; }
  // link is 1-based
  double fiber_coupling(int link) const;

  bool has_deviations() const;
  bool has_decoherence() const {
    return gamma > 0.0 || kappa_c > 0.0 || kappa_f > 0.0;
  }
  bool is_zeno(double threshold) const;

  // Throws ConfigError if any invariant is violated.
  void validate() const;
};

enum class StateKind { Initial, AtomExcited, CavityPhoton, FiberPhoton, Final };

// Of the two cavity modes attached to link j, Out is the one on atom j's side
// and In the one on atom j+1's side. (Their circular polarization alternates
// with the link parity; that only matters for the full-product-space checks.)
enum class ModeSide { Out, In };

struct BasisState {
  int index = 0;
  StateKind kind = StateKind::Initial;
  int atom = 0;              // AtomExcited: 1..N
  int link = 0;              // CavityPhoton / FiberPhoton: 1..N-1
  ModeSide side = ModeSide::Out;  // CavityPhoton only
};

// Canonical ordering: index 0 is Initial; each link j=1..N-1 contributes
// AtomExcited(j), CavityPhoton(j,Out), FiberPhoton(j), CavityPhoton(j,In);
// then AtomExcited(N) and Final.
int initial_index();
int final_index(const ChainConfig& config);
int atom_excited_index(int atom, const ChainConfig& config);
int cavity_index(int link, ModeSide side, const ChainConfig& config);
int fiber_index(int link, const ChainConfig& config);

std::vector<BasisState> enumerate_basis(const ChainConfig& config);
BasisState classify(int index, const ChainConfig& config);

std::string to_string(StateKind kind);
std::string to_string(const BasisState& state);

// Unit vector on the restricted basis.
StateVector basis_vector(int index, const ChainConfig& config);

}  // namespace zenochain
