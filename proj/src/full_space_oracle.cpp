#include "zenochain/hamiltonian.hpp"

namespace zenochain {

namespace {

// Product space for the N=3 cross-check: three atomic levels per atom
// (0, 1, 2=excited) and one Fock bit per boson mode. Mode order per link j:
// cavity mode on the atom-j side, fiber mode, cavity mode on the atom-j+1
// side, i.e. [a_1r, f_1, a_2r, a_2l, f_2, a_3l].
constexpr int kAtoms = 3;
constexpr int kModes = 6;
constexpr int kAtomDim = 27;   // 3^3
constexpr int kModeDim = 64;   // 2^6
constexpr int kFullDim = kAtomDim * kModeDim;

int mode_cavity(int link, ModeSide side) {
  return 3 * (link - 1) + (side == ModeSide::Out ? 0 : 2);
}
int mode_fiber(int link) { return 3 * (link - 1) + 1; }

int atom_level(int atom_code, int atom) {
  static constexpr int pow3[] = {9, 3, 1};
  return (atom_code / pow3[atom - 1]) % 3;
}

int with_atom_level(int atom_code, int atom, int level) {
  static constexpr int pow3[] = {9, 3, 1};
  int old = atom_level(atom_code, atom);
  return atom_code + (level - old) * pow3[atom - 1];
}

int product_index(int atom_code, int mode_bits) {
  return atom_code * kModeDim + mode_bits;
}

// Atomic configuration accompanying each restricted basis vector: the
// excitation has passed atoms 1..j, so atom 1 sits in |0> and atoms 2..j
// in |1> once their photon has moved on.
int embedded_atom_code(const BasisState& state) {
  int code = 0;
  auto set_level = [&](int atom, int level) {
    code = with_atom_level(code, atom, level);
  };
  switch (state.kind) {
    case StateKind::Initial:
      set_level(1, 1);
      break;
    case StateKind::Final:
      for (int a = 2; a <= kAtoms; ++a) set_level(a, 1);
      break;
    case StateKind::AtomExcited:
      for (int a = 2; a < state.atom; ++a) set_level(a, 1);
      set_level(state.atom, 2);
      break;
    default:  // photon states of link j
      for (int a = 2; a <= state.link; ++a) set_level(a, 1);
      break;
  }
  return code;
}

int embedded_mode_bits(const BasisState& state) {
  switch (state.kind) {
    case StateKind::CavityPhoton:
      return 1 << mode_cavity(state.link, state.side);
    case StateKind::FiberPhoton:
      return 1 << mode_fiber(state.link);
    default:
      return 0;
  }
}

struct AtomCavityTerm {
  double weight;
  int mode;        // photon absorbed
  int atom;        // flipped from `from_level` to excited
  int from_level;  // 0 or 1
};

struct FiberHopTerm {
  double weight;
  int cavity_mode;  // photon absorbed
  int fiber_mode;   // photon created
};

struct LaserTerm {
  double weight;
  int atom;  // flipped from |1> to excited
};

}  // namespace

OracleResult full_space_oracle(const ChainConfig& config) {
  config.validate();
  if (config.n_atoms != kAtoms) {
    throw ConfigError("full_space_oracle supports n_atoms == 3 only");
  }

  const AtomCavityTerm atom_terms[] = {
      {config.end_coupling_1(), mode_cavity(1, ModeSide::Out), 1, 0},
      {config.g, mode_cavity(1, ModeSide::In), 2, 0},   // right-polarized
      {config.g, mode_cavity(2, ModeSide::Out), 2, 1},  // left-polarized
      {config.end_coupling_n(), mode_cavity(2, ModeSide::In), 3, 0},
  };
  const FiberHopTerm fiber_terms[] = {
      {config.fiber_coupling(1), mode_cavity(1, ModeSide::Out), mode_fiber(1)},
      {config.fiber_coupling(1), mode_cavity(1, ModeSide::In), mode_fiber(1)},
      {config.fiber_coupling(2), mode_cavity(2, ModeSide::Out), mode_fiber(2)},
      {config.fiber_coupling(2), mode_cavity(2, ModeSide::In), mode_fiber(2)},
  };
  const LaserTerm laser_terms[] = {
      {config.omega_1, 1},
      {config.omega_n, 3},
  };

  // Forward halves only; symmetrized below. Terms that would put two photons
  // in one mode are dropped, which never triggers inside the single-excitation
  // span the certificate checks.
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(kFullDim, kFullDim);
  for (int atom_code = 0; atom_code < kAtomDim; ++atom_code) {
    for (int bits = 0; bits < kModeDim; ++bits) {
      int source = product_index(atom_code, bits);
      for (const auto& t : atom_terms) {
        if (!(bits >> t.mode & 1)) continue;
        if (atom_level(atom_code, t.atom) != t.from_level) continue;
        int target = product_index(with_atom_level(atom_code, t.atom, 2),
                                   bits & ~(1 << t.mode));
        h(target, source) += t.weight;
      }
      for (const auto& t : fiber_terms) {
        if (!(bits >> t.cavity_mode & 1)) continue;
        if (bits >> t.fiber_mode & 1) continue;
        int target = product_index(
            atom_code, (bits & ~(1 << t.cavity_mode)) | (1 << t.fiber_mode));
        h(target, source) += t.weight;
      }
      for (const auto& t : laser_terms) {
        if (atom_level(atom_code, t.atom) != 1) continue;
        int target = product_index(with_atom_level(atom_code, t.atom, 2), bits);
        h(target, source) += t.weight;
      }
    }
  }
  h += Eigen::MatrixXd(h.transpose());

  Eigen::MatrixXd span = Eigen::MatrixXd::Zero(kFullDim, config.dim());
  for (const BasisState& state : enumerate_basis(config)) {
    span(product_index(embedded_atom_code(state), embedded_mode_bits(state)),
         state.index) = 1.0;
  }

  Eigen::MatrixXd h_span = h * span;
  Eigen::MatrixXd projected = span.transpose() * h_span;
  double residual = (h_span - span * projected).norm();
  if (!(residual < 1e-12)) {
    throw NumericalError(
        "restricted span is not invariant under the full Hamiltonian "
        "(residual " +
        std::to_string(residual) + ")");
  }

  OracleResult result;
  result.projected = Operator{projected.cast<Complex>(), true};
  result.invariance_residual = residual;
  return result;
}

}  // namespace zenochain
