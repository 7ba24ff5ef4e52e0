#include "zenochain/basis.hpp"

#include <cmath>

namespace zenochain {

double ChainConfig::fiber_coupling(int link) const {
  if (link < 1 || link > n_links()) {
    throw ConfigError("fiber link index out of range: " + std::to_string(link));
  }
  double dev = v_dev.empty() ? 0.0 : v_dev.at(static_cast<size_t>(link - 1));
  return v + dev;
}

bool ChainConfig::has_deviations() const {
  if (g_dev[0] != 0.0 || g_dev[1] != 0.0) return true;
  for (double d : v_dev) {
    if (d != 0.0) return true;
  }
  return false;
}

bool ChainConfig::is_zeno(double threshold) const {
  return std::max(omega_1, omega_n) / std::min(g, v) <= threshold;
}

void ChainConfig::validate() const {
  if (n_atoms < 3 || n_atoms % 2 == 0) {
    throw ConfigError("n_atoms must be odd and >= 3, got " +
                      std::to_string(n_atoms));
  }
  if (!(g > 0.0) || !(v > 0.0)) {
    throw ConfigError("couplings g and v must be positive");
  }
  if (!v_dev.empty() && static_cast<int>(v_dev.size()) != n_links()) {
    throw ConfigError("v_dev must have one entry per fiber (" +
                      std::to_string(n_links()) + "), got " +
                      std::to_string(v_dev.size()));
  }
  if (omega_1 < 0.0 || omega_n < 0.0) {
    throw ConfigError("drive amplitudes must be non-negative");
  }
  if (gamma < 0.0 || kappa_c < 0.0 || kappa_f < 0.0) {
    throw ConfigError("decay rates must be non-negative");
  }
  if (g_hz < 0.0) {
    throw ConfigError("g_hz must be non-negative");
  }
  if (end_coupling_1() <= 0.0 || end_coupling_n() <= 0.0) {
    throw ConfigError("end-coupling deviations drive a coupling non-positive");
  }
  for (int j = 1; j <= n_links(); ++j) {
    if (fiber_coupling(j) <= 0.0) {
      throw ConfigError("fiber deviation drives coupling " +
                        std::to_string(j) + " non-positive");
    }
  }
}

int initial_index() { return 0; }

int final_index(const ChainConfig& config) { return config.dim() - 1; }

int atom_excited_index(int atom, const ChainConfig& config) {
  if (atom < 1 || atom > config.n_atoms) {
    throw ConfigError("atom index out of range: " + std::to_string(atom));
  }
  return 4 * atom - 3;
}

int cavity_index(int link, ModeSide side, const ChainConfig& config) {
  if (link < 1 || link > config.n_links()) {
    throw ConfigError("link index out of range: " + std::to_string(link));
  }
  return side == ModeSide::Out ? 4 * link - 2 : 4 * link;
}

int fiber_index(int link, const ChainConfig& config) {
  if (link < 1 || link > config.n_links()) {
    throw ConfigError("link index out of range: " + std::to_string(link));
  }
  return 4 * link - 1;
}

std::vector<BasisState> enumerate_basis(const ChainConfig& config) {
  config.validate();
  std::vector<BasisState> basis;
  basis.reserve(static_cast<size_t>(config.dim()));
  basis.push_back({0, StateKind::Initial, 0, 0, ModeSide::Out});
  for (int j = 1; j <= config.n_links(); ++j) {
    basis.push_back({4 * j - 3, StateKind::AtomExcited, j, 0, ModeSide::Out});
    basis.push_back({4 * j - 2, StateKind::CavityPhoton, 0, j, ModeSide::Out});
    basis.push_back({4 * j - 1, StateKind::FiberPhoton, 0, j, ModeSide::Out});
    basis.push_back({4 * j, StateKind::CavityPhoton, 0, j, ModeSide::In});
  }
  basis.push_back({4 * config.n_atoms - 3, StateKind::AtomExcited,
                   config.n_atoms, 0, ModeSide::Out});
  basis.push_back(
      {config.dim() - 1, StateKind::Final, 0, 0, ModeSide::Out});
  return basis;
}

BasisState classify(int index, const ChainConfig& config) {
  if (index < 0 || index >= config.dim()) {
    throw ConfigError("basis index out of range: " + std::to_string(index));
  }
  if (index == 0) return {0, StateKind::Initial, 0, 0, ModeSide::Out};
  if (index == config.dim() - 1) {
    return {index, StateKind::Final, 0, 0, ModeSide::Out};
  }
  // Within a link block of four: offset 1 -> AtomExcited, 2 -> CavityPhoton
  // (out), 3 -> FiberPhoton, 0 -> CavityPhoton (in).
  int block = (index - 1) / 4 + 1;
  switch (index % 4) {
    case 1:
      return {index, StateKind::AtomExcited, block, 0, ModeSide::Out};
    case 2:
      return {index, StateKind::CavityPhoton, 0, block, ModeSide::Out};
    case 3:
      return {index, StateKind::FiberPhoton, 0, block, ModeSide::Out};
    default:
      return {index, StateKind::CavityPhoton, 0, index / 4, ModeSide::In};
  }
}

std::string to_string(StateKind kind) {
  switch (kind) {
    case StateKind::Initial:
      return "initial";
    case StateKind::AtomExcited:
      return "atom_excited";
    case StateKind::CavityPhoton:
      return "cavity_photon";
    case StateKind::FiberPhoton:
      return "fiber_photon";
    case StateKind::Final:
      return "final";
  }
  return "?";
}

std::string to_string(const BasisState& state) {
  switch (state.kind) {
    case StateKind::AtomExcited:
      return "atom_excited(" + std::to_string(state.atom) + ")";
    case StateKind::CavityPhoton:
      return "cavity_photon(" + std::to_string(state.link) +
             (state.side == ModeSide::Out ? ",out)" : ",in)");
    case StateKind::FiberPhoton:
      return "fiber_photon(" + std::to_string(state.link) + ")";
    default:
      return to_string(state.kind);
  }
}

StateVector basis_vector(int index, const ChainConfig& config) {
  if (index < 0 || index >= config.dim()) {
    throw ConfigError("basis index out of range: " + std::to_string(index));
  }
  StateVector psi = StateVector::Zero(config.dim());
  psi(index) = 1.0;
  return psi;
}

}  // namespace zenochain
