#include "zenochain/hamiltonian.hpp"

namespace zenochain {

Operator assemble_laser(const ChainConfig& config) {
  config.validate();
  int d = config.dim();
  Operator op{Matrix::Zero(d, d), true};
  int e1 = atom_excited_index(1, config);
  int en = atom_excited_index(config.n_atoms, config);
  op.entries(initial_index(), e1) = config.omega_1;
  op.entries(e1, initial_index()) = config.omega_1;
  op.entries(final_index(config), en) = config.omega_n;
  op.entries(en, final_index(config)) = config.omega_n;
  return op;
}

Operator assemble_acf(const ChainConfig& config) {
  config.validate();
  int d = config.dim();
  Operator op{Matrix::Zero(d, d), true};
  // Excitation hops per link j:
  //   AtomExcited(j)   <-> CavityPhoton(j,out)  weight g (+dg_1 on link 1)
  //   CavityPhoton(j,out) <-> FiberPhoton(j)    weight v_j
  //   FiberPhoton(j)   <-> CavityPhoton(j,in)   weight v_j
  //   CavityPhoton(j,in) <-> AtomExcited(j+1)   weight g (+dg_N on the last)
  for (int j = 1; j <= config.n_links(); ++j) {
    double g_left = (j == 1) ? config.end_coupling_1() : config.g;
    double g_right =
        (j == config.n_links()) ? config.end_coupling_n() : config.g;
    double vj = config.fiber_coupling(j);
    auto couple = [&](int a, int b, double w) {
      op.entries(a, b) = w;
      op.entries(b, a) = w;
    };
    couple(atom_excited_index(j, config), cavity_index(j, ModeSide::Out, config),
           g_left);
    couple(cavity_index(j, ModeSide::Out, config), fiber_index(j, config), vj);
    couple(fiber_index(j, config), cavity_index(j, ModeSide::In, config), vj);
    couple(cavity_index(j, ModeSide::In, config),
           atom_excited_index(j + 1, config), g_right);
  }
  return op;
}

Operator assemble_total(const ChainConfig& config) {
  Operator op = assemble_acf(config);
  op.entries += assemble_laser(config).entries;
  return op;
}

Operator assemble_decoherent(const ChainConfig& config) {
  Operator op = assemble_total(config);
  if (!config.has_decoherence()) return op;
  const Complex half_i(0.0, 0.5);
  for (int i = 0; i < config.dim(); ++i) {
    switch (classify(i, config).kind) {
      case StateKind::AtomExcited:
        op.entries(i, i) -= half_i * config.gamma;
        break;
      case StateKind::CavityPhoton:
        op.entries(i, i) -= half_i * config.kappa_c;
        break;
      case StateKind::FiberPhoton:
        op.entries(i, i) -= half_i * config.kappa_f;
        break;
      default:
        break;
    }
  }
  op.hermitian = false;
  return op;
}

}  // namespace zenochain
