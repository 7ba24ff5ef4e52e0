#pragma once

// Dense operators on the restricted basis: the weak laser drives, the strong
// atom-cavity-fiber exchange, their sum, and the non-Hermitian variant with
// decay rates subtracted on the diagonal. A full-product-space assembly of
// the same model (three atomic levels per atom, one photon per boson mode)
// serves as an independent cross-check for N=3.

#include "zenochain/basis.hpp"

namespace zenochain {

struct Operator {
  Matrix entries;
  bool hermitian = true;

  int dim() const { return static_cast<int>(entries.rows()); }
};

// Couples Initial <-> AtomExcited(1) with omega_1 and
// Final <-> AtomExcited(N) with omega_n.
Operator assemble_laser(const ChainConfig& config);

// Nearest-neighbour excitation exchange along the chain: a weighted path
// graph over indices 1..4N-3 with per-link weights
// (g [+dg_1 on link 1], v_j, v_j, g [+dg_N on the last link]).
// Rows and columns of Initial and Final are identically zero.
Operator assemble_acf(const ChainConfig& config);

Operator assemble_total(const ChainConfig& config);

// H_total - (i/2) diag(gamma on AtomExcited, kappa_c on CavityPhoton,
// kappa_f on FiberPhoton, 0 on Initial/Final).
Operator assemble_decoherent(const ChainConfig& config);

struct OracleResult {
  Operator projected;          // full-space Hamiltonian projected to the 11 basis vectors
  double invariance_residual;  // norm of H * span outside span
};

// N=3 only. Builds the Hamiltonian by generic second quantization on
// (3 atomic levels)^3 x (2 Fock levels)^6 = 1728 dimensions, embeds the 11
// restricted basis vectors, projects, and certifies that their span is
// invariant under the full Hamiltonian. Throws NumericalError if the
// invariance residual exceeds 1e-12 (a basis or assembly bug).
OracleResult full_space_oracle(const ChainConfig& config);

}  // namespace zenochain
