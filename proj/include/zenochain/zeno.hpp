#pragma once

// Zeno structure of the strong-coupling Hamiltonian: clustered
// eigenprojections, the dark state that the weak drives act through, the
// closed-form N=3 eigensystem, and the effective three-level Hamiltonian on
// {phi_first, psi_dark, phi_last}.

#include <vector>

#include "zenochain/basis.hpp"
#include "zenochain/hamiltonian.hpp"

namespace zenochain {

struct ZenoCluster {
  double eigenvalue = 0.0;  // cluster representative (mean of members)
  Matrix projector;
  int multiplicity = 0;
};

struct DarkBasis {
  StateVector phi_first;  // Initial
  StateVector psi_dark;   // zero-eigenvalue superposition of excited/fiber states
  StateVector phi_last;   // Final
};

struct ZenoDecomposition {
  std::vector<ZenoCluster> clusters;  // ascending eigenvalue
  bool has_dark_basis = false;
  DarkBasis dark_basis;
};

double default_clustering_tol(const ChainConfig& config);

// Clusters the spectrum of a Hermitian operator with the given absolute
// tolerance. Distinct clusters must be separated by at least 10*tol,
// otherwise a DegeneracyError is thrown. When the operator has a
// zero-eigenvalue cluster of multiplicity >= 3 containing the Initial and
// Final unit vectors (the chain case), the dark basis is extracted with
// psi_dark's amplitude on AtomExcited(1) made real and positive.
ZenoDecomposition zeno_decompose(const Operator& h_acf, double tol);
ZenoDecomposition zeno_decompose(const ChainConfig& config);

// N_1 = [N + (N-1)(g/v)^2]^(-1/2), the dark-state normalization for uniform
// couplings.
double dark_normalization(int n_atoms, double g, double v);

// Uniform-coupling dark state: +N_1 on every AtomExcited state, -(g/v)N_1 on
// every FiberPhoton state. Refuses configs with deviations (the closed form
// assumes uniform couplings; use zeno_decompose for the numeric dark state).
StateVector dark_state(const ChainConfig& config);

struct ClosedFormCoefficients {
  double eps1, eta1, chi1, mu1, zeta1, delta1, theta1;
  double eps2, eta2, chi2, mu2, zeta2, delta2, theta2;
};

// Closed-form eigensystem of the N=3 exchange Hamiltonian. lambdas[0..8] are
// the nine eigenvalues (lambdas[0] = 0 for the dark state); vectors.col(i)
// is the matching unit eigenvector over the 11-dimensional basis, phase-fixed
// so its first nonzero amplitude is real and positive. Note the two
// fully-symmetric families: the eps2/eta2/chi2 vectors belong to
// -+sqrt((g^2+2v^2+A)/2) and the mu2/zeta2/delta2/theta2 vectors to
// -+sqrt((3g^2+2v^2+A)/2).
struct ClosedFormEigensystem {
  double A = 0.0;  // sqrt(g^4 + 4v^4)
  ClosedFormCoefficients coeff{};
  std::array<double, 9> lambdas{};
  std::array<double, 9> norms{};
  Matrix vectors;  // 11 x 9
};

ClosedFormEigensystem closed_form_eigensystem(double g, double v);

// 3x3 Hermitian matrix on {phi_first, psi_dark, phi_last} with couplings
// N_1*omega_1 and N_1*omega_n, zero diagonal. Uses the uniform-coupling N_1
// from (g, v); deviations do not enter.
Operator effective_hamiltonian(const ChainConfig& config);

}  // namespace zenochain
