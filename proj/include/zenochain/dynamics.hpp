#pragma once

// State propagation and observables. Hermitian operators are propagated by
// spectral decomposition; non-Hermitian ones by a dense matrix exponential of
// one fixed step, applied repeatedly. Both are exact up to roundoff at these
// dimensions (<= ~60), so no step-size tuning enters the results.

#include <vector>

#include "zenochain/basis.hpp"
#include "zenochain/hamiltonian.hpp"

namespace zenochain {

struct PopulationSample {
  double p_initial = 0.0;
  double p_e = 0.0;  // AtomExcited states
  double p_c = 0.0;  // CavityPhoton states
  double p_f = 0.0;  // FiberPhoton states
  double p_final = 0.0;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<StateVector> states;
  // Category populations per sample; filled whenever the operator dimension
  // matches a chain basis (4N-1).
  std::vector<PopulationSample> populations;
};

// Sum of |amplitude|^2 grouped by basis-state kind.
PopulationSample categorize_populations(const StateVector& psi,
                                        const ChainConfig& config);

// Samples psi(t_k) = exp(-i H t_k) psi0 at n_samples uniform times spanning
// [0, t_final] inclusive. n_samples >= 2.
Trajectory evolve(const Operator& h, const StateVector& psi0, double t_final,
                  int n_samples);

// Single-time propagation, exp(-i H t) psi0.
StateVector propagate(const Operator& h, const StateVector& psi0, double t);

// |<a|b>|^2
double fidelity(const StateVector& a, const StateVector& b);

// Amplitudes (c_phi_first, c_psi_dark, c_phi_last) of the three-level
// dark-subspace evolution started from phi_first:
//   c_phi_first = [w1^2 cos(n1 t W) + wn^2] / W^2
//   c_psi_dark  = -i w1 sin(n1 t W) / W
//   c_phi_last  = w1 wn [cos(n1 t W) - 1] / W^2
// with W = sqrt(w1^2 + wn^2). Unit norm for all t.
std::array<Complex, 3> analytic_dark_evolution(double t, double omega_1,
                                               double omega_n, double n1);

}  // namespace zenochain
