#include "zenochain/dynamics.hpp"

#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

namespace zenochain {

namespace {

constexpr Complex kMinusI{0.0, -1.0};

void check_input(const Operator& h, const StateVector& psi0) {
  if (h.entries.rows() != h.entries.cols()) {
    throw ConfigError("operator is not square");
  }
  if (h.entries.rows() != psi0.size()) {
    throw ConfigError("operator/state dimension mismatch");
  }
  if (!h.entries.allFinite() || !psi0.allFinite()) {
    throw NumericalError("non-finite entries in operator or state");
  }
}

// Chain-shaped dimensions (4N-1) get category populations; anything else is
// left without them.
bool chain_dim(int dim) { return dim >= 3 && (dim + 1) % 4 == 0; }

ChainConfig config_for_dim(int dim) {
  ChainConfig config;
  config.n_atoms = (dim + 1) / 4;
  return config;
}

}  // namespace

PopulationSample categorize_populations(const StateVector& psi,
                                        const ChainConfig& config) {
  PopulationSample sample;
  for (int i = 0; i < config.dim(); ++i) {
    double p = std::norm(psi(i));
    switch (classify(i, config).kind) {
      case StateKind::Initial:
        sample.p_initial += p;
        break;
      case StateKind::AtomExcited:
        sample.p_e += p;
        break;
      case StateKind::CavityPhoton:
        sample.p_c += p;
        break;
      case StateKind::FiberPhoton:
        sample.p_f += p;
        break;
      case StateKind::Final:
        sample.p_final += p;
        break;
    }
  }
  return sample;
}

Trajectory evolve(const Operator& h, const StateVector& psi0, double t_final,
                  int n_samples) {
  check_input(h, psi0);
  if (!(t_final > 0.0)) {
    throw ConfigError("t_final must be positive");
  }
  if (n_samples < 2) {
    throw ConfigError("n_samples must be at least 2");
  }

  Trajectory traj;
  traj.times.resize(static_cast<size_t>(n_samples));
  traj.states.resize(static_cast<size_t>(n_samples));
  const double dt = t_final / (n_samples - 1);
  for (int k = 0; k < n_samples; ++k) {
    traj.times[static_cast<size_t>(k)] = dt * k;
  }

  if (h.hermitian) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h.entries);
    if (solver.info() != Eigen::Success) {
      throw NumericalError("eigendecomposition failed");
    }
    StateVector coeffs = solver.eigenvectors().adjoint() * psi0;
    for (int k = 0; k < n_samples; ++k) {
      Eigen::ArrayXcd phases = (kMinusI * traj.times[static_cast<size_t>(k)] *
                                solver.eigenvalues().array().cast<Complex>())
                                   .exp();
      traj.states[static_cast<size_t>(k)] =
          solver.eigenvectors() * (phases * coeffs.array()).matrix();
    }
  } else {
    Matrix step = (kMinusI * dt * h.entries).exp();
    StateVector psi = psi0;
    for (int k = 0; k < n_samples; ++k) {
      traj.states[static_cast<size_t>(k)] = psi;
      if (k + 1 < n_samples) psi = step * psi;
    }
  }

  if (chain_dim(static_cast<int>(psi0.size()))) {
    ChainConfig config = config_for_dim(static_cast<int>(psi0.size()));
    traj.populations.reserve(traj.states.size());
    for (const StateVector& psi : traj.states) {
      traj.populations.push_back(categorize_populations(psi, config));
    }
  }
  return traj;
}

StateVector propagate(const Operator& h, const StateVector& psi0, double t) {
  check_input(h, psi0);
  if (h.hermitian) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h.entries);
    if (solver.info() != Eigen::Success) {
      throw NumericalError("eigendecomposition failed");
    }
    StateVector coeffs = solver.eigenvectors().adjoint() * psi0;
    Eigen::ArrayXcd phases =
        (kMinusI * t * solver.eigenvalues().array().cast<Complex>()).exp();
    return solver.eigenvectors() * (phases * coeffs.array()).matrix();
  }
  Matrix u = (kMinusI * t * h.entries).exp();
  return u * psi0;
}

double fidelity(const StateVector& a, const StateVector& b) {
  if (a.size() != b.size()) {
    throw ConfigError("fidelity dimension mismatch");
  }
  return std::norm(a.dot(b));
}

std::array<Complex, 3> analytic_dark_evolution(double t, double omega_1,
                                               double omega_n, double n1) {
  if (!(n1 > 0.0) || n1 > 1.0) {
    throw ConfigError("dark-state normalization out of range");
  }
  double w2 = omega_1 * omega_1 + omega_n * omega_n;
  if (w2 == 0.0) {
    return {Complex(1.0), Complex(0.0), Complex(0.0)};
  }
  double w = std::sqrt(w2);
  double cos_t = std::cos(n1 * t * w);
  double sin_t = std::sin(n1 * t * w);
  return {
      Complex((omega_1 * omega_1 * cos_t + omega_n * omega_n) / w2),
      Complex(0.0, -omega_1 * sin_t / w),
      Complex(omega_1 * omega_n * (cos_t - 1.0) / w2),
  };
}

}  // namespace zenochain
