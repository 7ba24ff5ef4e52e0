#include "zenochain/zeno.hpp"

#include <algorithm>
#include <cmath>

namespace zenochain {

namespace {

// Makes the first amplitude above threshold real and positive.
void fix_phase(Eigen::Ref<StateVector> psi) {
  for (int i = 0; i < psi.size(); ++i) {
    if (std::abs(psi(i)) > 1e-12) {
      psi *= std::conj(psi(i)) / std::abs(psi(i));
      return;
    }
  }
}

}  // namespace

double default_clustering_tol(const ChainConfig& config) {
  return 1e-8 * std::max(config.g, config.v);
}

ZenoDecomposition zeno_decompose(const Operator& h_acf, double tol) {
  if (!h_acf.hermitian) {
    throw NumericalError("zeno_decompose requires a Hermitian operator");
  }
  if (!(tol > 0.0)) {
    throw NumericalError("clustering tolerance must be positive");
  }
  const int d = h_acf.dim();
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h_acf.entries);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("eigendecomposition failed");
  }
  const Eigen::VectorXd& evals = solver.eigenvalues();
  const Matrix& evecs = solver.eigenvectors();

  ZenoDecomposition decomp;
  int start = 0;
  for (int i = 1; i <= d; ++i) {
    if (i < d && evals(i) - evals(i - 1) < tol) continue;
    ZenoCluster cluster;
    cluster.multiplicity = i - start;
    cluster.eigenvalue =
        evals.segment(start, cluster.multiplicity).mean();
    auto block = evecs.middleCols(start, cluster.multiplicity);
    cluster.projector = block * block.adjoint();
    if (!decomp.clusters.empty()) {
      double gap = evals(start) - evals(start - 1);
      if (gap < 10.0 * tol) {
        throw DegeneracyError(
            "ambiguous eigenvalue clustering: inter-cluster gap " +
            std::to_string(gap) + " < 10 * tol");
      }
    }
    decomp.clusters.push_back(std::move(cluster));
    start = i;
  }

  // Dark-basis extraction for the chain case: a zero cluster of multiplicity
  // >= 3 whose span contains the Initial and Final unit vectors exactly.
  for (const ZenoCluster& cluster : decomp.clusters) {
    if (std::abs(cluster.eigenvalue) >= tol || cluster.multiplicity < 3) {
      continue;
    }
    if (d < 3) break;
    StateVector e_first = StateVector::Zero(d);
    e_first(0) = 1.0;
    StateVector e_last = StateVector::Zero(d);
    e_last(d - 1) = 1.0;
    const Matrix& p0 = cluster.projector;
    if ((p0 * e_first - e_first).norm() > 1e-8 ||
        (p0 * e_last - e_last).norm() > 1e-8) {
      break;
    }
    StateVector probe = StateVector::Zero(d);
    probe(1) = 1.0;  // AtomExcited(1)
    StateVector psi = p0 * probe;
    psi -= e_first * e_first.dot(psi);
    psi -= e_last * e_last.dot(psi);
    double norm = psi.norm();
    if (norm < 1e-12) break;
    psi /= norm;
    fix_phase(psi);
    decomp.dark_basis = {e_first, psi, e_last};
    decomp.has_dark_basis = true;
    break;
  }
  return decomp;
}

ZenoDecomposition zeno_decompose(const ChainConfig& config) {
  return zeno_decompose(assemble_acf(config), default_clustering_tol(config));
}

double dark_normalization(int n_atoms, double g, double v) {
  double r = g / v;
  return 1.0 / std::sqrt(n_atoms + (n_atoms - 1) * r * r);
}

StateVector dark_state(const ChainConfig& config) {
  config.validate();
  if (config.has_deviations()) {
    throw ConfigError(
        "dark_state assumes uniform couplings; use zeno_decompose for "
        "configs with deviations");
  }
  double n1 = dark_normalization(config.n_atoms, config.g, config.v);
  StateVector psi = StateVector::Zero(config.dim());
  for (int atom = 1; atom <= config.n_atoms; ++atom) {
    psi(atom_excited_index(atom, config)) = n1;
  }
  for (int link = 1; link <= config.n_links(); ++link) {
    psi(fiber_index(link, config)) = -(config.g / config.v) * n1;
  }
  return psi;
}

ClosedFormEigensystem closed_form_eigensystem(double g, double v) {
  if (!(g > 0.0) || !(v > 0.0)) {
    throw ConfigError("closed_form_eigensystem requires positive couplings");
  }
  const double g2 = g * g;
  const double v2 = v * v;
  const double A = std::sqrt(g2 * g2 + 4.0 * v2 * v2);

  ClosedFormEigensystem sys;
  sys.A = A;
  ClosedFormCoefficients& c = sys.coeff;
  const double rt2 = std::sqrt(2.0);
  c.eps1 = std::sqrt(g2 + 2.0 * v2 - A) / (rt2 * g);
  c.eta1 = (-g2 + 2.0 * v2 - A) / (2.0 * g * v);
  c.chi1 = std::sqrt(g2 + 2.0 * v2 - A) * (g2 + A) / (2.0 * rt2 * g * v2);
  c.mu1 = std::sqrt(3.0 * g2 + 2.0 * v2 - A) / (rt2 * g);
  c.zeta1 = (-g2 - 2.0 * v2 + A) / (2.0 * g * v);
  c.delta1 =
      std::sqrt(3.0 * g2 + 2.0 * v2 - A) * (-g2 + A) / (2.0 * rt2 * g * v2);
  c.theta1 = (-g2 + A) / v2;
  c.eps2 = std::sqrt(g2 + 2.0 * v2 + A) / (rt2 * g);
  c.eta2 = (-g2 + 2.0 * v2 + A) / (2.0 * g * v);
  c.chi2 = std::sqrt(g2 + 2.0 * v2 + A) * (-g2 + A) / (2.0 * rt2 * g * v2);
  c.mu2 = std::sqrt(3.0 * g2 + 2.0 * v2 + A) / (rt2 * g);
  c.zeta2 = (g2 + 2.0 * v2 + A) / (2.0 * g * v);
  c.delta2 =
      std::sqrt(3.0 * g2 + 2.0 * v2 + A) * (g2 + A) / (2.0 * rt2 * g * v2);
  c.theta2 = (g2 + A) / v2;

  sys.lambdas = {0.0,
                 -std::sqrt((g2 + 2.0 * v2 - A) / 2.0),
                 std::sqrt((g2 + 2.0 * v2 - A) / 2.0),
                 -std::sqrt((3.0 * g2 + 2.0 * v2 - A) / 2.0),
                 std::sqrt((3.0 * g2 + 2.0 * v2 - A) / 2.0),
                 -std::sqrt((3.0 * g2 + 2.0 * v2 + A) / 2.0),
                 std::sqrt((3.0 * g2 + 2.0 * v2 + A) / 2.0),
                 -std::sqrt((g2 + 2.0 * v2 + A) / 2.0),
                 std::sqrt((g2 + 2.0 * v2 + A) / 2.0)};

  // Unnormalized amplitude patterns over the chain nodes (basis indices
  // 1..9). The antisymmetric eps-families carry no amplitude on the middle
  // excited state; the symmetric mu-families do (theta coefficient).
  const double gv = g / v;
  const std::array<std::array<double, 9>, 9> patterns = {{
      {1, 0, -gv, 0, 1, 0, -gv, 0, 1},                                  // dark
      {-1, c.eps1, -c.eta1, -c.chi1, 0, c.chi1, c.eta1, -c.eps1, 1},    // -sqrt((g2+2v2-A)/2)
      {-1, -c.eps1, -c.eta1, c.chi1, 0, -c.chi1, c.eta1, c.eps1, 1},    // +
      {1, -c.mu1, -c.zeta1, c.delta1, -c.theta1, c.delta1, -c.zeta1, -c.mu1,
       1},                                                              // -sqrt((3g2+2v2-A)/2)
      {1, c.mu1, -c.zeta1, -c.delta1, -c.theta1, -c.delta1, -c.zeta1, c.mu1,
       1},                                                              // +
      {1, -c.mu2, c.zeta2, -c.delta2, c.theta2, -c.delta2, c.zeta2, -c.mu2,
       1},                                                              // -sqrt((3g2+2v2+A)/2)
      {1, c.mu2, c.zeta2, c.delta2, c.theta2, c.delta2, c.zeta2, c.mu2,
       1},                                                              // +
      {-1, c.eps2, -c.eta2, c.chi2, 0, -c.chi2, c.eta2, -c.eps2, 1},    // -sqrt((g2+2v2+A)/2)
      {-1, -c.eps2, -c.eta2, -c.chi2, 0, c.chi2, c.eta2, c.eps2, 1},    // +
  }};

  sys.vectors = Matrix::Zero(11, 9);
  for (int k = 0; k < 9; ++k) {
    double norm2 = 0.0;
    for (double a : patterns[k]) norm2 += a * a;
    sys.norms[k] = 1.0 / std::sqrt(norm2);
    for (int i = 0; i < 9; ++i) {
      sys.vectors(i + 1, k) = patterns[k][i] * sys.norms[k];
    }
    fix_phase(sys.vectors.col(k));
  }
  return sys;
}

Operator effective_hamiltonian(const ChainConfig& config) {
  config.validate();
  double n1 = dark_normalization(config.n_atoms, config.g, config.v);
  Operator op{Matrix::Zero(3, 3), true};
  op.entries(0, 1) = n1 * config.omega_1;
  op.entries(1, 0) = n1 * config.omega_1;
  op.entries(1, 2) = n1 * config.omega_n;
  op.entries(2, 1) = n1 * config.omega_n;
  return op;
}

}  // namespace zenochain
