// Acceptance gate for the chain simulator. Each criterion prints one
// PASS/FAIL line with the measured numbers and its wall time; the process
// exits nonzero when any criterion fails. Bounds are pinned here on
// purpose: do not loosen them to make a run green.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "zenochain/config_io.hpp"

using namespace zenochain;

namespace {

struct Gate {
  int failures = 0;
  int index = 0;

  void report(const std::string& name, bool ok, const std::string& detail,
              double seconds) {
    ++index;
    if (!ok) ++failures;
    std::printf("[%2d] %s %s (%s; %.2fs)\n", index, ok ? "PASS" : "FAIL",
                name.c_str(), detail.c_str(), seconds);
    std::fflush(stdout);
  }
};

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return buf;
}

ChainConfig operating_point() {
  ChainConfig config;
  config.n_atoms = 3;
  config.g = 1.0;
  config.v = 1.0;
  config.omega_n = 0.04;
  config.omega_1 = (std::numbers::sqrt2 + 1.0) * 0.04;
  return config;
}

// Phase convention shared with the closed-form construction: first
// component of significant magnitude made real and positive.
void fix_phase(Eigen::VectorXcd& vec) {
  for (int i = 0; i < vec.size(); ++i) {
    if (std::abs(vec(i)) > 1e-12) {
      vec *= std::conj(vec(i)) / std::abs(vec(i));
      return;
    }
  }
}

// 1. Product-space assembly, restricted to the single-excitation subspace,
//    reproduces the direct assembly elementwise to 1e-12 for randomized
//    couplings and drives, and the subspace is invariant (residual < 1e-12).
//    Budget 1 s.
void criterion_1(Gate& gate) {
  Stopwatch watch;
  double worst_diff = 0.0;
  double worst_residual = 0.0;
  std::mt19937 rng(101u);
  std::uniform_real_distribution<double> u(0.5, 2.0);
  std::uniform_real_distribution<double> d(-0.1, 0.1);
  for (int trial = 0; trial < 5; ++trial) {
    ChainConfig config = operating_point();
    if (trial > 0) {
      config.g = u(rng);
      config.v = u(rng);
      config.g_dev = {d(rng) * config.g, d(rng) * config.g};
      config.v_dev = {d(rng) * config.v, d(rng) * config.v};
      config.omega_1 = 0.1 * u(rng);
      config.omega_n = 0.1 * u(rng);
    }
    OracleResult oracle = full_space_oracle(config);
    worst_diff = std::max(worst_diff, (oracle.projected.entries -
                                       assemble_total(config).entries)
                                          .cwiseAbs()
                                          .maxCoeff());
    worst_residual = std::max(worst_residual, oracle.invariance_residual);
  }
  double elapsed = watch.seconds();
  bool ok = worst_diff < 1e-12 && worst_residual < 1e-12 && elapsed < 1.0;
  gate.report("restricted assembly matches the product-space construction",
              ok,
              "max entry diff " + num(worst_diff) + ", invariance residual " +
                  num(worst_residual) + ", bound 1e-12, budget 1s",
              elapsed);
}

// 2. Closed-form eigensystem of the uniform three-atom exchange matches a
//    numeric eigendecomposition for 100 random coupling pairs: eigenvalues
//    as multisets and eigenvectors after the phase convention, both to
//    1e-10. Budget 1 s.
void criterion_2(Gate& gate) {
  Stopwatch watch;
  double worst_val = 0.0;
  double worst_vec = 0.0;
  std::mt19937 rng(202u);
  std::uniform_real_distribution<double> u(0.3, 2.5);
  for (int trial = 0; trial < 100; ++trial) {
    double g = u(rng), v = u(rng);
    ChainConfig config;
    config.g = g;
    config.v = v;
    ClosedFormEigensystem sys = closed_form_eigensystem(g, v);

    // interior block: indices 1..9 carry the nontrivial spectrum, so its
    // nine levels are simple and the eigenvectors are unique up to phase
    Matrix interior = assemble_acf(config).entries.block(1, 1, 9, 9);
    Eigen::SelfAdjointEigenSolver<Matrix> solver(interior);

    std::array<int, 9> order = {0, 1, 2, 3, 4, 5, 6, 7, 8};
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      return sys.lambdas[static_cast<size_t>(a)] <
             sys.lambdas[static_cast<size_t>(b)];
    });
    for (int k = 0; k < 9; ++k) {
      int idx = order[static_cast<size_t>(k)];
      worst_val = std::max(
          worst_val, std::abs(sys.lambdas[static_cast<size_t>(idx)] -
                              solver.eigenvalues()(k)));
      Eigen::VectorXcd closed = sys.vectors.col(idx).segment(1, 9);
      Eigen::VectorXcd numeric = solver.eigenvectors().col(k);
      fix_phase(closed);
      fix_phase(numeric);
      worst_vec = std::max(worst_vec, (closed - numeric).norm());
    }
  }
  double elapsed = watch.seconds();
  bool ok = worst_val < 1e-10 && worst_vec < 1e-10 && elapsed < 1.0;
  gate.report("closed-form eigensystem matches numeric diagonalization", ok,
              "100 coupling pairs; eigenvalue diff " + num(worst_val) +
                  ", eigenvector diff " + num(worst_vec) +
                  ", bound 1e-10, budget 1s",
              elapsed);
}

// 3. GHZ headline at the operating point (no decoherence): full-Hamiltonian
//    fidelity >= 0.97, and the analytic dark-subspace path reaches the
//    target with fidelity 1 to 1e-10. Budget 5 s.
void criterion_3(Gate& gate) {
  Stopwatch watch;
  ChainConfig config = operating_point();
  GhzReport report = run_ghz(config, false, 2001);

  double n1 = dark_normalization(3, config.g, config.v);
  auto amps = analytic_dark_evolution(report.tau, config.omega_1,
                                      config.omega_n, n1);
  double inv_rt2 = 1.0 / std::numbers::sqrt2;
  Complex overlap = -inv_rt2 * amps[0] - inv_rt2 * amps[2];
  double analytic_fid = std::norm(overlap);

  double elapsed = watch.seconds();
  bool ok = report.fidelity >= 0.97 && std::abs(analytic_fid - 1.0) < 1e-10 &&
            elapsed < 5.0;
  gate.report("GHZ generation at the operating point", ok,
              "full fidelity " + num(report.fidelity) +
                  " (>= 0.97), analytic path fidelity off by " +
                  num(std::abs(analytic_fid - 1.0)) + " (< 1e-10), budget 5s",
              elapsed);
}

// 4. Low cavity-fiber coupling: v = 0.5 g still reaches fidelity >= 0.97.
void criterion_4(Gate& gate) {
  Stopwatch watch;
  ChainConfig weak = operating_point();
  weak.v = 0.5;
  double fid = ghz_fidelity(weak, false);
  gate.report("fidelity survives weak fiber coupling", fid >= 0.97,
              "v = 0.5 g: fidelity " + num(fid) + " (>= 0.97)",
              watch.seconds());
}

// 5. Robustness to end-coupling disorder: fidelity >= 0.94 everywhere on
//    the 21x21 grid delta_g1, delta_gN in [-0.1 g, 0.1 g], with the pulse
//    kept at its nominal duration.
void criterion_5(Gate& gate) {
  Stopwatch watch;
  ChainConfig base = operating_point();
  SweepAxis a1;
  a1.param = "delta_g1";
  a1.label = "delta_g1";
  a1.lo = -0.1;
  a1.hi = 0.1;
  a1.steps = 21;
  SweepAxis a2 = a1;
  a2.param = "delta_gn";
  a2.label = "delta_gn";
  SweepResult result =
      sweep(base, {a1, a2}, SweepObservable::Fidelity, 2001, 4);
  double min_fid =
      *std::min_element(result.values.begin(), result.values.end());
  bool ok = min_fid >= 0.94;
  gate.report("fidelity floor over end-coupling disorder", ok,
              "min fidelity " + num(min_fid) +
                  " on the 21x21 grid, bound 0.94; the floor sits at the "
                  "anti-diagonal corners (opposite-sign deviations)",
              watch.seconds());
}

// 6. Population bounds over the pulse at the operating point: cavity
//    occupation stays below 0.04 and atomic excitation exceeds fiber
//    occupation.
void criterion_6(Gate& gate) {
  Stopwatch watch;
  GhzReport report = run_ghz(operating_point(), false, 2001);
  bool ok = report.max_p_c < 0.04 && report.max_p_e > report.max_p_f;
  gate.report("population hierarchy during the pulse", ok,
              "max P_c " + num(report.max_p_c) + " (< 0.04), max P_e " +
                  num(report.max_p_e) + " > max P_f " + num(report.max_p_f),
              watch.seconds());
}

// 7. Pulse duration in laboratory units: g/2pi = 750 MHz, v = g,
//    omega_N = 0.04 g gives tau = 1.43e-8 s within 1 percent.
void criterion_7(Gate& gate) {
  Stopwatch watch;
  ChainConfig config = operating_point();
  config.g_hz = 750e6;
  double tau_seconds = ghz_pulse_time_seconds(config);
  double rel = std::abs(tau_seconds - 1.43e-8) / 1.43e-8;
  gate.report("pulse duration in physical units", rel < 0.01,
              "tau = " + num(tau_seconds) + " s vs 1.43e-8 s (" +
                  num(100.0 * rel) + "%, bound 1%)",
              watch.seconds());
}

// 8. Decoherence at laboratory-scale rates: gamma = 0.0055 g together with
//    kappa_c = 3.5 MHz and fiber decay 1.52e5 Hz against g/2pi = 750 MHz
//    keeps the fidelity at or above 0.90.
void criterion_8(Gate& gate) {
  Stopwatch watch;
  ChainConfig config = operating_point();
  config.gamma = 0.0055;
  config.kappa_c = 3.5 / 750.0;
  config.kappa_f = 1.52e5 / (2.0 * std::numbers::pi * 750e6);
  double fid = ghz_fidelity(config, true);
  gate.report("fidelity under realistic loss rates", fid >= 0.90,
              "decoherent fidelity " + num(fid) + " (>= 0.90)",
              watch.seconds());
}

// 9. Dark-state freeze: the exchange Hamiltonian annihilates the generated
//    GHZ register state (norm < 1e-10), and evolving it under the exchange
//    alone leaves it unchanged.
void criterion_9(Gate& gate) {
  Stopwatch watch;
  ChainConfig config = operating_point();
  StateVector ghz = ideal_ghz_state(config);
  Operator exchange = assemble_acf(config);
  double kick = (exchange.entries * ghz).norm();
  StateVector later = propagate(exchange, ghz, 50.0);
  double drift = (later - ghz).norm();
  bool ok = kick < 1e-10 && drift < 1e-10;
  gate.report("generated GHZ state is frozen by the exchange", ok,
              "norm of H*ghz " + num(kick) + ", drift after t = 50/g " +
                  num(drift) + " (both < 1e-10)",
              watch.seconds());
}

// 10. Five-atom generalization: the initial-state occupation under the full
//     Hamiltonian deviates from the reduced three-level model by at most
//     0.1 over one pulse. Budget 10 s.
void criterion_10(Gate& gate) {
  Stopwatch watch;
  ChainConfig five = operating_point();
  five.n_atoms = 5;
  CompareResult result = compare_effective(five, 2001);
  double elapsed = watch.seconds();
  bool ok = result.max_abs_diff <= 0.1 && elapsed < 10.0;
  gate.report("reduced dynamics track the five-atom chain", ok,
              "max |P_full - P_eff| " + num(result.max_abs_diff) +
                  " (<= 0.1), budget 10s",
              elapsed);
}

// 11. EPR reduction of the ideal GHZ state: both measurement branches have
//     probability 0.5 within 1e-12 and concurrence 1 within 1e-9.
void criterion_11(Gate& gate) {
  Stopwatch watch;
  AtomicRegister ideal;
  ideal.n_atoms = 3;
  ideal.amplitudes = Eigen::VectorXcd::Zero(8);
  ideal.amplitudes(4) = -1.0 / std::numbers::sqrt2;
  ideal.amplitudes(3) = -1.0 / std::numbers::sqrt2;
  EprResult result = epr_reduce(ideal, 2);
  bool present = true;
  double worst_prob = 0.0;
  double worst_conc = 0.0;
  for (int outcome : {0, 1}) {
    const EprBranch& branch = result.branches[static_cast<size_t>(outcome)];
    present = present && branch.present;
    if (!branch.present) continue;
    worst_prob = std::max(worst_prob, std::abs(branch.probability - 0.5));
    worst_conc = std::max(
        worst_conc, std::abs(concurrence(branch.state.amplitudes) - 1.0));
  }
  bool ok = present && worst_prob < 1e-12 && worst_conc < 1e-9;
  gate.report("mid-chain measurement yields EPR pairs", ok,
              "max |p - 1/2| " + num(worst_prob) +
                  " (< 1e-12), max |C - 1| " + num(worst_conc) + " (< 1e-9)",
              watch.seconds());
}

// 12. Structural invariants over 1000 randomized configurations:
//     Hermiticity, projector completeness/orthogonality, the trace identity
//     sum(lambda_i^2) = tr(H^2), norm conservation, and monotone decay
//     under loss. Budget 30 s.
void criterion_12(Gate& gate) {
  Stopwatch watch;
  std::mt19937 rng(1212u);
  std::uniform_real_distribution<double> u(0.5, 2.0);
  std::uniform_real_distribution<double> d(-0.1, 0.1);
  std::uniform_real_distribution<double> drive(0.0, 0.1);
  std::uniform_real_distribution<double> rate(1e-4, 0.01);
  std::uniform_int_distribution<int> atoms(1, 5);
  std::uniform_int_distribution<int> coin(0, 1);

  int checked = 0;
  double worst_herm = 0.0, worst_proj = 0.0, worst_trace = 0.0;
  double worst_norm = 0.0, worst_decay = 0.0;

  for (int trial = 0; trial < 1000; ++trial) {
    ChainConfig config;
    config.n_atoms = 2 * atoms(rng) + 1;  // odd, 3..11
    config.g = u(rng);
    config.v = u(rng);
    config.g_dev = {d(rng) * config.g, d(rng) * config.g};
    if (coin(rng)) {
      config.v_dev.resize(static_cast<size_t>(config.n_links()));
      for (double& dv : config.v_dev) dv = d(rng) * config.v;
    }
    config.omega_1 = drive(rng);
    config.omega_n = drive(rng);
    bool lossy = coin(rng) == 1;
    if (lossy) {
      config.gamma = rate(rng);
      config.kappa_c = rate(rng);
      config.kappa_f = rate(rng);
    }

    Operator h = assemble_total(config);
    worst_herm = std::max(
        worst_herm, (h.entries - h.entries.adjoint()).cwiseAbs().maxCoeff());

    if (trial % 20 == 0) {
      ZenoDecomposition decomp = zeno_decompose(config);
      Matrix sum = Matrix::Zero(config.dim(), config.dim());
      double trace_sum = 0.0;
      for (const ZenoCluster& cluster : decomp.clusters) {
        sum += cluster.projector;
        trace_sum +=
            cluster.eigenvalue * cluster.eigenvalue * cluster.multiplicity;
        worst_proj = std::max(
            worst_proj,
            (cluster.projector * cluster.projector - cluster.projector)
                .cwiseAbs()
                .maxCoeff());
      }
      for (size_t a = 0; a < decomp.clusters.size(); ++a) {
        for (size_t b = a + 1; b < decomp.clusters.size(); ++b) {
          worst_proj = std::max(
              worst_proj,
              (decomp.clusters[a].projector * decomp.clusters[b].projector)
                  .cwiseAbs()
                  .maxCoeff());
        }
      }
      worst_proj = std::max(
          worst_proj, (sum - Matrix::Identity(config.dim(), config.dim()))
                          .cwiseAbs()
                          .maxCoeff());
      Matrix acf = assemble_acf(config).entries;
      worst_trace = std::max(
          worst_trace, std::abs(trace_sum - (acf * acf).trace().real()));
    }

    if (trial % 20 == 10) {
      double horizon = 10.0 / config.g;
      Trajectory traj =
          evolve(lossy ? assemble_decoherent(config) : assemble_total(config),
                 basis_vector(0, config), horizon, 41);
      double prev = 1.0;
      for (const StateVector& psi : traj.states) {
        double n = psi.norm();
        if (!lossy) {
          worst_norm = std::max(worst_norm, std::abs(n - 1.0));
        } else {
          worst_decay = std::max(worst_decay, n - prev);
          prev = n;
        }
      }
    }
    ++checked;
  }

  double elapsed = watch.seconds();
  bool ok = worst_herm < 1e-12 && worst_proj < 1e-9 && worst_trace < 1e-9 &&
            worst_norm < 1e-9 && worst_decay < 1e-9 && elapsed < 30.0;
  gate.report("structural invariants over randomized configurations", ok,
              num(checked) + " configs; hermiticity " + num(worst_herm) +
                  ", projectors " + num(worst_proj) + ", trace identity " +
                  num(worst_trace) + ", norm " + num(worst_norm) +
                  ", decay slack " + num(worst_decay) + ", budget 30s",
              elapsed);
}

}  // namespace

int main() {
  Gate gate;
  criterion_1(gate);
  criterion_2(gate);
  criterion_3(gate);
  criterion_4(gate);
  criterion_5(gate);
  criterion_6(gate);
  criterion_7(gate);
  criterion_8(gate);
  criterion_9(gate);
  criterion_10(gate);
  criterion_11(gate);
  criterion_12(gate);
  if (gate.failures == 0) {
    std::printf("acceptance: all %d criteria passed\n", gate.index);
  } else {
    std::printf("acceptance: %d of %d criteria FAILED\n", gate.failures,
                gate.index);
  }
  return gate.failures == 0 ? 0 : 1;
}
