#include <doctest.h>

#include <array>
#include <random>

#include "zenochain/hamiltonian.hpp"

using namespace zenochain;

namespace {

ChainConfig driven_config() {
  ChainConfig config;
  config.omega_1 = 0.0965685424949238;
  config.omega_n = 0.04;
  return config;
}

}  // namespace

TEST_CASE("laser term couples only the register corners") {
  ChainConfig config = driven_config();
  Operator h = assemble_laser(config);
  REQUIRE(h.dim() == 11);
  CHECK(h.hermitian);

  int nonzeros = 0;
  for (int r = 0; r < 11; ++r) {
    for (int c = 0; c < 11; ++c) {
      if (std::abs(h.entries(r, c)) > 0.0) ++nonzeros;
    }
  }
  CHECK(nonzeros == 4);
  CHECK(h.entries(0, 1).real() == doctest::Approx(config.omega_1));
  CHECK(h.entries(1, 0).real() == doctest::Approx(config.omega_1));
  CHECK(h.entries(10, 9).real() == doctest::Approx(config.omega_n));
  CHECK(h.entries(9, 10).real() == doctest::Approx(config.omega_n));
}

TEST_CASE("exchange term is a weighted path over the interior states") {
  ChainConfig config;  // uniform g = v = 1
  Operator h = assemble_acf(config);
  CHECK(h.hermitian);
  // corner rows stay empty: the exchange does not touch the register states
  CHECK(h.entries.row(0).cwiseAbs().maxCoeff() == 0.0);
  CHECK(h.entries.row(10).cwiseAbs().maxCoeff() == 0.0);
  CHECK(h.entries.col(0).cwiseAbs().maxCoeff() == 0.0);

  // chain weights along indices 1..9
  for (int i = 1; i < 9; ++i) {
    CHECK(h.entries(i, i + 1).real() == doctest::Approx(1.0));
    CHECK(h.entries(i + 1, i).real() == doctest::Approx(1.0));
  }
  // nothing beyond the first off-diagonal
  for (int r = 1; r <= 9; ++r) {
    for (int c = r + 2; c <= 9; ++c) {
      CHECK(std::abs(h.entries(r, c)) == 0.0);
    }
  }
  CHECK(h.entries.diagonal().cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("deviations land on the advertised bonds") {
  ChainConfig config;
  config.g_dev = {0.05, -0.03};
  config.v_dev = {0.01, 0.02};
  Operator h = assemble_acf(config);
  // link 1: g+dg1, v1, v1, g ; link 2: g, v2, v2, g+dg3
  std::array<double, 8> expected = {1.05, 1.01, 1.01, 1.0,
                                    1.0, 1.02, 1.02, 0.97};
  for (int i = 0; i < 8; ++i) {
    CHECK(h.entries(i + 1, i + 2).real() ==
          doctest::Approx(expected[static_cast<size_t>(i)]).epsilon(1e-12));
  }
}

TEST_CASE("squared trace equals twice the sum of squared bond weights") {
  std::mt19937 rng(7u);
  std::uniform_real_distribution<double> u(0.5, 2.0);
  std::uniform_real_distribution<double> d(-0.1, 0.1);

  ChainConfig config;
  CHECK((assemble_acf(config).entries * assemble_acf(config).entries)
            .trace()
            .real() == doctest::Approx(16.0).epsilon(1e-12));

  for (int trial = 0; trial < 20; ++trial) {
    ChainConfig c;
    c.n_atoms = (trial % 3) * 2 + 3;
    c.g = u(rng);
    c.v = u(rng);
    c.g_dev = {d(rng), d(rng)};
    c.v_dev.resize(static_cast<size_t>(c.n_links()));
    for (double& dv : c.v_dev) dv = d(rng);

    double sum = 0.0;
    for (int j = 1; j <= c.n_links(); ++j) {
      double g_left = (j == 1) ? c.end_coupling_1() : c.g;
      double g_right = (j == c.n_links()) ? c.end_coupling_n() : c.g;
      double vj = c.fiber_coupling(j);
      sum += g_left * g_left + 2.0 * vj * vj + g_right * g_right;
    }
    Matrix h = assemble_acf(c).entries;
    CHECK((h * h).trace().real() ==
          doctest::Approx(2.0 * sum).epsilon(1e-10));
  }
}

TEST_CASE("total Hamiltonian is the sum of its parts") {
  ChainConfig config = driven_config();
  Matrix diff = assemble_total(config).entries -
                assemble_laser(config).entries - assemble_acf(config).entries;
  CHECK(diff.cwiseAbs().maxCoeff() == 0.0);
  CHECK(assemble_total(config).hermitian);
}

TEST_CASE("decoherent generator subtracts half rates on the right kinds") {
  ChainConfig config = driven_config();
  config.gamma = 0.01;
  config.kappa_c = 0.004;
  config.kappa_f = 0.002;
  Operator h = assemble_decoherent(config);
  CHECK_FALSE(h.hermitian);

  Matrix anti = h.entries - assemble_total(config).entries;
  CHECK(std::abs(anti(0, 0)) == 0.0);
  CHECK(std::abs(anti(10, 10)) == 0.0);
  for (int i : {1, 5, 9}) {
    CHECK(anti(i, i).imag() == doctest::Approx(-0.005).epsilon(1e-12));
  }
  for (int i : {2, 4, 6, 8}) {
    CHECK(anti(i, i).imag() == doctest::Approx(-0.002).epsilon(1e-12));
  }
  for (int i : {3, 7}) {
    CHECK(anti(i, i).imag() == doctest::Approx(-0.001).epsilon(1e-12));
  }
  CHECK((anti - Matrix(anti.diagonal().asDiagonal())).cwiseAbs().maxCoeff() ==
        0.0);
}

TEST_CASE("decoherent generator without rates stays Hermitian") {
  ChainConfig config = driven_config();
  Operator h = assemble_decoherent(config);
  CHECK(h.hermitian);
  CHECK((h.entries - assemble_total(config).entries).cwiseAbs().maxCoeff() ==
        0.0);
}

TEST_CASE("product-space assembly reproduces the restricted matrix") {
  ChainConfig config = driven_config();
  OracleResult oracle = full_space_oracle(config);
  CHECK(oracle.invariance_residual < 1e-12);
  CHECK((oracle.projected.entries - assemble_total(config).entries)
            .cwiseAbs()
            .maxCoeff() < 1e-12);

  // degenerate but legal: no drives at all
  ChainConfig idle;
  OracleResult quiet = full_space_oracle(idle);
  CHECK(quiet.invariance_residual < 1e-12);
  CHECK((quiet.projected.entries - assemble_acf(idle).entries)
            .cwiseAbs()
            .maxCoeff() < 1e-12);
  CHECK(quiet.projected.entries.row(0).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("product-space assembly handles coupling deviations") {
  std::mt19937 rng(42u);
  std::uniform_real_distribution<double> u(0.5, 2.0);
  std::uniform_real_distribution<double> d(-0.1, 0.1);
  for (int trial = 0; trial < 5; ++trial) {
    ChainConfig config;
    config.g = u(rng);
    config.v = u(rng);
    config.g_dev = {d(rng) * config.g, d(rng) * config.g};
    config.v_dev = {d(rng) * config.v, d(rng) * config.v};
    config.omega_1 = 0.1 * u(rng);
    config.omega_n = 0.1 * u(rng);
    OracleResult oracle = full_space_oracle(config);
    CHECK(oracle.invariance_residual < 1e-12);
    CHECK((oracle.projected.entries - assemble_total(config).entries)
              .cwiseAbs()
              .maxCoeff() < 1e-12);
  }
}

TEST_CASE("product-space assembly only supports three atoms") {
  ChainConfig config;
  config.n_atoms = 5;
  CHECK_THROWS_AS(full_space_oracle(config), ConfigError);
}
