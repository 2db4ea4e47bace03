#include <catch_amalgamated.hpp>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <random>

#include "sshe/errors.hpp"
#include "sshe/parallel.hpp"
#include "sshe/ssh_chain.hpp"

using Catch::Approx;
using namespace sshe;

TEST_CASE("Bloch symbol and dispersion") {
  const SshParams p{1.0, 0.5};
  CHECK(std::abs(bloch_symbol(p, 0.0) - std::complex<double>(1.5, 0.0)) < 1e-15);
  CHECK(std::abs(bloch_symbol(p, std::numbers::pi) - std::complex<double>(0.5, 0.0)) < 1e-15);
  CHECK(std::abs(bloch_symbol(p, 0.3) - bloch_symbol(p, 0.3 + 2 * std::numbers::pi)) < 1e-14);
  for (double k : {0.0, 0.7, 2.0, std::numbers::pi}) {
    const auto e = dispersion(p, k);
    CHECK(e.plus == Approx(std::sqrt(1.25 + std::cos(k))).margin(1e-14));
    CHECK(e.minus == -e.plus);
  }
  CHECK(spectral_gap(p) == Approx(1.0));
  CHECK(spectral_gap({0.3, 0.8}) == Approx(1.0));
}

TEST_CASE("winding number follows the hopping ordering") {
  CHECK(winding_number({1.0, 0.5}) == 0);
  CHECK(winding_number({0.5, 1.0}) == 1);
  CHECK(winding_number({0.0, 1.0}) == 1);
  CHECK(winding_number({1.0, 0.0}) == 0);
  CHECK_THROWS_AS(winding_number({1.0, 1.0}), GapClosedError);
  CHECK_THROWS_AS(winding_number({0.0, 0.0}), GapClosedError);
  CHECK_THROWS_AS(SshParams({-1.0, 1.0}).validate(), ValidationError);
}

TEST_CASE("winding survives coarse and fine grids") {
  for (int n : {16, 64, 1024}) {
    CHECK(winding_number({0.2, 1.0}, n) == 1);
    CHECK(winding_number({0.99, 1.0}, n) == 1);
    CHECK(winding_number({1.0, 0.99}, n) == 0);
  }
}

TEST_CASE("open chain spectrum is chiral and matches a dense solve") {
  const FiniteChain chain{12, {0.7, 1.3}};
  const auto ev = finite_chain_spectrum(chain);
  REQUIRE(ev.size() == 24);
  for (std::size_t i = 0; i < ev.size(); ++i) CHECK(ev[i] == Approx(-ev[ev.size() - 1 - i]).margin(1e-12));

  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(24, 24);
  for (int i = 0; i + 1 < 24; ++i) h(i, i + 1) = h(i + 1, i) = (i % 2 == 0) ? 0.7 : 1.3;
  const Eigen::VectorXd ref = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(h).eigenvalues();
  for (int i = 0; i < 24; ++i) CHECK(ev[static_cast<std::size_t>(i)] == Approx(ref(i)).margin(1e-12));
}

TEST_CASE("edge modes appear only in the non-trivial phase") {
  CHECK(edge_mode_count({40, {1.0, 0.5}}) == 0);
  CHECK(edge_mode_count({40, {0.5, 1.0}}) == 2);
  CHECK(edge_mode_count({40, {0.0, 1.0}}) == 2);

  std::mt19937_64 rng(seed_from_env(2024));
  std::uniform_real_distribution<double> u(0.0, 2.0);
  for (int i = 0; i < 50; ++i) {
    const SshParams p{u(rng), u(rng)};
    if (std::abs(p.t_in - p.t_out) < 0.05) continue;
    CHECK(edge_mode_count({40, p}) == 2 * winding_number(p));
  }
}
