#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles/periodic_fd.hpp"
#include "sshe/bloch.hpp"
#include "sshe/errors.hpp"
#include "sshe/homotopy.hpp"
#include "sshe/parallel.hpp"

using Catch::Approx;
using namespace sshe;

constexpr double pi = std::numbers::pi;

TEST_CASE("free crystal band edges") {
  const CrystalSpec free = free_crystal(1.0);
  const auto b = lowest_bands(free);
  CHECK(b.mu1_0 == Approx(0.0).margin(1e-10));
  CHECK(b.mu2_0 == Approx(4 * pi * pi).epsilon(1e-10));
  CHECK(b.mu1_pi == Approx(pi * pi).epsilon(1e-10));
  CHECK(b.mu2_pi == Approx(pi * pi).epsilon(1e-10));

  const auto third = band_edges(free, Quasimomentum::zero, 3);
  CHECK(third[2].energy == Approx(4 * pi * pi).epsilon(1e-10));
  const auto curve = dispersion_curve(free, 1, 33);
  for (const auto& s : curve) CHECK(s.energy == Approx(s.k * s.k).margin(1e-9));
}

TEST_CASE("segment transfer in each regime") {
  // classically allowed, forbidden, and the series branch near z = 0
  const double l = 0.3;
  const Transfer up = segment_transfer(l, 0.0, 4.0);
  CHECK(up.m11 == Approx(std::cos(0.6)).epsilon(1e-14));
  CHECK(up.m12 == Approx(std::sin(0.6) / 2).epsilon(1e-14));
  CHECK(up.m21 == Approx(-2 * std::sin(0.6)).epsilon(1e-14));
  const Transfer down = segment_transfer(l, 0.0, -4.0);
  CHECK(down.m11 == Approx(std::cosh(0.6)).epsilon(1e-14));
  CHECK(down.m12 == Approx(std::sinh(0.6) / 2).epsilon(1e-14));
  CHECK(down.m21 == Approx(2 * std::sinh(0.6)).epsilon(1e-14));
  for (double z : {1e-3 / (l * l) * (1 - 1e-9), 1e-3 / (l * l) * (1 + 1e-9), -1e-3 / (l * l) * (1 + 1e-9)}) {
    const Transfer t = segment_transfer(l, 0.0, z);
    const double c = z > 0 ? std::cos(std::sqrt(z) * l) : std::cosh(std::sqrt(-z) * l);
    CHECK(t.m11 == Approx(c).epsilon(1e-14));
    CHECK(t.det() == Approx(1.0).epsilon(1e-15));
  }
  const Transfer zero = segment_transfer(l, 2.0, 2.0);
  CHECK(zero.m11 == 1.0);
  CHECK(zero.m12 == Approx(l));
  CHECK(zero.m21 == 0.0);
}

// Energies are drawn from the window of the two lowest bands. Deep below it
// the entries grow like e^{kappa L} and det M is only representable to about
// 1e-16 |M|^2.
TEST_CASE("monodromy is unimodular") {
  std::mt19937_64 rng(seed_from_env(11));
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const double w_a = 0.05 + 0.15 * u(rng), w_b = 0.05 + 0.15 * u(rng);
    const double gap = 0.5 * (w_a + w_b);
    const CrystalSpec spec{1 + 9 * u(rng), gap + 0.05 + 0.6 * u(rng), gap + 0.05 + 0.6 * u(rng), w_a, w_b};
    const auto b = lowest_bands(spec);
    const double e = b.mu1_0 + (b.mu2_0 - b.mu1_0) * u(rng);
    CHECK(std::abs(monodromy(spec, e).det() - 1.0) < 1e-10);
  }
  for (int i = 0; i < 1000; ++i) {
    const double l = 0.01 + u(rng);
    const double v = -100 * u(rng);
    const double e = v + (5.0 / l) * (5.0 / l) * (2 * u(rng) - 1);  // |z| l^2 <= 25
    CHECK(std::abs(segment_transfer(l, v, e).det() - 1.0) < 1e-10);
  }
}

TEST_CASE("discriminant is invariant under cyclic reordering") {
  const CrystalSpec spec{10.0, 0.45, 0.6, 0.12, 0.08};
  auto cell = unit_cell(spec);
  for (double e : {-60.0, -20.0, 3.0, 40.0}) {
    const double base = transfer_product(cell, e).trace();
    std::array<Segment, 4> rotated{cell[2], cell[3], cell[0], cell[1]};
    CHECK(transfer_product(rotated, e).trace() == Approx(base).epsilon(1e-11).margin(1e-11));
    CHECK(discriminant(spec, e) == Approx(base).epsilon(1e-12));
  }
}

TEST_CASE("band edges solve the Floquet condition in order") {
  const CrystalSpec spec{10.0, 0.5, 0.5 + 1.0 / 150.0, 0.1, 0.1};
  const auto zero = band_edges(spec, Quasimomentum::zero, 3);
  const auto edge = band_edges(spec, Quasimomentum::pi, 3);
  for (const auto& p : zero) CHECK(discriminant(spec, p.energy) == Approx(2.0).margin(1e-8));
  for (const auto& p : edge) CHECK(discriminant(spec, p.energy) == Approx(-2.0).margin(1e-8));
  const auto b = lowest_bands(spec);
  CHECK(b.mu1_0 < b.mu1_pi);
  CHECK(b.mu1_pi < b.mu2_pi);
  CHECK(b.mu2_pi < b.mu2_0);
  CHECK(b.mu2_0 < zero[2].energy);
  // the first Dirichlet eigenvalue separates the two bands
  CHECK(dirichlet_count(spec, b.mu1_pi - 1e-9) == 0);
  CHECK(dirichlet_count(spec, b.mu2_pi + 1e-9) == 1);
}

TEST_CASE("finite-difference oracle agrees with the transfer matrices") {
  const auto cfg = reference_config();
  for (double eps : {-1.0, 0.0, 1.0}) {
    const CrystalSpec spec = deformed_spec(cfg, eps);
    const auto b = lowest_bands(spec);
    const auto p = oracle::band_energies_fd(spec, false, 2);
    const auto a = oracle::band_energies_fd(spec, true, 2);
    CHECK(p[0] == Approx(b.mu1_0).epsilon(1e-4));
    CHECK(p[1] == Approx(b.mu2_0).epsilon(1e-4));
    CHECK(a[0] == Approx(b.mu1_pi).epsilon(1e-4));
    CHECK(a[1] == Approx(b.mu2_pi).epsilon(1e-4));
  }
  const auto free = oracle::band_energies_fd(free_crystal(1.0), true, 2);
  CHECK(free[0] == Approx(pi * pi).epsilon(1e-6));
}

TEST_CASE("dispersion curves: parallel equals serial, monotone, exact endpoints") {
  const CrystalSpec spec{10.0, 0.5, 0.55, 0.12, 0.08};
  for (int band : {1, 2}) {
    const auto par = dispersion_curve(spec, band, 48);
    const auto ser = serial::dispersion_curve(spec, band, 48);
    REQUIRE(par.size() == ser.size());
    for (std::size_t i = 0; i < par.size(); ++i) {
      CHECK(par[i].k == ser[i].k);
      CHECK(par[i].energy == ser[i].energy);
    }
    CHECK(is_monotone(par));
    CHECK(par.front().k == 0.0);
    CHECK(par.back().k == pi);
  }
  const auto b = lowest_bands(spec);
  CHECK(dispersion_curve(spec, 1, 8).back().energy == b.mu1_pi);
  CHECK(dispersion_curve(spec, 2, 8).front().energy == b.mu2_0);
}

TEST_CASE("guards and validation") {
  CHECK_THROWS_AS(CrystalSpec({10.0, 0.5, 0.5, 0.6, 0.6}).validate(), ValidationError);
  CHECK_THROWS_AS(CrystalSpec({10.0, 0.5, 0.5, 0.0, 0.1}).validate(), ValidationError);
  CHECK_THROWS_AS(CrystalSpec({-1.0, 0.5, 0.5, 0.1, 0.1}).validate(), ValidationError);
  const CrystalSpec deep{1e4, 0.5, 0.5, 0.1, 0.1};
  CHECK_THROWS_AS(monodromy(deep, -0.5e8), StabilityError);
  CHECK_THROWS_AS(band_edges(CrystalSpec{10.0, 0.5, 0.5, 0.1, 0.1}, Quasimomentum::zero, 12,
                             BandSolverOptions{0.0, 0.5, 0}),
                  ScanRangeError);
}
