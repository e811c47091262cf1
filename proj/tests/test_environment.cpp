#include <doctest.h>

#include <cmath>

#include "msbem/environment.hpp"
#include "msbem/errors.hpp"

using namespace msbem;

TEST_CASE("dispersion residual and limits") {
  const double w = 2.0 * M_PI / 5.0;
  for (double h : {0.05, 0.5, 3.0, 14.0, 60.0, 1000.0}) {
    double k = solve_dispersion(w, h);
    CHECK(std::abs(gravity * k * std::tanh(k * h) - w * w) <= 1e-12 * w * w);
  }
  CHECK(solve_dispersion(w, 5000.0) == doctest::Approx(w * w / gravity).epsilon(1e-12));
  double hs = 1e-3;
  CHECK(solve_dispersion(w, hs) == doctest::Approx(w / std::sqrt(gravity * hs)).epsilon(1e-4));
  CHECK_THROWS_AS(solve_dispersion(-1.0, 10.0), std::invalid_argument);
  CHECK_THROWS_AS(solve_dispersion(1.0, 0.0), std::invalid_argument);
}

TEST_CASE("T=5 s, h=14 m wavelength") {
  double k = solve_dispersion(2.0 * M_PI / 5.0, 14.0);
  CHECK(2.0 * M_PI / k == doctest::Approx(38.25).epsilon(0.005));
}

TEST_CASE("group velocity equals d omega / dk") {
  for (double h : {1.0, 14.0, 200.0}) {
    double w = 1.1;
    double k = solve_dispersion(w, h);
    double dk = 1e-6 * k;
    auto om = [&](double kk) { return std::sqrt(gravity * kk * std::tanh(kk * h)); };
    double cg_fd = (om(k + dk) - om(k - dk)) / (2 * dk);
    PhaseGroup pg = group_velocity(k, h, w);
    CHECK(pg.cg == doctest::Approx(cg_fd).epsilon(1e-8));
    CHECK(pg.c == doctest::Approx(w / k));
  }
}

TEST_CASE("bathymetry kinds") {
  auto c = BathymetryProfile::constant(7.0);
  CHECK(c.depth(-100) == 7.0);
  CHECK(c.is_constant());
  auto cub = BathymetryProfile::cubic(0, 70, {14.0, 0.0, -8.2653e-3, 7.8717e-5});
  CHECK(cub.h1() == doctest::Approx(14.0));
  CHECK(cub.h3() == doctest::Approx(14.0 - 8.2653e-3 * 4900 + 7.8717e-5 * 343000));
  CHECK(cub.depth(-5) == cub.h1());
  CHECK(cub.depth(90) == cub.h3());
  CHECK(cub.depth(35) == doctest::Approx(14.0 - 8.2653e-3 * 1225 + 7.8717e-5 * 42875));
  CHECK(cub.is_monotone());
  auto tab = BathymetryProfile::table({{0, 10}, {10, 8}, {20, 5}, {30, 4}, {40, 3.5}});
  CHECK(tab.depth(10) == doctest::Approx(8.0));
  CHECK(tab.is_monotone());
  for (double x = 0; x < 40; x += 0.37) CHECK(tab.depth(x + 0.37) <= tab.depth(x) + 1e-12);
  CHECK_THROWS(BathymetryProfile::constant(-1.0));
  CHECK_THROWS(BathymetryProfile::cubic(0, 10, {1.0, -1.0, 0.0, 0.0}));  // dries out
  CHECK_THROWS(BathymetryProfile::table({{0, 1}, {0, 2}}));
  CHECK(cub.fingerprint() != tab.fingerprint());
}

TEST_CASE("modified wavenumber: constant depth reduces to k") {
  auto f = modified_wavenumber_profile(BathymetryProfile::constant(14.0), 2.0 * M_PI / 5.0);
  double k = solve_dispersion(2.0 * M_PI / 5.0, 14.0);
  CHECK(f.khat_at(-50.0) == doctest::Approx(k));
  CHECK(f.khat_at(123.0) == doctest::Approx(k));
  CHECK(f.ds_at(3.0) == 0.0);
}

TEST_CASE("modified wavenumber matches an independent s''/s") {
  auto bathy = BathymetryProfile::cubic(0, 70, {14.0, 0.0, -8.2653e-3, 7.8717e-5});
  const double w = 2.0 * M_PI / 5.0;
  auto f = modified_wavenumber_profile(bathy, w);
  auto s = [&](double x) {
    double h = bathy.depth(x);
    double k = solve_dispersion(w, h);
    PhaseGroup pg = group_velocity(k, h, w);
    return std::sqrt(pg.c * pg.cg);
  };
  for (double x : {5.0, 20.0, 35.0, 50.0, 65.0}) {
    double d = 0.05;
    double spp = (s(x + d) - 2 * s(x) + s(x - d)) / (d * d);
    double k = solve_dispersion(w, bathy.depth(x));
    double ref = k * k - spp / s(x);
    CHECK(f.khat2_at(x) == doctest::Approx(ref).epsilon(2e-3));
    double sp = (s(x + d) - s(x - d)) / (2 * d);
    CHECK(f.ds_at(x) == doctest::Approx(sp).epsilon(1e-4));
  }
  CHECK(f.khat_star >= f.khat1);
  CHECK(f.khat_star >= f.khat3);
  CHECK(f.khat1 == doctest::Approx(solve_dispersion(w, 14.0)));
}
