#include <doctest.h>

#include <cmath>

#include "msbem/bem.hpp"
#include "msbem/errors.hpp"
#include "msbem/kernel.hpp"
#include "msbem/oracles.hpp"

using namespace msbem;

namespace {
const double w5 = 2.0 * M_PI / 5.0;
BathymetryProfile channel() { return BathymetryProfile::cubic(0, 70, {14.0, 0.0, -8.2653e-3, 7.8717e-5}); }
}  // namespace

TEST_CASE("contour parameters") {
  auto p = ContourParams::make(0.3);
  CHECK(p.Xi == doctest::Approx(1.8));
  CHECK(p.tau == doctest::Approx(p.dxi()));
  CHECK(p.Y() == doctest::Approx(M_PI * p.N() / p.Xi));
  ContourParams bad = p;
  bad.M = 3000;
  CHECK_THROWS(bad.check(0.3));
  bad = p;
  bad.Xi = 1.0;
  CHECK_THROWS(bad.check(0.3));
  bad = p;
  bad.tau = 0.0;
  CHECK_THROWS(bad.check(0.3));
}

TEST_CASE("constant depth kernel against the Helmholtz fundamental solution") {
  auto f = modified_wavenumber_profile(BathymetryProfile::constant(14.0), w5);
  auto p = ContourParams::make(f.khat_star);
  GreenFunction g(f, p);
  const double k = f.khat1;
  std::vector<double> xs, ys;
  for (double r : {0.5 / k, 3.0, 17.0, 60.0, 240.0}) {
    for (double a : {0.0, 0.6, 1.2, M_PI / 2, 2.5}) {
      xs.push_back(r * std::cos(a));
      ys.push_back(r * std::sin(a));
    }
  }
  auto v = g.evaluate(0.0, xs, ys);
  for (size_t i = 0; i < xs.size(); ++i) {
    double r = std::hypot(xs[i], ys[i]);
    HelmholtzFs ref = helmholtz_fs(k, r);
    CHECK(std::abs(v[i].psi - ref.psi) < 0.02 * std::abs(ref.psi));
    cplx dr = (v[i].psi_x * xs[i] + v[i].psi_y * ys[i]) / r;
    CHECK(std::abs(dr - ref.dpsi_dr) < 0.02 * std::abs(ref.dpsi_dr));
  }
}

TEST_CASE("kernel parity in y and reciprocity over varying depth") {
  auto f = modified_wavenumber_profile(channel(), w5);
  GreenFunction g(f, ContourParams::make(f.khat_star));
  auto a = g.evaluate(20.0, {45.0, 45.0, 5.0}, {13.0, -13.0, 2.0});
  CHECK(std::abs(a[0].psi - a[1].psi) < 1e-12 * std::abs(a[0].psi));
  CHECK(std::abs(a[0].psi_y + a[1].psi_y) < 1e-12 * std::abs(a[0].psi_y));
  auto b = g.evaluate(45.0, {20.0}, {-13.0});
  CHECK(std::abs(a[0].psi - b[0].psi) < 0.01 * std::abs(a[0].psi));
  CHECK(g.sweeps() == 2);
  CHECK(g.evaluations() == 4);
}

TEST_CASE("kernel values are finite and decay") {
  auto f = modified_wavenumber_profile(channel(), w5);
  GreenFunction g(f, ContourParams::make(f.khat_star));
  auto v = g.evaluate(35.0, {35.0, 35.0, 35.0}, {10.0, 100.0, 400.0});
  for (auto& e : v) CHECK(std::isfinite(std::abs(e.psi)));
  CHECK(std::abs(v[2].psi) < std::abs(v[0].psi));
}

TEST_CASE("guard band") {
  auto f = modified_wavenumber_profile(BathymetryProfile::constant(14.0), w5);
  auto p = ContourParams::make(f.khat_star);
  GreenFunction g(f, p);
  CHECK_THROWS_AS(g.evaluate(0.0, {1.0}, {0.85 * p.Y()}), NumericalError);
}

TEST_CASE("table interpolation agrees with direct evaluation") {
  auto f = modified_wavenumber_profile(channel(), w5);
  auto p = ContourParams::make(f.khat_star);
  auto st = sweep_contour(f, 30.0, {10.0, 50.0}, p);
  auto tab = build_table(st);
  for (double y : {0.37, 5.3, 44.4, 120.9}) {
    for (double x : {10.0, 50.0}) {
      KernelValue a = evaluate(tab, x, y), b = evaluate_direct(st, x, y);
      CHECK(std::abs(a.psi - b.psi) < 2e-3 * std::abs(b.psi));
    }
  }
}

TEST_CASE("asymptotic tail is small at the contour end") {
  auto p = ContourParams::make(0.2);
  KernelValue t = kernel_tail(3.0, 4.0, p);
  CHECK(std::isfinite(std::abs(t.psi)));
  CHECK(std::abs(t.psi) < 0.05);
}
