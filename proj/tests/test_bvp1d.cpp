#include <doctest.h>

#include <cmath>

#include "msbem/bvp1d.hpp"

using namespace msbem;

namespace {

const double w5 = 2.0 * M_PI / 5.0;

cplx exact_const(double kap, cplx xi, double d) {
  cplx g = outgoing_sqrt(kap * kap - xi * xi);
  return cplx(0, 1) / (2.0 * g) * std::exp(cplx(0, 1) * g * std::abs(d));
}

double max_err(const WavenumberField& f, cplx xi, int epw, double half) {
  FemSystem fem(f, -half, half, 0.0, epw);
  auto sol = fem.solve(xi);
  double e = 0.0;
  for (size_t j = 0; j < sol.xs.size(); ++j) {
    cplx ex = exact_const(f.khat1, xi, sol.xs[j]);
    e = std::max(e, std::abs(sol.psi[j] - ex) / std::abs(ex));
  }
  return e;
}

}  // namespace

TEST_CASE("outgoing branch") {
  CHECK(outgoing_sqrt(cplx(4.0, 0.0)) == cplx(2.0, 0.0));
  CHECK(outgoing_sqrt(cplx(-4.0, 0.0)).imag() == doctest::Approx(2.0));
  for (cplx z : {cplx(1, -1), cplx(-3, -0.1), cplx(-3, 0.1), cplx(2, 5)}) {
    cplx r = outgoing_sqrt(z);
    CHECK(std::abs(r * r - z) < 1e-14 * std::abs(z));
    CHECK(r.imag() >= 0.0);
  }
}

TEST_CASE("constant wavenumber: FEM solution tends to the closed form") {
  auto f = modified_wavenumber_profile(BathymetryProfile::constant(14.0), w5);
  const double lam = 2.0 * M_PI / f.khat1;
  for (cplx xi : {cplx(0.0), cplx(0.7 * f.khat1, -0.01), cplx(2.0 * f.khat1, -0.02)}) {
    double e = max_err(f, xi, 200, lam / 2);
    CHECK(e < 2e-3);
  }
}

TEST_CASE("second-order convergence in the element size") {
  auto f = modified_wavenumber_profile(BathymetryProfile::constant(14.0), w5);
  const double lam = 2.0 * M_PI / f.khat1;
  double e1 = max_err(f, 0.0, 30, lam / 2), e2 = max_err(f, 0.0, 60, lam / 2);
  double p = std::log2(e1 / e2);
  CHECK(p > 1.9);
  CHECK(p < 2.1);
}

TEST_CASE("Thomas sweep agrees with dense LU") {
  auto f = modified_wavenumber_profile(BathymetryProfile::cubic(0, 70, {14.0, 0.0, -8.2653e-3, 7.8717e-5}), w5);
  FemSystem fem(f, f.a(), f.b(), 23.4, 60);
  for (cplx xi : {cplx(0.1, -0.01), cplx(0.3, -0.01), cplx(1.5, -0.01)}) {
    std::vector<cplx> t(fem.size());
    fem.solve_nodal(xi, t.data());
    auto d = fem.solve_dense(xi);
    double m = 0, e = 0;
    for (int i = 0; i < fem.size(); ++i) {
      m = std::max(m, std::abs(d[i]));
      e = std::max(e, std::abs(t[i] - d[i]));
    }
    CHECK(e < 1e-11 * m);
  }
}

TEST_CASE("unit jump of the recovered gradient at the source") {
  auto f = modified_wavenumber_profile(BathymetryProfile::cubic(0, 70, {14.0, 0.0, -8.2653e-3, 7.8717e-5}), w5);
  auto sol = solve_transformed(f, cplx(0.2, -0.005), 31.0);
  cplx jump = sol.dpsi_src_right - sol.dpsi_src_left;
  CHECK(std::abs(jump + 1.0) < 1e-2);
}

TEST_CASE("reciprocity of the 1D Green function over varying depth") {
  auto f = modified_wavenumber_profile(BathymetryProfile::cubic(0, 70, {14.0, 0.0, -8.2653e-3, 7.8717e-5}), w5);
  cplx xi(0.15, -0.01);
  auto a = solve_transformed(f, xi, 12.0);
  auto b = solve_transformed(f, xi, 57.0);
  cplx pab = evaluate_transformed(a, 57.0).psi;
  cplx pba = evaluate_transformed(b, 12.0).psi;
  CHECK(std::abs(pab - pba) < 1e-3 * std::abs(pab));
}

TEST_CASE("flank law beyond the mesh satisfies the radiation condition") {
  auto f = modified_wavenumber_profile(BathymetryProfile::cubic(0, 70, {14.0, 0.0, -8.2653e-3, 7.8717e-5}), w5);
  cplx xi(0.1, -0.01);
  auto sol = solve_transformed(f, xi, 30.0);
  auto rp = radiation_params(xi, f.khat1, f.khat3);
  double xr = sol.xs.back() + 13.0;
  PsiPair p = evaluate_transformed(sol, xr);
  CHECK(std::abs(p.dpsi - cplx(0, 1) * rp.beta * p.psi) < 1e-12 * std::abs(p.psi));
  double xl = sol.xs.front() - 9.0;
  PsiPair q = evaluate_transformed(sol, xl);
  CHECK(std::abs(q.dpsi + cplx(0, 1) * rp.alpha * q.psi) < 1e-12 * std::abs(q.psi));
  // and xi symmetry of the transform
  auto s2 = solve_transformed(f, -xi, 30.0);
  CHECK(std::abs(s2.psi[3] - sol.psi[3]) < 1e-12 * std::abs(sol.psi[3]));
}
