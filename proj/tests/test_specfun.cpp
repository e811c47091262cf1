#include <doctest.h>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/expint.hpp>
#include <cmath>

#include "msbem/specfun.hpp"

using namespace msbem::specfun;

TEST_CASE("bessel J and Y against the standard library") {
  for (double x : {0.05, 0.7, 3.3, 11.0, 47.5, 250.0}) {
    auto b = bessel_jy(30, x);
    for (int m = 0; m <= 30; ++m) {
      double j = std::cyl_bessel_j(double(m), x);
      CHECK(std::abs(b.J[m] - j) <= 1e-10 * std::max(1e-8, std::abs(j)) + 1e-15);
      double y = std::cyl_neumann(double(m), x);
      if (std::isfinite(y) && std::abs(y) < 1e200) CHECK(std::abs(b.Y[m] - y) <= 1e-10 * std::abs(y));
    }
  }
}

TEST_CASE("hankel1 is J + iY") {
  for (double x : {0.3, 5.0, 80.0}) {
    cplx h = hankel1(1, x);
    CHECK(std::abs(h.real() - std::cyl_bessel_j(1.0, x)) < 1e-12);
    CHECK(std::abs(h.imag() - std::cyl_neumann(1.0, x)) < 1e-11 * std::max(1.0, std::abs(h.imag())));
  }
}

TEST_CASE("E1 on the positive axis matches boost") {
  for (double x : {1e-6, 0.01, 0.5, 1.9, 2.1, 5.0, 7.9, 8.1, 30.0, 200.0}) {
    double ref = boost::math::expint(1, x);
    CHECK(std::abs(expint_e1(cplx(x, 0)).real() - ref) <= 1e-12 * ref);
    CHECK(std::abs(expint_e1(cplx(x, 0)).imag()) <= 1e-14 * ref);
  }
}

TEST_CASE("complex E1 matches an integral representation") {
  boost::math::quadrature::exp_sinh<double> q;
  for (cplx z : {cplx(0.3, 0.4), cplx(1.5, -2.0), cplx(4.0, 6.5), cplx(9.0, 1.0), cplx(0.2, 12.0),
                 cplx(-6.0, 3.0), cplx(25.0, -30.0)}) {
    // E1(z) = exp(-z) int_0^inf exp(-s) / (z + s) ds, |arg z| < pi
    double re = q.integrate([&](double t) { return (std::exp(-t) / (z + t)).real(); });
    double im = q.integrate([&](double t) { return (std::exp(-t) / (z + t)).imag(); });
    cplx ref = std::exp(-z) * cplx(re, im);
    CHECK(std::abs(expint_e1(z) - ref) <= 1e-9 * std::abs(ref));
  }
}

TEST_CASE("E1 reflection across the real axis") {
  for (cplx z : {cplx(-3.0, 0.5), cplx(0.5, 7.0), cplx(-7.5, 2.0), cplx(12.0, 3.0)}) {
    CHECK(std::abs(expint_e1(std::conj(z)) - std::conj(expint_e1(z))) <= 1e-13 * std::abs(expint_e1(z)));
  }
}

TEST_CASE("E1 small-argument limit") {
  cplx z(1e-8, 2e-8);
  cplx asym = -euler_gamma - std::log(z) + z;
  CHECK(std::abs(expint_e1(z) - asym) < 1e-14);
}

TEST_CASE("Gauss-Legendre integrates polynomials exactly") {
  for (int n : {1, 2, 4, 8, 16}) {
    auto r = gauss_legendre(n);
    REQUIRE(int(r.nodes.size()) == n);
    for (int p = 0; p < 2 * n; ++p) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += r.weights[i] * std::pow(r.nodes[i], p);
      double ex = p % 2 ? 0.0 : 2.0 / (p + 1);
      CHECK(std::abs(s - ex) < 1e-13);
    }
  }
}

TEST_CASE("log-weighted rule moments") {
  // int_0^1 t^k ln(1/t) dt = 1/(k+1)^2
  for (int n : {2, 4, 8}) {
    auto r = log_gauss_rule(n);
    for (int k = 0; k < 2 * n; ++k) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += r.weights[i] * std::pow(r.nodes[i], k);
      CHECK(std::abs(s - 1.0 / ((k + 1.0) * (k + 1.0))) < 1e-12);
    }
    double s0 = 0.0, s1 = 0.0;
    for (int i = 0; i < n; ++i) {
      s0 += r.weights[i] * (1.0 - r.nodes[i]);
      s1 += r.weights[i] * r.nodes[i];
    }
    CHECK(std::abs(s0 - 0.75) < 1e-13);
    CHECK(std::abs(s1 - 0.25) < 1e-13);
    for (double t : r.nodes) CHECK((t > 0.0 && t < 1.0));
  }
}

TEST_CASE("Wronskian property on random arguments") {
  unsigned s = 7;
  for (int i = 0; i < 40; ++i) {
    s = s * 1103515245u + 12345u;
    double x = 0.1 + 300.0 * ((s >> 8) & 0xffff) / 65536.0;
    auto b = bessel_jy(12, x);
    for (int m = 0; m < 12; ++m) {
      double w = b.J[m + 1] * b.Y[m] - b.J[m] * b.Y[m + 1];
      CHECK(std::abs(w - 2.0 / (pi * x)) < 1e-10 * 2.0 / (pi * x));
    }
  }
}
