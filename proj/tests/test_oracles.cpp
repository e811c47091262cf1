#include <doctest.h>

#include <cmath>

#include "msbem/oracles.hpp"
#include "msbem/specfun.hpp"

using namespace msbem;

TEST_CASE("Helmholtz fundamental solution") {
  double k = 0.16;
  for (double r : {0.1, 5.0, 80.0}) {
    HelmholtzFs f = helmholtz_fs(k, r);
    cplx h0(std::cyl_bessel_j(0.0, k * r), std::cyl_neumann(0.0, k * r));
    CHECK(std::abs(f.psi - 0.25 * cplx(0, 1) * h0) < 1e-12);
    double d = 1e-5 * r;
    cplx fd = (helmholtz_fs(k, r + d).psi - helmholtz_fs(k, r - d).psi) / (2 * d);
    CHECK(std::abs(f.dpsi_dr - fd) < 1e-6 * std::abs(fd));
  }
  // logarithmic behaviour at the origin
  double r = 1e-6;
  cplx lg = -std::log(k * r / 2) / (2 * M_PI) - specfun::euler_gamma / (2 * M_PI) + 0.25 * cplx(0, 1);
  CHECK(std::abs(helmholtz_fs(k, r).psi - lg) < 1e-9);
}

TEST_CASE("MacCamy-Fuchs: rigid wall") {
  CylinderCase c;
  for (double a = 0.0; a < 2 * M_PI; a += 0.3) {
    double x = c.R * std::cos(a), y = c.R * std::sin(a);
    CHECK(std::abs(maccamy_fuchs_dr(c, x, y)) < 1e-10);
  }
}

TEST_CASE("MacCamy-Fuchs: Helmholtz equation and symmetry") {
  CylinderCase c;
  const double k = c.k();
  for (auto [x, y] : {std::pair{40.0, 10.0}, {-31.0, -5.0}, {3.0, 60.0}}) {
    double d = 0.05;
    cplx lap = (maccamy_fuchs(c, x + d, y) + maccamy_fuchs(c, x - d, y) + maccamy_fuchs(c, x, y + d) +
                maccamy_fuchs(c, x, y - d) - 4.0 * maccamy_fuchs(c, x, y)) /
               (d * d);
    cplx v = maccamy_fuchs(c, x, y);
    CHECK(std::abs(lap + k * k * v) < 1e-4 * k * k * std::abs(v) + 1e-6);
    CHECK(std::abs(maccamy_fuchs(c, x, -y) - v) < 1e-12);
  }
}

TEST_CASE("MacCamy-Fuchs: rotation of the incidence angle") {
  CylinderCase c;
  double th = 0.7;
  double x = 50.0, y = 20.0;
  double xr = x * std::cos(-th) - y * std::sin(-th), yr = x * std::sin(-th) + y * std::cos(-th);
  CHECK(std::abs(maccamy_fuchs(c, x, y, th) - maccamy_fuchs(c, xr, yr)) < 1e-12);
}

TEST_CASE("MacCamy-Fuchs: series order") {
  CylinderCase c;
  CHECK(c.order() >= int(std::ceil(c.k() * c.R)) + 20);
  c.m_max = 3;
  CHECK_THROWS(c.order());
}
