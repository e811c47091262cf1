#include "msbem/oracles.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "msbem/environment.hpp"
#include "msbem/errors.hpp"
#include "msbem/specfun.hpp"

namespace msbem {

HelmholtzFs helmholtz_fs(double k, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("helmholtz_fs: r must be positive");
  const cplx I(0.0, 1.0);
  return {0.25 * I * specfun::hankel1(0, k * r), -0.25 * I * k * specfun::hankel1(1, k * r)};
}

double CylinderCase::k() const { return solve_dispersion(2.0 * M_PI / T, h); }

int CylinderCase::order() const {
  int m = m_max > 0 ? m_max : int(std::ceil(k() * R)) + 20;
  if (m < int(std::ceil(k() * R)) + 20)
    throw std::invalid_argument("maccamy_fuchs: m_max below kR + 20");
  if (m > 59) throw NumericalError("oracles", "maccamy_fuchs: truncation order beyond 59");
  return m;
}

namespace {

// Sum of eps_m i^m c_m(r) cos(m t) with f = J - (J'(kR)/H'(kR)) H, or its r-derivative.
cplx mf_series(const CylinderCase& c, double x, double y, double theta_inc, bool deriv) {
  double r = std::hypot(x, y);
  if (r < c.R * (1.0 - 1e-12)) throw std::invalid_argument("maccamy_fuchs: point inside cylinder");
  const double k = c.k();
  const int mm = c.order();
  const cplx I(0.0, 1.0);
  specfun::BesselJY a = specfun::bessel_jy(mm + 1, k * c.R);
  specfun::BesselJY b = specfun::bessel_jy(mm + 1, k * r);
  auto dJ = [](const specfun::BesselJY& v, int m, double z) {
    return m == 0 ? -v.J[1] : v.J[m - 1] - m / z * v.J[m];
  };
  auto dY = [](const specfun::BesselJY& v, int m, double z) {
    return m == 0 ? -v.Y[1] : v.Y[m - 1] - m / z * v.Y[m];
  };
  double t = std::atan2(y, x) - theta_inc;
  cplx sum = 0.0;
  cplx im = 1.0;
  for (int m = 0; m <= mm; ++m) {
    double kr0 = k * c.R, kr = k * r;
    cplx dH0 = cplx(dJ(a, m, kr0), dY(a, m, kr0));
    double ratio_num = dJ(a, m, kr0);
    cplx f;
    if (deriv)
      f = k * (dJ(b, m, kr) - ratio_num / dH0 * cplx(dJ(b, m, kr), dY(b, m, kr)));
    else
      f = b.J[m] - ratio_num / dH0 * cplx(b.J[m], b.Y[m]);
    sum += (m == 0 ? 1.0 : 2.0) * im * f * std::cos(m * t);
    im *= I;
  }
  return sum;
}

}  // namespace

cplx maccamy_fuchs(const CylinderCase& c, double x, double y, double theta_inc) {
  return mf_series(c, x, y, theta_inc, false);
}

cplx maccamy_fuchs_dr(const CylinderCase& c, double x, double y, double theta_inc) {
  return mf_series(c, x, y, theta_inc, true);
}

}  // namespace msbem
