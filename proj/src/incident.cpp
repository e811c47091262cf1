#include "msbem/incident.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "msbem/errors.hpp"

namespace msbem {

double IncidentWave::omega() const {
  if (!(period > 0.0)) throw std::invalid_argument("incident wave: period must be positive");
  return 2.0 * M_PI / period;
}

namespace {

double kx_of(const BathymetryProfile& bathy, double omega, double x, double ky) {
  double k = solve_dispersion(omega, bathy.depth(x));
  double d = k * k - ky * ky;
  if (d < 0.0)
    throw NumericalError("incident", "incident ray reflected before reaching x=" + std::to_string(x));
  return std::sqrt(d);
}

struct Simpson {
  const std::function<double(double)>& f;
  int evals = 0;

  double rec(double a, double b, double fa, double fm, double fb, double whole, double tol,
             int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    evals += 2;
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    double diff = left + right - whole;
    if (std::abs(diff) <= 15.0 * tol) return left + right + diff / 15.0;
    if (depth <= 0) throw NumericalError("incident", "phase integral: tolerance not met");
    return rec(a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           rec(m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
  }

  double run(double a, double b, double tol) {
    if (a == b) return 0.0;
    double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return rec(a, b, fa, fm, fb, whole, tol, 40);
  }
};

}  // namespace

double phase_integral(const BathymetryProfile& bathy, double omega, double x0, double x, double ky,
                      double tol) {
  double sign = 1.0;
  double lo = x0, hi = x;
  if (hi < lo) {
    std::swap(lo, hi);
    sign = -1.0;
  }
  std::function<double(double)> f = [&](double e) { return kx_of(bathy, omega, e, ky); };
  if (bathy.is_constant()) return sign * f(lo) * (hi - lo);
  // constant flanks in closed form, adaptive only across [a, b]
  double total = 0.0;
  double a = bathy.a(), b = bathy.b();
  if (lo < a) total += f(lo) * (std::min(hi, a) - lo);
  if (hi > b) total += f(hi) * (hi - std::max(lo, b));
  double ia = std::max(lo, a), ib = std::min(hi, b);
  if (ib > ia) {
    Simpson s{f};
    total += s.run(ia, ib, tol);
  }
  return sign * total;
}

IncidentValue evaluate_incident(const IncidentWave& wave, const BathymetryProfile& bathy, double x,
                                double y) {
  const double omega = wave.omega();
  double h0 = bathy.depth(wave.x_ref);
  double k0 = solve_dispersion(omega, h0);
  double ky = k0 * std::sin(wave.theta0);
  double kx0 = k0 * std::cos(wave.theta0);
  if (bathy.is_constant()) {
    double ph = kx0 * (x - wave.x_ref) + ky * y;
    return {wave.amplitude * std::exp(cplx(0.0, ph)), 1.0, wave.theta0};
  }
  if (std::abs(kx0) < 1e-12 * k0)
    throw NumericalError("incident", "propagation along the depth contours over varying depth");
  {
    // a turning point anywhere between x_ref and x reflects the ray
    double lo = std::min(wave.x_ref, x), hi = std::max(wave.x_ref, x);
    double kmin = std::min(solve_dispersion(omega, bathy.depth(lo)),
                           solve_dispersion(omega, bathy.depth(hi)));
    double a = std::max(lo, bathy.a()), b = std::min(hi, bathy.b());
    for (int i = 0; b > a && i <= 200; ++i)
      kmin = std::min(kmin, solve_dispersion(omega, bathy.depth(a + (b - a) * i / 200.0)));
    if (kmin < std::abs(ky))
      throw NumericalError("incident",
                           "incident ray reflected before reaching x=" + std::to_string(x));
  }
  double h = bathy.depth(x);
  double k = solve_dispersion(omega, h);
  double kx = std::sqrt(std::max(0.0, k * k - ky * ky));
  if (kx0 < 0.0) kx = -kx;
  double cos0 = std::abs(kx0) / k0, cosx = std::abs(kx) / k;
  if (!(cosx > 0.0)) throw NumericalError("incident", "grazing incidence at x=" + std::to_string(x));
  double cg0 = group_velocity(k0, h0, omega).cg;
  double cg = group_velocity(k, h, omega).cg;
  double A = std::sqrt(cg0 * cos0 / (cg * cosx));
  double phase = ky * y;
  double px = phase_integral(bathy, omega, wave.x_ref, x, ky);
  phase += (kx0 < 0.0 ? -px : px);
  IncidentValue v;
  v.phi = wave.amplitude * A * std::exp(cplx(0.0, phase));
  v.amp_factor = A;
  v.theta = std::atan2(ky, kx);
  return v;
}

}  // namespace msbem
