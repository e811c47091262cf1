#include "msbem/environment.hpp"

#include <algorithm>
#include <cmath>
// boost 1.74 pchip calls isnan unqualified
using std::isnan;
#include <boost/math/interpolators/pchip.hpp>
#include <cstdio>
#include <stdexcept>

#include "msbem/errors.hpp"

namespace msbem {

double solve_dispersion(double omega, double h) {
  if (!(omega > 0.0) || !(h > 0.0))
    throw std::invalid_argument("solve_dispersion: omega and h must be positive");
  const double w2 = omega * omega;
  const double tol = 1e-13 * w2;
  auto f = [&](double k) { return gravity * k * std::tanh(k * h) - w2; };

  double y = w2 * h / gravity;
  double k = y / std::sqrt(std::tanh(y)) / h;
  for (int it = 0; it < 50; ++it) {
    double t = std::tanh(k * h);
    double fk = gravity * k * t - w2;
    if (std::abs(fk) <= tol) return k;
    double df = gravity * t + gravity * k * h * (1.0 - t * t);
    double kn = k - fk / df;
    if (!(kn > 0.0) || !std::isfinite(kn)) break;
    k = kn;
  }

  // Bisection fallback; f is increasing in k.
  double lo = 1e-8;
  double hi = std::max(10.0 * w2 / gravity, 2.0 * omega / std::sqrt(gravity * h));
  if (f(lo) > 0.0 || f(hi) < 0.0)
    throw NumericalError("environment", "dispersion relation: root not bracketed");
  for (int it = 0; it < 400; ++it) {
    double mid = 0.5 * (lo + hi);
    double fm = f(mid);
    if (std::abs(fm) <= tol) return mid;
    (fm < 0.0 ? lo : hi) = mid;
    if (hi - lo <= 1e-16 * hi) break;
  }
  double mid = 0.5 * (lo + hi);
  if (std::abs(f(mid)) <= tol) return mid;
  throw NumericalError("environment", "dispersion relation did not converge (h=" +
                                          std::to_string(h) + ")");
}

PhaseGroup group_velocity(double k, double h, double omega) {
  if (!(k > 0.0) || !(h > 0.0) || !(omega > 0.0))
    throw std::invalid_argument("group_velocity: arguments must be positive");
  double c = omega / k;
  double kh2 = 2.0 * k * h;
  double ratio = kh2 > 700.0 ? 0.0 : kh2 / std::sinh(kh2);
  return {c, 0.5 * c * (1.0 + ratio)};
}

struct BathymetryProfile::TableInterp {
  boost::math::interpolators::pchip<std::vector<double>> p;
};

BathymetryProfile BathymetryProfile::constant(double h) {
  BathymetryProfile b;
  b.kind_ = Kind::Constant;
  b.a_ = b.b_ = 0.0;
  b.h1_ = b.h3_ = h;
  b.check();
  return b;
}

BathymetryProfile BathymetryProfile::cubic(double a, double bb, std::array<double, 4> coef) {
  if (!(bb > a)) throw std::invalid_argument("cubic bathymetry: need b > a");
  BathymetryProfile b;
  b.kind_ = Kind::Cubic;
  b.a_ = a;
  b.b_ = bb;
  b.coef_ = coef;
  b.h1_ = b.transition(a);
  b.h3_ = b.transition(bb);
  b.check();
  return b;
}

BathymetryProfile BathymetryProfile::table(std::vector<std::pair<double, double>> samples) {
  if (samples.size() < 2) throw std::invalid_argument("tabulated bathymetry: need >= 2 samples");
  std::sort(samples.begin(), samples.end());
  for (size_t i = 1; i < samples.size(); ++i)
    if (!(samples[i].first > samples[i - 1].first))
      throw std::invalid_argument("tabulated bathymetry: duplicate abscissa");
  BathymetryProfile b;
  b.kind_ = Kind::Table;
  b.table_ = samples;
  b.a_ = samples.front().first;
  b.b_ = samples.back().first;
  b.h1_ = samples.front().second;
  b.h3_ = samples.back().second;
  std::vector<double> x, y;
  for (auto& s : samples) {
    x.push_back(s.first);
    y.push_back(s.second);
  }
  if (samples.size() >= 4) {
    b.interp_ = std::make_shared<const TableInterp>(
        TableInterp{boost::math::interpolators::pchip<std::vector<double>>(std::move(x), std::move(y))});
  }
  b.check();
  return b;
}

double BathymetryProfile::transition(double x) const {
  switch (kind_) {
    case Kind::Constant:
      return h1_;
    case Kind::Cubic:
      return coef_[0] + x * (coef_[1] + x * (coef_[2] + x * coef_[3]));
    case Kind::Table: {
      if (interp_) return interp_->p(x);
      // two or three points: piecewise linear
      auto it = std::upper_bound(table_.begin(), table_.end(), std::make_pair(x, -1e300));
      if (it == table_.begin()) return table_.front().second;
      if (it == table_.end()) return table_.back().second;
      auto lo = *(it - 1), hi = *it;
      double t = (x - lo.first) / (hi.first - lo.first);
      return lo.second + t * (hi.second - lo.second);
    }
  }
  return h1_;
}

double BathymetryProfile::depth(double x) const {
  if (kind_ == Kind::Constant) return h1_;
  if (x <= a_) return h1_;
  if (x >= b_) return h3_;
  return transition(x);
}

void BathymetryProfile::check() const {
  if (!(h1_ > 0.0) || !(h3_ > 0.0)) throw std::invalid_argument("bathymetry: depth must be positive");
  if (kind_ == Kind::Constant) return;
  const int n = 4000;
  for (int i = 0; i <= n; ++i) {
    double x = a_ + (b_ - a_) * i / n;
    if (!(transition(x) > 0.0))
      throw std::invalid_argument("bathymetry: dry point at x=" + std::to_string(x));
  }
  if (std::abs(transition(a_) - h1_) > 1e-9 * h1_ || std::abs(transition(b_) - h3_) > 1e-9 * h1_)
    throw std::invalid_argument("bathymetry: discontinuous at transition ends");
}

bool BathymetryProfile::is_monotone(int n) const {
  if (kind_ == Kind::Constant) return true;
  bool inc = true, dec = true;
  double prev = depth(a_);
  for (int i = 1; i <= n; ++i) {
    double h = depth(a_ + (b_ - a_) * i / n);
    if (h < prev) inc = false;
    if (h > prev) dec = false;
    prev = h;
  }
  return inc || dec;
}

std::string BathymetryProfile::fingerprint() const {
  char buf[256];
  std::string s;
  switch (kind_) {
    case Kind::Constant:
      std::snprintf(buf, sizeof buf, "const:%.17g", h1_);
      return buf;
    case Kind::Cubic:
      std::snprintf(buf, sizeof buf, "cubic:%.17g:%.17g:%.17g:%.17g:%.17g:%.17g", a_, b_, coef_[0],
                    coef_[1], coef_[2], coef_[3]);
      return buf;
    case Kind::Table:
      s = "table";
      for (auto& p : table_) {
        std::snprintf(buf, sizeof buf, ":%.17g,%.17g", p.first, p.second);
        s += buf;
      }
      return s;
  }
  return s;
}

namespace {
double s_of_depth(double omega, double h) {
  double k = solve_dispersion(omega, h);
  PhaseGroup pg = group_velocity(k, h, omega);
  return std::sqrt(pg.c * pg.cg);
}
}  // namespace

WavenumberField modified_wavenumber_profile(const BathymetryProfile& bathy, double omega,
                                            int n_samples) {
  WavenumberField f;
  f.bathy = bathy;
  f.omega = omega;
  double k1 = solve_dispersion(omega, bathy.h1());
  double k3 = solve_dispersion(omega, bathy.h3());
  f.khat1 = k1;
  f.khat3 = k3;
  if (bathy.is_constant()) {
    PhaseGroup pg = group_velocity(k1, bathy.h1(), omega);
    f.xs = {bathy.a()};
    f.h = {bathy.h1()};
    f.k = {k1};
    f.c = {pg.c};
    f.cg = {pg.cg};
    f.khat2 = {k1 * k1};
    f.khat_star = k1;
    f.dx = 0.0;
    return f;
  }
  if (n_samples < 100) throw std::invalid_argument("modified_wavenumber_profile: n_samples < 100");
  const double a = bathy.a(), b = bathy.b();
  const double dx = (b - a) / n_samples;
  f.dx = dx;
  f.khat_star = std::max(k1, k3);
  auto s_at = [&](double x) { return s_of_depth(omega, bathy.depth(x)); };
  for (int j = 0; j <= n_samples; ++j) {
    double x = (j == n_samples) ? b : a + j * dx;
    double h = bathy.depth(x);
    double k = solve_dispersion(omega, h);
    PhaseGroup pg = group_velocity(k, h, omega);
    double s0 = std::sqrt(pg.c * pg.cg);
    double spp = (s_at(x + dx) - 2.0 * s0 + s_at(x - dx)) / (dx * dx);
    double kh2 = k * k - spp / s0;
    if (!(kh2 > 0.0))
      throw NumericalError("environment", "evanescent background not supported (khat^2 <= 0 at x=" +
                                              std::to_string(x) + ")");
    f.xs.push_back(x);
    f.h.push_back(h);
    f.k.push_back(k);
    f.c.push_back(pg.c);
    f.cg.push_back(pg.cg);
    f.khat2.push_back(kh2);
    f.khat_star = std::max(f.khat_star, std::sqrt(kh2));
  }
  return f;
}

double WavenumberField::khat2_at(double x) const {
  if (xs.size() == 1) return khat2[0];
  if (x < a()) return khat1 * khat1;
  if (x > b()) return khat3 * khat3;
  double t = (x - a()) / dx;
  int j = std::min(int(t), int(xs.size()) - 2);
  double u = (x - xs[j]) / (xs[j + 1] - xs[j]);
  return (1.0 - u) * khat2[j] + u * khat2[j + 1];
}

double WavenumberField::khat_at(double x) const { return std::sqrt(khat2_at(x)); }

double WavenumberField::k_at(double x) const { return solve_dispersion(omega, bathy.depth(x)); }

double WavenumberField::cg_at(double x) const {
  double h = bathy.depth(x);
  return group_velocity(solve_dispersion(omega, h), h, omega).cg;
}

double WavenumberField::s_at(double x) const { return s_of_depth(omega, bathy.depth(x)); }

double WavenumberField::ds_at(double x) const {
  if (bathy.is_constant() || x < a() || x > b()) return 0.0;
  double d = (b() - a()) * 1e-5;
  return (s_at(x + d) - s_at(x - d)) / (2.0 * d);
}

}  // namespace msbem
