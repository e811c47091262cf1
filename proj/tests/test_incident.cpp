#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

#include "msbem/environment.hpp"
#include "msbem/errors.hpp"
#include "msbem/incident.hpp"

using namespace msbem;

namespace {
BathymetryProfile channel() { return BathymetryProfile::cubic(0, 70, {14.0, 0.0, -8.2653e-3, 7.8717e-5}); }
}

TEST_CASE("constant depth: plane wave") {
  auto b = BathymetryProfile::constant(14.0);
  IncidentWave w{5.0, 2.0, 0.4, 3.0};
  double k = solve_dispersion(w.omega(), 14.0);
  for (auto [x, y] : {std::pair{3.0, 0.0}, {20.0, -7.0}, {-40.0, 33.0}}) {
    auto v = evaluate_incident(w, b, x, y);
    cplx ref = 2.0 * std::exp(cplx(0, k * ((x - 3.0) * std::cos(0.4) + y * std::sin(0.4))));
    CHECK(std::abs(v.phi - ref) < 1e-12);
    CHECK(v.amp_factor == doctest::Approx(1.0));
  }
}

TEST_CASE("normal incidence: shoaling coefficient") {
  auto b = channel();
  IncidentWave w{5.0, 1.0, 0.0, 0.0};
  const double om = w.omega();
  auto cg = [&](double x) {
    double h = b.depth(x);
    return group_velocity(solve_dispersion(om, h), h, om).cg;
  };
  for (double x : {0.0, 10.0, 35.0, 69.0, 80.0}) {
    auto v = evaluate_incident(w, b, x, 5.0);
    CHECK(std::abs(v.phi) == doctest::Approx(std::sqrt(cg(0.0) / cg(x))).epsilon(1e-10));
    CHECK(v.theta == doctest::Approx(0.0));
  }
}

TEST_CASE("oblique incidence: Snell's law and energy flux") {
  auto b = channel();
  IncidentWave w{5.0, 1.0, M_PI / 3, 0.0};
  const double om = w.omega();
  const double k0 = solve_dispersion(om, b.depth(0.0));
  auto cg = [&](double x) {
    double h = b.depth(x);
    return group_velocity(solve_dispersion(om, h), h, om).cg;
  };
  for (double x : {15.0, 40.0, 68.0}) {
    auto v = evaluate_incident(w, b, x, 0.0);
    double k = solve_dispersion(om, b.depth(x));
    CHECK(k * std::sin(v.theta) == doctest::Approx(k0 * std::sin(M_PI / 3)).epsilon(1e-10));
    double A = std::sqrt(cg(0.0) * std::cos(M_PI / 3) / (cg(x) * std::cos(v.theta)));
    CHECK(v.amp_factor == doctest::Approx(A).epsilon(1e-10));
    // phase along y advances with the conserved ky
    auto u = evaluate_incident(w, b, x, 1.0);
    CHECK(std::arg(u.phi / v.phi) == doctest::Approx(k0 * std::sin(M_PI / 3)).epsilon(1e-10));
  }
}

TEST_CASE("phase integral against Gauss-Kronrod") {
  auto b = channel();
  const double om = 2.0 * M_PI / 5.0;
  const double ky = 0.05;
  auto kx = [&](double x) {
    double k = solve_dispersion(om, b.depth(x));
    return std::sqrt(k * k - ky * ky);
  };
  double ref = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(kx, 5.0, 62.0, 10, 1e-13);
  CHECK(phase_integral(b, om, 5.0, 62.0, ky) == doctest::Approx(ref).epsilon(1e-9));
  CHECK(phase_integral(b, om, 62.0, 5.0, ky) == doctest::Approx(-ref).epsilon(1e-9));
}

TEST_CASE("turning point is reported") {
  // deepening toward +x with a grazing wave
  auto b = BathymetryProfile::table({{0, 1.0}, {20, 5.0}, {40, 20.0}, {60, 40.0}});
  IncidentWave w{8.0, 1.0, 1.3, 0.0};
  CHECK_THROWS_AS(evaluate_incident(w, b, 60.0, 0.0), NumericalError);
}
