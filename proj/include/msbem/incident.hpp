#pragma once

#include <complex>

#include "msbem/environment.hpp"

namespace msbem {

using cplx = std::complex<double>;

// Plane wave entering from the reference abscissa.  theta0 is measured from
// the +x axis (the direction of depth variation).
struct IncidentWave {
  double period = 0.0;
  double amplitude = 1.0;  // |phi_0| at x_ref
  double theta0 = 0.0;
  double x_ref = 0.0;

  double omega() const;
};

// int_{x0}^{x} sqrt(k(eta)^2 - ky^2) d eta, adaptive Simpson (absolute tol in rad).
double phase_integral(const BathymetryProfile& bathy, double omega, double x0, double x, double ky,
                      double tol = 1e-8);

struct IncidentValue {
  cplx phi;
  double amp_factor;  // A(x): shoaling times refraction coefficient
  double theta;       // local direction from +x
};

IncidentValue evaluate_incident(const IncidentWave& wave, const BathymetryProfile& bathy, double x,
                                double y);

}  // namespace msbem
