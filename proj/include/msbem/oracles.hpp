#pragma once

#include <complex>

namespace msbem {

using cplx = std::complex<double>;

struct HelmholtzFs {
  cplx psi;
  cplx dpsi_dr;
};
// (i/4) H0(kr) and its radial derivative.
HelmholtzFs helmholtz_fs(double k, double r);

struct CylinderCase {
  double R = 25.0;
  double h = 14.0;
  double T = 5.0;
  int m_max = 0;  // 0: ceil(kR) + 20

  double k() const;
  int order() const;
};

// Total potential phi/|phi_0| of a unit plane wave travelling along direction
// theta_inc (from +x) scattered by a rigid cylinder centred at the origin.
cplx maccamy_fuchs(const CylinderCase& c, double x, double y, double theta_inc = 0.0);
// Radial derivative of the same field (rigid-wall check).
cplx maccamy_fuchs_dr(const CylinderCase& c, double x, double y, double theta_inc = 0.0);

}  // namespace msbem
