#pragma once

#include <complex>
#include <vector>

namespace msbem::specfun {

using cplx = std::complex<double>;

inline constexpr double euler_gamma = 0.57721566490153286;
inline constexpr double pi = 3.14159265358979323846;

// Exponential integral E1(z) for |arg z| < pi, z != 0.
cplx expint_e1(cplx z);
// The two regimes, exposed so the seam between them can be tested.
cplx expint_e1_series(cplx z);
cplx expint_e1_cfrac(cplx z);

// J_m(x), Y_m(x) for m = 0..mmax, x > 0.
struct BesselJY {
  std::vector<double> J;
  std::vector<double> Y;
};
BesselJY bessel_jy(int mmax, double x);

// H^(1)_n(x) = J_n(x) + i Y_n(x).
cplx hankel1(int order, double x);

// Gauss-Legendre nodes/weights on [-1, 1].
struct QuadRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
QuadRule gauss_legendre(int n);

// Rule for  int_0^1 f(t) ln(1/t) dt, built from modified moments.
QuadRule log_gauss_rule(int n);

}  // namespace msbem::specfun
