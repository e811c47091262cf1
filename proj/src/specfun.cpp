#include "msbem/specfun.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "msbem/errors.hpp"

namespace msbem::specfun {

cplx expint_e1_series(cplx z) {
  if (z == cplx(0.0)) throw std::invalid_argument("E1: z = 0");
  cplx term = 1.0;
  cplx sum = 0.0;
  for (int k = 1; k < 400; ++k) {
    term *= -z / double(k);
    cplx add = term / double(k);
    sum += add;
    if (std::abs(add) < 1e-17 * std::abs(sum)) break;
  }
  return -euler_gamma - std::log(z) - sum;
}

// Modified Lentz on E1(z) = e^{-z} / (z+1 - 1/(z+3 - 4/(z+5 - ...)))
cplx expint_e1_cfrac(cplx z) {
  if (z == cplx(0.0)) throw std::invalid_argument("E1: z = 0");
  const double tiny = 1e-300;
  cplx b = z + 1.0;
  cplx c = 1.0 / tiny;
  cplx d = 1.0 / b;
  cplx h = d;
  for (int i = 1; i < 20000; ++i) {
    double a = -double(i) * double(i);
    b += 2.0;
    d = 1.0 / (a * d + b);
    c = b + a / c;
    if (std::abs(c) < tiny) c = tiny;
    cplx del = c * d;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) return h * std::exp(-z);
  }
  throw NumericalError("specfun", "E1 continued fraction did not converge");
}

cplx expint_e1(cplx z) {
  if (z == cplx(0.0)) throw std::invalid_argument("E1: z = 0 (use the logarithmic split)");
  double r = std::abs(z);
  // The series cancels badly once Re z is large; the fraction is fast there.
  if (r <= 2.0 || (r <= 8.0 && z.real() < 4.0)) return expint_e1_series(z);
  return expint_e1_cfrac(z);
}

BesselJY bessel_jy(int mmax, double x) {
  if (mmax < 0 || mmax > 60) throw std::invalid_argument("bessel_jy: order must be in [0, 60]");
  if (!(x > 0.0)) throw std::invalid_argument("bessel_jy: x must be positive");
  BesselJY out;
  out.J.assign(mmax + 1, 0.0);
  out.Y.assign(mmax + 1, 0.0);

  // Miller downward recurrence, normalised with J0 + 2 sum J_2k = 1.
  int big = std::max(mmax, int(x));
  int top = 2 * ((big + 30 + int(std::sqrt(40.0 * (big + 1)))) / 2);
  std::vector<double> j(top + 2, 0.0);
  j[top + 1] = 0.0;
  j[top] = 1e-30;
  for (int m = top; m >= 1; --m) {
    j[m - 1] = (2.0 * m / x) * j[m] - j[m + 1];
    if (std::abs(j[m - 1]) > 1e250) {
      for (int q = m - 1; q <= top + 1; ++q) j[q] *= 1e-250;
    }
  }
  double norm = j[0];
  for (int m = 2; m <= top; m += 2) norm += 2.0 * j[m];
  for (int m = 0; m <= mmax; ++m) out.J[m] = j[m] / norm;

  // Upward recurrence for Y from the library values of Y0, Y1.
  out.Y[0] = std::cyl_neumann(0.0, x);
  if (mmax >= 1) out.Y[1] = std::cyl_neumann(1.0, x);
  for (int m = 1; m < mmax; ++m) {
    out.Y[m + 1] = (2.0 * m / x) * out.Y[m] - out.Y[m - 1];
    if (!std::isfinite(out.Y[m + 1]) || std::abs(out.Y[m + 1]) > 1e300)
      throw NumericalError("specfun", "Y_m overflow at m=" + std::to_string(m + 1));
  }
  return out;
}

cplx hankel1(int order, double x) {
  if (order != 0 && order != 1) throw std::invalid_argument("hankel1: order must be 0 or 1");
  BesselJY jy = bessel_jy(1, x);
  return {jy.J[order], jy.Y[order]};
}

QuadRule gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n < 1");
  QuadRule q;
  q.nodes.resize(n);
  q.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      dp = n * (z * p1 - p2) / (z * z - 1.0);
      double z1 = z;
      z = z1 - p1 / dp;
      if (std::abs(z - z1) < 1e-15) {
        // one more derivative evaluation at the converged node
        p1 = 1.0;
        p2 = 0.0;
        for (int j = 1; j <= n; ++j) {
          double p3 = p2;
          p2 = p1;
          p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
        }
        dp = n * (z * p1 - p2) / (z * z - 1.0);
        break;
      }
    }
    q.nodes[i] = -z;
    q.nodes[n - 1 - i] = z;
    double w = 2.0 / ((1.0 - z * z) * dp * dp);
    q.weights[i] = w;
    q.weights[n - 1 - i] = w;
  }
  return q;
}

// Modified Chebyshev algorithm against monic shifted Legendre polynomials,
// then Golub-Welsch on the resulting Jacobi matrix.
QuadRule log_gauss_rule(int n) {
  if (n < 1 || n > 30) throw std::invalid_argument("log_gauss_rule: n must be in [1, 30]");
  const int m2 = 2 * n;
  // Recurrence of the monic shifted Legendre polynomials on [0,1].
  std::vector<double> a(m2, 0.5), b(m2, 0.0);
  for (int k = 1; k < m2; ++k) b[k] = double(k) * k / (4.0 * (4.0 * k * k - 1.0));
  // nu_k = int_0^1 p_k(t) ln(1/t) dt.
  std::vector<double> nu(m2);
  nu[0] = 1.0;
  double lead = 1.0;  // (k!)^2 / (2k)!
  for (int k = 1; k < m2; ++k) {
    lead *= double(k) * k / ((2.0 * k - 1.0) * (2.0 * k));
    double sgn = (k % 2 == 0) ? 1.0 : -1.0;
    nu[k] = lead * sgn / (double(k) * (k + 1));
  }
  std::vector<double> alpha(n), beta(n);
  std::vector<double> sig_prev(m2 + 1, 0.0), sig(m2 + 1, 0.0), sig_next(m2 + 1, 0.0);
  for (int l = 0; l < m2; ++l) sig[l] = nu[l];
  alpha[0] = a[0] + nu[1] / nu[0];
  beta[0] = nu[0];
  for (int k = 1; k < n; ++k) {
    std::fill(sig_next.begin(), sig_next.end(), 0.0);
    for (int l = k; l < m2 - k; ++l) {
      sig_next[l] = sig[l + 1] - (alpha[k - 1] - a[l]) * sig[l] - beta[k - 1] * sig_prev[l] +
                    b[l] * sig[l - 1];
    }
    alpha[k] = a[k] + sig_next[k + 1] / sig_next[k] - sig[k] / sig[k - 1];
    beta[k] = sig_next[k] / sig[k - 1];
    sig_prev = sig;
    sig = sig_next;
  }
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < n; ++k) J(k, k) = alpha[k];
  for (int k = 1; k < n; ++k) {
    J(k, k - 1) = std::sqrt(beta[k]);
    J(k - 1, k) = J(k, k - 1);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  QuadRule q;
  q.nodes.resize(n);
  q.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    q.nodes[i] = es.eigenvalues()(i);
    double v0 = es.eigenvectors()(0, i);
    q.weights[i] = beta[0] * v0 * v0;
  }
  return q;
}

}  // namespace msbem::specfun
