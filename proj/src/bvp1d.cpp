#include "msbem/bvp1d.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "msbem/errors.hpp"

namespace msbem {

cplx outgoing_sqrt(cplx z) {
  cplx s = std::sqrt(z);
  if (s.imag() < 0.0 || (s.imag() == 0.0 && s.real() < 0.0)) s = -s;
  return s;
}

RadiationParams radiation_params(cplx xi, double khat1, double khat3) {
  return {outgoing_sqrt(khat1 * khat1 - xi * xi), outgoing_sqrt(khat3 * khat3 - xi * xi)};
}

FemSystem::FemSystem(const WavenumberField& field, double lo, double hi, double x0,
                     int elems_per_wavelength) {
  if (elems_per_wavelength < 20)
    throw std::invalid_argument("bvp1d: fewer than 20 elements per wavelength");
  if (!field.bathy.is_constant()) {
    lo = std::min(lo, field.a());
    hi = std::max(hi, field.b());
  }
  lo = std::min(lo, x0);
  hi = std::max(hi, x0);
  khat1_ = field.khat1;
  khat3_ = field.khat3;
  const double hmax = 2.0 * M_PI / field.khat_star / elems_per_wavelength;

  if (hi - lo < 1e-12 * std::max(1.0, std::abs(x0))) hi = x0 + hmax;
  int nl = int(std::ceil((x0 - lo) / hmax - 1e-9));
  int nr = int(std::ceil((hi - x0) / hmax - 1e-9));
  xs_.reserve(nl + nr + 1);
  for (int i = 0; i < nl; ++i) xs_.push_back(lo + (x0 - lo) * double(i) / nl);
  src_ = nl;
  xs_.push_back(x0);
  for (int i = 1; i <= nr; ++i) xs_.push_back(i == nr ? hi : x0 + (hi - x0) * double(i) / nr);

  const int n = int(xs_.size());
  kd_.assign(n, 0.0);
  md_.assign(n, 0.0);
  ko_.assign(n - 1, 0.0);
  mo_.assign(n - 1, 0.0);
  const double g = 1.0 / std::sqrt(3.0);
  for (int e = 0; e < n - 1; ++e) {
    double h = xs_[e + 1] - xs_[e];
    double mid = 0.5 * (xs_[e] + xs_[e + 1]);
    double m00 = 0.0, m01 = 0.0, m11 = 0.0;
    for (double s : {-g, g}) {
      double x = mid + 0.5 * h * s;
      double k2 = field.khat2_at(x);
      double n0 = 0.5 * (1.0 - s), n1 = 0.5 * (1.0 + s);
      double w = 0.5 * h;
      m00 += w * k2 * n0 * n0;
      m01 += w * k2 * n0 * n1;
      m11 += w * k2 * n1 * n1;
    }
    kd_[e] += 1.0 / h - m00;
    kd_[e + 1] += 1.0 / h - m11;
    ko_[e] += -1.0 / h - m01;
    md_[e] += h / 3.0;
    md_[e + 1] += h / 3.0;
    mo_[e] += h / 6.0;
  }
}

void FemSystem::assemble(cplx xi, std::vector<cplx>& off, std::vector<cplx>& diag) const {
  const int n = size();
  const cplx xi2 = xi * xi;
  diag.resize(n);
  off.resize(n - 1);
  for (int i = 0; i < n; ++i) diag[i] = kd_[i] + xi2 * md_[i];
  for (int i = 0; i < n - 1; ++i) off[i] = ko_[i] + xi2 * mo_[i];
  RadiationParams rp = radiation_params(xi, khat1_, khat3_);
  diag[0] -= cplx(0.0, 1.0) * rp.alpha;
  diag[n - 1] -= cplx(0.0, 1.0) * rp.beta;
}

namespace {
std::string xi_str(cplx xi) {
  std::ostringstream os;
  os.precision(10);
  os << "xi=(" << xi.real() << "," << xi.imag() << ")";
  return os.str();
}
}  // namespace

std::vector<cplx> FemSystem::solve_dense(cplx xi) const {
  const int n = size();
  std::vector<cplx> off, diag;
  assemble(xi, off, diag);
  Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 0; i < n; ++i) A(i, i) = diag[i];
  for (int i = 0; i < n - 1; ++i) A(i, i + 1) = A(i + 1, i) = off[i];
  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(n);
  rhs(src_) = 1.0;
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(A);
  double rc = lu.rcond();
  if (!(rc > 1e-15)) throw NumericalError("bvp1d", "singular transformed system at " + xi_str(xi));
  Eigen::VectorXcd x = lu.solve(rhs);
  return std::vector<cplx>(x.data(), x.data() + n);
}

void FemSystem::solve_nodal(cplx xi, cplx* out) const {
  const int n = size();
  std::vector<cplx> off, diag;
  assemble(xi, off, diag);
  // Thomas: forward elimination with rhs = e_src.
  std::vector<cplx> cp(n), dp(n);
  double scale = 0.0;
  for (int i = 0; i < n; ++i) scale = std::max(scale, std::abs(diag[i]));
  cplx piv = diag[0];
  bool ok = std::abs(piv) > 1e-13 * scale;
  if (ok) {
    cp[0] = (n > 1 ? off[0] / piv : 0.0);
    dp[0] = (src_ == 0 ? 1.0 / piv : 0.0);
    for (int i = 1; i < n && ok; ++i) {
      piv = diag[i] - off[i - 1] * cp[i - 1];
      if (!(std::abs(piv) > 1e-13 * scale)) {
        ok = false;
        break;
      }
      cp[i] = (i < n - 1 ? off[i] / piv : 0.0);
      dp[i] = ((i == src_ ? 1.0 : 0.0) - off[i - 1] * dp[i - 1]) / piv;
    }
  }
  if (!ok) {
    std::vector<cplx> x = solve_dense(xi);
    std::copy(x.begin(), x.end(), out);
    return;
  }
  out[n - 1] = dp[n - 1];
  for (int i = n - 2; i >= 0; --i) out[i] = dp[i] - cp[i] * out[i + 1];
  for (int i = 0; i < n; ++i)
    if (!std::isfinite(out[i].real()) || !std::isfinite(out[i].imag()))
      throw NumericalError("bvp1d", "non-finite transformed solution at " + xi_str(xi));
}

void FemSystem::recover_gradient(const cplx* psi, cplx alpha, cplx beta, cplx* dpsi,
                                 cplx& src_left, cplx& src_right) const {
  const int n = size();
  const cplx I(0.0, 1.0);
  for (int j = 1; j < n - 1; ++j) {
    double hm = xs_[j] - xs_[j - 1], hp = xs_[j + 1] - xs_[j];
    cplx gm = (psi[j] - psi[j - 1]) / hm, gp = (psi[j + 1] - psi[j]) / hp;
    dpsi[j] = (hp * gm + hm * gp) / (hm + hp);
  }
  dpsi[0] = -I * alpha * psi[0];
  dpsi[n - 1] = I * beta * psi[n - 1];
  if (src_ == 0) {
    src_left = dpsi[0];
    src_right = src_left - 1.0;
    dpsi[0] = 0.5 * (src_left + src_right);
  } else if (src_ == n - 1) {
    src_right = dpsi[n - 1];
    src_left = src_right + 1.0;
    dpsi[n - 1] = 0.5 * (src_left + src_right);
  } else {
    double hm = xs_[src_] - xs_[src_ - 1], hp = xs_[src_ + 1] - xs_[src_];
    src_left = dpsi[src_] + hm / (hm + hp);
    src_right = dpsi[src_] - hp / (hm + hp);
  }
}

TransformedSolution FemSystem::solve(cplx xi) const {
  TransformedSolution s;
  s.xs = xs_;
  s.source_index = src_;
  s.xi = xi;
  RadiationParams rp = radiation_params(xi, khat1_, khat3_);
  s.alpha = rp.alpha;
  s.beta = rp.beta;
  s.psi.resize(size());
  s.dpsi.resize(size());
  solve_nodal(xi, s.psi.data());
  recover_gradient(s.psi.data(), s.alpha, s.beta, s.dpsi.data(), s.dpsi_src_left, s.dpsi_src_right);
  return s;
}

TransformedSolution solve_transformed(const WavenumberField& field, cplx xi, double x0,
                                      int elems_per_wavelength) {
  if (!field.bathy.is_constant() && (x0 < field.a() || x0 > field.b()))
    throw std::invalid_argument("solve_transformed: x0 outside [a, b]");
  double lo = field.bathy.is_constant() ? x0 : field.a();
  double hi = field.bathy.is_constant() ? x0 : field.b();
  FemSystem sys(field, lo, hi, x0, elems_per_wavelength);
  return sys.solve(xi);
}

PsiPair evaluate_transformed(const TransformedSolution& sol, double x, GradientMode mode) {
  const auto& xs = sol.xs;
  const int n = int(xs.size());
  const cplx I(0.0, 1.0);
  if (x <= xs.front()) {
    cplx p = sol.psi.front() * std::exp(I * sol.alpha * (xs.front() - x));
    return {p, -I * sol.alpha * p};
  }
  if (x >= xs.back()) {
    cplx p = sol.psi.back() * std::exp(I * sol.beta * (x - xs.back()));
    return {p, I * sol.beta * p};
  }
  int e = int(std::upper_bound(xs.begin(), xs.end(), x) - xs.begin()) - 1;
  e = std::clamp(e, 0, n - 2);
  double h = xs[e + 1] - xs[e];
  double t = (x - xs[e]) / h;
  cplx p = (1.0 - t) * sol.psi[e] + t * sol.psi[e + 1];
  if (mode == GradientMode::ElementConstant) return {p, (sol.psi[e + 1] - sol.psi[e]) / h};
  cplx d0 = (e == sol.source_index) ? sol.dpsi_src_right : sol.dpsi[e];
  cplx d1 = (e + 1 == sol.source_index) ? sol.dpsi_src_left : sol.dpsi[e + 1];
  return {p, (1.0 - t) * d0 + t * d1};
}

}  // namespace msbem
