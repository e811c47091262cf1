#include "msbem/kernel.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

#include "msbem/errors.hpp"
#include "msbem/specfun.hpp"

namespace msbem {

namespace {

const cplx I(0.0, 1.0);

struct ContourGauss {
  std::array<double, contour_gauss_points> s{}, w{};
  ContourGauss() {
    specfun::QuadRule q = specfun::gauss_legendre(contour_gauss_points);
    for (int g = 0; g < contour_gauss_points; ++g) {
      s[g] = 0.5 * (q.nodes[g] + 1.0);
      w[g] = 0.5 * q.weights[g];
    }
  }
};
const ContourGauss& contour_gauss() {
  static const ContourGauss cg;
  return cg;
}

// (e^{iz} - 1) / (iz)
cplx phi1(double z) {
  if (std::abs(z) < 1e-4) return cplx(1.0 - z * z / 6.0, z / 2.0 - z * z * z / 24.0);
  return (std::exp(I * z) - 1.0) / (I * z);
}

// int_0^Xi cos^2(pi t / 2Xi) e^{iyt} dt  and the sin^2 companion
void taper_transforms(double y, double Xi, cplx& t0, cplx& tx) {
  double b = M_PI / Xi;
  cplx i0 = Xi * phi1(y * Xi);
  cplx ic = 0.5 * Xi * (phi1((y + b) * Xi) + phi1((y - b) * Xi));
  t0 = 0.5 * (i0 + ic);
  tx = 0.5 * (i0 - ic);
}

void guard(double y, const ContourParams& p) {
  if (std::abs(y) > 0.8 * p.Y())
    throw NumericalError("kernel", "|y_rel| beyond the 0.8 Y guard band: enlarge Xi/M or domain");
}

// cos^2 and sin^2 of pi l / 2N, l = 0..N
struct Taper {
  std::vector<double> c2, s2;
};
const Taper& taper_for(int N) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<Taper>> cache;
  std::lock_guard<std::mutex> lk(mu);
  auto& slot = cache[N];
  if (!slot) {
    slot = std::make_unique<Taper>();
    for (int l = 0; l <= N; ++l) {
      double c = std::cos(0.5 * M_PI * l / N);
      slot->c2.push_back(c * c);
      slot->s2.push_back(1.0 - c * c);
    }
  }
  return *slot;
}

std::mutex& fftw_mutex() {
  static std::mutex m;
  return m;
}

// S_m = sum_l v_l e^{+2 pi i l m / M}
class BackwardFft {
 public:
  explicit BackwardFft(int M) : M_(M) {
    in_ = fftw_alloc_complex(M);
    out_ = fftw_alloc_complex(M);
    std::lock_guard<std::mutex> lk(fftw_mutex());
    plan_ = fftw_plan_dft_1d(M, in_, out_, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  ~BackwardFft() {
    std::lock_guard<std::mutex> lk(fftw_mutex());
    fftw_destroy_plan(plan_);
    fftw_free(in_);
    fftw_free(out_);
  }
  BackwardFft(const BackwardFft&) = delete;
  BackwardFft& operator=(const BackwardFft&) = delete;

  std::vector<cplx> run(const std::vector<cplx>& v) {
    for (int m = 0; m < M_; ++m) {
      cplx x = m < int(v.size()) ? v[m] : cplx(0.0);
      in_[m][0] = x.real();
      in_[m][1] = x.imag();
    }
    fftw_execute(plan_);
    std::vector<cplx> s(M_);
    for (int m = 0; m < M_; ++m) s[m] = cplx(out_[m][0], out_[m][1]);
    return s;
  }

 private:
  int M_;
  fftw_complex* in_;
  fftw_complex* out_;
  fftw_plan plan_;
};

}  // namespace

ContourParams ContourParams::make(double khat_star, double xi_factor, double tau_factor, int M) {
  ContourParams p;
  p.M = M;
  p.Xi = xi_factor * khat_star;
  p.tau = tau_factor * p.dxi();
  p.check(khat_star);
  return p;
}

void ContourParams::check(double khat_star) const {
  if (M < 8 || (M & (M - 1)) != 0) throw std::invalid_argument("contour: M must be a power of two");
  if (!(Xi >= 4.0 * khat_star * (1.0 - 1e-12)))
    throw std::invalid_argument("contour: Xi must be at least 4 khat*");
  if (!(tau > 0.0)) throw std::invalid_argument("contour: tau must be positive");
}

// ---------------------------------------------------------------------------

SourceSweep::SourceSweep(const WavenumberField& field, double lo, double hi, double x0,
                         const ContourParams& params, int epw)
    : params_(params), fem_(field, lo, hi, x0, epw) {
  prepare();
  const int nn = fem_.size();
  nodal_.assign(size_t(nn) * n_xi_, cplx(0.0));
  std::vector<cplx> col(nn);
  for (int l = 0; l < n_xi_; ++l) {
    try {
      fem_.solve_nodal(xis_[l], col.data());
    } catch (const NumericalError& e) {
      throw NumericalError("kernel", std::string(e.what()) + " (contour sample l=" +
                                         std::to_string(l) + ")");
    }
    for (int j = 0; j < nn; ++j) nodal_[size_t(j) * n_xi_ + l] = col[j];
  }
}

SourceSweep::SourceSweep(const WavenumberField& field, double lo, double hi, double x0,
                         const ContourParams& params, int epw, std::vector<cplx> nodal)
    : params_(params), fem_(field, lo, hi, x0, epw) {
  prepare();
  if (nodal.size() != size_t(fem_.size()) * n_xi_)
    throw std::invalid_argument("kernel cache: nodal block size mismatch");
  nodal_ = std::move(nodal);
}

void SourceSweep::prepare() {
  const int N = params_.N();
  n_xi_ = N + 1 + contour_gauss_points;
  xis_.resize(n_xi_);
  for (int l = 0; l <= N; ++l) xis_[l] = cplx(l * params_.dxi(), -params_.tau);
  const auto& cg = contour_gauss();
  for (int g = 0; g < contour_gauss_points; ++g) xis_[N + 1 + g] = cplx(0.0, params_.tau * cg.s[g]);
  alpha_.resize(n_xi_);
  beta_.resize(n_xi_);
  for (int l = 0; l < n_xi_; ++l) {
    RadiationParams rp = radiation_params(xis_[l], fem_.khat1(), fem_.khat3());
    alpha_[l] = rp.alpha;
    beta_[l] = rp.beta;
  }
}

cplx SourceSweep::xi(int l) const { return xis_[l]; }

FieldSpectrum SourceSweep::spectrum_at(double x) const {
  const int N = params_.N();
  const int L = n_xi_;
  const auto& xs = fem_.xs();
  const int nn = fem_.size();
  const int src = fem_.source_index();
  std::vector<cplx> P(L), Px(L);
  auto row = [&](int j) { return nodal_.data() + size_t(j) * L; };

  // recovered gradient at node j for all l; side = +1 right limit, -1 left limit
  auto grad = [&](int j, int side, std::vector<cplx>& out) {
    const cplx* r = row(j);
    if (j == 0 || j == nn - 1) {
      for (int l = 0; l < L; ++l) out[l] = (j == 0 ? -I * alpha_[l] : I * beta_[l]) * r[l];
      if (j == src) {
        // source at an interval end: the stored BC value is the outer limit
        double jump = (j == 0) ? (side > 0 ? -1.0 : 0.0) : (side < 0 ? 1.0 : 0.0);
        for (int l = 0; l < L; ++l) out[l] += jump;
      }
      return;
    }
    const cplx* rm = row(j - 1);
    const cplx* rp = row(j + 1);
    double hm = xs[j] - xs[j - 1], hp = xs[j + 1] - xs[j];
    double wm = hp / (hm * (hm + hp)), wp = hm / (hp * (hm + hp));
    for (int l = 0; l < L; ++l) out[l] = wm * (r[l] - rm[l]) + wp * (rp[l] - r[l]);
    if (j == src) {
      double shift = side > 0 ? -hp / (hm + hp) : hm / (hm + hp);
      for (int l = 0; l < L; ++l) out[l] += shift;
    }
  };
  if (std::abs(x - x0()) <= 1e-12 * std::max(1.0, std::abs(x0()))) {
    // on the source abscissa: Psi_x taken as the mean of its two limits
    std::vector<cplx> gl(L), gr(L);
    grad(src, -1, gl);
    grad(src, +1, gr);
    const cplx* r = row(src);
    for (int l = 0; l < L; ++l) {
      P[l] = r[l];
      Px[l] = 0.5 * (gl[l] + gr[l]);
    }
  } else if (x <= xs.front() || x >= xs.back()) {
    bool left = x <= xs.front();
    const cplx* r = row(left ? 0 : nn - 1);
    double d = left ? xs.front() - x : x - xs.back();
    for (int l = 0; l < L; ++l) {
      cplx k = left ? alpha_[l] : beta_[l];
      cplx p = r[l] * std::exp(I * k * d);
      P[l] = p;
      Px[l] = (left ? -I : I) * k * p;
    }
  } else {
    int e = int(std::upper_bound(xs.begin(), xs.end(), x) - xs.begin()) - 1;
    e = std::clamp(e, 0, nn - 2);
    double h = xs[e + 1] - xs[e];
    double t = (x - xs[e]) / h;
    std::vector<cplx> g0(L), g1(L);
    grad(e, +1, g0);
    grad(e + 1, -1, g1);
    const cplx* r0 = row(e);
    const cplx* r1 = row(e + 1);
    for (int l = 0; l < L; ++l) {
      P[l] = (1.0 - t) * r0[l] + t * r1[l];
      Px[l] = (1.0 - t) * g0[l] + t * g1[l];
    }
  }

  FieldSpectrum fs;
  fs.x = x;
  fs.x0 = x0();
  fs.psi.assign(P.begin(), P.begin() + N + 1);
  fs.psi_x.assign(Px.begin(), Px.begin() + N + 1);
  for (int g = 0; g < contour_gauss_points; ++g) {
    fs.c1[g] = P[N + 1 + g];
    fs.c1x[g] = Px[N + 1 + g];
  }
  return fs;
}

// ---------------------------------------------------------------------------

KernelValue kernel_tail(double dx, double y, const ContourParams& p) {
  double a = std::abs(dx);
  double r2 = a * a + y * y;
  if (r2 == 0.0) throw NumericalError("kernel", "tail evaluated at the source point");
  cplx Z(p.Xi, -p.tau);
  cplx psi = (specfun::expint_e1(Z * cplx(a, -y)) + specfun::expint_e1(Z * cplx(a, y))) / (4.0 * M_PI);
  cplx ez = std::exp(-a * Z);
  cplx cz = std::cos(Z * y), sz = std::sin(Z * y);
  double sg = dx > 0.0 ? 1.0 : (dx < 0.0 ? -1.0 : 0.0);
  cplx px = -sg * ez * (a * cz - y * sz) / (2.0 * M_PI * r2);
  cplx py = -ez * (a * sz + y * cz) / (2.0 * M_PI * r2);
  return {psi, px, py};
}

SpectralEvaluator::SpectralEvaluator(const FieldSpectrum& spec, const ContourParams& params)
    : p_(params), x_(spec.x), dx_(spec.x - spec.x0) {
  const int N = p_.N();
  n_ = N + 1;
  std::vector<cplx> v[3];
  v[0] = spec.psi;
  v[1] = spec.psi_x;
  v[2].resize(n_);
  for (int l = 0; l < n_; ++l) v[2][l] = I * cplx(l * p_.dxi(), -p_.tau) * spec.psi[l];
  const Taper& taper = taper_for(N);
  for (int k = 0; k < 3; ++k) {
    j0_[k] = v[k][0];
    jx_[k] = v[k][N];
    re_[k].resize(n_);
    im_[k].resize(n_);
    for (int l = 0; l < n_; ++l) {
      cplx d = v[k][l] - j0_[k] * taper.c2[l] - jx_[k] * taper.s2[l];
      re_[k][l] = d.real();
      im_[k][l] = d.imag();
    }
  }
  c1_ = spec.c1;
  c1x_ = spec.c1x;
}

KernelValue SpectralEvaluator::operator()(double y) const {
  guard(y, p_);
  const int n = n_;
  const double tau = p_.tau;
  // phases e^{i y dxi l}, built from two short tables to keep sincos calls few
  thread_local std::vector<double> cs, sn;
  cs.resize(n);
  sn.resize(n);
  constexpr int B = 64;
  double th = y * p_.dxi();
  double cb[B], sb[B];
  for (int r = 0; r < B; ++r) {
    cb[r] = std::cos(th * r);
    sb[r] = std::sin(th * r);
  }
  for (int q = 0; q * B < n; ++q) {
    double C = std::cos(th * B * q), S = std::sin(th * B * q);
    int lim = std::min(B, n - q * B);
    double* cq = cs.data() + q * B;
    double* sq = sn.data() + q * B;
    for (int r = 0; r < lim; ++r) {
      cq[r] = C * cb[r] - S * sb[r];
      sq[r] = S * cb[r] + C * sb[r];
    }
  }
  cplx t0p, txp, t0m, txm;
  taper_transforms(y, p_.Xi, t0p, txp);
  taper_transforms(-y, p_.Xi, t0m, txm);
  cplx Pp[3], Pm[3];
  for (int k = 0; k < 3; ++k) {
    const double* dr = re_[k].data();
    const double* di = im_[k].data();
    double A = 0.0, Bs = 0.0, C = 0.0, D = 0.0;
    for (int l = 0; l < n; ++l) {
      A += dr[l] * cs[l];
      Bs += di[l] * sn[l];
      C += dr[l] * sn[l];
      D += di[l] * cs[l];
    }
    double dxi = p_.dxi();
    Pp[k] = dxi * cplx(A - Bs, C + D) + j0_[k] * t0p + jx_[k] * txp;
    Pm[k] = dxi * cplx(A + Bs, D - C) + j0_[k] * t0m + jx_[k] * txm;
  }
  double ep = std::exp(tau * y), em = std::exp(-tau * y);
  const auto& cg = contour_gauss();
  cplx c1 = 0.0, c1x = 0.0, c1y = 0.0;
  for (int g = 0; g < contour_gauss_points; ++g) {
    double ch = std::cosh(tau * y * cg.s[g]), sh = std::sinh(tau * y * cg.s[g]);
    c1 += cg.w[g] * c1_[g] * ch;
    c1x += cg.w[g] * c1x_[g] * ch;
    c1y += cg.w[g] * cg.s[g] * c1_[g] * sh;
  }
  c1 *= -I * tau / M_PI;
  c1x *= -I * tau / M_PI;
  c1y *= -I * tau * tau / M_PI;
  KernelValue tail = kernel_tail(dx_, y, p_);
  const double inv2pi = 0.5 / M_PI;
  return {c1 + inv2pi * (ep * Pp[0] + em * Pm[0]) + tail.psi,
          c1x + inv2pi * (ep * Pp[1] + em * Pm[1]) + tail.psi_x,
          c1y + inv2pi * (ep * Pp[2] - em * Pm[2]) + tail.psi_y};
}

// ---------------------------------------------------------------------------

cplx SampledTransform::extended_psi(int field, int l) const {
  const int N = params.N();
  if (l <= N) return spectra[field].psi[l];
  return spectra[field].psi[params.M - l];
}

SampledTransform sweep_contour(const WavenumberField& field, double x0,
                               const std::vector<double>& field_xs, const ContourParams& params,
                               int epw) {
  double lo = x0, hi = x0;
  for (double x : field_xs) {
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  SourceSweep sw(field, lo, hi, x0, params, epw);
  SampledTransform st;
  st.source_x = x0;
  st.params = params;
  st.field_xs = field_xs;
  for (int l = 0; l <= params.N(); ++l) st.xi_nodes.push_back(sw.xi(l));
  for (double x : field_xs) st.spectra.push_back(sw.spectrum_at(x));
  return st;
}

namespace {

enum class Comp { Psi, PsiX, PsiY };

std::vector<std::vector<cplx>> invert_component(const SampledTransform& st, InversionScheme scheme,
                                                Comp comp) {
  const ContourParams& p = st.params;
  const int N = p.N(), M = p.M;
  const double tau = p.tau, dxi = p.dxi(), dy = p.dy();
  BackwardFft fft(M);
  const auto& cg = contour_gauss();
  std::vector<std::vector<cplx>> out(st.spectra.size(), std::vector<cplx>(N + 1));

  for (size_t f = 0; f < st.spectra.size(); ++f) {
    const FieldSpectrum& fs = st.spectra[f];
    const double dx = fs.x - fs.x0;
    std::vector<cplx> v(N + 1);
    for (int l = 0; l <= N; ++l) {
      cplx xi(l * dxi, -tau);
      v[l] = comp == Comp::Psi ? fs.psi[l] : comp == Comp::PsiX ? fs.psi_x[l] : I * xi * fs.psi[l];
    }

    if (scheme == InversionScheme::ExactPath) {
      cplx j0 = v[0], jx = v[N];
      std::vector<cplx> d(N + 1);
      for (int l = 0; l <= N; ++l) {
        double c = std::cos(0.5 * M_PI * l / N), s = std::sin(0.5 * M_PI * l / N);
        d[l] = v[l] - j0 * c * c - jx * s * s;
      }
      std::vector<cplx> S = fft.run(d);
      for (int j = 0; j <= N; ++j) {
        double y = j * dy;
        cplx t0p, txp, t0m, txm;
        taper_transforms(y, p.Xi, t0p, txp);
        taper_transforms(-y, p.Xi, t0m, txm);
        cplx Pp = dxi * S[j] + j0 * t0p + jx * txp;
        cplx Pm = dxi * S[(M - j) % M] + j0 * t0m + jx * txm;
        double ep = std::exp(tau * y), em = std::exp(-tau * y);
        cplx c1 = 0.0;
        for (int g = 0; g < contour_gauss_points; ++g) {
          double ch = std::cosh(tau * y * cg.s[g]), sh = std::sinh(tau * y * cg.s[g]);
          if (comp == Comp::Psi) c1 += cg.w[g] * fs.c1[g] * ch;
          if (comp == Comp::PsiX) c1 += cg.w[g] * fs.c1x[g] * ch;
          if (comp == Comp::PsiY) c1 += cg.w[g] * cg.s[g] * fs.c1[g] * sh;
        }
        c1 *= (comp == Comp::PsiY ? -I * tau * tau : -I * tau) / M_PI;
        cplx body = comp == Comp::PsiY ? (ep * Pp - em * Pm) : (ep * Pp + em * Pm);
        cplx val = c1 + body / (2.0 * M_PI);
        if (dx == 0.0 && j == 0) {
          val = cplx(NAN, NAN);
        } else {
          KernelValue t = kernel_tail(dx, y, p);
          val += comp == Comp::Psi ? t.psi : comp == Comp::PsiX ? t.psi_x : t.psi_y;
        }
        out[f][j] = val;
      }
    } else {
      // trapezoid weights over the symmetric extension
      std::vector<cplx> w(N + 1), wy(N + 1);
      for (int l = 0; l <= N; ++l) {
        double tw = (l == 0 || l == N) ? 0.5 : 1.0;
        cplx base = comp == Comp::PsiX ? fs.psi_x[l] : fs.psi[l];
        w[l] = tw * base;
        wy[l] = tw * (l * dxi) * base;
      }
      std::vector<cplx> S = fft.run(w);
      std::vector<cplx> Sy;
      if (comp == Comp::PsiY) Sy = fft.run(wy);
      for (int j = 0; j <= N; ++j) {
        double y = j * dy;
        double ep = std::exp(tau * y);
        cplx cosser = 0.5 * dxi * (S[j] + S[(M - j) % M]);
        cplx val;
        if (comp == Comp::PsiY) {
          cplx sinser = dxi * (Sy[j] - Sy[(M - j) % M]) / (2.0 * I);
          val = (tau * ep * cosser - ep * sinser) / M_PI;
        } else {
          val = ep * cosser / M_PI;
        }
        if (dx == 0.0 && j == 0) {
          val = cplx(NAN, NAN);
        } else if (comp == Comp::Psi) {
          val += std::cosh(tau * y) / (2.0 * M_PI) *
                 specfun::expint_e1(cplx(std::abs(dx), y) * p.Xi).real();
        } else {
          KernelValue t = kernel_tail(dx, y, p);
          val += comp == Comp::PsiX ? t.psi_x : t.psi_y;
        }
        out[f][j] = val;
      }
    }
  }
  return out;
}

int field_index(const std::vector<double>& xs, double x) {
  for (size_t i = 0; i < xs.size(); ++i)
    if (std::abs(xs[i] - x) <= 1e-9 * std::max(1.0, std::abs(x))) return int(i);
  throw NumericalError("kernel", "no table abscissa at x=" + std::to_string(x));
}

}  // namespace

std::vector<std::vector<cplx>> invert_psi(const SampledTransform& st, InversionScheme s) {
  return invert_component(st, s, Comp::Psi);
}
std::vector<std::vector<cplx>> invert_psi_x(const SampledTransform& st, InversionScheme s) {
  return invert_component(st, s, Comp::PsiX);
}
std::vector<std::vector<cplx>> invert_psi_y(const SampledTransform& st, InversionScheme s) {
  return invert_component(st, s, Comp::PsiY);
}

KernelTable build_table(const SampledTransform& st, InversionScheme s) {
  KernelTable t;
  t.source_x = st.source_x;
  t.params = st.params;
  t.field_xs = st.field_xs;
  for (int j = 0; j <= st.params.N(); ++j) t.ygrid.push_back(j * st.params.dy());
  t.psi = invert_psi(st, s);
  t.psi_x = invert_psi_x(st, s);
  t.psi_y = invert_psi_y(st, s);
  return t;
}

KernelValue evaluate(const KernelTable& table, double x, double y_rel) {
  guard(y_rel, table.params);
  int f = field_index(table.field_xs, x);
  const double dy = table.params.dy();
  const int N = table.params.N();
  double s = std::abs(y_rel) / dy;
  int j = int(std::floor(s));
  double t = s - j;
  if (t < 1e-12) {
    double sg = y_rel < 0.0 ? -1.0 : 1.0;
    return {table.psi[f][j], table.psi_x[f][j], sg * table.psi_y[f][j]};
  }
  double w[4] = {-t * (t - 1.0) * (t - 2.0) / 6.0, (t + 1.0) * (t - 1.0) * (t - 2.0) / 2.0,
                 -(t + 1.0) * t * (t - 2.0) / 2.0, (t + 1.0) * t * (t - 1.0) / 6.0};
  cplx v[3] = {0.0, 0.0, 0.0};
  for (int q = 0; q < 4; ++q) {
    int m = j - 1 + q;
    double odd = m < 0 ? -1.0 : 1.0;
    int mi = std::min(std::abs(m), N);
    v[0] += w[q] * table.psi[f][mi];
    v[1] += w[q] * table.psi_x[f][mi];
    v[2] += w[q] * odd * table.psi_y[f][mi];
  }
  double sg = y_rel < 0.0 ? -1.0 : 1.0;
  for (auto& c : v)
    if (!std::isfinite(c.real()))
      throw NumericalError("kernel", "interpolation stencil touches the source point");
  return {v[0], v[1], sg * v[2]};
}

KernelValue evaluate_direct(const SampledTransform& st, double x, double y_rel) {
  int f = field_index(st.field_xs, x);
  SpectralEvaluator ev(st.spectra[f], st.params);
  return ev(y_rel);
}

}  // namespace msbem
