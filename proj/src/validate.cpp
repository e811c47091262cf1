#include "msbem/validate.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <stdexcept>

#include "msbem/bem.hpp"
#include "msbem/errors.hpp"
#include "msbem/incident.hpp"
#include "msbem/oracles.hpp"
#include "msbem/scenario.hpp"
#include "msbem/specfun.hpp"

namespace msbem {

using nlohmann::json;

Check check_below(std::string suite, std::string name, int criterion, double measured, double tol,
                  std::string note) {
  Check c{std::move(suite), std::move(name), criterion, "<", tol, 0.0, measured, false, std::move(note)};
  c.pass = std::isfinite(measured) && measured < tol;
  return c;
}

Check check_above(std::string suite, std::string name, int criterion, double measured, double tol,
                  std::string note) {
  Check c{std::move(suite), std::move(name), criterion, ">", tol, 0.0, measured, false, std::move(note)};
  c.pass = std::isfinite(measured) && measured > tol;
  return c;
}

Check check_within(std::string suite, std::string name, int criterion, double measured, double lo,
                   double hi, std::string note) {
  Check c{std::move(suite), std::move(name), criterion, "in", lo, hi, measured, false, std::move(note)};
  c.pass = std::isfinite(measured) && measured >= lo && measured <= hi;
  return c;
}

namespace {

constexpr double T5 = 5.0;
constexpr double h14 = 14.0;
const std::array<double, 4> channel_cubic = {14.0, 0.0, -8.2653e-3, 7.8717e-5};

double omega_of(double T) { return 2.0 * M_PI / T; }

BathymetryProfile channel_profile() { return BathymetryProfile::cubic(0.0, 70.0, channel_cubic); }

void say(const Logger& log, const char* fmt, double a = 0, double b = 0, double c = 0) {
  if (!log) return;
  char buf[256];
  std::snprintf(buf, sizeof buf, fmt, a, b, c);
  log(buf);
}

double secs(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---------------------------------------------------------------- dispersion

std::vector<Check> suite_dispersion(const Logger&) {
  const std::string s = "dispersion";
  const double w = omega_of(T5);
  double k = solve_dispersion(w, h14);
  double res = std::abs(gravity * k * std::tanh(k * h14) - w * w) / (w * w);
  double L = 2.0 * M_PI / k;
  std::vector<Check> out;
  out.push_back(check_below(s, "residual g k tanh(kh) vs omega^2 (T=5, h=14)", 1, res, 1e-12));
  out.push_back(check_below(s, "wavelength vs L0 = 39 m", 1, std::abs(L - 39.0) / 39.0, 0.03,
                            "L = " + std::to_string(L) + " m"));
  // a sweep of depths from shallow to deep
  double worst = 0.0;
  for (double h : {0.1, 0.5, 2.0, 14.0, 100.0, 4000.0}) {
    double kk = solve_dispersion(w, h);
    worst = std::max(worst, std::abs(gravity * kk * std::tanh(kk * h) - w * w) / (w * w));
  }
  out.push_back(check_below(s, "residual over h in [0.1, 4000]", 1, worst, 1e-12));
  return out;
}

// -------------------------------------------------------------- bvp-analytic

double bvp_error(int epw) {
  const double w = omega_of(T5);
  WavenumberField f = modified_wavenumber_profile(BathymetryProfile::constant(h14), w);
  const double kap = f.khat1;
  const double lam = 2.0 * M_PI / kap;
  FemSystem fem(f, -lam / 2, lam / 2, 0.0, epw);
  TransformedSolution sol = fem.solve(0.0);
  double e = 0.0;
  for (size_t j = 0; j < sol.xs.size(); ++j) {
    cplx ex = cplx(0, 1) / (2.0 * kap) * std::exp(cplx(0, kap * std::abs(sol.xs[j])));
    e = std::max(e, std::abs(sol.psi[j] - ex) / std::abs(ex));
  }
  return e;
}

std::vector<Check> suite_bvp(const Logger& log) {
  const std::string s = "bvp-analytic";
  std::vector<Check> out;
  double e20 = bvp_error(20);
  out.push_back(check_below(s, "max relative nodal error at 20 elements/wavelength", 2, e20, 0.01,
                            "interval: one wavelength centred on the source"));
  double e[4] = {e20, bvp_error(40), bvp_error(80), bvp_error(160)};
  double lo = 1e300, hi = -1e300;
  for (int i = 0; i < 3; ++i) {
    double p = std::log2(e[i] / e[i + 1]);
    say(log, "  bvp: error %.3e -> %.3e, slope %.3f", e[i], e[i + 1], p);
    lo = std::min(lo, p);
    hi = std::max(hi, p);
  }
  out.push_back(check_within(s, "smallest convergence slope (20, 40, 80, 160 epw)", 2, lo, 1.8, 2.2));
  out.push_back(check_within(s, "largest convergence slope (20, 40, 80, 160 epw)", 2, hi, 1.8, 2.2));
  return out;
}

// ---------------------------------------------------- kernel-constant-depth

std::vector<Check> suite_kernel_constant(const Logger& log) {
  const std::string s = "kernel-constant-depth";
  const double w = omega_of(T5);
  WavenumberField f = modified_wavenumber_profile(BathymetryProfile::constant(h14), w);
  const double k = f.khat1;
  ContourParams p = ContourParams::make(f.khat_star);
  const double krmax = 0.8 * k * p.Y();
  SourceSweep sw(f, 0.0, 0.0, 0.0, p);
  double e_psi[2] = {0, 0}, e_d[2] = {0, 0}, e_cross[2] = {0, 0};
  int n = 0;
  for (int sec = 0; sec < 2; ++sec) {
    for (double kr = 0.5; kr <= krmax; kr *= 1.02) {
      double r = kr / k;
      double x = sec == 0 ? r : 0.0, y = sec == 0 ? 0.0 : r;
      KernelValue v = SpectralEvaluator(sw.spectrum_at(x), p)(y);
      HelmholtzFs ref = helmholtz_fs(k, r);
      cplx radial = sec == 0 ? v.psi_x : v.psi_y;
      cplx cross = sec == 0 ? v.psi_y : v.psi_x;
      e_psi[sec] = std::max(e_psi[sec], std::abs(v.psi - ref.psi) / std::abs(ref.psi));
      e_d[sec] = std::max(e_d[sec], std::abs(radial - ref.dpsi_dr) / std::abs(ref.dpsi_dr));
      e_cross[sec] = std::max(e_cross[sec], std::abs(cross) / std::abs(ref.dpsi_dr));
      ++n;
    }
  }
  say(log, "  kernel: %g samples, kr up to %.1f", n, krmax);
  std::string range = "kr in [0.5, " + std::to_string(krmax) + "]";
  std::vector<Check> out;
  out.push_back(check_below(s, "psi along y=0", 3, e_psi[0], 0.02, range));
  out.push_back(check_below(s, "psi_x along y=0", 3, e_d[0], 0.02, range));
  out.push_back(check_below(s, "psi_y along y=0 (relative to |dpsi/dr|)", 3, e_cross[0], 0.02, range));
  out.push_back(check_below(s, "psi along x=0", 3, e_psi[1], 0.02, range));
  out.push_back(check_below(s, "psi_y along x=0", 3, e_d[1], 0.02, range));
  out.push_back(check_below(s, "psi_x along x=0 (relative to |dpsi/dr|)", 3, e_cross[1], 0.02, range));
  return out;
}

// --------------------------------------------------------------- convergence

std::vector<Check> suite_convergence(const Logger& log) {
  const std::string s = "convergence";
  WavenumberField f = modified_wavenumber_profile(channel_profile(), omega_of(T5));
  ContourParams p = ContourParams::make(f.khat_star);
  ContourParams pM = ContourParams::make(f.khat_star, 6.0, 1.0, 8192);
  ContourParams pt = p;
  pt.tau = 0.5 * p.tau;
  GreenFunction g(f, p), gM(f, pM), gt(f, pt);

  std::mt19937 rng(12345);
  auto U = [&](double a, double b) { return a + (b - a) * (double(rng()) / 4294967296.0); };
  double norm = 0, dM = 0, dt = 0, dr = 0;
  for (int i = 0; i < 10; ++i) {
    double x = U(0, 70), x0 = U(0, 70), y = U(-70, 70);
    cplx a = g.evaluate(x0, {x}, {y})[0].psi;
    cplx b = gM.evaluate(x0, {x}, {y})[0].psi;
    cplx c = gt.evaluate(x0, {x}, {y})[0].psi;
    cplx r = g.evaluate(x, {x0}, {-y})[0].psi;
    norm = std::max(norm, std::abs(a));
    dM = std::max(dM, std::abs(a - b));
    dt = std::max(dt, std::abs(a - c));
    dr = std::max(dr, std::abs(a - r));
  }
  say(log, "  convergence: max|psi| %.3e", norm);
  std::string note = "10 pairs, mt19937(12345), x, x0 in [0,70], y in [-70,70]; max-norm relative";
  std::vector<Check> out;
  out.push_back(check_below(s, "M 4096 -> 8192", 4, dM / norm, 0.005, note));
  out.push_back(check_below(s, "tau halved", 4, dt / norm, 0.01, note));
  out.push_back(check_below(s, "reciprocity psi(x0->x, y) vs psi(x->x0, -y)", 4, dr / norm, 0.01, note));
  return out;
}

// ------------------------------------------------------------------ cylinder

std::vector<Check> suite_cylinder(int threads, const Logger& log) {
  const std::string s = "cylinder";
  const double R = 25.0;
  const int n = 320;
  WavenumberField f = modified_wavenumber_profile(BathymetryProfile::constant(h14), omega_of(T5));
  GreenFunction green(f, ContourParams::make(f.khat_star));
  BoundaryCondition rigid;
  BoundaryMesh mesh = circle_mesh({0, 0}, R, n, rigid, DomainKind::Exterior);
  IncidentWave iw{T5, 1.0, 0.0, 0.0};
  BathymetryProfile bathy = f.bathy;
  IncidentFn inc = [&](double x, double y) { return evaluate_incident(iw, bathy, x, y).phi; };
  auto t0 = std::chrono::steady_clock::now();
  BemSystem sys = assemble(mesh, green, {}, threads);
  say(log, "  cylinder: assembled %g nodes in %.1f s", n, secs(t0));
  BemSolution sol = solve(apply_bcs(sys, mesh, inc), sys, mesh);

  CylinderCase cc;
  cc.R = R;
  cc.h = h14;
  cc.T = T5;
  double eb = 0.0;
  for (int i = 0; i < n; ++i) {
    const Vec2& P = mesh.nodes[i];
    double ref = std::abs(maccamy_fuchs(cc, P.x, P.y));
    eb = std::max(eb, std::abs(std::abs(sol.phi[i]) - ref));
  }
  std::vector<Vec2> pts;
  for (double x = R + 1.0; x <= 125.0 + 1e-9; x += 2.5) {
    pts.push_back({x, 0});
    pts.push_back({-x, 0});
  }
  InteriorResult ir = interior_field(sol, mesh, green, pts, inc, {}, threads);
  double es = 0.0;
  for (size_t q = 0; q < pts.size(); ++q)
    es = std::max(es, std::abs(std::abs(ir.phi[q]) - std::abs(maccamy_fuchs(cc, pts[q].x, pts[q].y))));

  cplx kr_term = cplx(0, M_PI / 2) * f.khat1 * R * specfun::bessel_jy(1, f.khat1 * R).J[1] *
                 specfun::hankel1(0, f.khat1 * R);
  cplx exact = 1.0 + kr_term;
  Eigen::VectorXcd h1 = equipotential(sys);
  double eq = 0.0;
  for (int i = 0; i < n; ++i) eq = std::max(eq, std::abs(h1(i) - exact));

  std::vector<Check> out;
  out.push_back(check_below(s, "WAF along y=0 vs MacCamy-Fuchs (max abs deviation)", 5, es, 0.03,
                            std::to_string(pts.size()) + " points, |x| in [26, 125]"));
  out.push_back(check_below(s, "boundary |phi| vs MacCamy-Fuchs (max abs deviation)", 5, eb, 0.03));
  out.push_back(check_below(s, "equipotential H*1 vs exact circle value", 5, eq, 1e-3,
                            "reference 1 + (i pi/2) kR J1(kR) H0(kR)"));
  out.push_back(check_below(s, "linear solve residual", 5, sol.residual, 1e-10));
  return out;
}

// ------------------------------------------------------------------- channel

std::vector<Check> suite_channel(int threads, const Logger& log) {
  const std::string s = "channel";
  RunConfig c = channel_config();
  BathymetryProfile bathy = c.bathymetry.profile();
  WavenumberField f = modified_wavenumber_profile(bathy, omega_of(T5));
  GreenFunction green(f, ContourParams::make(f.khat_star));
  BoundaryMesh mesh = make_mesh(c, f);
  IncidentWave iw = c.wave.incident();
  IncidentFn inc = [&](double x, double y) { return evaluate_incident(iw, bathy, x, y).phi; };
  auto t0 = std::chrono::steady_clock::now();
  BemSystem sys = assemble(mesh, green, c.numerics.quadrature, threads);
  say(log, "  channel: assembled %g elements in %.1f s", mesh.num_elements(), secs(t0));
  BemSolution sol = solve(apply_bcs(sys, mesh, inc), sys, mesh);

  // normal incidence: shoaling coefficient only
  const double w = omega_of(T5);
  auto cg = [&](double x) {
    double h = bathy.depth(x);
    return group_velocity(solve_dispersion(w, h), h, w).cg;
  };
  const double cg0 = cg(0.0);
  auto ref = [&](double x) { return std::sqrt(cg0 / cg(x)); };

  double ew = 0.0;
  int nw = 0;
  for (int i = 0; i < mesh.num_nodes(); ++i) {
    const Vec2& P = mesh.nodes[i];
    if (P.x < 5.0 || P.x > 65.0 || std::abs(std::abs(P.y) - 5.0) > 1e-9) continue;
    ew = std::max(ew, std::abs(std::abs(sol.phi[i]) - ref(P.x)) / ref(P.x));
    ++nw;
  }
  std::vector<Vec2> pts;
  for (double x = 5.0; x <= 65.0 + 1e-9; x += 2.5) pts.push_back({x, 0.0});
  InteriorResult ir = interior_field(sol, mesh, green, pts, inc, c.numerics.quadrature, threads);
  double ec = 0.0;
  for (size_t q = 0; q < pts.size(); ++q)
    ec = std::max(ec, std::abs(std::abs(ir.phi[q]) - ref(pts[q].x)) / ref(pts[q].x));

  std::vector<Check> out;
  out.push_back(check_below(s, "WAF on the side walls vs shoaling reference, x in [5, 65]", 6, ew, 0.05,
                            std::to_string(nw) + " wall nodes, relative"));
  out.push_back(check_below(s, "WAF on the centreline vs shoaling reference, x in [5, 65]", 6, ec, 0.05,
                            std::to_string(pts.size()) + " points, relative"));
  return out;
}

// --------------------------------------------------------- variable-cylinder

std::vector<Check> suite_variable_cylinder(int threads, const Logger& log) {
  const std::string s = "variable-cylinder";
  const double xc = 35.0, R = 25.0;
  BathymetryProfile bathy = channel_profile();
  WavenumberField f = modified_wavenumber_profile(bathy, omega_of(T5));
  GreenFunction green(f, ContourParams::make(f.khat_star));
  const double L0 = 2.0 * M_PI / f.khat1;
  BoundaryCondition rigid;

  std::vector<Vec2> front, wake;
  for (double x = xc - R - 0.5; x >= xc - R - L0; x -= 1.0) front.push_back({x, 0.0});
  for (double x = xc + R + 0.5; x <= xc + R + L0; x += 1.0) wake.push_back({x, 0.0});
  std::vector<Vec2> pts = front;
  pts.insert(pts.end(), wake.begin(), wake.end());

  struct Run {
    std::vector<double> waf;
    int nonfinite = 0;
  };
  auto solve_case = [&](const BoundaryMesh& mesh, const BemSystem& sys, double angle) {
    WaveConfig wc;
    wc.period = T5;
    wc.angle = angle;
    IncidentWave iw = wc.incident();
    IncidentFn inc = [&](double x, double y) { return evaluate_incident(iw, bathy, x, y).phi; };
    BemSolution sol = solve(apply_bcs(sys, mesh, inc), sys, mesh);
    InteriorResult ir = interior_field(sol, mesh, green, pts, inc, {}, threads);
    Run r;
    for (const cplx& v : sol.phi) r.nonfinite += !std::isfinite(std::abs(v));
    for (const cplx& v : ir.phi) {
      r.nonfinite += !std::isfinite(std::abs(v));
      r.waf.push_back(std::abs(v));
    }
    return r;
  };

  auto t0 = std::chrono::steady_clock::now();
  BoundaryMesh m320 = circle_mesh({xc, 0}, R, 320, rigid, DomainKind::Exterior);
  BemSystem s320 = assemble(m320, green, {}, threads);
  say(log, "  variable cylinder: 320 elements assembled in %.1f s", secs(t0));
  Run a = solve_case(m320, s320, M_PI / 2);
  Run b = solve_case(m320, s320, M_PI / 6);
  t0 = std::chrono::steady_clock::now();
  BoundaryMesh m640 = circle_mesh({xc, 0}, R, 640, rigid, DomainKind::Exterior);
  BemSystem s640 = assemble(m640, green, {}, threads);
  say(log, "  variable cylinder: 640 elements assembled in %.1f s", secs(t0));
  Run a2 = solve_case(m640, s640, M_PI / 2);

  auto rel_diff = [&](const Run& u, const Run& v, size_t from, size_t to) {
    double d = 0.0, m = 0.0;
    for (size_t i = from; i < to; ++i) {
      d = std::max(d, std::abs(u.waf[i] - v.waf[i]));
      m = std::max({m, u.waf[i], v.waf[i]});
    }
    return d / m;
  };
  const size_t nf = front.size(), nt = pts.size();
  double d_front = rel_diff(a, b, 0, nf);
  double d_wake = rel_diff(a, b, nf, nt);
  double d_mesh = rel_diff(a, a2, 0, nt);
  double nonfinite = a.nonfinite + b.nonfinite + a2.nonfinite;

  char seg[160];
  std::snprintf(seg, sizeof seg, "front x in [%.1f, %.1f], wake x in [%.1f, %.1f], y=0", xc - R - L0,
                xc - R - 0.5, xc + R + 0.5, xc + R + L0);
  std::vector<Check> out;
  out.push_back(check_below(s, "non-finite values in boundary and section fields", 7, nonfinite, 0.5));
  out.push_back(check_below(s, "front WAF difference between angles pi/2 and pi/6", 7, d_front, 0.10,
                            std::string(seg) + "; max|dWAF| / max WAF"));
  out.push_back(check_above(s, "wake WAF difference between angles pi/2 and pi/6", 7, d_wake, 0.10,
                            std::string(seg) + "; max|dWAF| / max WAF"));
  out.push_back(check_below(s, "mesh doubling 320 -> 640 on the y=0 section", 7, d_mesh, 0.02,
                            "angle pi/2; max|dWAF| / max WAF"));
  return out;
}

// ---------------------------------------------------------------- quadrature

// Largest relative deviation of the assembled self-element G entries from an
// adaptive oracle of the raw integrand.
double quadrature_worst(const BoundaryMesh& mesh, const GreenFunction& green, int threads) {
  double worst = 0.0;
  BemSystem sys = assemble(mesh, green, {}, threads);
  const ContourParams& p = green.params();
  using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
  for (int i = 0; i < mesh.num_nodes(); ++i) {
    const Vec2 P = mesh.nodes[i];
    auto sw = green.sweep(P.x);
    for (int e : {mesh.elem_out[i], mesh.elem_in[i]}) {
      const Element& el = mesh.elements[e];
      const Vec2 Q = mesh.nodes[el.n0 == i ? el.n1 : el.n0];
      // t = 0 at the collocation node; graded pieces toward it, each refined adaptively
      std::map<double, cplx> memo;
      auto psi = [&](double t) {
        auto it = memo.find(t);
        if (it != memo.end()) return it->second;
        double x = P.x + t * (Q.x - P.x), y = P.y + t * (Q.y - P.y);
        cplx v = SpectralEvaluator(sw->spectrum_at(x), p)(y - P.y).psi;
        memo.emplace(t, v);
        return v;
      };
      cplx i_self = 0.0, i_other = 0.0;
      for (int j = 0; j < 45; ++j) {
        double a = std::ldexp(1.0, -j - 1), b = std::ldexp(1.0, -j);
        i_self += GK::integrate([&](double t) { return psi(t) * (1.0 - t); }, a, b, 4, 1e-9);
        i_other += GK::integrate([&](double t) { return psi(t) * t; }, a, b, 4, 1e-9);
      }
      i_self *= el.length;
      i_other *= el.length;
      int c_self = el.n0 == i ? 2 * e : 2 * e + 1;
      int c_other = el.n0 == i ? 2 * e + 1 : 2 * e;
      worst = std::max(worst, std::abs(sys.G(i, c_self) - i_self) / std::abs(i_self));
      worst = std::max(worst, std::abs(sys.G(i, c_other) - i_other) / std::abs(i_other));
    }
  }
  return worst;
}

std::vector<Check> suite_quadrature(int threads, const Logger& log) {
  const std::string s = "quadrature";
  const std::string oracle_note =
      "oracle: 45 dyadic pieces toward the node, adaptive Gauss-Kronrod (31 points) on each";
  std::vector<Check> out;
  {
    WavenumberField f = modified_wavenumber_profile(channel_profile(), omega_of(T5));
    GreenFunction green(f, ContourParams::make(f.khat_star));
    BoundaryCondition rigid;
    auto t0 = std::chrono::steady_clock::now();
    double worst =
        quadrature_worst(circle_mesh({35, 0}, 25, 64, rigid, DomainKind::Exterior), green, threads);
    say(log, "  quadrature: variable-depth cylinder done in %.1f s", secs(t0));
    out.push_back(check_below(s, "self-element G entries, variable-depth cylinder (64 elements)", 8, worst,
                              1e-4, oracle_note));
    RunConfig c = channel_config();
    c.geometry.loops[0].element_size = 5.0;
    t0 = std::chrono::steady_clock::now();
    worst = quadrature_worst(make_mesh(c, f), green, threads);
    say(log, "  quadrature: channel done in %.1f s", secs(t0));
    out.push_back(check_below(s, "self-element G entries, channel with corners (32 elements)", 8, worst,
                              1e-4, oracle_note));
  }
  {
    WavenumberField f = modified_wavenumber_profile(BathymetryProfile::constant(h14), omega_of(T5));
    GreenFunction green(f, ContourParams::make(f.khat_star));
    BoundaryCondition rigid;
    double worst =
        quadrature_worst(circle_mesh({0, 0}, 25, 64, rigid, DomainKind::Exterior), green, threads);
    out.push_back(check_below(s, "self-element G entries, constant-depth cylinder (64 elements)", 8, worst,
                              1e-4, oracle_note));
  }
  return out;
}

// ------------------------------------------------------------------ specfun

std::vector<Check> suite_specfun(const Logger&) {
  const std::string s = "specfun";
  std::vector<Check> out;

  double wr = 0.0;
  for (double x : {0.01, 0.3, 1.0, 2.5, 7.0, 19.5, 60.0, 300.0, 1200.0}) {
    auto b = specfun::bessel_jy(40, x);
    double ref = 2.0 / (M_PI * x);
    for (int m = 0; m < 40; ++m) {
      double w = b.J[m + 1] * b.Y[m] - b.J[m] * b.Y[m + 1];
      if (!std::isfinite(w)) continue;  // Y overflow at high order, small x
      wr = std::max(wr, std::abs(w - ref) / ref);
    }
  }
  out.push_back(check_below(s, "Wronskian J_{m+1} Y_m - J_m Y_{m+1} = 2/(pi x)", 9, wr, 1e-8,
                            "m < 40, x in [0.01, 1200]"));

  double ja = 0.0;
  for (double x : {0.5, 3.0, 12.0, 25.0}) {
    int mm = std::min(60, int(x) + 40);
    auto b = specfun::bessel_jy(mm, x);
    for (double th : {0.0, 0.4, 1.3, 2.2, M_PI}) {
      cplx sum = b.J[0];
      cplx im = 1.0;
      for (int m = 1; m <= mm; ++m) {
        im *= cplx(0, 1);
        sum += 2.0 * im * b.J[m] * std::cos(m * th);
      }
      ja = std::max(ja, std::abs(sum - std::exp(cplx(0, x * std::cos(th)))));
    }
  }
  out.push_back(check_below(s, "Jacobi-Anger expansion of exp(i x cos theta)", 9, ja, 1e-8));

  double seam = 0.0;
  auto rel = [](cplx a, cplx b) { return std::abs(a - b) / std::abs(b); };
  for (double t = -6.9; t <= 6.9; t += 0.3) {
    cplx z(4.0, t);
    seam = std::max(seam, rel(specfun::expint_e1_series(z), specfun::expint_e1_cfrac(z)));
  }
  for (double a = M_PI / 3 + 0.01; a <= 0.95 * M_PI; a += 0.05)
    for (double sg : {1.0, -1.0}) {
      cplx z = std::polar(8.0, sg * a);
      seam = std::max(seam, rel(specfun::expint_e1_series(z), specfun::expint_e1_cfrac(z)));
    }
  out.push_back(check_below(s, "E1 series vs continued fraction on the switching boundary", 9, seam, 1e-8,
                            "Re z = 4 with |z| <= 8, and |z| = 8 with Re z < 4"));
  return out;
}

}  // namespace

std::vector<std::string> suite_names() {
  return {"dispersion", "bvp-analytic", "kernel-constant-depth", "convergence", "cylinder",
          "channel",    "variable-cylinder", "quadrature", "specfun"};
}

std::vector<Check> run_suite(const std::string& name, int threads, const Logger& log) {
  if (name == "dispersion") return suite_dispersion(log);
  if (name == "bvp-analytic") return suite_bvp(log);
  if (name == "kernel-constant-depth") return suite_kernel_constant(log);
  if (name == "convergence") return suite_convergence(log);
  if (name == "cylinder") return suite_cylinder(threads, log);
  if (name == "channel") return suite_channel(threads, log);
  if (name == "variable-cylinder") return suite_variable_cylinder(threads, log);
  if (name == "quadrature") return suite_quadrature(threads, log);
  if (name == "specfun") return suite_specfun(log);
  throw std::invalid_argument("unknown validation suite '" + name + "'");
}

json report_json(const std::vector<Check>& checks) {
  json arr = json::array();
  bool all = true;
  for (const Check& c : checks) {
    json j = {{"suite", c.suite},   {"name", c.name},         {"criterion", c.criterion},
              {"relation", c.relation}, {"tolerance", c.tolerance}, {"measured", c.measured},
              {"pass", c.pass},     {"note", c.note}};
    if (c.relation == "in") j["upper"] = c.upper;
    arr.push_back(j);
    all = all && c.pass;
  }
  return {{"pass", all}, {"checks", arr}};
}

}  // namespace msbem
