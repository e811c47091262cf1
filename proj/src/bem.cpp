#include "msbem/bem.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <numeric>
#include <thread>

#include "msbem/errors.hpp"
#include "msbem/specfun.hpp"

namespace msbem {

namespace {

const cplx I(0.0, 1.0);

// Run body(g) for g in [0, n) on up to `threads` workers; first exception wins.
void parallel_for(int n, int threads, const std::function<void(int)>& body) {
  threads = std::max(1, std::min(threads, n));
  if (threads == 1) {
    for (int g = 0; g < n; ++g) body(g);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr err;
  std::mutex mu;
  auto work = [&] {
    for (;;) {
      int g = next++;
      if (g >= n) return;
      try {
        body(g);
      } catch (...) {
        std::lock_guard<std::mutex> lk(mu);
        if (!err) err = std::current_exception();
        next = n;
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

// Groups of indices whose abscissae agree to 1e-9 (relative, floor 1 m).
std::vector<std::vector<int>> group_by_x(const std::vector<double>& xs) {
  std::vector<int> idx(xs.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return xs[a] < xs[b]; });
  std::vector<std::vector<int>> groups;
  for (int i : idx) {
    if (!groups.empty()) {
      double x0 = xs[groups.back().front()];
      if (std::abs(xs[i] - x0) <= 1e-9 * std::max(1.0, std::abs(x0))) {
        groups.back().push_back(i);
        continue;
      }
    }
    groups.push_back({i});
  }
  return groups;
}

struct Rules {
  specfun::QuadRule far, near, logr;
  explicit Rules(const QuadratureOptions& o)
      : far(specfun::gauss_legendre(o.gauss_far)),
        near(specfun::gauss_legendre(o.gauss_near)),
        logr(specfun::log_gauss_rule(o.log_gauss)) {}
};

// One quadrature point on an element: position, weight (with Jacobian) and the
// two shape-function values.
struct QPoint {
  double x, y, w, n0, n1;
};

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
  double dx = b.x - a.x, dy = b.y - a.y;
  double t = ((p.x - a.x) * dx + (p.y - a.y) * dy) / (dx * dx + dy * dy);
  t = std::clamp(t, 0.0, 1.0);
  return std::hypot(p.x - a.x - t * dx, p.y - a.y - t * dy);
}

void push_rule(const specfun::QuadRule& r, Vec2 A, Vec2 B, double L, double t0, double t1,
               std::vector<QPoint>& out) {
  for (size_t g = 0; g < r.nodes.size(); ++g) {
    double t = t0 + 0.5 * (r.nodes[g] + 1.0) * (t1 - t0);
    double w = 0.5 * r.weights[g] * (t1 - t0) * L;
    out.push_back({A.x + t * (B.x - A.x), A.y + t * (B.y - A.y), w, 1.0 - t, t});
  }
}

// Regular and near-singular elements: bisect until the source is farther than
// the sub-element length.
void element_points(Vec2 P, Vec2 A, Vec2 B, double L, const Rules& R, const QuadratureOptions& o,
                    double t0, double t1, int depth, std::vector<QPoint>& out) {
  Vec2 a{A.x + t0 * (B.x - A.x), A.y + t0 * (B.y - A.y)};
  Vec2 b{A.x + t1 * (B.x - A.x), A.y + t1 * (B.y - A.y)};
  double len = (t1 - t0) * L;
  double d = point_segment_distance(P, a, b);
  if (d < len && depth < o.max_depth) {
    double tm = 0.5 * (t0 + t1);
    element_points(P, A, B, L, R, o, t0, tm, depth + 1, out);
    element_points(P, A, B, L, R, o, tm, t1, depth + 1, out);
    return;
  }
  push_rule(d >= o.far_factor * len ? R.far : R.near, A, B, L, t0, t1, out);
}

// Self element, graded geometrically toward the node at t = 0 (at_start) or t = 1.
void self_points(Vec2 A, Vec2 B, double L, bool at_start, const Rules& R,
                 const QuadratureOptions& o, std::vector<QPoint>& out) {
  double lo = 0.0, hi = std::ldexp(1.0, -o.self_levels);
  std::vector<std::pair<double, double>> pieces = {{lo, hi}};
  for (int k = o.self_levels; k >= 1; --k) pieces.push_back({std::ldexp(1.0, -k), std::ldexp(1.0, -k + 1)});
  for (auto [u0, u1] : pieces) {
    if (at_start)
      push_rule(R.near, A, B, L, u0, u1, out);
    else
      push_rule(R.near, A, B, L, 1.0 - u1, 1.0 - u0, out);
  }
}

// -(1/2pi)(ln(k r / 2) + gamma)
double log_kernel(double k, double r) { return -(std::log(0.5 * k * r) + specfun::euler_gamma) / (2.0 * M_PI); }

// int_0^L wp(k r) N dr for the node's own shape function (1 - r/L) and the other (r/L).
void log_part(double k, double L, const Rules& R, cplx& self, cplx& other) {
  double c0 = -(std::log(0.5 * k * L) + specfun::euler_gamma) / (2.0 * M_PI);
  double ls = 0.0, lo = 0.0;
  for (size_t g = 0; g < R.logr.nodes.size(); ++g) {
    double t = R.logr.nodes[g];
    ls += R.logr.weights[g] * (1.0 - t);
    lo += R.logr.weights[g] * t;
  }
  self = L * (0.5 * c0 + ls / (2.0 * M_PI));
  other = L * (0.5 * c0 + lo / (2.0 * M_PI));
}

}  // namespace

// ---------------------------------------------------------------------------

GreenFunction::GreenFunction(const WavenumberField& field, const ContourParams& params, int epw)
    : field_(field), params_(params), epw_(epw) {
  params_.check(field.khat_star);
}

KernelCacheHeader GreenFunction::cache_header() const {
  return {params_, field_.bathy.fingerprint(), field_.omega, epw_};
}

void GreenFunction::replay_from(const KernelCache* c) {
  if (c && !c->header().matches(cache_header()))
    throw ConfigError("kernel cache was built for a different kernel: " + c->header().describe() +
                      " vs " + cache_header().describe());
  replay_ = c;
}

std::shared_ptr<const SourceSweep> GreenFunction::sweep(double x0) const {
  double lo = field_.bathy.is_constant() ? x0 : field_.a();
  double hi = field_.bathy.is_constant() ? x0 : field_.b();
  ++stats_->sweeps;
  return std::make_shared<SourceSweep>(field_, lo, hi, x0, params_, epw_);
}

std::vector<KernelValue> GreenFunction::evaluate(double x0, const std::vector<double>& x,
                                                 const std::vector<double>& y) const {
  if (replay_) {
    const KernelBlock* b = replay_->find(x0, x, y);
    if (!b)
      throw NumericalError("kernel", "kernel cache does not cover source abscissa x0=" +
                                         std::to_string(x0) + " with the requested points");
    return b->values;
  }
  std::vector<KernelValue> out(x.size());
  auto sw = sweep(x0);
  for (const auto& grp : group_by_x(x)) {
    SpectralEvaluator ev(sw->spectrum_at(x[grp.front()]), params_);
    for (int k : grp) out[k] = ev(y[k]);
  }
  stats_->evals += long(x.size());
  if (record_) record_->add({x0, x, y, out});
  return out;
}

// ---------------------------------------------------------------------------

namespace {

struct Tagged {
  int node;  // collocation node (row)
  int elem;
  bool self;
  QPoint q;
};

std::vector<Tagged> collocation_points(const BoundaryMesh& mesh, int i, const Rules& R,
                                       const QuadratureOptions& o) {
  std::vector<Tagged> pts;
  std::vector<QPoint> buf;
  Vec2 P = mesh.nodes[i];
  for (int e = 0; e < mesh.num_elements(); ++e) {
    const Element& el = mesh.elements[e];
    buf.clear();
    bool self = el.n0 == i || el.n1 == i;
    if (self)
      self_points(mesh.nodes[el.n0], mesh.nodes[el.n1], el.length, el.n0 == i, R, o, buf);
    else
      element_points(P, mesh.nodes[el.n0], mesh.nodes[el.n1], el.length, R, o, 0.0, 1.0, 0, buf);
    for (const QPoint& q : buf) pts.push_back({i, e, self, q});
  }
  return pts;
}

}  // namespace

SelfIntegral self_element_integral(const BoundaryMesh& mesh, int node, int elem,
                                   const GreenFunction& green, const QuadratureOptions& opt) {
  const Element& el = mesh.elements[elem];
  if (el.n0 != node && el.n1 != node)
    throw std::invalid_argument("self_element_integral: node not on element");
  Rules R(opt);
  std::vector<QPoint> buf;
  self_points(mesh.nodes[el.n0], mesh.nodes[el.n1], el.length, el.n0 == node, R, opt, buf);
  Vec2 P = mesh.nodes[node];
  std::vector<double> xs, ys;
  for (const QPoint& q : buf) {
    xs.push_back(q.x);
    ys.push_back(q.y - P.y);
  }
  auto vals = green.evaluate(P.x, xs, ys);
  double kh = green.field().khat_at(P.x);
  cplx gs = 0.0, go = 0.0;
  for (size_t k = 0; k < buf.size(); ++k) {
    const QPoint& q = buf[k];
    double r = std::hypot(q.x - P.x, q.y - P.y);
    cplx g = vals[k].psi - log_kernel(kh, r);
    double ns = el.n0 == node ? q.n0 : q.n1;
    gs += q.w * ns * g;
    go += q.w * (1.0 - ns) * g;
  }
  cplx ls, lo;
  log_part(kh, el.length, R, ls, lo);
  return {gs + ls, go + lo};
}

BemSystem assemble(const BoundaryMesh& mesh, const GreenFunction& green,
                   const QuadratureOptions& opt, int threads) {
  const int n = mesh.num_nodes(), ne = mesh.num_elements();
  if (n == 0) throw ConfigError("bem: empty mesh");
  const WavenumberField& field = green.field();
  BemSystem sys;
  sys.H = Eigen::MatrixXcd::Zero(n, n);
  sys.G = Eigen::MatrixXcd::Zero(n, 2 * ne);
  for (int i = 0; i < n; ++i) {
    double x = mesh.nodes[i].x;
    sys.s.push_back(field.s_at(x));
    sys.dsdx.push_back(field.ds_at(x));
    sys.khat.push_back(field.khat_at(x));
  }
  Rules R(opt);
  std::vector<double> node_x(n);
  for (int i = 0; i < n; ++i) node_x[i] = mesh.nodes[i].x;
  auto groups = group_by_x(node_x);

  parallel_for(int(groups.size()), threads, [&](int gi) {
    const auto& grp = groups[gi];
    double x0 = mesh.nodes[grp.front()].x;
    std::vector<Tagged> pts;
    for (int i : grp) {
      auto p = collocation_points(mesh, i, R, opt);
      pts.insert(pts.end(), p.begin(), p.end());
    }
    std::vector<double> xs(pts.size()), ys(pts.size());
    for (size_t k = 0; k < pts.size(); ++k) {
      xs[k] = pts[k].q.x;
      ys[k] = pts[k].q.y - mesh.nodes[pts[k].node].y;
    }
    auto vals = green.evaluate(x0, xs, ys);
    for (size_t k = 0; k < pts.size(); ++k) {
      const Tagged& t = pts[k];
      const Element& el = mesh.elements[t.elem];
      const KernelValue& v = vals[k];
      cplx dn = v.psi_x * el.normal.x + v.psi_y * el.normal.y;
      cplx g = v.psi;
      if (t.self) {
        const Vec2& P = mesh.nodes[t.node];
        g -= log_kernel(sys.khat[t.node], std::hypot(t.q.x - P.x, t.q.y - P.y));
      }
      sys.H(t.node, el.n0) += t.q.w * t.q.n0 * dn;
      sys.H(t.node, el.n1) += t.q.w * t.q.n1 * dn;
      sys.G(t.node, 2 * t.elem) += t.q.w * t.q.n0 * g;
      sys.G(t.node, 2 * t.elem + 1) += t.q.w * t.q.n1 * g;
    }
    for (int i : grp) {
      for (int e : {mesh.elem_in[i], mesh.elem_out[i]}) {
        const Element& el = mesh.elements[e];
        cplx ls, lo;
        log_part(sys.khat[i], el.length, R, ls, lo);
        bool start = el.n0 == i;
        sys.G(i, 2 * e + (start ? 0 : 1)) += ls;
        sys.G(i, 2 * e + (start ? 1 : 0)) += lo;
      }
      sys.H(i, i) += mesh.C[i];
    }
  });
  return sys;
}

// ---------------------------------------------------------------------------

LinearSystem apply_bcs(const BemSystem& sys, const BoundaryMesh& mesh, const IncidentFn& incident) {
  const int n = mesh.num_nodes(), ne = mesh.num_elements();
  LinearSystem ls;
  ls.phi_c.assign(n, 0.0);
  ls.phi_z.assign(n, 0.0);
  ls.q_c.assign(2 * ne, 0.0);
  ls.q_z.assign(2 * ne, 0.0);
  ls.q_node.assign(2 * ne, 0);
  auto inc = [&](int i) -> cplx {
    return incident ? incident(mesh.nodes[i].x, mesh.nodes[i].y) : cplx(0.0);
  };

  for (int i = 0; i < n; ++i) {
    const BoundaryCondition* sides[2] = {&mesh.elements[mesh.elem_in[i]].bc,
                                         &mesh.elements[mesh.elem_out[i]].bc};
    int nd = 0;
    cplx val = 0.0;
    for (auto* b : sides) {
      if (b->kind != BcKind::Dirichlet) continue;
      ++nd;
      if (b->incident && !incident)
        throw ConfigError("bem: incident Dirichlet value without an incident wave");
      val += b->incident ? inc(i) : b->value;
    }
    if (nd > 0) {
      ls.phi_c[i] = sys.s[i] * val / double(nd);
    } else {
      ls.phi_z[i] = 1.0;
    }
  }
  for (int e = 0; e < ne; ++e) {
    const Element& el = mesh.elements[e];
    for (int side = 0; side < 2; ++side) {
      int col = 2 * e + side;
      int i = side == 0 ? el.n0 : el.n1;
      ls.q_node[col] = i;
      double sn = el.normal.x * sys.dsdx[i];  // ds/dn, depth varies along x only
      double ratio = sn / sys.s[i];
      switch (el.bc.kind) {
        case BcKind::Dirichlet:
          ls.q_z[col] = 1.0;
          break;
        case BcKind::Neumann:
          ls.q_c[col] = sys.s[i] * el.bc.value + ratio * ls.phi_c[i];
          ls.q_z[col] = ratio * ls.phi_z[i];
          break;
        case BcKind::Rigid:
          ls.q_c[col] = ratio * ls.phi_c[i];
          ls.q_z[col] = ratio * ls.phi_z[i];
          break;
        case BcKind::Absorbing:
          ls.q_c[col] = I * sys.khat[i] * ls.phi_c[i];
          ls.q_z[col] = I * sys.khat[i] * ls.phi_z[i];
          break;
      }
    }
  }
  // sanity: a node with a Dirichlet side must own a flux unknown and not a potential one
  for (int i = 0; i < n; ++i) {
    bool any = false;
    for (int col : {2 * mesh.elem_in[i] + 1, 2 * mesh.elem_out[i]}) any |= ls.q_z[col] != cplx(0.0) && ls.phi_z[i] == cplx(0.0);
    if (ls.phi_z[i] == cplx(0.0) && !any)
      throw NumericalError("bem", "node " + std::to_string(i) + " has no unknown");
  }

  ls.A = Eigen::MatrixXcd::Zero(n, n);
  ls.f = Eigen::VectorXcd::Zero(n);
  Eigen::VectorXcd pc(n), qc(2 * ne);
  for (int i = 0; i < n; ++i) pc(i) = ls.phi_c[i];
  for (int c = 0; c < 2 * ne; ++c) qc(c) = ls.q_c[c];
  if (mesh.domain == DomainKind::Exterior)
    for (int i = 0; i < n; ++i) ls.f(i) = sys.s[i] * inc(i);
  ls.f += -sys.H * pc + sys.G * qc;
  for (int j = 0; j < n; ++j)
    if (ls.phi_z[j] != cplx(0.0)) ls.A.col(j) += sys.H.col(j) * ls.phi_z[j];
  for (int c = 0; c < 2 * ne; ++c)
    if (ls.q_z[c] != cplx(0.0)) ls.A.col(ls.q_node[c]) -= sys.G.col(c) * ls.q_z[c];
  return ls;
}

BemSolution solve(const LinearSystem& ls, const BemSystem& sys, const BoundaryMesh& mesh) {
  const int n = int(ls.A.rows());
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(ls.A);
  BemSolution s;
  s.rcond = lu.rcond();
  if (!(s.rcond > 1e-14))
    throw NumericalError("bem", "singular boundary system (reciprocal condition estimate " +
                                    std::to_string(s.rcond) + "); the frequency may be resonant");
  double fn = ls.f.norm();
  if (fn == 0.0) fn = 1.0;
  Eigen::VectorXcd z = lu.solve(ls.f);
  double res = (ls.A * z - ls.f).norm() / fn;
  s.residual_history.push_back(res);
  for (int it = 0; it < 3 && res > 1e-14; ++it) {
    Eigen::VectorXcd dz = lu.solve(ls.f - ls.A * z);
    Eigen::VectorXcd z2 = z + dz;
    double r2 = (ls.A * z2 - ls.f).norm() / fn;
    if (!(r2 < res)) break;
    z = z2;
    res = r2;
    s.residual_history.push_back(res);
  }
  s.residual = res;
  if (!(res < 1e-10))
    throw NumericalError("bem", "residual " + std::to_string(res) + " above 1e-10 (rcond " +
                                    std::to_string(s.rcond) + ")");

  s.phi_hat.resize(n);
  s.phi.resize(n);
  for (int i = 0; i < n; ++i) {
    s.phi_hat[i] = ls.phi_c[i] + ls.phi_z[i] * z(i);
    s.phi[i] = s.phi_hat[i] / sys.s[i];
  }
  const int nc = int(ls.q_c.size());
  s.q_hat.resize(nc);
  s.q.resize(nc);
  for (int c = 0; c < nc; ++c) {
    int i = ls.q_node[c];
    s.q_hat[c] = ls.q_c[c] + ls.q_z[c] * z(i);
    const Element& el = mesh.elements[c / 2];
    double sn = el.normal.x * sys.dsdx[i];
    s.q[c] = (s.q_hat[c] - s.phi[i] * sn) / sys.s[i];
  }
  s.q_node.assign(n, 0.0);
  for (int i = 0; i < n; ++i)
    s.q_node[i] = 0.5 * (s.q[2 * mesh.elem_in[i] + 1] + s.q[2 * mesh.elem_out[i]]);
  return s;
}

// ---------------------------------------------------------------------------

InteriorResult interior_field(const BemSolution& sol, const BoundaryMesh& mesh,
                              const GreenFunction& green, const std::vector<Vec2>& pts,
                              const IncidentFn& incident, const QuadratureOptions& opt,
                              int threads) {
  const int np = int(pts.size());
  InteriorResult res;
  res.phi.assign(np, cplx(NAN, NAN));
  res.valid.assign(np, 0);
  double lmin = 1e300;
  for (const Element& e : mesh.elements) lmin = std::min(lmin, e.length);
  std::vector<int> live;
  for (int p = 0; p < np; ++p) {
    if (!mesh.in_fluid(pts[p])) continue;
    res.valid[p] = 1;
    if (mesh.distance(pts[p]) < 0.1 * lmin) ++res.near_boundary;
    live.push_back(p);
  }
  std::vector<double> lx;
  for (int p : live) lx.push_back(pts[p].x);
  auto groups = group_by_x(lx);
  Rules R(opt);
  const bool scatter = mesh.domain == DomainKind::Exterior;

  parallel_for(int(groups.size()), threads, [&](int gi) {
    const auto& grp = groups[gi];
    double x0 = pts[live[grp.front()]].x;
    struct Tag {
      int p, e;
      QPoint q;
    };
    std::vector<Tag> tags;
    std::vector<QPoint> buf;
    for (int gk : grp) {
      int p = live[gk];
      for (int e = 0; e < mesh.num_elements(); ++e) {
        const Element& el = mesh.elements[e];
        buf.clear();
        element_points(pts[p], mesh.nodes[el.n0], mesh.nodes[el.n1], el.length, R, opt, 0.0, 1.0, 0,
                       buf);
        for (const QPoint& q : buf) tags.push_back({p, e, q});
      }
    }
    std::vector<double> xs(tags.size()), ys(tags.size());
    for (size_t k = 0; k < tags.size(); ++k) {
      xs[k] = tags[k].q.x;
      ys[k] = tags[k].q.y - pts[tags[k].p].y;
    }
    auto vals = green.evaluate(x0, xs, ys);
    std::map<int, cplx> acc;
    for (int gk : grp) acc[live[gk]] = 0.0;
    for (size_t k = 0; k < tags.size(); ++k) {
      const Tag& t = tags[k];
      const Element& el = mesh.elements[t.e];
      const KernelValue& v = vals[k];
      cplx dn = v.psi_x * el.normal.x + v.psi_y * el.normal.y;
      cplx qh = t.q.n0 * sol.q_hat[2 * t.e] + t.q.n1 * sol.q_hat[2 * t.e + 1];
      cplx ph = t.q.n0 * sol.phi_hat[el.n0] + t.q.n1 * sol.phi_hat[el.n1];
      acc[t.p] += t.q.w * (v.psi * qh - dn * ph);
    }
    for (auto& [p, val] : acc) {
      double s = green.field().s_at(pts[p].x);
      cplx ph = val;
      if (scatter && incident) ph += s * incident(pts[p].x, pts[p].y);
      res.phi[p] = ph / s;
    }
  });
  return res;
}

std::vector<double> waf(const std::vector<cplx>& phi, double phi0) {
  if (!(phi0 > 0.0)) throw std::invalid_argument("waf: reference amplitude must be positive");
  std::vector<double> w(phi.size());
  for (size_t i = 0; i < phi.size(); ++i) w[i] = std::abs(phi[i]) / phi0;
  return w;
}

Eigen::VectorXcd equipotential(const BemSystem& sys) {
  return sys.H * Eigen::VectorXcd::Ones(sys.H.cols());
}

}  // namespace msbem
