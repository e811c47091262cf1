#include "msbem/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "msbem/errors.hpp"

namespace msbem {

std::string to_string(BcKind k) {
  switch (k) {
    case BcKind::Dirichlet:
      return "dirichlet";
    case BcKind::Neumann:
      return "neumann";
    case BcKind::Absorbing:
      return "absorbing";
    case BcKind::Rigid:
      return "rigid";
  }
  return "?";
}

namespace {

double signed_area(const std::vector<Vec2>& v) {
  double a = 0.0;
  for (size_t i = 0; i < v.size(); ++i) {
    const Vec2& p = v[i];
    const Vec2& q = v[(i + 1) % v.size()];
    a += p.x * q.y - q.x * p.y;
  }
  return 0.5 * a;
}

// Elements and corner coefficients for one loop given its node positions.
void add_loop(BoundaryMesh& m, const std::vector<Vec2>& pts, const std::vector<BoundaryCondition>& bc,
              bool fluid_inside) {
  const int n = int(pts.size());
  if (n < 3) throw ConfigError("mesh: a loop needs at least three nodes");
  double area = signed_area(pts);
  if (std::abs(area) == 0.0) throw ConfigError("mesh: degenerate loop (zero area)");
  bool ccw = area > 0.0;
  // right-hand normal (dy, -dx) points out of a ccw loop
  double flip = (ccw == fluid_inside) ? 1.0 : -1.0;
  int base = m.num_nodes();
  std::vector<int> ids;
  for (int i = 0; i < n; ++i) {
    m.nodes.push_back(pts[i]);
    ids.push_back(base + i);
  }
  m.loops.push_back(ids);
  int ebase = m.num_elements();
  m.elem_in.resize(base + n);
  m.elem_out.resize(base + n);
  m.C.resize(base + n);
  for (int i = 0; i < n; ++i) {
    Element e;
    e.n0 = base + i;
    e.n1 = base + (i + 1) % n;
    double dx = pts[(i + 1) % n].x - pts[i].x, dy = pts[(i + 1) % n].y - pts[i].y;
    e.length = std::hypot(dx, dy);
    if (!(e.length > 0.0)) throw ConfigError("mesh: repeated vertex");
    e.normal = {flip * dy / e.length, -flip * dx / e.length};
    e.bc = bc[i];
    m.elements.push_back(e);
    m.elem_out[base + i] = ebase + i;
    m.elem_in[base + (i + 1) % n] = ebase + i;
  }
  double s = (ccw == fluid_inside) ? 1.0 : -1.0;
  for (int i = 0; i < n; ++i) {
    const Element& a = m.elements[m.elem_in[base + i]];
    const Element& b = m.elements[m.elem_out[base + i]];
    Vec2 t1{m.nodes[a.n1].x - m.nodes[a.n0].x, m.nodes[a.n1].y - m.nodes[a.n0].y};
    Vec2 t2{m.nodes[b.n1].x - m.nodes[b.n0].x, m.nodes[b.n1].y - m.nodes[b.n0].y};
    double turn = std::atan2(t1.x * t2.y - t1.y * t2.x, t1.x * t2.x + t1.y * t2.y);
    double theta = M_PI - s * turn;
    m.C[base + i] = theta / (2.0 * M_PI);
    if (!(m.C[base + i] > 0.0 && m.C[base + i] < 1.0))
      throw ConfigError("mesh: cusp at node " + std::to_string(base + i));
  }
}

double seg_dist(Vec2 p, Vec2 a, Vec2 b) {
  double dx = b.x - a.x, dy = b.y - a.y;
  double t = ((p.x - a.x) * dx + (p.y - a.y) * dy) / (dx * dx + dy * dy);
  t = std::clamp(t, 0.0, 1.0);
  return std::hypot(p.x - a.x - t * dx, p.y - a.y - t * dy);
}

}  // namespace

double BoundaryMesh::max_length_ratio(const std::function<double(double)>& wavelength) const {
  double r = 0.0;
  for (const Element& e : elements) {
    double xm = 0.5 * (nodes[e.n0].x + nodes[e.n1].x);
    double lam = std::min({wavelength(nodes[e.n0].x), wavelength(xm), wavelength(nodes[e.n1].x)});
    r = std::max(r, e.length / lam);
  }
  return r;
}

bool BoundaryMesh::in_fluid(Vec2 p) const {
  int inside_count = 0;
  for (size_t l = 0; l < loops.size(); ++l) {
    const auto& ids = loops[l];
    bool in = false;
    for (size_t i = 0, j = ids.size() - 1; i < ids.size(); j = i++) {
      const Vec2& a = nodes[ids[i]];
      const Vec2& b = nodes[ids[j]];
      if ((a.y > p.y) != (b.y > p.y) && p.x < (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x)
        in = !in;
    }
    if (domain == DomainKind::Interior && l == 0) {
      if (!in) return false;
    } else if (in) {
      ++inside_count;
    }
  }
  return inside_count == 0;
}

double BoundaryMesh::distance(Vec2 p) const {
  double d = std::numeric_limits<double>::infinity();
  for (const Element& e : elements) d = std::min(d, seg_dist(p, nodes[e.n0], nodes[e.n1]));
  return d;
}

BoundaryMesh build_mesh(const std::vector<Loop>& loops, DomainKind domain,
                        const std::function<double(double)>& wavelength, double epw) {
  if (loops.empty()) throw ConfigError("mesh: empty geometry");
  if (!(epw > 0.0)) throw ConfigError("mesh: elements per wavelength must be positive");
  BoundaryMesh m;
  m.domain = domain;
  for (size_t l = 0; l < loops.size(); ++l) {
    const Loop& lp = loops[l];
    const int nv = int(lp.vertices.size());
    if (nv < 2) throw ConfigError("mesh: loop with fewer than two vertices");
    if (int(lp.bc.size()) != nv)
      throw ConfigError("mesh: loop needs one boundary condition per segment");
    std::vector<Vec2> pts;
    std::vector<BoundaryCondition> bcs;
    for (int i = 0; i < nv; ++i) {
      Vec2 a = lp.vertices[i], b = lp.vertices[(i + 1) % nv];
      double len = std::hypot(b.x - a.x, b.y - a.y);
      if (!(len > 0.0)) throw ConfigError("mesh: repeated vertex in loop");
      double size = lp.element_size;
      if (!(size > 0.0)) {
        double lam = std::numeric_limits<double>::infinity();
        for (int s = 0; s <= 50; ++s) lam = std::min(lam, wavelength(a.x + (b.x - a.x) * s / 50.0));
        size = lam / epw;
      }
      int ne = std::max(1, int(std::ceil(len / size - 1e-9)));
      for (int k = 0; k < ne; ++k) {
        double t = double(k) / ne;
        pts.push_back({a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)});
        bcs.push_back(lp.bc[i]);
      }
    }
    bool fluid_inside = domain == DomainKind::Interior && l == 0;
    add_loop(m, pts, bcs, fluid_inside);
  }
  return m;
}

Loop circle_loop(Vec2 c, double R, int n, const BoundaryCondition& bc) {
  if (n < 8) throw ConfigError("mesh: circle needs at least 8 elements");
  if (!(R > 0.0)) throw ConfigError("mesh: circle radius must be positive");
  std::vector<Vec2> pts(n);
  for (int i = 0; i <= n / 2; ++i) {
    double t = 2.0 * M_PI * i / n;
    pts[i] = {R * std::cos(t), R * std::sin(t)};
  }
  pts[0].y = 0.0;
  if (n % 2 == 0) pts[n / 2].y = 0.0;
  for (int i = n / 2 + 1; i < n; ++i) pts[i] = {pts[n - i].x, -pts[n - i].y};
  for (auto& p : pts) p = {c.x + p.x, c.y + p.y};
  Loop lp;
  lp.vertices = std::move(pts);
  lp.bc.assign(n, bc);
  lp.element_size = std::numeric_limits<double>::infinity();  // one element per chord
  return lp;
}

BoundaryMesh circle_mesh(Vec2 c, double R, int n, const BoundaryCondition& bc, DomainKind domain) {
  return build_mesh({circle_loop(c, R, n, bc)}, domain, [](double) { return 1.0; });
}

}  // namespace msbem
