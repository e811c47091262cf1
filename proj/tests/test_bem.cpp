#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "msbem/bem.hpp"
#include "msbem/config.hpp"
#include "msbem/errors.hpp"
#include "msbem/incident.hpp"
#include "msbem/kernel_io.hpp"
#include "msbem/mesh.hpp"
#include "msbem/scenario.hpp"
#include "msbem/specfun.hpp"

using namespace msbem;

namespace {

const double w5 = 2.0 * M_PI / 5.0;

WavenumberField flat() { return modified_wavenumber_profile(BathymetryProfile::constant(14.0), w5); }

Loop square(double side, BoundaryCondition bc, double es) {
  Loop lp;
  lp.vertices = {{0, 0}, {side, 0}, {side, side}, {0, side}};
  lp.bc.assign(4, bc);
  lp.element_size = es;
  return lp;
}

}  // namespace

TEST_CASE("circle mesh geometry") {
  BoundaryCondition rigid;
  const int n = 24;
  auto m = circle_mesh({5, -2}, 3.0, n, rigid, DomainKind::Exterior);
  REQUIRE(m.num_nodes() == n);
  for (int i = 0; i < n; ++i) {
    CHECK(m.C[i] == doctest::Approx(0.5 + 1.0 / n));
    const Element& e = m.elements[i];
    Vec2 mid{0.5 * (m.nodes[e.n0].x + m.nodes[e.n1].x), 0.5 * (m.nodes[e.n0].y + m.nodes[e.n1].y)};
    // normal points out of the fluid, toward the centre
    CHECK((mid.x - 5) * e.normal.x + (mid.y + 2) * e.normal.y < 0.0);
  }
  for (int i = 1; i < n; ++i) CHECK(m.nodes[i].x == m.nodes[n - i].x);
  CHECK(m.in_fluid({20, 0}));
  CHECK_FALSE(m.in_fluid({5, -2}));
  CHECK(m.distance({5, 4}) == doctest::Approx(3.0).epsilon(0.02));
  auto mi = circle_mesh({0, 0}, 3.0, n, rigid, DomainKind::Interior);
  CHECK(mi.C[0] == doctest::Approx(0.5 - 1.0 / n));
}

TEST_CASE("polygon mesh: corners and element sizes") {
  BoundaryCondition rigid;
  auto m = build_mesh({square(10, rigid, 1.0)}, DomainKind::Interior, [](double) { return 1.0; });
  CHECK(m.num_elements() == 40);
  CHECK(m.C[0] == doctest::Approx(0.25));
  CHECK(m.C[1] == doctest::Approx(0.5));
  CHECK(m.in_fluid({5, 5}));
  CHECK_FALSE(m.in_fluid({11, 5}));
  auto w = build_mesh({square(10, rigid, 0.0)}, DomainKind::Interior, [](double) { return 20.0; }, 10.0);
  CHECK(w.num_elements() == 20);
  CHECK(w.max_length_ratio([](double) { return 20.0; }) == doctest::Approx(0.1));
  CHECK_THROWS_AS(build_mesh({}, DomainKind::Interior, [](double) { return 1.0; }), ConfigError);
}

TEST_CASE("interior Dirichlet problem reproduces a plane wave") {
  auto f = flat();
  GreenFunction g(f, ContourParams::make(f.khat_star));
  BoundaryCondition d;
  d.kind = BcKind::Dirichlet;
  d.incident = true;
  auto m = build_mesh({square(13, d, 0.65)}, DomainKind::Interior, [](double) { return 1.0; });
  const double k = f.khat1;
  IncidentFn pw = [&](double x, double y) { return std::exp(cplx(0, k * (0.8 * x + 0.6 * y))); };
  BemSystem sys = assemble(m, g);
  BemSolution sol = solve(apply_bcs(sys, m, pw), sys, m);
  CHECK(sol.residual < 1e-10);
  // normal derivative of the plane wave on the bottom edge (n = -y)
  for (int i = 0; i < m.num_nodes(); ++i) {
    const Vec2& p = m.nodes[i];
    if (p.y != 0.0 || p.x < 2 || p.x > 11) continue;
    cplx dn = -cplx(0, 0.6 * k) * pw(p.x, p.y);
    CHECK(std::abs(sol.q_node[i] - dn) < 0.03 * k);
  }
  auto ir = interior_field(sol, m, g, {{6.5, 6.5}, {3, 9}, {20, 0}}, pw);
  CHECK(std::abs(ir.phi[0] - pw(6.5, 6.5)) < 0.01);
  CHECK(std::abs(ir.phi[1] - pw(3, 9)) < 0.01);
  CHECK_FALSE(ir.valid[2]);
  CHECK(std::isnan(ir.phi[2].real()));
}

TEST_CASE("interior Neumann problem reproduces a plane wave") {
  auto f = flat();
  GreenFunction g(f, ContourParams::make(f.khat_star));
  const double k = f.khat1;
  auto pw = [&](double x, double y) { return std::exp(cplx(0, k * x)); };
  // dphi/dn on each side of the square
  BoundaryCondition bottom, right, top, left;
  bottom.kind = top.kind = left.kind = right.kind = BcKind::Neumann;
  Loop lp = square(13, bottom, 0.65);
  // x-dependent flux only on the vertical sides, so split them by value
  right.value = cplx(0, k) * pw(13, 0);
  left.value = -cplx(0, k) * pw(0, 0);
  lp.bc = {bottom, right, top, left};
  auto m = build_mesh({lp}, DomainKind::Interior, [](double) { return 1.0; });
  BemSystem sys = assemble(m, g);
  BemSolution sol = solve(apply_bcs(sys, m, {}), sys, m);
  double e = 0.0;
  for (int i = 0; i < m.num_nodes(); ++i) e = std::max(e, std::abs(sol.phi[i] - pw(m.nodes[i].x, 0)));
  CHECK(e < 0.03);
}

TEST_CASE("rigid cylinder: wall flux and equipotential identity") {
  auto f = flat();
  GreenFunction g(f, ContourParams::make(f.khat_star));
  BoundaryCondition rigid;
  const double R = 6.0;
  auto m = circle_mesh({0, 0}, R, 48, rigid, DomainKind::Exterior);
  BemSystem sys = assemble(m, g);
  const double k = f.khat1;
  cplx ex = 1.0 + cplx(0, M_PI / 2) * k * R * specfun::bessel_jy(1, k * R).J[1] * specfun::hankel1(0, k * R);
  auto h1 = equipotential(sys);
  for (int i = 0; i < m.num_nodes(); ++i) CHECK(std::abs(h1(i) - ex) < 5e-3);
  IncidentFn inc = [&](double x, double) { return std::exp(cplx(0, k * x)); };
  BemSolution sol = solve(apply_bcs(sys, m, inc), sys, m);
  for (const cplx& q : sol.q_node) CHECK(std::abs(q) < 1e-12);
  // symmetric about y = 0
  for (int i = 1; i < 24; ++i) CHECK(std::abs(sol.phi[i] - sol.phi[48 - i]) < 1e-8);
}

TEST_CASE("self-element integral matches the assembled matrix") {
  auto f = modified_wavenumber_profile(BathymetryProfile::cubic(0, 70, {14.0, 0.0, -8.2653e-3, 7.8717e-5}), w5);
  GreenFunction g(f, ContourParams::make(f.khat_star));
  BoundaryCondition rigid;
  auto m = circle_mesh({35, 0}, 10.0, 16, rigid, DomainKind::Exterior);
  BemSystem sys = assemble(m, g);
  for (int i : {0, 5}) {
    int e = m.elem_out[i];
    SelfIntegral s = self_element_integral(m, i, e, g);
    CHECK(std::abs(s.g_self - sys.G(i, 2 * e)) < 1e-12 * std::abs(s.g_self));
    CHECK(std::abs(s.g_other - sys.G(i, 2 * e + 1)) < 1e-12 * std::abs(s.g_other));
  }
  CHECK_THROWS(self_element_integral(m, 0, 7, g));
}

TEST_CASE("kernel cache: recorded values replay bit for bit") {
  auto f = flat();
  auto p = ContourParams::make(f.khat_star);
  GreenFunction g(f, p);
  KernelCache cache(g.cache_header());
  g.record_into(&cache);
  auto a = g.evaluate(1.5, {2.0, 7.0}, {0.5, -3.0});
  auto path = std::filesystem::temp_directory_path() / "msbem_unit_cache.bin";
  cache.save(path.string());
  KernelCache back = KernelCache::load(path.string());
  CHECK(back.size() == 1);
  GreenFunction h(f, p);
  h.replay_from(&back);
  auto b = h.evaluate(1.5, {2.0, 7.0}, {0.5, -3.0});
  CHECK(a[1].psi == b[1].psi);
  CHECK(h.sweeps() == 0);
  CHECK_THROWS_AS(h.evaluate(1.5, {2.0}, {0.5}), NumericalError);
  GreenFunction other(modified_wavenumber_profile(BathymetryProfile::constant(10.0), w5), p);
  CHECK_THROWS_AS(other.replay_from(&back), ConfigError);
  std::filesystem::remove(path);
}

TEST_CASE("wave amplification factor") {
  auto w = waf({cplx(3, 4), cplx(0, -2)}, 2.0);
  CHECK(w[0] == doctest::Approx(2.5));
  CHECK(w[1] == doctest::Approx(1.0));
}
