#include "msbem/scenario.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "msbem/errors.hpp"
#include "msbem/incident.hpp"

namespace msbem {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12e", v);
  return buf;
}

FILE* open_out(const fs::path& p) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  FILE* f = std::fopen(p.c_str(), "w");
  if (!f) throw ConfigError("cannot write " + p.string());
  return f;
}

fs::path out_path(const RunOptions& opt, const std::string& name) {
  fs::path p(name);
  return p.is_absolute() ? p : fs::path(opt.out_dir) / p;
}

std::vector<FieldPoint> field_points(const OutputConfig& o) {
  std::vector<FieldPoint> pts;
  auto lin = [](double a, double b, int n, int i) { return n == 1 ? a : a + (b - a) * i / (n - 1); };
  if (o.grid) {
    const GridSpec& g = *o.grid;
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i)
        pts.push_back({"grid", {lin(g.x0, g.x1, g.nx, i), lin(g.y0, g.y1, g.ny, j)}});
  }
  if (o.section) {
    const SectionSpec& s = *o.section;
    for (int i = 0; i < s.n; ++i) pts.push_back({"section", {lin(s.x0, s.x1, s.n, i), s.y}});
  }
  for (const Vec2& p : o.probes) pts.push_back({"probe", p});
  return pts;
}

}  // namespace

BoundaryMesh make_mesh(const RunConfig& c, const WavenumberField& field) {
  std::vector<Loop> loops = c.geometry.loops;
  for (const CircleConfig& cc : c.geometry.circles)
    loops.push_back(circle_loop(cc.centre, cc.radius, cc.elements, cc.bc));
  auto wavelength = [&](double x) { return 2.0 * M_PI / field.k_at(x); };
  return build_mesh(loops, c.geometry.domain, wavelength, c.geometry.elements_per_wavelength);
}

RunResult run(const RunConfig& c, const RunOptions& opt) {
  auto t_start = std::chrono::steady_clock::now();
  RunResult r;
  json warnings = json::array();

  BathymetryProfile bathy = c.bathymetry.profile();
  IncidentWave wave = c.wave.incident();
  const double omega = wave.omega();
  r.field = modified_wavenumber_profile(bathy, omega, c.numerics.fem_samples);
  ContourParams params =
      ContourParams::make(r.field.khat_star, c.numerics.xi_factor, c.numerics.tau_factor, c.numerics.M);
  params.check(r.field.khat_star);

  r.mesh = make_mesh(c, r.field);
  auto wavelength = [&](double x) { return 2.0 * M_PI / r.field.k_at(x); };
  double ratio = r.mesh.max_length_ratio(wavelength);
  if (ratio > 0.1)
    warnings.push_back("coarse mesh: longest element is " + std::to_string(ratio) +
                       " local wavelengths (fewer than 10 per wavelength)");

  double ymin = 1e300, ymax = -1e300;
  for (const Vec2& p : r.mesh.nodes) {
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  r.points = field_points(c.outputs);
  for (const FieldPoint& fp : r.points) {
    ymin = std::min(ymin, fp.p.y);
    ymax = std::max(ymax, fp.p.y);
  }
  if (ymax - ymin > 0.8 * params.Y())
    throw ConfigError("geometry spans " + std::to_string(ymax - ymin) + " m in y, beyond 0.8 Y = " +
                      std::to_string(0.8 * params.Y()) + " m; raise numerics.M");

  GreenFunction green(r.field, params, c.numerics.fem_elements_per_wavelength);
  KernelCache record(green.cache_header());
  KernelCache replay;
  if (!opt.load_kernel.empty()) {
    replay = KernelCache::load(opt.load_kernel);
    green.replay_from(&replay);
  }
  if (!opt.dump_kernel.empty()) green.record_into(&record);

  IncidentFn incident = [&](double x, double y) { return evaluate_incident(wave, bathy, x, y).phi; };

  auto t0 = std::chrono::steady_clock::now();
  BemSystem sys = assemble(r.mesh, green, c.numerics.quadrature, opt.threads);
  double t_assemble = seconds_since(t0);
  t0 = std::chrono::steady_clock::now();
  LinearSystem ls = apply_bcs(sys, r.mesh, incident);
  r.solution = solve(ls, sys, r.mesh);
  double t_solve = seconds_since(t0);
  t0 = std::chrono::steady_clock::now();
  std::vector<Vec2> pts;
  for (const FieldPoint& fp : r.points) pts.push_back(fp.p);
  if (!pts.empty())
    r.interior = interior_field(r.solution, r.mesh, green, pts, incident, c.numerics.quadrature, opt.threads);
  double t_field = seconds_since(t0);
  if (r.interior.near_boundary > 0)
    warnings.push_back(std::to_string(r.interior.near_boundary) +
                       " field points lie within 0.1 element lengths of the boundary");
  int outside = 0;
  for (char v : r.interior.valid) outside += !v;
  if (outside > 0) warnings.push_back(std::to_string(outside) + " field points lie outside the fluid");

  if (!opt.dump_kernel.empty()) record.save(opt.dump_kernel);

  const double phi0 = c.wave.amplitude;
  std::vector<double> bwaf = waf(r.solution.phi, phi0);
  std::vector<double> fwaf = waf(r.interior.phi, phi0);

  json m;
  m["config"] = to_json(c);
  double lam_min = 1e300;
  for (double x : r.field.xs) lam_min = std::min(lam_min, wavelength(x));
  m["derived"] = {{"omega", omega},
                  {"k1", r.field.khat1},
                  {"k3", r.field.khat3},
                  {"khat_star", r.field.khat_star},
                  {"h1", bathy.h1()},
                  {"h3", bathy.h3()},
                  {"min_wavelength", lam_min},
                  {"theta0_from_x", wave.theta0},
                  {"contour",
                   {{"Xi", params.Xi}, {"tau", params.tau}, {"M", params.M}, {"dxi", params.dxi()}, {"Y", params.Y()}}}};
  json bc_counts = json::object();
  for (const Element& e : r.mesh.elements) {
    std::string k = to_string(e.bc.kind);
    bc_counts[k] = bc_counts.value(k, 0) + 1;
  }
  m["mesh"] = {{"domain", c.geometry.domain == DomainKind::Interior ? "interior" : "exterior"},
               {"nodes", r.mesh.num_nodes()},
               {"elements", r.mesh.num_elements()},
               {"loops", r.mesh.loops.size()},
               {"max_length_over_wavelength", ratio},
               {"bc_elements", bc_counts}};
  m["solve"] = {{"residual", r.solution.residual},
                {"rcond", r.solution.rcond},
                {"residual_history", r.solution.residual_history}};
  m["kernel"] = {{"sweeps", green.sweeps()},
                 {"evaluations", green.evaluations()},
                 {"mode", !opt.load_kernel.empty() ? "replay" : "computed"},
                 {"dump", opt.dump_kernel},
                 {"load", opt.load_kernel},
                 {"recorded_blocks", record.size()}};
  m["outputs"] = {{"boundary_csv", c.outputs.boundary_csv},
                  {"field_csv", pts.empty() ? "" : c.outputs.field_csv},
                  {"field_points", pts.size()}};
  m["warnings"] = warnings;

  if (opt.write_files) {
    FILE* f = open_out(out_path(opt, c.outputs.boundary_csv));
    std::fprintf(f, "node,x,y,re_phi,im_phi,re_q,im_q,waf\n");
    for (int i = 0; i < r.mesh.num_nodes(); ++i) {
      const Vec2& p = r.mesh.nodes[i];
      const cplx ph = r.solution.phi[i], q = r.solution.q_node[i];
      std::fprintf(f, "%d,%s,%s,%s,%s,%s,%s,%s\n", i, num(p.x).c_str(), num(p.y).c_str(),
                   num(ph.real()).c_str(), num(ph.imag()).c_str(), num(q.real()).c_str(),
                   num(q.imag()).c_str(), num(bwaf[i]).c_str());
    }
    std::fclose(f);
    if (!pts.empty()) {
      f = open_out(out_path(opt, c.outputs.field_csv));
      std::fprintf(f, "kind,x,y,inside,re_phi,im_phi,waf\n");
      for (size_t i = 0; i < pts.size(); ++i) {
        const cplx ph = r.interior.phi[i];
        std::fprintf(f, "%s,%s,%s,%d,%s,%s,%s\n", r.points[i].kind.c_str(), num(pts[i].x).c_str(),
                     num(pts[i].y).c_str(), int(r.interior.valid[i]), num(ph.real()).c_str(),
                     num(ph.imag()).c_str(), num(fwaf[i]).c_str());
      }
      std::fclose(f);
    }
  }
  m["timings"] = {{"assemble_s", t_assemble},
                  {"solve_s", t_solve},
                  {"field_s", t_field},
                  {"total_s", seconds_since(t_start)},
                  {"threads", opt.threads}};
  r.manifest = m;
  if (opt.write_files) {
    FILE* f = open_out(out_path(opt, c.outputs.manifest));
    std::string s = m.dump(2);
    std::fprintf(f, "%s\n", s.c_str());
    std::fclose(f);
  }
  return r;
}

RunConfig channel_config() {
  RunConfig c;
  c.name = "channel";
  c.wave.period = 5.0;
  c.wave.angle = M_PI / 2;
  c.bathymetry.kind = BathyConfig::Kind::Cubic;
  c.bathymetry.a = 0.0;
  c.bathymetry.b = 70.0;
  c.bathymetry.cubic = {14.0, 0.0, -8.2653e-3, 7.8717e-5};
  c.geometry.domain = DomainKind::Interior;
  BoundaryCondition rigid, inc;
  inc.kind = BcKind::Dirichlet;
  inc.incident = true;
  const double W = 10.0;
  Loop lp;
  lp.vertices = {{0, -W / 2}, {70, -W / 2}, {70, W / 2}, {0, W / 2}};
  lp.bc = {rigid, inc, rigid, inc};
  lp.element_size = 0.5;
  c.geometry.loops = {lp};
  c.outputs.section = SectionSpec{0.0, 1.0, 69.0, 69};
  return c;
}

RunConfig cylinder_config(bool variable_depth, double angle, int elements) {
  RunConfig c;
  c.name = variable_depth ? "cylinder_variable" : "cylinder";
  c.wave.period = 5.0;
  c.wave.angle = angle;
  CircleConfig cc;
  cc.radius = 25.0;
  cc.elements = elements;
  if (variable_depth) {
    c.bathymetry.kind = BathyConfig::Kind::Cubic;
    c.bathymetry.a = 0.0;
    c.bathymetry.b = 70.0;
    c.bathymetry.cubic = {14.0, 0.0, -8.2653e-3, 7.8717e-5};
    cc.centre = {35.0, 0.0};
    c.outputs.section = SectionSpec{0.0, -40.0, 110.0, 151};
  } else {
    c.bathymetry.kind = BathyConfig::Kind::Constant;
    c.bathymetry.h = 14.0;
    cc.centre = {0.0, 0.0};
    c.outputs.section = SectionSpec{0.0, -125.0, 125.0, 251};
  }
  c.geometry.domain = DomainKind::Exterior;
  c.geometry.circles = {cc};
  return c;
}

RunConfig harbor_config() {
  RunConfig c;
  c.name = "harbor";
  c.wave.period = 10.0;
  c.wave.angle = M_PI / 6;
  c.bathymetry.kind = BathyConfig::Kind::Cubic;
  c.bathymetry.a = 0.0;
  c.bathymetry.b = 840.0;
  c.bathymetry.cubic = {100.0, 0.0, -4.0816327e-4, 3.239391e-7};
  c.geometry.domain = DomainKind::Exterior;
  BoundaryCondition rigid, absorbing;
  absorbing.kind = BcKind::Absorbing;
  Loop lp;
  lp.vertices = {{400, -300}, {420, -300}, {420, 200}, {560, 200}, {560, 220}, {400, 220}};
  lp.bc = {rigid, rigid, rigid, rigid, rigid, absorbing};
  c.geometry.loops = {lp};
  c.geometry.elements_per_wavelength = 20.0;
  c.outputs.grid = GridSpec{250.0, 700.0, -400.0, 400.0, 19, 33};
  c.outputs.probes = {{480.0, 0.0}, {600.0, 210.0}, {300.0, 0.0}};
  return c;
}

}  // namespace msbem
