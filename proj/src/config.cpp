#include "msbem/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "msbem/errors.hpp"

namespace msbem {

using nlohmann::json;

namespace {

void only_keys(const json& j, const std::string& where, std::set<std::string> allowed) {
  if (!j.is_object()) throw ConfigError(where + ": expected an object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key())) throw ConfigError(where + ": unknown key '" + it.key() + "'");
}

double num(const json& j, const std::string& key, const std::string& where) {
  if (!j.contains(key)) throw ConfigError(where + ": missing '" + key + "'");
  if (!j.at(key).is_number()) throw ConfigError(where + "." + key + ": expected a number");
  return j.at(key).get<double>();
}

double num_or(const json& j, const std::string& key, double def, const std::string& where) {
  return j.contains(key) ? num(j, key, where) : def;
}

int int_or(const json& j, const std::string& key, int def, const std::string& where) {
  if (!j.contains(key)) return def;
  if (!j.at(key).is_number_integer()) throw ConfigError(where + "." + key + ": expected an integer");
  return j.at(key).get<int>();
}

Vec2 point(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ConfigError(where + ": expected [x, y]");
  return {j[0].get<double>(), j[1].get<double>()};
}

cplx complex_value(const json& j, const std::string& where) {
  if (j.is_number()) return j.get<double>();
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw ConfigError(where + ": expected a number or [re, im]");
}

BoundaryCondition parse_bc(const json& j, const std::string& where) {
  BoundaryCondition bc;
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (s == "rigid") {
      bc.kind = BcKind::Rigid;
    } else if (s == "absorbing") {
      bc.kind = BcKind::Absorbing;
    } else if (s == "incident") {
      bc.kind = BcKind::Dirichlet;
      bc.incident = true;
    } else {
      throw ConfigError(where + ": unknown boundary condition '" + s + "'");
    }
    return bc;
  }
  only_keys(j, where, {"dirichlet", "neumann"});
  if (j.size() != 1) throw ConfigError(where + ": give exactly one of dirichlet / neumann");
  if (j.contains("dirichlet")) {
    bc.kind = BcKind::Dirichlet;
    bc.value = complex_value(j["dirichlet"], where + ".dirichlet");
  } else {
    bc.kind = BcKind::Neumann;
    bc.value = complex_value(j["neumann"], where + ".neumann");
  }
  return bc;
}

json bc_json(const BoundaryCondition& bc) {
  switch (bc.kind) {
    case BcKind::Rigid:
      return "rigid";
    case BcKind::Absorbing:
      return "absorbing";
    case BcKind::Dirichlet:
      if (bc.incident) return "incident";
      return json{{"dirichlet", {bc.value.real(), bc.value.imag()}}};
    case BcKind::Neumann:
      return json{{"neumann", {bc.value.real(), bc.value.imag()}}};
  }
  return nullptr;
}

}  // namespace

IncidentWave WaveConfig::incident() const {
  IncidentWave w;
  w.period = period;
  w.amplitude = amplitude;
  w.theta0 = M_PI / 2 - angle;
  w.x_ref = x_ref;
  return w;
}

BathymetryProfile BathyConfig::profile() const {
  switch (kind) {
    case Kind::Constant:
      return BathymetryProfile::constant(h);
    case Kind::Cubic: {
      auto p = BathymetryProfile::cubic(a, b, cubic);
      if (h1 && std::abs(*h1 - p.h1()) > 1e-9 * p.h1())
        throw ConfigError("bathymetry: h1 = " + std::to_string(*h1) +
                          " does not match the cubic at a (" + std::to_string(p.h1()) + ")");
      if (h3 && std::abs(*h3 - p.h3()) > 1e-9 * p.h1())
        throw ConfigError("bathymetry: h3 = " + std::to_string(*h3) +
                          " does not match the cubic at b (" + std::to_string(p.h3()) + ")");
      return p;
    }
    case Kind::Table:
      return BathymetryProfile::table(table);
  }
  throw ConfigError("bathymetry: unknown kind");
}

RunConfig parse_config(const json& j) {
  RunConfig c;
  only_keys(j, "config", {"name", "wave", "bathymetry", "geometry", "numerics", "outputs"});
  if (j.contains("name")) {
    if (!j["name"].is_string()) throw ConfigError("config.name: expected a string");
    c.name = j["name"].get<std::string>();
  }

  if (!j.contains("wave")) throw ConfigError("config: missing 'wave'");
  const json& w = j["wave"];
  only_keys(w, "wave", {"period", "amplitude", "angle", "x_ref"});
  c.wave.period = num(w, "period", "wave");
  c.wave.amplitude = num_or(w, "amplitude", 1.0, "wave");
  c.wave.angle = num_or(w, "angle", M_PI / 2, "wave");
  c.wave.x_ref = num_or(w, "x_ref", 0.0, "wave");
  if (!(c.wave.period > 0.0)) throw ConfigError("wave.period must be positive");
  if (!(c.wave.amplitude > 0.0)) throw ConfigError("wave.amplitude must be positive");

  if (!j.contains("bathymetry")) throw ConfigError("config: missing 'bathymetry'");
  const json& b = j["bathymetry"];
  only_keys(b, "bathymetry", {"h", "h1", "h3", "a", "b", "cubic", "table"});
  if (b.contains("table")) {
    c.bathymetry.kind = BathyConfig::Kind::Table;
    if (!b["table"].is_array()) throw ConfigError("bathymetry.table: expected [[x, h], ...]");
    for (const auto& row : b["table"]) {
      Vec2 p = point(row, "bathymetry.table");
      c.bathymetry.table.push_back({p.x, p.y});
    }
    if (b.size() != 1) throw ConfigError("bathymetry: 'table' cannot be combined with other keys");
  } else if (b.contains("cubic")) {
    c.bathymetry.kind = BathyConfig::Kind::Cubic;
    const json& cf = b["cubic"];
    if (!cf.is_array() || cf.size() != 4) throw ConfigError("bathymetry.cubic: expected [a0, a1, a2, a3]");
    for (int i = 0; i < 4; ++i) {
      if (!cf[i].is_number()) throw ConfigError("bathymetry.cubic: expected numbers");
      c.bathymetry.cubic[i] = cf[i].get<double>();
    }
    c.bathymetry.a = num(b, "a", "bathymetry");
    c.bathymetry.b = num(b, "b", "bathymetry");
    if (b.contains("h1")) c.bathymetry.h1 = num(b, "h1", "bathymetry");
    if (b.contains("h3")) c.bathymetry.h3 = num(b, "h3", "bathymetry");
    if (b.contains("h")) throw ConfigError("bathymetry: 'h' is for constant depth only");
  } else {
    c.bathymetry.kind = BathyConfig::Kind::Constant;
    c.bathymetry.h = num(b, "h", "bathymetry");
    if (b.size() != 1) throw ConfigError("bathymetry: constant depth takes only 'h'");
  }

  if (!j.contains("geometry")) throw ConfigError("config: missing 'geometry'");
  const json& g = j["geometry"];
  only_keys(g, "geometry", {"domain", "loops", "circles", "elements_per_wavelength"});
  if (!g.contains("domain") || !g["domain"].is_string())
    throw ConfigError("geometry.domain: expected \"interior\" or \"exterior\"");
  std::string dom = g["domain"].get<std::string>();
  if (dom == "interior")
    c.geometry.domain = DomainKind::Interior;
  else if (dom == "exterior")
    c.geometry.domain = DomainKind::Exterior;
  else
    throw ConfigError("geometry.domain: expected \"interior\" or \"exterior\"");
  c.geometry.elements_per_wavelength = num_or(g, "elements_per_wavelength", 20.0, "geometry");
  if (g.contains("loops")) {
    if (!g["loops"].is_array()) throw ConfigError("geometry.loops: expected an array");
    for (size_t l = 0; l < g["loops"].size(); ++l) {
      const json& lj = g["loops"][l];
      std::string where = "geometry.loops[" + std::to_string(l) + "]";
      only_keys(lj, where, {"points", "bc", "element_size"});
      Loop lp;
      if (!lj.contains("points") || !lj["points"].is_array())
        throw ConfigError(where + ": missing 'points'");
      for (const auto& p : lj["points"]) lp.vertices.push_back(point(p, where + ".points"));
      if (!lj.contains("bc")) throw ConfigError(where + ": missing 'bc'");
      const json& bj = lj["bc"];
      if (bj.is_array()) {
        for (const auto& e : bj) lp.bc.push_back(parse_bc(e, where + ".bc"));
      } else {
        lp.bc.assign(lp.vertices.size(), parse_bc(bj, where + ".bc"));
      }
      if (lp.bc.size() != lp.vertices.size())
        throw ConfigError(where + ": need one bc per segment (" + std::to_string(lp.vertices.size()) + ")");
      lp.element_size = num_or(lj, "element_size", 0.0, where);
      if (lp.vertices.size() < 3) throw ConfigError(where + ": need at least three points");
      c.geometry.loops.push_back(lp);
    }
  }
  if (g.contains("circles")) {
    if (!g["circles"].is_array()) throw ConfigError("geometry.circles: expected an array");
    for (size_t l = 0; l < g["circles"].size(); ++l) {
      const json& cj = g["circles"][l];
      std::string where = "geometry.circles[" + std::to_string(l) + "]";
      only_keys(cj, where, {"centre", "radius", "elements", "bc"});
      CircleConfig cc;
      cc.centre = cj.contains("centre") ? point(cj["centre"], where + ".centre") : Vec2{};
      cc.radius = num(cj, "radius", where);
      cc.elements = int_or(cj, "elements", 0, where);
      if (cc.elements < 8) throw ConfigError(where + ": 'elements' must be at least 8");
      cc.bc = cj.contains("bc") ? parse_bc(cj["bc"], where + ".bc") : BoundaryCondition{};
      c.geometry.circles.push_back(cc);
    }
  }
  if (c.geometry.loops.empty() && c.geometry.circles.empty())
    throw ConfigError("geometry: empty (no loops or circles)");
  if (c.geometry.domain == DomainKind::Interior &&
      (c.geometry.loops.size() + c.geometry.circles.size() != 1 || c.geometry.loops.empty()))
    throw ConfigError("geometry: an interior domain takes exactly one loop");

  if (j.contains("numerics")) {
    const json& n = j["numerics"];
    only_keys(n, "numerics",
              {"M", "xi_factor", "tau_factor", "fem_elements_per_wavelength", "fem_samples",
               "gauss_far", "gauss_near", "log_gauss", "self_levels", "far_factor"});
    c.numerics.M = int_or(n, "M", 4096, "numerics");
    c.numerics.xi_factor = num_or(n, "xi_factor", 6.0, "numerics");
    c.numerics.tau_factor = num_or(n, "tau_factor", 1.0, "numerics");
    c.numerics.fem_elements_per_wavelength =
        int_or(n, "fem_elements_per_wavelength", default_elems_per_wavelength, "numerics");
    c.numerics.fem_samples = int_or(n, "fem_samples", 2000, "numerics");
    auto& q = c.numerics.quadrature;
    q.gauss_far = int_or(n, "gauss_far", q.gauss_far, "numerics");
    q.gauss_near = int_or(n, "gauss_near", q.gauss_near, "numerics");
    q.log_gauss = int_or(n, "log_gauss", q.log_gauss, "numerics");
    q.self_levels = int_or(n, "self_levels", q.self_levels, "numerics");
    q.far_factor = num_or(n, "far_factor", q.far_factor, "numerics");
    if (q.gauss_far < 1 || q.gauss_near < 1 || q.log_gauss < 1 || q.self_levels < 0)
      throw ConfigError("numerics: quadrature orders must be positive");
  }

  if (j.contains("outputs")) {
    const json& o = j["outputs"];
    only_keys(o, "outputs", {"boundary_csv", "field_csv", "manifest", "grid", "section", "probes"});
    auto str = [&](const char* k, std::string& dst) {
      if (!o.contains(k)) return;
      if (!o[k].is_string()) throw ConfigError(std::string("outputs.") + k + ": expected a string");
      dst = o[k].get<std::string>();
    };
    str("boundary_csv", c.outputs.boundary_csv);
    str("field_csv", c.outputs.field_csv);
    str("manifest", c.outputs.manifest);
    if (o.contains("grid")) {
      const json& gr = o["grid"];
      only_keys(gr, "outputs.grid", {"x", "y"});
      GridSpec s;
      for (const char* ax : {"x", "y"}) {
        if (!gr.contains(ax) || !gr[ax].is_array() || gr[ax].size() != 3)
          throw ConfigError(std::string("outputs.grid.") + ax + ": expected [min, max, count]");
        double lo = gr[ax][0].get<double>(), hi = gr[ax][1].get<double>();
        int cnt = gr[ax][2].get<int>();
        if (cnt < 1) throw ConfigError("outputs.grid: count must be positive");
        (ax[0] == 'x' ? s.x0 : s.y0) = lo;
        (ax[0] == 'x' ? s.x1 : s.y1) = hi;
        (ax[0] == 'x' ? s.nx : s.ny) = cnt;
      }
      c.outputs.grid = s;
    }
    if (o.contains("section")) {
      const json& sj = o["section"];
      only_keys(sj, "outputs.section", {"y", "x"});
      SectionSpec s;
      s.y = num_or(sj, "y", 0.0, "outputs.section");
      if (!sj.contains("x") || !sj["x"].is_array() || sj["x"].size() != 3)
        throw ConfigError("outputs.section.x: expected [min, max, count]");
      s.x0 = sj["x"][0].get<double>();
      s.x1 = sj["x"][1].get<double>();
      s.n = sj["x"][2].get<int>();
      if (s.n < 1) throw ConfigError("outputs.section: count must be positive");
      c.outputs.section = s;
    }
    if (o.contains("probes")) {
      if (!o["probes"].is_array()) throw ConfigError("outputs.probes: expected [[x, y], ...]");
      for (const auto& p : o["probes"]) c.outputs.probes.push_back(point(p, "outputs.probes"));
    }
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open config " + path);
  json j;
  try {
    j = json::parse(is);
  } catch (const json::parse_error& e) {
    throw ConfigError("config " + path + ": " + e.what());
  }
  try {
    return parse_config(j);
  } catch (const json::exception& e) {
    throw ConfigError("config " + path + ": " + e.what());
  }
}

json to_json(const RunConfig& c) {
  json j;
  j["name"] = c.name;
  j["wave"] = {{"period", c.wave.period},
               {"amplitude", c.wave.amplitude},
               {"angle", c.wave.angle},
               {"x_ref", c.wave.x_ref}};
  const BathyConfig& b = c.bathymetry;
  switch (b.kind) {
    case BathyConfig::Kind::Constant:
      j["bathymetry"] = {{"h", b.h}};
      break;
    case BathyConfig::Kind::Cubic: {
      auto p = b.profile();
      j["bathymetry"] = {{"a", b.a}, {"b", b.b}, {"cubic", b.cubic}, {"h1", p.h1()}, {"h3", p.h3()}};
      break;
    }
    case BathyConfig::Kind::Table: {
      json t = json::array();
      for (auto& [x, h] : b.table) t.push_back({x, h});
      j["bathymetry"] = {{"table", t}};
      break;
    }
  }
  json g;
  g["domain"] = c.geometry.domain == DomainKind::Interior ? "interior" : "exterior";
  g["elements_per_wavelength"] = c.geometry.elements_per_wavelength;
  g["loops"] = json::array();
  for (const Loop& lp : c.geometry.loops) {
    json pts = json::array(), bcs = json::array();
    for (const Vec2& p : lp.vertices) pts.push_back({p.x, p.y});
    for (const auto& bc : lp.bc) bcs.push_back(bc_json(bc));
    g["loops"].push_back({{"points", pts}, {"bc", bcs}, {"element_size", lp.element_size}});
  }
  g["circles"] = json::array();
  for (const CircleConfig& cc : c.geometry.circles)
    g["circles"].push_back({{"centre", {cc.centre.x, cc.centre.y}},
                            {"radius", cc.radius},
                            {"elements", cc.elements},
                            {"bc", bc_json(cc.bc)}});
  j["geometry"] = g;
  const auto& q = c.numerics.quadrature;
  j["numerics"] = {{"M", c.numerics.M},
                   {"xi_factor", c.numerics.xi_factor},
                   {"tau_factor", c.numerics.tau_factor},
                   {"fem_elements_per_wavelength", c.numerics.fem_elements_per_wavelength},
                   {"fem_samples", c.numerics.fem_samples},
                   {"gauss_far", q.gauss_far},
                   {"gauss_near", q.gauss_near},
                   {"log_gauss", q.log_gauss},
                   {"self_levels", q.self_levels},
                   {"far_factor", q.far_factor}};
  json o = {{"boundary_csv", c.outputs.boundary_csv},
            {"field_csv", c.outputs.field_csv},
            {"manifest", c.outputs.manifest}};
  if (c.outputs.grid) {
    const GridSpec& s = *c.outputs.grid;
    o["grid"] = {{"x", {s.x0, s.x1, s.nx}}, {"y", {s.y0, s.y1, s.ny}}};
  }
  if (c.outputs.section) {
    const SectionSpec& s = *c.outputs.section;
    o["section"] = {{"y", s.y}, {"x", {s.x0, s.x1, s.n}}};
  }
  json pr = json::array();
  for (const Vec2& p : c.outputs.probes) pr.push_back({p.x, p.y});
  o["probes"] = pr;
  j["outputs"] = o;
  return j;
}

}  // namespace msbem
