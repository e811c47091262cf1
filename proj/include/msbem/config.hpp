#pragma once

#include <array>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "msbem/bem.hpp"
#include "msbem/environment.hpp"
#include "msbem/incident.hpp"
#include "msbem/mesh.hpp"

namespace msbem {

struct WaveConfig {
  double period = 0.0;
  double amplitude = 1.0;
  // Angle between the propagation direction and the depth contours (lines
  // x = const), radians; pi/2 is propagation along +x.
  double angle = M_PI / 2;
  double x_ref = 0.0;  // where amplitude and angle are given

  IncidentWave incident() const;
};

struct BathyConfig {
  enum class Kind { Constant, Cubic, Table } kind = Kind::Constant;
  double h = 0.0;                   // constant
  double a = 0.0, b = 0.0;          // cubic
  std::array<double, 4> cubic{};    // a0..a3
  std::optional<double> h1, h3;     // optional consistency check for cubic
  std::vector<std::pair<double, double>> table;

  BathymetryProfile profile() const;
};

struct CircleConfig {
  Vec2 centre;
  double radius = 0.0;
  int elements = 0;
  BoundaryCondition bc;
};

struct GeometryConfig {
  DomainKind domain = DomainKind::Exterior;
  std::vector<Loop> loops;
  std::vector<CircleConfig> circles;
  double elements_per_wavelength = 20.0;
};

struct NumericsConfig {
  int M = 4096;
  double xi_factor = 6.0;
  double tau_factor = 1.0;
  int fem_elements_per_wavelength = default_elems_per_wavelength;
  int fem_samples = 2000;
  QuadratureOptions quadrature;
};

struct GridSpec {
  double x0 = 0, x1 = 0, y0 = 0, y1 = 0;
  int nx = 0, ny = 0;
};

struct SectionSpec {
  double y = 0.0;
  double x0 = 0, x1 = 0;
  int n = 0;
};

struct OutputConfig {
  std::string boundary_csv = "boundary.csv";
  std::string field_csv = "field.csv";
  std::string manifest = "manifest.json";
  std::optional<GridSpec> grid;
  std::optional<SectionSpec> section;
  std::vector<Vec2> probes;
};

struct RunConfig {
  std::string name = "custom";
  WaveConfig wave;
  BathyConfig bathymetry;
  GeometryConfig geometry;
  NumericsConfig numerics;
  OutputConfig outputs;
};

// Strict parse: unknown keys and missing required values raise ConfigError.
RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::string& path);
// Fully expanded form, every default written out.
nlohmann::json to_json(const RunConfig& c);

}  // namespace msbem
