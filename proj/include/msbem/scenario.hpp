#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "msbem/bem.hpp"
#include "msbem/config.hpp"

namespace msbem {

struct RunOptions {
  int threads = 1;
  std::string out_dir = ".";
  std::string dump_kernel;  // write evaluated kernel blocks here
  std::string load_kernel;  // serve kernel values from here only
  bool write_files = true;
};

struct FieldPoint {
  std::string kind;  // grid, section, probe
  Vec2 p;
};

struct RunResult {
  WavenumberField field;
  BoundaryMesh mesh;
  BemSolution solution;
  std::vector<FieldPoint> points;
  InteriorResult interior;
  nlohmann::json manifest;
};

// Mesh for the configured loops and circles.
BoundaryMesh make_mesh(const RunConfig& c, const WavenumberField& field);

RunResult run(const RunConfig& c, const RunOptions& opt = {});

// Built-in cases used by validation and the example configs.
RunConfig channel_config();
RunConfig cylinder_config(bool variable_depth, double angle = M_PI / 2, int elements = 320);
RunConfig harbor_config();

}  // namespace msbem
