#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

#include "msbem/config.hpp"
#include "msbem/errors.hpp"

using namespace msbem;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

json small_config() {
  return json::parse(R"({
    "name": "box",
    "wave": { "period": 5.0, "angle": 1.2 },
    "bathymetry": { "h": 14.0 },
    "geometry": {
      "domain": "interior",
      "loops": [ { "points": [[0, 0], [13, 0], [13, 13], [0, 13]], "bc": "incident", "element_size": 1.3 } ]
    },
    "outputs": { "section": { "y": 6.5, "x": [1, 12, 12] }, "probes": [[20, 20]] }
  })");
}

fs::path scratch(const std::string& name) {
  fs::path d = fs::temp_directory_path() / ("msbem_cli_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

int run_cli(const std::string& args) {
  std::string cmd = std::string(MSBEM_CLI) + " " + args + " > /dev/null 2>&1";
  int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

void write(const fs::path& p, const json& j) { std::ofstream(p) << j.dump(2); }

std::string slurp(const fs::path& p) {
  std::ifstream is(p);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("config: defaults are filled in and round-trip") {
  RunConfig c = parse_config(small_config());
  CHECK(c.wave.amplitude == 1.0);
  CHECK(c.numerics.M == 4096);
  CHECK(c.geometry.elements_per_wavelength == 20.0);
  CHECK(c.geometry.loops[0].bc.size() == 4);
  json full = to_json(c);
  RunConfig again = parse_config(full);
  CHECK(to_json(again) == full);
  CHECK(full["numerics"]["fem_elements_per_wavelength"] == 120);
  CHECK(c.wave.incident().theta0 == doctest::Approx(M_PI / 2 - 1.2));
}

TEST_CASE("config: strict validation") {
  json j = small_config();
  j["wave"]["colour"] = "blue";
  CHECK_THROWS_AS(parse_config(j), ConfigError);
  j = small_config();
  j["geometry"]["loops"] = json::array();
  CHECK_THROWS_AS(parse_config(j), ConfigError);
  j = small_config();
  j["geometry"]["loops"][0]["bc"] = json::array({"rigid", "rigid"});
  CHECK_THROWS_AS(parse_config(j), ConfigError);
  j = small_config();
  j["wave"]["period"] = -1;
  CHECK_THROWS_AS(parse_config(j), ConfigError);
  j = small_config();
  j["geometry"]["loops"][0]["bc"] = "sticky";
  CHECK_THROWS_AS(parse_config(j), ConfigError);
  j = small_config();
  j["bathymetry"] = {{"a", 0}, {"b", 70}, {"cubic", {14.0, 0.0, -8.2653e-3, 7.8717e-5}}, {"h1", 13.0}};
  CHECK_THROWS_AS(parse_config(j).bathymetry.profile(), ConfigError);
  j["bathymetry"]["h1"] = 14.0;
  CHECK_NOTHROW(parse_config(j).bathymetry.profile());
}

TEST_CASE("cli: solve writes deterministic outputs and kernel replay matches") {
  fs::path d = scratch("solve");
  write(d / "box.json", small_config());
  std::string cfg = (d / "box.json").string();
  REQUIRE(run_cli("solve " + cfg + " --out " + (d / "a").string() + " --dump-kernel " +
                  (d / "k.bin").string()) == 0);
  REQUIRE(run_cli("solve " + cfg + " --out " + (d / "b").string()) == 0);
  REQUIRE(run_cli("solve " + cfg + " --out " + (d / "c").string() + " --load-kernel " +
                  (d / "k.bin").string()) == 0);
  std::string a = slurp(d / "a" / "boundary.csv");
  CHECK(a.rfind("node,x,y,re_phi,im_phi,re_q,im_q,waf", 0) == 0);
  CHECK(a == slurp(d / "b" / "boundary.csv"));
  CHECK(a == slurp(d / "c" / "boundary.csv"));
  std::string fa = slurp(d / "a" / "field.csv");
  CHECK(fa == slurp(d / "c" / "field.csv"));
  CHECK(fa.find("probe,2.000000000000e+01,2.000000000000e+01,0,nan") != std::string::npos);
  json m = json::parse(slurp(d / "c" / "manifest.json"));
  CHECK(m["kernel"]["mode"] == "replay");
  CHECK(m["kernel"]["sweeps"] == 0);
  CHECK(m["config"]["numerics"]["M"] == 4096);
  CHECK(m["solve"]["residual"].get<double>() < 1e-10);
  // the manifest config alone reproduces the run
  write(d / "again.json", m["config"]);
  REQUIRE(run_cli("solve " + (d / "again.json").string() + " --out " + (d / "e").string()) == 0);
  CHECK(a == slurp(d / "e" / "boundary.csv"));
  fs::remove_all(d);
}

TEST_CASE("cli: exit codes") {
  fs::path d = scratch("codes");
  json j = small_config();
  j["geometry"].erase("loops");
  write(d / "empty.json", j);
  CHECK(run_cli("solve " + (d / "empty.json").string()) == 2);
  CHECK(run_cli("solve " + (d / "missing.json").string()) == 2);
  CHECK(run_cli("validate no-such-suite") == 2);
  CHECK(run_cli("validate dispersion") == 0);
  // a kernel cache from another configuration
  write(d / "box.json", small_config());
  REQUIRE(run_cli("solve " + (d / "box.json").string() + " --out " + d.string() + " --dump-kernel " +
                  (d / "k.bin").string()) == 0);
  j = small_config();
  j["wave"]["period"] = 6.0;
  write(d / "other.json", j);
  CHECK(run_cli("solve " + (d / "other.json").string() + " --out " + d.string() + " --load-kernel " +
                (d / "k.bin").string()) == 2);
  // replay with a different mesh misses the cache
  j = small_config();
  j["geometry"]["loops"][0]["element_size"] = 1.0;
  write(d / "finer.json", j);
  CHECK(run_cli("solve " + (d / "finer.json").string() + " --out " + d.string() + " --load-kernel " +
                (d / "k.bin").string()) == 3);
  fs::remove_all(d);
}
