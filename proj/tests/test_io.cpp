#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dsr/experiments.hpp"
#include "dsr/io.hpp"

using namespace dsr;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream stream(text);
  std::string line;
  while (std::getline(stream, line)) lines.push_back(line);
  return lines;
}

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() / "dsrlab_io_test";
    std::filesystem::create_directories(path);
  }
  std::string file(const std::string& name) const {
    return (path / name).string();
  }
};

}  // namespace

TEST_CASE("full-precision formatting round-trips doubles") {
  std::mt19937_64 rng(0x5eed000a);
  std::uniform_real_distribution<double> draw(-1e6, 1e6);
  for (int i = 0; i < 200; ++i) {
    const double value = draw(rng) * std::pow(10.0, int(rng() % 13) - 6);
    const std::string text = format_full(value);
    CHECK(std::stod(text) == value);
    CHECK(text.find(',') == std::string::npos);
  }
}

TEST_CASE("trajectory csv") {
  TempDir dir;
  const PhysParams desk{1.0, 1.0, 10.0};

  SUBCASE("empty trajectory yields a header-only file") {
    FlowTrajectory empty{desk, BoostGenerator::Modified, 0, {}, std::nullopt};
    const auto path = dir.file("empty.csv");
    write_csv(empty, path);
    const auto lines = lines_of(slurp(path));
    REQUIRE(lines.size() == 1);
    CHECK(lines[0] == "lambda,E,p1,p2,p3,casimir");
  }

  SUBCASE("samples become rows, newline endings only") {
    FlowTrajectory traj{desk, BoostGenerator::Modified, 0, {}, std::nullopt};
    traj.samples.push_back({0.0, {1.0, {0.25, 0.0, 0.0}}, 0.125});
    traj.samples.push_back({0.5, {1.25, {0.5, 0.0, 0.0}}, 0.125});
    const auto path = dir.file("traj.csv");
    write_csv(traj, path);
    const std::string text = slurp(path);
    CHECK(text.find('\r') == std::string::npos);
    const auto lines = lines_of(text);
    REQUIRE(lines.size() == 3);
    CHECK(lines[1].rfind("0,1,0.25", 0) == 0);
  }
}

TEST_CASE("field snapshot csv has one row per site") {
  TempDir dir;
  const Grid1D grid(16, 8.0);
  ScalarField field(grid, Eigen::VectorXcd::Constant(16, 0.5));
  const auto path = dir.file("field.csv");
  write_csv(field, path);
  const auto lines = lines_of(slurp(path));
  REQUIRE(lines.size() == 17);
  CHECK(lines[0] == "x,re,im,density");
}

TEST_CASE("observable series csv") {
  TempDir dir;
  std::vector<ObservableSample> series{{0.0, {1.0, 400.0, 400.0}},
                                       {50.0, {1.0, 402.5, 401.0}}};
  const auto path = dir.file("series.csv");
  write_csv(series, path);
  const auto lines = lines_of(slurp(path));
  REQUIRE(lines.size() == 3);
  CHECK(lines[0] == "t,norm,mean_x,var_x");
}

TEST_CASE("report json round trip") {
  TempDir dir;
  ExperimentReport report;
  report.name = "roundtrip";
  report.params_used["m"] = 1.0;
  report.add_check("speed", 0.0549, 0.055, "p0 / m+", 0.01,
                   Verdict::Kind::WithinRelative);

  RunConfig config;
  const auto path = dir.file("report.json");
  write_json(report, config, path);

  const auto doc = nlohmann::json::parse(slurp(path));
  CHECK(doc.at("schema_version").get<int>() == kSchemaVersion);
  CHECK(doc.at("config").at("physics").at("k").get<double>() == 10.0);
  CHECK(doc.at("report") == nlohmann::json(report_to_json(report)));
  CHECK(doc.at("report").at("verdicts").at(0).at("passed").get<bool>());
}

TEST_CASE("config loading") {
  TempDir dir;

  SUBCASE("valid document with overrides") {
    const auto path = dir.file("config.json");
    std::ofstream(path) << R"({
      "physics": {"m": 2.0, "k": 40.0},
      "model": "ac-exact",
      "grid": {"n": 256},
      "experiment": {"p0": 0.1, "k_list": [5, 10]},
      "output": {"directory": "out"}
    })";
    const RunConfig config = load_config_file(path);
    CHECK(config.m == 2.0);
    CHECK(config.c == 1.0);  // untouched default
    CHECK(config.k == 40.0);
    CHECK(config.model == "ac-exact");
    CHECK(config.grid_n == 256);
    CHECK(config.p0 == 0.1);
    CHECK(config.k_list == std::vector<double>{5.0, 10.0});
    CHECK(config.output_directory == "out");
  }

  SUBCASE("unknown keys are rejected by name") {
    const auto path = dir.file("bad_key.json");
    std::ofstream(path) << R"({"physics": {"m": 1.0, "q": 3.0}})";
    try {
      load_config_file(path);
      FAIL("expected rejection");
    } catch (const std::invalid_argument& err) {
      CHECK(std::string(err.what()).find("physics.q") != std::string::npos);
    }

    const auto top = dir.file("bad_top.json");
    std::ofstream(top) << R"({"grids": {}})";
    CHECK_THROWS_AS(load_config_file(top), std::invalid_argument);
  }

  SUBCASE("invalid physics is named") {
    const auto path = dir.file("bad_mu.json");
    std::ofstream(path) << R"({"physics": {"m": 1.0, "c": 1.0, "k": 0.5}})";
    try {
      load_config_file(path);
      FAIL("expected rejection");
    } catch (const std::invalid_argument& err) {
      CHECK(std::string(err.what()).find("mu") != std::string::npos);
    }
  }

  SUBCASE("bad names are rejected") {
    CHECK_THROWS_AS(parse_model("galilean"), std::invalid_argument);
    CHECK_THROWS_AS(parse_branch("ghost"), std::invalid_argument);
    CHECK_THROWS_AS(parse_generator("rotation"), std::invalid_argument);
  }

  SUBCASE("config json round trip") {
    RunConfig config;
    config.k = 25.0;
    config.formats = {"json"};
    const RunConfig back = config_from_json(config_to_json(config));
    CHECK(back.k == 25.0);
    CHECK(back.formats == std::vector<std::string>{"json"});
    CHECK(config_to_json(back).dump() == config_to_json(config).dump());
  }
}
