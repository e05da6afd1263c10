#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "kernmap/config.hpp"
#include "kernmap/io.hpp"

using namespace kernmap;

TEST_CASE("a full job description parses") {
  const nlohmann::json j = nlohmann::json::parse(R"({
    "curves": [
      {"kind": "circle", "center": [0.0, 0.0], "radius": 1.0, "role": "outer"},
      {"kind": "circle", "center": [0.0, 0.0], "radius": 0.5, "role": "inner"}
    ],
    "nodes_per_curve": 64,
    "base_point": [0.72, 0.0],
    "sources": [[0.75, 0.0], [-0.7, 0.1]],
    "probe_grid": {"nx": 20, "ny": 30},
    "tolerances": {"green_symmetry": 1e-4},
    "output_dir": "tmp_out"
  })");
  const JobConfig cfg = parse_config(j);
  REQUIRE(cfg.domain.curves.size() == 2);
  // The outer curve is moved to the last slot regardless of input order.
  CHECK(cfg.domain.curves.back().role == CurveRole::outer);
  CHECK(cfg.domain.curves.front().role == CurveRole::inner);
  CHECK(cfg.nodes_per_curve == 64);
  REQUIRE(cfg.base_point.has_value());
  CHECK(std::abs(*cfg.base_point - cplx(0.72, 0.0)) < 1e-15);
  REQUIRE(cfg.sources.size() == 2);
  CHECK(cfg.probe_nx == 20);
  CHECK(cfg.probe_ny == 30);
  CHECK(cfg.tolerances.at("green_symmetry") == 1e-4);
  // Untouched entries keep their defaults.
  CHECK(cfg.tolerances.at("reproducing_property") == default_tolerances().at("reproducing_property"));
  CHECK(cfg.output_dir == "tmp_out");
}

TEST_CASE("ellipse and fourier curves parse") {
  const nlohmann::json j = nlohmann::json::parse(R"({
    "curves": [
      {"kind": "ellipse", "center": [0.1, 0.0], "semi_axes": [1.0, 0.6], "rotation": 0.3,
       "role": "outer"},
      {"kind": "fourier", "coefficients": [[0.2, 0.0], [0.02, 0.01]], "k_min": 1,
       "role": "inner"}
    ]
  })");
  const JobConfig cfg = parse_config(j);
  CHECK(cfg.domain.curves.back().kind == CurveKind::ellipse);
  CHECK(cfg.domain.curves.front().kind == CurveKind::fourier);
  CHECK(cfg.nodes_per_curve == 128);
}

TEST_CASE("malformed jobs are rejected with config errors") {
  auto reject = [](const char* text) {
    CHECK_THROWS_AS(parse_config(nlohmann::json::parse(text)), ConfigError);
  };
  reject(R"({"curves": []})");
  reject(R"({"curves": [{"kind": "square", "role": "outer"}]})");
  reject(R"({"curves": [{"kind": "circle", "center": [0,0], "role": "outer"}]})");
  reject(R"({"curves": [{"kind": "circle", "center": [0,0], "radius": 1, "role": "boss"}]})");
  reject(R"({"curves": [{"kind": "circle", "center": [0,0], "radius": 1, "role": "inner"}]})");
  reject(R"({"curves": [
    {"kind": "circle", "center": [0,0], "radius": 1, "role": "outer"},
    {"kind": "circle", "center": [0,0], "radius": 2, "role": "outer"}]})");
  reject(R"({"curves": [{"kind": "circle", "center": [0,0], "radius": 1, "role": "outer"}],
             "probe_grid": {"nx": 1, "ny": 5}})");
  reject(R"({"curves": [{"kind": "circle", "center": [0,0], "radius": 1, "role": "outer"}],
             "tolerances": {"x": "tight"}})");
  CHECK_THROWS_AS(load_config("/nonexistent/path.json"), ConfigError);
}

TEST_CASE("float formatting is fixed width round trip") {
  CHECK(fmt(0.1) == "0.10000000000000001");
  CHECK(fmt(1.0) == "1");
  CHECK(fmt(-2.5e-17) == "-2.4999999999999999e-17");
  CHECK(fmt(std::nan("")) == "nan");
}

TEST_CASE("report serialization keeps the verdicts") {
  std::vector<CheckRecord> recs(2);
  recs[0].identity = "a";
  recs[0].pass = true;
  recs[1].identity = "b";
  recs[1].pass = false;
  const nlohmann::json j = report_json(recs);
  CHECK(j["all_pass"] == false);
  CHECK(j["checks"].size() == 2);
  recs[1].pass = true;
  CHECK(report_json(recs)["all_pass"] == true);
}
