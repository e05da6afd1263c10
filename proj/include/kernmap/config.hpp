#pragma once

// JSON job description: the domain, the grid size, optional evaluation
// points, probe grid shape, tolerance overrides, and the output
// directory.  Everything malformed becomes a ConfigError so the command
// line tool can map it to its own exit code.

#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "kernmap/curve.hpp"
#include "kernmap/geometry.hpp"
#include "kernmap/types.hpp"
#include "kernmap/verify.hpp"

namespace kernmap {

struct JobConfig {
  DomainSpec domain;
  int nodes_per_curve = 128;
  std::optional<cplx> base_point;
  std::vector<cplx> sources;
  int probe_nx = 40;
  int probe_ny = 40;
  std::map<std::string, double> tolerances = default_tolerances();
  std::string output_dir = "out";
};

namespace detail {

inline cplx json_complex(const nlohmann::json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ConfigError(what + " must be a two element array [re, im]");
  return cplx(j[0].get<double>(), j[1].get<double>());
}

inline CurveSpec parse_curve(const nlohmann::json& j, int index) {
  const std::string where = "curves[" + std::to_string(index) + "]";
  if (!j.is_object()) throw ConfigError(where + " must be an object");
  if (!j.contains("kind") || !j["kind"].is_string())
    throw ConfigError(where + " needs a string field \"kind\"");
  if (!j.contains("role") || !j["role"].is_string())
    throw ConfigError(where + " needs a string field \"role\"");
  const std::string kind = j["kind"].get<std::string>();
  const std::string role_s = j["role"].get<std::string>();
  CurveRole role;
  if (role_s == "inner")
    role = CurveRole::inner;
  else if (role_s == "outer")
    role = CurveRole::outer;
  else
    throw ConfigError(where + ": unknown role \"" + role_s + "\"");

  if (kind == "circle") {
    if (!j.contains("center") || !j.contains("radius") || !j["radius"].is_number())
      throw ConfigError(where + ": circle needs \"center\" and numeric \"radius\"");
    return CurveSpec::make_circle(json_complex(j["center"], where + ".center"),
                       j["radius"].get<double>(), role);
  }
  if (kind == "ellipse") {
    if (!j.contains("center") || !j.contains("semi_axes"))
      throw ConfigError(where + ": ellipse needs \"center\" and \"semi_axes\"");
    const auto& ax = j["semi_axes"];
    if (!ax.is_array() || ax.size() != 2 || !ax[0].is_number() || !ax[1].is_number())
      throw ConfigError(where + ".semi_axes must be [a, b]");
    double rot = 0.0;
    if (j.contains("rotation")) {
      if (!j["rotation"].is_number()) throw ConfigError(where + ".rotation must be a number");
      rot = j["rotation"].get<double>();
    }
    return CurveSpec::make_ellipse(json_complex(j["center"], where + ".center"), ax[0].get<double>(),
                        ax[1].get<double>(), rot, role);
  }
  if (kind == "fourier") {
    if (!j.contains("coefficients") || !j["coefficients"].is_array())
      throw ConfigError(where + ": fourier needs an array \"coefficients\"");
    std::vector<cplx> coeffs;
    for (std::size_t k = 0; k < j["coefficients"].size(); ++k)
      coeffs.push_back(json_complex(j["coefficients"][k],
                                    where + ".coefficients[" + std::to_string(k) + "]"));
    int k_min = 0;
    if (j.contains("k_min")) {
      if (!j["k_min"].is_number_integer())
        throw ConfigError(where + ".k_min must be an integer");
      k_min = j["k_min"].get<int>();
    }
    return CurveSpec::make_fourier(std::move(coeffs), k_min, role);
  }
  throw ConfigError(where + ": unknown kind \"" + kind + "\"");
}

}  // namespace detail

inline JobConfig parse_config(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config root must be a JSON object");
  if (!j.contains("curves") || !j["curves"].is_array() || j["curves"].empty())
    throw ConfigError("config needs a non-empty \"curves\" array");

  JobConfig cfg;
  std::vector<CurveSpec> inner, outer;
  for (std::size_t k = 0; k < j["curves"].size(); ++k) {
    CurveSpec c = detail::parse_curve(j["curves"][k], static_cast<int>(k));
    (c.role == CurveRole::outer ? outer : inner).push_back(std::move(c));
  }
  if (outer.size() != 1) throw ConfigError("config needs exactly one curve with role \"outer\"");
  cfg.domain.curves = std::move(inner);
  cfg.domain.curves.push_back(std::move(outer.front()));
  cfg.domain.validate_roles();

  if (j.contains("nodes_per_curve")) {
    if (!j["nodes_per_curve"].is_number_integer())
      throw ConfigError("\"nodes_per_curve\" must be an integer");
    cfg.nodes_per_curve = j["nodes_per_curve"].get<int>();
  }
  if (j.contains("base_point")) cfg.base_point = detail::json_complex(j["base_point"], "base_point");
  if (j.contains("sources")) {
    if (!j["sources"].is_array()) throw ConfigError("\"sources\" must be an array of points");
    for (std::size_t k = 0; k < j["sources"].size(); ++k)
      cfg.sources.push_back(
          detail::json_complex(j["sources"][k], "sources[" + std::to_string(k) + "]"));
  }
  if (j.contains("probe_grid")) {
    const auto& pg = j["probe_grid"];
    if (!pg.is_object() || !pg.contains("nx") || !pg.contains("ny") ||
        !pg["nx"].is_number_integer() || !pg["ny"].is_number_integer())
      throw ConfigError("\"probe_grid\" must be {\"nx\": int, \"ny\": int}");
    cfg.probe_nx = pg["nx"].get<int>();
    cfg.probe_ny = pg["ny"].get<int>();
    if (cfg.probe_nx < 2 || cfg.probe_ny < 2)
      throw ConfigError("\"probe_grid\" sides must be at least 2");
  }
  if (j.contains("tolerances")) {
    if (!j["tolerances"].is_object())
      throw ConfigError("\"tolerances\" must be an object of name -> value");
    for (const auto& [name, value] : j["tolerances"].items()) {
      if (!value.is_number()) throw ConfigError("tolerance \"" + name + "\" must be a number");
      cfg.tolerances[name] = value.get<double>();
    }
  }
  if (j.contains("output_dir")) {
    if (!j["output_dir"].is_string()) throw ConfigError("\"output_dir\" must be a string");
    cfg.output_dir = j["output_dir"].get<std::string>();
  }
  return cfg;
}

inline JobConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config is not valid JSON: " + std::string(e.what()));
  }
  return parse_config(j);
}

}  // namespace kernmap
