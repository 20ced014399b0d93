#include "whitney/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "whitney/error.hpp"
#include "whitney/format.hpp"
#include "whitney/functions.hpp"

namespace whitney {

namespace {

using nlohmann::json;

double parse_p(const json& v) {
  if (v.is_string()) {
    if (v.get<std::string>() == "inf") return std::numeric_limits<double>::infinity();
    throw ConfigError("p values must be numbers or \"inf\", got \"" + v.get<std::string>() + "\"");
  }
  if (!v.is_number()) throw ConfigError("p values must be numbers or \"inf\"");
  const double p = v.get<double>();
  if (!(p >= 1.0) || std::isinf(p)) throw ConfigError("p must lie in [1, inf]");
  return p;
}

std::vector<double> scalar_or_list(const json& v, const char* what) {
  if (v.is_number()) return {v.get<double>()};
  if (v.is_array()) {
    std::vector<double> out;
    for (const auto& x : v) {
      if (!x.is_number()) throw ConfigError(std::string(what) + " entries must be numbers");
      out.push_back(x.get<double>());
    }
    if (!out.empty()) return out;
  }
  throw ConfigError(std::string(what) + " must be a number or a non-empty list of numbers");
}

template <class T>
T get_or(const json& doc, const char* key, T fallback) {
  if (!doc.contains(key)) return fallback;
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad value for '") + key + "': " + e.what());
  }
}

}  // namespace

std::string format_p(double p) { return format_real(p); }

Box ExperimentConfig::box_for(std::size_t d) const {
  auto pick = [d](const std::vector<double>& v) {
    if (v.size() == 1) return std::vector<double>(d, v.front());
    if (v.size() == d) return v;
    throw ConfigError("box corners do not match dimension " + std::to_string(d));
  };
  try {
    return Box(pick(box_lower), pick(box_upper));
  } catch (const PreconditionError& e) {
    throw ConfigError(std::string("invalid box: ") + e.what());
  }
}

ExperimentConfig parse_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");

  ExperimentConfig cfg;
  if (doc.contains("dimensions")) {
    cfg.dimensions.clear();
    for (const auto& d : doc["dimensions"]) {
      const int v = d.get<int>();
      if (v < 1) throw ConfigError("dimensions must be positive");
      cfg.dimensions.push_back(static_cast<std::size_t>(v));
    }
  }

  const json functions = doc.value("functions", json("all"));
  if (functions.is_string() && functions.get<std::string>() == "all") {
    for (const auto& f : corpus()) cfg.function_ids.push_back(f.id());
  } else if (functions.is_array()) {
    for (const auto& id : functions) {
      if (!id.is_string()) throw ConfigError("function ids must be strings");
      cfg.function_ids.push_back(corpus_entry(id.get<std::string>()).id());
    }
  } else {
    throw ConfigError("'functions' must be \"all\" or a list of ids");
  }

  if (doc.contains("orders")) {
    for (const auto& r : doc["orders"]) {
      std::vector<int> entries;
      if (r.is_number_integer()) {
        entries.push_back(r.get<int>());
      } else if (r.is_array()) {
        for (const auto& v : r) entries.push_back(v.get<int>());
      } else {
        throw ConfigError("orders must be integers or integer lists");
      }
      for (int v : entries) {
        if (v < 1) throw ConfigError("order entries must be at least 1");
      }
      cfg.orders.emplace_back(std::move(entries));
    }
  } else {
    for (std::size_t d : cfg.dimensions) cfg.orders.push_back(MultiIndex::constant(d, 1));
  }

  if (doc.contains("p")) {
    cfg.p_values.clear();
    for (const auto& v : doc["p"]) cfg.p_values.push_back(parse_p(v));
    if (cfg.p_values.empty()) throw ConfigError("'p' must not be empty");
  }

  if (doc.contains("box")) {
    const json& box = doc["box"];
    if (!box.is_object() || !box.contains("lower") || !box.contains("upper")) {
      throw ConfigError("'box' needs 'lower' and 'upper'");
    }
    cfg.box_lower = scalar_or_list(box["lower"], "box.lower");
    cfg.box_upper = scalar_or_list(box["upper"], "box.upper");
  }

  cfg.shrink_levels = get_or(doc, "shrink_levels", cfg.shrink_levels);
  cfg.t_sweep = get_or(doc, "t_sweep", cfg.t_sweep);
  cfg.t_sweep_factor = get_or(doc, "t_sweep_factor", cfg.t_sweep_factor);
  cfg.mean_modulus = get_or(doc, "mean_modulus", cfg.mean_modulus);
  cfg.jobs = get_or(doc, "jobs", cfg.jobs);
  cfg.timing = get_or(doc, "timing", cfg.timing);
  if (cfg.shrink_levels < 0) throw ConfigError("shrink_levels must be non-negative");
  if (cfg.t_sweep < 1) throw ConfigError("t_sweep must be positive");
  if (!(cfg.t_sweep_factor > 0.0 && cfg.t_sweep_factor <= 1.0)) throw ConfigError("t_sweep_factor must lie in (0, 1]");

  if (doc.contains("t")) cfg.t = scalar_or_list(doc["t"], "t");

  if (doc.contains("resolution")) {
    const json& res = doc["resolution"];
    cfg.resolution.h_grid = get_or(res, "h_grid", cfg.resolution.h_grid);
    cfg.resolution.quad.nodes_per_axis = {get_or(res, "quad_nodes", cfg.resolution.quad.nodes(0))};
    cfg.resolution.quad.sup_points_per_axis = get_or(res, "sup_points", cfg.resolution.quad.sup_points_per_axis);
    cfg.resolution.quad.bspline_nodes_per_knot =
        get_or(res, "bspline_nodes", cfg.resolution.quad.bspline_nodes_per_knot);
    if (res.contains("fit_grid")) {
      for (double v : scalar_or_list(res["fit_grid"], "resolution.fit_grid")) {
        cfg.resolution.fit_grid.push_back(static_cast<int>(v));
      }
    }
  }
  if (cfg.resolution.h_grid < 2) throw ConfigError("resolution.h_grid must be at least 2");
  if (cfg.resolution.quad.nodes(0) < 1) throw ConfigError("resolution.quad_nodes must be positive");
  if (cfg.resolution.quad.sup_points_per_axis < 2) throw ConfigError("resolution.sup_points must be at least 2");
  if (cfg.resolution.quad.bspline_nodes_per_knot < 1) throw ConfigError("resolution.bspline_nodes must be positive");

  if (doc.contains("output")) {
    const json& out = doc["output"];
    cfg.output_path = get_or(out, "path", cfg.output_path);
    cfg.format = get_or(out, "format", cfg.format);
  }
  if (cfg.format != "csv" && cfg.format != "json") throw ConfigError("output format must be csv or json");

  for (std::size_t d : cfg.dimensions) cfg.box_for(d);
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace whitney
