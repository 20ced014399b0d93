#include "whitney/report.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <utility>

#include <json.hpp>

#include "whitney/error.hpp"
#include "whitney/format.hpp"

namespace whitney {

namespace {

constexpr std::array<std::pair<Quantity, const char*>, 12> kNames{{
    {Quantity::E_r, "E_r"},
    {Quantity::omega, "omega"},
    {Quantity::Omega, "Omega"},
    {Quantity::w, "w"},
    {Quantity::W, "W"},
    {Quantity::K_lower, "K_lower"},
    {Quantity::K_upper, "K_upper"},
    {Quantity::taylor_err, "taylor_err"},
    {Quantity::taylor_bound, "taylor_bound"},
    {Quantity::ratio, "ratio"},
    {Quantity::margin, "margin"},
    {Quantity::error, "error"},
}};

// JSON has no NaN or infinity, so non-finite values are written as strings.
nlohmann::ordered_json json_real(double v) {
  if (std::isfinite(v)) return v;
  return format_real(v);
}

double parse_real(const nlohmann::json& v) {
  if (v.is_number()) return v.get<double>();
  const std::string s = v.get<std::string>();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  return std::stod(s);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

bool same_real(double a, double b) { return (std::isnan(a) && std::isnan(b)) || a == b; }

}  // namespace

std::string to_string(Quantity q) {
  for (const auto& [value, name] : kNames) {
    if (value == q) return name;
  }
  return "unknown";
}

Quantity quantity_from_string(const std::string& name) {
  for (const auto& [value, n] : kNames) {
    if (name == n) return value;
  }
  throw ConfigError("unknown quantity '" + name + "'");
}

bool ResultRow::operator==(const ResultRow& o) const {
  return experiment == o.experiment && function_id == o.function_id && d == o.d && r == o.r && same_real(p, o.p) &&
         box == o.box && t == o.t && quantity == o.quantity && same_real(value, o.value) &&
         runtime_ms == o.runtime_ms;
}

std::string to_csv(const std::vector<ResultRow>& rows) {
  std::string out = kCsvHeader;
  out += '\n';
  for (const ResultRow& row : rows) {
    out += csv_field(row.experiment) + ',' + csv_field(row.function_id) + ',' + std::to_string(row.d) + ',' +
           row.r + ',' + format_real(row.p) + ',' + row.box + ',' + row.t + ',' + to_string(row.quantity) + ',' +
           format_real(row.value) + ',' + std::to_string(row.runtime_ms) + '\n';
  }
  return out;
}

std::string to_json(const std::vector<ResultRow>& rows) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const ResultRow& row : rows) {
    nlohmann::ordered_json o;
    o["experiment"] = row.experiment;
    o["function_id"] = row.function_id;
    o["d"] = row.d;
    o["r"] = row.r;
    o["p"] = json_real(row.p);
    o["box"] = row.box;
    o["t"] = row.t;
    o["quantity"] = to_string(row.quantity);
    o["value"] = json_real(row.value);
    o["runtime_ms"] = row.runtime_ms;
    arr.push_back(std::move(o));
  }
  return arr.dump(2) + "\n";
}

std::vector<ResultRow> rows_from_json(const std::string& text) {
  std::vector<ResultRow> rows;
  try {
    for (const auto& o : nlohmann::json::parse(text)) {
      ResultRow row;
      row.experiment = o.at("experiment").get<std::string>();
      row.function_id = o.at("function_id").get<std::string>();
      row.d = o.at("d").get<std::size_t>();
      row.r = o.at("r").get<std::string>();
      row.p = parse_real(o.at("p"));
      row.box = o.at("box").get<std::string>();
      row.t = o.at("t").get<std::string>();
      row.quantity = quantity_from_string(o.at("quantity").get<std::string>());
      row.value = parse_real(o.at("value"));
      row.runtime_ms = o.at("runtime_ms").get<std::int64_t>();
      rows.push_back(std::move(row));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed result JSON: ") + e.what());
  }
  return rows;
}

void emit(const std::vector<ResultRow>& rows, const std::string& path, const std::string& format) {
  if (format != "csv" && format != "json") throw ConfigError("output format must be csv or json");
  const std::string text = format == "csv" ? to_csv(rows) : to_json(rows);
  if (path.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open output file '" + path + "'");
  out << text;
  out.close();
  if (!out) throw Error("failed writing output file '" + path + "'");
}

}  // namespace whitney
