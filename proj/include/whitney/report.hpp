#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace whitney {

enum class Quantity {
  E_r,
  omega,
  Omega,
  w,
  W,
  K_lower,
  K_upper,
  taylor_err,
  taylor_bound,
  ratio,
  margin,
  error,
};

std::string to_string(Quantity q);
/// Throws ConfigError for unknown names.
Quantity quantity_from_string(const std::string& name);

/// One measured value. NaN marks a not-applicable ratio or a failed row.
struct ResultRow {
  std::string experiment;
  std::string function_id;
  std::size_t d = 0;
  std::string r;
  double p = 0.0;
  std::string box;
  std::string t;
  Quantity quantity = Quantity::ratio;
  double value = 0.0;
  std::int64_t runtime_ms = 0;

  bool operator==(const ResultRow& other) const;
};

inline constexpr const char* kCsvHeader = "experiment,function_id,d,r,p,box,t,quantity,value,runtime_ms";

std::string to_csv(const std::vector<ResultRow>& rows);
std::string to_json(const std::vector<ResultRow>& rows);
std::vector<ResultRow> rows_from_json(const std::string& text);

/// Writes rows in `format` ("csv" or "json") to `path`, or to stdout when
/// the path is empty. Throws Error with the path on I/O failure.
void emit(const std::vector<ResultRow>& rows, const std::string& path, const std::string& format);

}  // namespace whitney
