#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "whitney/config.hpp"
#include "whitney/error.hpp"
#include "whitney/experiments.hpp"
#include "whitney/report.hpp"

using namespace whitney;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

const ResultRow* find_row(const RunResult& res, const std::string& experiment, Quantity q, const std::string& t = "") {
  for (const ResultRow& row : res.rows) {
    if (row.experiment == experiment && row.quantity == q && (t.empty() || row.t == t)) return &row;
  }
  return nullptr;
}

ResultRow sample_row() {
  return {"whitney", "exp_d1", 1, "2", kInf, "[0,1]", "1", Quantity::E_r, 0.125, 0};
}

}  // namespace

TEST(Report, QuantityNames) {
  for (Quantity q : {Quantity::E_r, Quantity::omega, Quantity::Omega, Quantity::w, Quantity::W, Quantity::K_lower,
                     Quantity::K_upper, Quantity::taylor_err, Quantity::taylor_bound, Quantity::ratio,
                     Quantity::margin, Quantity::error}) {
    EXPECT_EQ(quantity_from_string(to_string(q)), q);
  }
  EXPECT_EQ(to_string(Quantity::E_r), "E_r");
  EXPECT_THROW(quantity_from_string("bogus"), Error);
}

TEST(Report, CsvEmptyAndSingleRow) {
  EXPECT_EQ(to_csv({}), std::string(kCsvHeader) + "\n");
  const std::string one = to_csv({sample_row()});
  EXPECT_EQ(std::count(one.begin(), one.end(), '\n'), 2);
  EXPECT_EQ(one.rfind(kCsvHeader, 0), 0u);
  EXPECT_EQ(one, to_csv({sample_row()}));
}

TEST(Report, JsonRoundTrip) {
  ResultRow nan_row = sample_row();
  nan_row.quantity = Quantity::ratio;
  nan_row.value = std::numeric_limits<double>::quiet_NaN();
  ResultRow d2 = sample_row();
  d2.d = 2;
  d2.r = "1x3";
  d2.p = 1.0;
  d2.value = 1.0 / 3.0;
  const std::vector<ResultRow> rows{sample_row(), nan_row, d2};
  EXPECT_EQ(rows_from_json(to_json(rows)), rows);
  EXPECT_TRUE(rows_from_json(to_json({})).empty());
}

TEST(Report, EmitWritesFileAndReportsPath) {
  const auto path = std::filesystem::temp_directory_path() / "whitney_emit_test.csv";
  emit({sample_row()}, path.string(), "csv");
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str(), to_csv({sample_row()}));
  std::filesystem::remove(path);
  try {
    emit({}, "/nonexistent-dir/x.csv", "csv");
    FAIL() << "expected an I/O error";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("/nonexistent-dir/x.csv"), std::string::npos);
  }
}

TEST(Config, Defaults) {
  const ExperimentConfig cfg = parse_config("{}");
  EXPECT_EQ(cfg.dimensions, (std::vector<std::size_t>{1, 2}));
  EXPECT_EQ(cfg.p_values.size(), 3u);
  EXPECT_TRUE(std::isinf(cfg.p_values.back()));
  EXPECT_FALSE(cfg.function_ids.empty());
  EXPECT_EQ(cfg.box_for(2).upper(1), 1.0);
}

TEST(Config, ParsesFields) {
  const ExperimentConfig cfg = parse_config(R"({
    "functions": ["exp_d2", "sin_d2"], "dimensions": [2], "orders": [[1, 3]],
    "p": [1, "inf"], "box": {"lower": -1, "upper": [1, 2]}, "shrink_levels": 3,
    "resolution": {"h_grid": 9, "quad_nodes": 12, "sup_points": 17, "bspline_nodes": 6},
    "output": {"path": "out.json", "format": "json"}, "jobs": 3, "t": [0.1, 0.2]
  })");
  EXPECT_EQ(cfg.function_ids, (std::vector<std::string>{"exp_d2", "sin_d2"}));
  EXPECT_EQ(cfg.p_values.size(), 2u);
  EXPECT_EQ(cfg.shrink_levels, 3);
  EXPECT_EQ(cfg.resolution.h_grid, 9);
  EXPECT_EQ(cfg.resolution.quad.nodes(0), 12);
  EXPECT_EQ(cfg.format, "json");
  EXPECT_EQ(cfg.jobs, 3);
  const Box b = cfg.box_for(2);
  EXPECT_EQ(b.lower(1), -1.0);
  EXPECT_EQ(b.upper(1), 2.0);
  EXPECT_EQ(format_p(kInf), "inf");
  EXPECT_EQ(format_p(2.0), "2");
}

TEST(Config, RejectsBadInput) {
  EXPECT_THROW(parse_config("not json"), ConfigError);
  EXPECT_THROW(parse_config(R"({"functions": ["nope"]})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"p": [0.5]})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"box": {"lower": 1, "upper": 0}})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"orders": [0]})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"output": {"format": "xml"}})"), ConfigError);
  EXPECT_THROW(load_config("/nonexistent/config.json"), ConfigError);
}

TEST(Experiments, WhitneyLinearExample) {
  const ExperimentConfig cfg =
      parse_config(R"({"functions": ["mono_d1_1"], "dimensions": [1], "orders": [1], "p": ["inf"], "shrink_levels": 0})");
  const RunResult res = run_whitney(cfg);
  EXPECT_EQ(res.hard_failures, 0);
  EXPECT_NEAR(find_row(res, "whitney", Quantity::E_r)->value, 0.5, 1e-10);
  EXPECT_NEAR(find_row(res, "whitney", Quantity::Omega)->value, 1.0, 1e-12);
  EXPECT_NEAR(find_row(res, "whitney", Quantity::margin)->value, -0.5, 1e-10);
}

TEST(Experiments, PolynomialRatioNotApplicable) {
  const ExperimentConfig cfg = parse_config(
      R"({"functions": ["poly_d2_deg1"], "dimensions": [2], "orders": [[2, 2]], "p": [2], "shrink_levels": 1,
          "resolution": {"h_grid": 9, "quad_nodes": 12}})");
  const RunResult res = run_whitney(cfg);
  for (const ResultRow& row : res.rows) {
    if (row.quantity == Quantity::ratio) {
      EXPECT_TRUE(std::isnan(row.value)) << row.experiment;
    } else if (row.quantity != Quantity::margin) {
      EXPECT_LE(std::abs(row.value), 1e-9) << to_string(row.quantity);
    }
  }
}

TEST(Experiments, UnsupportedPBecomesErrorRow) {
  const ExperimentConfig cfg =
      parse_config(R"({"functions": ["exp_d1"], "dimensions": [1], "orders": [2], "p": [1, 3]})");
  const RunResult res = run_bestapprox(cfg);
  EXPECT_EQ(res.errors, 1);
  ASSERT_EQ(res.rows.size(), 2u);
  EXPECT_EQ(res.rows[0].quantity, Quantity::E_r);
  EXPECT_EQ(res.rows[1].quantity, Quantity::error);
  EXPECT_TRUE(std::isnan(res.rows[1].value));
}

TEST(Experiments, WhitneyRatioStableUnderShrinking) {
  const ExperimentConfig cfg = parse_config(
      R"({"functions": ["exp_d2"], "dimensions": [2], "orders": [[2, 2]], "p": [2], "shrink_levels": 6,
          "mean_modulus": false, "resolution": {"h_grid": 17, "quad_nodes": 16}})");
  const RunResult res = run_whitney(cfg);
  std::vector<double> ratios;
  for (const ResultRow& row : res.rows) {
    if (row.experiment == "whitney:E/Omega") ratios.push_back(row.value);
  }
  ASSERT_EQ(ratios.size(), 7u);
  std::vector<double> sorted = ratios;
  std::sort(sorted.begin(), sorted.end());
  const double median = sorted[3];
  for (double v : ratios) {
    EXPECT_LE(v, 2.0 * median);
    EXPECT_GE(v, 0.5 * median);
  }
}

TEST(Experiments, TaylorExponentialExample) {
  const ExperimentConfig cfg =
      parse_config(R"({"functions": ["exp_d1"], "dimensions": [1], "orders": [1], "p": ["inf"], "shrink_levels": 0})");
  const RunResult res = run_taylor(cfg);
  const double e = std::exp(1.0);
  EXPECT_NEAR(find_row(res, "taylor", Quantity::taylor_bound)->value, e, 1e-12);
  EXPECT_NEAR(find_row(res, "taylor", Quantity::taylor_err)->value, e - 2.0, 1e-6);
  EXPECT_NEAR(find_row(res, "taylor:err/bound", Quantity::ratio)->value, 0.2642, 1e-4);
}

TEST(Experiments, Lemma21FirstOrderSupRatioAtMostOne) {
  const ExperimentConfig cfg = parse_config(
      R"({"functions": ["exp_d1", "sin_d1", "runge_d1", "mono_d1_1"], "dimensions": [1], "orders": [1],
          "p": ["inf"], "shrink_levels": 6})");
  const RunResult res = run_lemma21(cfg);
  int checked = 0;
  for (const ResultRow& row : res.rows) {
    if (row.experiment != "lemma21:deriv_p:k=0") continue;
    EXPECT_LE(row.value, 1.0 + 1e-12) << row.function_id << " t=" << row.t;
    ++checked;
  }
  EXPECT_EQ(checked, 4 * 7);
}

TEST(Experiments, DeterministicAcrossRunsAndThreads) {
  const std::string text = R"({"functions": ["sin_d1", "runge_d2"], "orders": [2, [1, 1]], "p": [1, "inf"],
    "shrink_levels": 1, "t_sweep": 2, "resolution": {"h_grid": 9, "quad_nodes": 10, "sup_points": 17, "bspline_nodes": 4}})";
  ExperimentConfig cfg = parse_config(text);
  for (const char* name : {"whitney", "johnen", "modulus", "kfunc"}) {
    cfg.jobs = 1;
    const std::string a = to_csv(run_experiment(name, cfg).rows);
    const std::string b = to_csv(run_experiment(name, cfg).rows);
    cfg.jobs = 3;
    const std::string c = to_csv(run_experiment(name, cfg).rows);
    EXPECT_EQ(a, b) << name;
    EXPECT_EQ(a, c) << name;
  }
  EXPECT_THROW(run_experiment("nope", cfg), ConfigError);
}
