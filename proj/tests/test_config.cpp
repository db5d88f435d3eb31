#include "phasetrack/commands.hpp"
#include "phasetrack/config.hpp"
#include "phasetrack/error.hpp"
#include "phasetrack/table.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

using namespace phasetrack;

TEST(Config, EmptyDocumentGivesDefaults) {
  const auto cfg = config::parse_config(R"({"alpha_sq": 1e6})");
  const auto &sc = cfg.scenario;
  EXPECT_EQ(sc.ou.kappa, 1.9e4);
  EXPECT_EQ(sc.ou.lambda, 5.9e4);
  EXPECT_EQ(sc.beam.alpha_sq, 1e6);
  EXPECT_EQ(sc.beam.r_m, 0.36);
  EXPECT_EQ(sc.beam.r_p, 0.59);
  EXPECT_EQ(sc.beam.eta, 0.85);
  EXPECT_EQ(sc.dt, 1e-8);
  EXPECT_FALSE(sc.bandwidth.has_value());
  EXPECT_EQ(cfg.options.l_sq, 0.33);
}

TEST(Config, DecibelLevels) {
  const auto operating = config::parse_config(R"({"squeezing_db": -3.1, "antisqueezing_db": 5.1})");
  EXPECT_NEAR(operating.scenario.beam.r_m, 0.36, 0.01);
  EXPECT_NEAR(operating.scenario.beam.r_p, 0.59, 0.01);
  const auto cfg = config::parse_config(R"({"squeezing_db": -3.2, "antisqueezing_db": 4.9})");
  EXPECT_NEAR(cfg.scenario.beam.r_m, 0.368, 0.001);
  EXPECT_NEAR(cfg.scenario.beam.r_p, 0.564, 0.001);
  EXPECT_NEAR(cfg.scenario.beam.r_minus(), std::pow(10.0, -0.32), 1e-12);
}

TEST(Config, RejectsBadValuesNamingTheKey) {
  const auto message = [](const std::string &doc) {
    try {
      config::parse_config(doc);
    } catch (const ConfigError &e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  EXPECT_NE(message(R"({"duration": -1e-3})").find("duration"), std::string::npos);
  EXPECT_NE(message(R"({"kapa": 1})").find("kapa"), std::string::npos);
  EXPECT_NE(message(R"({"eta": 1.5})").find("eta"), std::string::npos);
  EXPECT_NE(message(R"({"r_m": 0.3, "squeezing_db": -3})").find("squeezing"), std::string::npos);
  EXPECT_NE(message(R"({"duration": 1e-3, "duration_ms": 1})").find("duration"), std::string::npos);
  EXPECT_NE(message(R"({"noise_model": "exact"})").find("noise_model"), std::string::npos);
  EXPECT_NE(message(R"({"bandwidth": {"x": 1.0}})").find("x"), std::string::npos);
  EXPECT_NE(message("[1, 2]"), "no error");
  EXPECT_NE(message("{"), "no error");
  EXPECT_NE(message(R"({"trials": 2.5})").find("trials"), std::string::npos);
}

TEST(Config, CanonicalJsonRoundTrips) {
  const auto cfg = config::parse_config(R"({
    "kappa": 2.1e4, "lambda": 6.3e4, "alpha_sq": 3.3e6, "eta": 0.9,
    "squeezing_db": -4.1, "antisqueezing_db": 7.3,
    "bandwidth": {"delta_omega0": 1.5e6},
    "noise_model": "second-order", "dt": 5e-9, "noise_substeps": 3,
    "duration_ms": 0.7, "trials": 4, "seed": 99, "gamma": 3.3e5,
    "gain_objective": "smoother",
    "alpha_sq_list": [1e6, 2e6], "levels": [{"r_m": 0.1, "r_p": 0.2}, {"squeezing_db": -3, "antisqueezing_db": 5}],
    "l_sq": 0.2, "delta_omega_override": "inf", "monte_carlo": false,
    "trajectory_stride": 10})");
  const std::string once = config::to_json(cfg);
  const std::string twice = config::to_json(config::parse_config(once));
  EXPECT_EQ(once, twice);
  const auto back = config::parse_config(once);
  EXPECT_EQ(back.scenario.beam.r_m, cfg.scenario.beam.r_m);
  EXPECT_EQ(back.scenario.duration, cfg.scenario.duration);
  EXPECT_TRUE(std::isinf(*back.options.delta_omega_override));
  EXPECT_EQ(back.options.levels, cfg.options.levels);
}

TEST(Config, SetNumber) {
  auto cfg = config::default_config();
  config::set_number(cfg, "duration_ms", 0.5);
  EXPECT_DOUBLE_EQ(cfg.scenario.duration, 5e-4);
  config::set_number(cfg, "antisqueezing_db", 8.0);
  config::set_number(cfg, "squeezing_db", -6.0);
  EXPECT_NEAR(cfg.scenario.beam.r_minus(), std::pow(10.0, -0.6), 1e-12);
  EXPECT_THROW(config::set_number(cfg, "nope", 1.0), ConfigError);
  EXPECT_THROW(config::set_number(cfg, "trials", 0.0), ConfigError);
}

TEST(Config, UnitsCoverScalarKeys) {
  const auto units = nlohmann::json::parse(config::units_json());
  for (const char *key : {"kappa", "lambda", "alpha_sq", "dt", "duration", "gamma"})
    EXPECT_TRUE(units.contains(key)) << key;
  EXPECT_EQ(units["kappa"], "rad^2/s");
}

namespace {

config::RunConfig quick() {
  auto cfg = config::default_config();
  cfg.scenario.duration = 2e-4;
  cfg.scenario.trials = 2;
  cfg.options.monte_carlo = false;
  return cfg;
}

} // namespace

TEST(Table, SweepSqueezingCsvColumns) {
  const auto cfg = quick();
  const auto t = commands::run("sweep-squeezing", cfg);
  const auto csv = table::to_csv(t, commands::meta_for("sweep-squeezing", cfg));
  std::istringstream in(csv);
  std::string meta, units, header;
  std::getline(in, meta);
  std::getline(in, units);
  std::getline(in, header);
  EXPECT_EQ(meta.rfind("# phasetrack ", 0), 0u);
  EXPECT_NE(meta.find("command=sweep-squeezing"), std::string::npos);
  EXPECT_EQ(units.rfind("# units: ", 0), 0u);
  EXPECT_EQ(header, "squeezing_db,antisqueezing_db,mse_mc_mean,mse_mc_stderr,mse_pred,mse_csl,"
                    "mse_first_order,mse_pure");
  EXPECT_EQ(t.rows.size(), 9u);
  EXPECT_EQ(t.rows[0][0], 0.0);
  EXPECT_NEAR(t.rows[8][0], -4.0, 1e-9);
}

TEST(Table, JsonShape) {
  const auto cfg = quick();
  const auto t = commands::run("predict", cfg);
  const auto j = nlohmann::json::parse(table::to_json(t, commands::meta_for("predict", cfg)));
  EXPECT_EQ(j["meta"]["command"], "predict");
  EXPECT_EQ(j["meta"]["seed"], cfg.scenario.master_seed);
  EXPECT_EQ(j["columns"].size(), t.columns.size());
  EXPECT_EQ(j["rows"].size(), 1u);
  EXPECT_TRUE(j["meta"]["scenario"].is_object());
  EXPECT_NEAR(j["rows"][0]["sigma_s_sq"].get<double>(), t.rows[0][6], 0.0);
}

TEST(Table, NanIsWrittenAsNullAndNan) {
  table::Table t;
  t.columns = {{"a", "1"}, {"b", "1"}};
  t.add_row({1.0, std::nan("")});
  table::Meta m{"x", 1, "v", "{}", "{}"};
  EXPECT_NE(table::to_csv(t, m).find("1,nan"), std::string::npos);
  EXPECT_TRUE(nlohmann::json::parse(table::to_json(t, m))["rows"][0]["b"].is_null());
  EXPECT_THROW(t.add_row({1.0}), ParameterError);
}

TEST(Table, EmptyTableRefused) {
  table::Table t;
  t.columns = {{"a", "1"}};
  EXPECT_THROW(table::serialize(t, {}, table::Format::csv), ParameterError);
}

TEST(Table, UnwritablePathIsIoError) {
  table::Table t;
  t.columns = {{"a", "1"}};
  t.add_row({1.0});
  try {
    table::write_file(t, {}, table::Format::csv, "/nonexistent-dir/out.csv");
    FAIL() << "expected IoError";
  } catch (const IoError &e) {
    EXPECT_NE(std::string(e.what()).find("/nonexistent-dir/out.csv"), std::string::npos);
  }
  EXPECT_THROW(table::format_from_string("xml"), ParameterError);
}

TEST(Commands, RepeatRunsAreByteIdentical) {
  auto cfg = quick();
  cfg.options.monte_carlo = true;
  for (const std::string name : {"mc", "sweep-alpha"}) {
    const auto a = table::to_csv(commands::run(name, cfg, 1), commands::meta_for(name, cfg));
    const auto b = table::to_csv(commands::run(name, cfg, 2), commands::meta_for(name, cfg));
    EXPECT_EQ(a, b) << name;
  }
}

TEST(Commands, EveryCommandProducesRows) {
  auto cfg = quick();
  cfg.options.heatmap_squeezing_db = {0.0, -3.0};
  cfg.options.heatmap_antisqueezing_db = {0.0, 3.0, 6.0};
  cfg.options.alpha_sq_list = {1e6, 4e6};
  for (const auto &name : commands::names()) {
    const auto t = commands::run(name, cfg);
    EXPECT_FALSE(t.rows.empty()) << name;
    for (const auto &row : t.rows)
      ASSERT_EQ(row.size(), t.columns.size()) << name;
  }
  EXPECT_FALSE(commands::is_command("fit"));
  EXPECT_THROW(commands::run("fit", cfg), ParameterError);
}

TEST(Commands, SimulateStride) {
  auto cfg = quick();
  cfg.options.trajectory_stride = 100;
  const auto t = commands::run("simulate", cfg);
  const auto full = lab::plan(cfg.scenario).total_steps();
  EXPECT_EQ(t.rows.size(), (full + 99) / 100);
}
