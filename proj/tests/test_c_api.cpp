// Exercises the shared library through the public C header only.

#include "phasetrack/phasetrack.h"

#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

namespace {

struct ConfigHandle {
  pt_config *p = nullptr;
  ~ConfigHandle() { pt_config_free(p); }
};

struct TableHandle {
  pt_table *p = nullptr;
  ~TableHandle() { pt_table_free(p); }
};

} // namespace

TEST(CApi, VersionAndCommands) {
  EXPECT_STRNE(pt_version(), "");
  ASSERT_EQ(pt_command_count(), 8u);
  EXPECT_STREQ(pt_command_name(0), "predict");
  EXPECT_EQ(pt_command_name(99), nullptr);
}

TEST(CApi, ParseErrorsCarryMessages) {
  ConfigHandle c;
  EXPECT_EQ(pt_config_parse(R"({"duration": -1})", &c.p), PT_ERR_CONFIG);
  EXPECT_EQ(c.p, nullptr);
  EXPECT_NE(std::string(pt_last_error()).find("duration"), std::string::npos);
  EXPECT_EQ(pt_config_parse(nullptr, &c.p), PT_ERR_CONFIG);
  EXPECT_EQ(pt_config_load("/nonexistent/config.json", &c.p), PT_ERR_IO);
}

TEST(CApi, PredictThroughHandles) {
  ConfigHandle c;
  ASSERT_EQ(pt_config_new(&c.p), PT_OK);
  ASSERT_EQ(pt_config_set_number(c.p, "eta", 1.0), PT_OK);
  EXPECT_EQ(pt_config_set_number(c.p, "bogus", 1.0), PT_ERR_CONFIG);
  TableHandle t;
  ASSERT_EQ(pt_run_command(c.p, "predict", 1, &t.p), PT_OK) << pt_last_error();
  ASSERT_EQ(pt_table_rows(t.p), 1u);
  std::size_t col = pt_table_columns(t.p);
  for (std::size_t i = 0; i < pt_table_columns(t.p); ++i)
    if (std::string(pt_table_column_name(t.p, i)) == "sigma_s_sq")
      col = i;
  ASSERT_LT(col, pt_table_columns(t.p));
  EXPECT_STREQ(pt_table_column_unit(t.p, col), "rad^2");
  double v = 0.0;
  ASSERT_EQ(pt_table_value(t.p, 0, col, &v), PT_OK);
  double r_bar = 0.0;
  for (std::size_t i = 0; i < pt_table_columns(t.p); ++i)
    if (std::string(pt_table_column_name(t.p, i)) == "r_bar")
      pt_table_value(t.p, 0, i, &r_bar);
  double expected = 0.0;
  ASSERT_EQ(pt_sigma_s(1e6, 1.9e4, 5.9e4, r_bar, &expected), PT_OK);
  EXPECT_DOUBLE_EQ(v, expected);
  EXPECT_EQ(pt_table_value(t.p, 5, 0, &v), PT_ERR_CONFIG);
  EXPECT_EQ(pt_run_command(c.p, "nope", 1, &t.p), PT_ERR_CONFIG);
}

TEST(CApi, SerializeAndWrite) {
  ConfigHandle c;
  ASSERT_EQ(pt_config_parse(R"({"monte_carlo": false})", &c.p), PT_OK);
  TableHandle t;
  ASSERT_EQ(pt_run_command(c.p, "sweep-squeezing", 1, &t.p), PT_OK) << pt_last_error();
  char *csv = nullptr;
  ASSERT_EQ(pt_table_serialize(t.p, "csv", &csv), PT_OK);
  const std::string text(csv);
  pt_string_free(csv);
  EXPECT_EQ(text.rfind("# phasetrack", 0), 0u);
  EXPECT_EQ(pt_table_serialize(t.p, "yaml", &csv), PT_ERR_CONFIG);

  const auto path = std::filesystem::temp_directory_path() / "phasetrack_c_api_test.csv";
  ASSERT_EQ(pt_table_write(t.p, "csv", path.c_str()), PT_OK);
  std::ifstream in(path);
  const std::string on_disk((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  EXPECT_EQ(on_disk, text);
  std::filesystem::remove(path);
  EXPECT_EQ(pt_table_write(t.p, "csv", "/nonexistent/out.csv"), PT_ERR_IO);
}

TEST(CApi, ConfigJsonRoundTrip) {
  ConfigHandle c, d;
  ASSERT_EQ(pt_config_parse(R"({"squeezing_db": -5, "antisqueezing_db": 8})", &c.p), PT_OK);
  char *a = nullptr, *b = nullptr;
  ASSERT_EQ(pt_config_to_json(c.p, &a), PT_OK);
  ASSERT_EQ(pt_config_parse(a, &d.p), PT_OK);
  ASSERT_EQ(pt_config_to_json(d.p, &b), PT_OK);
  EXPECT_STREQ(a, b);
  pt_string_free(a);
  pt_string_free(b);
}

TEST(CApi, ClosedForms) {
  double g = 0.0, s = 0.0, db = 0.0;
  EXPECT_EQ(pt_gain_explicit(1e6, 1.9e4, 5.9e4, 0.0, 0.0, &g), PT_OK);
  EXPECT_NEAR(g, -5.9e4 + std::sqrt(5.9e4 * 5.9e4 + 4 * 1.9e4 * 1e6), 1e-6);
  EXPECT_EQ(pt_sigma_f_explicit(1e6, 1.9e4, 5.9e4, 0.36, 0.59, &s), PT_OK);
  EXPECT_GT(s, 0.0);
  EXPECT_EQ(pt_optimal_squeezing(1e6, 1.9e4, 5.9e4, 0.0, &db, &s), PT_OK);
  EXPECT_NEAR(db, 7.0, 1.0);
  EXPECT_EQ(pt_gain_explicit(-1.0, 1.9e4, 5.9e4, 0.0, 0.0, &g), PT_ERR_CONFIG);
  EXPECT_EQ(pt_gain_explicit(1e6, 1.9e4, 5.9e4, 0.0, 0.0, nullptr), PT_ERR_CONFIG);
  EXPECT_EQ(pt_optimal_squeezing(1e6, 1.9e4, 5.9e4, 1.0, &db, &s), PT_ERR_CONFIG);
}
