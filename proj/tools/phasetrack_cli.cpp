// phasetrack command-line tool. Talks to the library through the C API only.

#include "phasetrack/phasetrack.h"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace {

struct ConfigHandle {
  pt_config *ptr = nullptr;
  ~ConfigHandle() { pt_config_free(ptr); }
};

struct TableHandle {
  pt_table *ptr = nullptr;
  ~TableHandle() { pt_table_free(ptr); }
};

int report(pt_status status) {
  std::fprintf(stderr, "phasetrack: %s\n", pt_last_error());
  return static_cast<int>(status);
}

} // namespace

int main(int argc, char **argv) {
  std::vector<std::string> command_names;
  for (size_t i = 0; i < pt_command_count(); ++i)
    command_names.emplace_back(pt_command_name(i));

  CLI::App app{"Adaptive homodyne phase tracking with squeezed light: closed-form "
               "predictions and closed-loop Monte Carlo."};
  app.set_version_flag("--version", std::string(pt_version()));

  std::string command;
  std::string config_path;
  std::string out_path;
  std::string format = "csv";
  std::optional<std::uint64_t> seed;
  int jobs = 1;
  std::optional<double> alpha_sq;
  std::optional<double> squeezing_db;
  std::optional<int> trials;
  std::optional<double> duration_ms;

  app.add_option("command", command, "Command to run")
      ->required()
      ->check(CLI::IsMember(command_names));
  app.add_option("--config", config_path, "JSON scenario file")->check(CLI::ExistingFile);
  app.add_option("--out", out_path, "Output file (default: stdout)");
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--seed", seed, "Master seed");
  app.add_option("--jobs", jobs, "Monte Carlo worker threads (0 = hardware concurrency)")
      ->check(CLI::Range(0, 1024));
  app.add_option("--alpha-sq", alpha_sq, "Coherent photon flux |alpha|^2, 1/s");
  app.add_option("--squeezing-db", squeezing_db, "Squeezing level, dB (<= 0)");
  app.add_option("--trials", trials, "Monte Carlo trials");
  app.add_option("--duration-ms", duration_ms, "MSE window per trial, ms");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(PT_ERR_CONFIG);
  }
  if (jobs == 0)
    jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

  ConfigHandle cfg;
  pt_status st = config_path.empty() ? pt_config_new(&cfg.ptr)
                                     : pt_config_load(config_path.c_str(), &cfg.ptr);
  if (st != PT_OK)
    return report(st);

  const auto set = [&](const char *key, double value) {
    return pt_config_set_number(cfg.ptr, key, value);
  };
  if (seed && (st = set("seed", static_cast<double>(*seed))) != PT_OK)
    return report(st);
  if (alpha_sq && (st = set("alpha_sq", *alpha_sq)) != PT_OK)
    return report(st);
  if (squeezing_db && (st = set("squeezing_db", *squeezing_db)) != PT_OK)
    return report(st);
  if (trials && (st = set("trials", *trials)) != PT_OK)
    return report(st);
  if (duration_ms && (st = set("duration_ms", *duration_ms)) != PT_OK)
    return report(st);

  TableHandle result;
  if ((st = pt_run_command(cfg.ptr, command.c_str(), jobs, &result.ptr)) != PT_OK)
    return report(st);

  if (!out_path.empty()) {
    if ((st = pt_table_write(result.ptr, format.c_str(), out_path.c_str())) != PT_OK)
      return report(st);
    return 0;
  }
  char *text = nullptr;
  if ((st = pt_table_serialize(result.ptr, format.c_str(), &text)) != PT_OK)
    return report(st);
  std::fputs(text, stdout);
  pt_string_free(text);
  if (std::fflush(stdout) != 0) {
    std::fprintf(stderr, "phasetrack: failed writing to stdout\n");
    return static_cast<int>(PT_ERR_IO);
  }
  return 0;
}
