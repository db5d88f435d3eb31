#include "phasetrack/config.hpp"

#include "phasetrack/error.hpp"

#include <json.hpp>

#include <cmath>
#include <limits>
#include <map>

namespace phasetrack::config {

namespace {

using nlohmann::json;

const std::map<std::string, std::string> &unit_table() {
  static const std::map<std::string, std::string> units{
      {"kappa", "rad^2/s"},
      {"lambda", "rad/s"},
      {"alpha_sq", "1/s"},
      {"eta", "1"},
      {"r_m", "1"},
      {"r_p", "1"},
      {"squeezing_db", "dB"},
      {"antisqueezing_db", "dB"},
      {"bandwidth.delta_omega0", "rad/s"},
      {"bandwidth.x", "1"},
      {"noise_model", "full-sine|second-order|effective-white"},
      {"dt", "s"},
      {"noise_substeps", "count"},
      {"duration", "s"},
      {"duration_ms", "ms"},
      {"warmup", "s"},
      {"trials", "count"},
      {"seed", "integer"},
      {"gamma", "rad/s"},
      {"gain_objective", "filter|smoother"},
      {"alpha_sq_list", "1/s"},
      {"levels", "[{r_m, r_p} | {squeezing_db, antisqueezing_db}]"},
      {"heatmap_squeezing_db", "dB"},
      {"heatmap_antisqueezing_db", "dB"},
      {"l_sq", "1"},
      {"delta_omega_override", "rad/s"},
      {"monte_carlo", "bool"},
      {"trajectory_stride", "count"},
  };
  return units;
}

[[noreturn]] void fail(const std::string &key, const std::string &what) {
  throw ConfigError("config key '" + key + "': " + what);
}

double number(const json &v, const std::string &key) {
  if (v.is_string()) {
    const auto &s = v.get_ref<const std::string &>();
    if (s == "inf" || s == "infinity")
      return std::numeric_limits<double>::infinity();
  }
  if (!v.is_number())
    fail(key, "expected a number");
  return v.get<double>();
}

double finite(const json &v, const std::string &key) {
  const double x = number(v, key);
  if (!std::isfinite(x))
    fail(key, "must be finite");
  return x;
}

double positive(double x, const std::string &key) {
  if (!(x > 0.0))
    fail(key, "must be > 0 (got " + json(x).dump() + ")");
  return x;
}

double non_negative(double x, const std::string &key) {
  if (!(x >= 0.0))
    fail(key, "must be >= 0 (got " + json(x).dump() + ")");
  return x;
}

long long integer(double x, const std::string &key, long long lo, long long hi) {
  if (x != std::floor(x) || x < static_cast<double>(lo) || x > static_cast<double>(hi))
    fail(key, "must be an integer in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return static_cast<long long>(x);
}

std::vector<double> number_list(const json &v, const std::string &key) {
  if (!v.is_array() || v.empty())
    fail(key, "expected a non-empty array of numbers");
  std::vector<double> out;
  for (const auto &e : v)
    out.push_back(finite(e, key));
  return out;
}

double squeezing_r(double db, const std::string &key) {
  if (!(db <= 0.0))
    fail(key, "squeezing level must be <= 0 dB");
  return optics::r_from_squeezing_db(db);
}

double antisqueezing_r(double db, const std::string &key) {
  if (!(db >= 0.0))
    fail(key, "anti-squeezing level must be >= 0 dB");
  return optics::r_from_antisqueezing_db(db);
}

std::pair<double, double> parse_level(const json &v) {
  const std::string key = "levels";
  if (!v.is_object())
    fail(key, "entries must be objects {r_m, r_p} or {squeezing_db, antisqueezing_db}");
  const bool by_r = v.contains("r_m") || v.contains("r_p");
  const bool by_db = v.contains("squeezing_db") || v.contains("antisqueezing_db");
  if (by_r == by_db || v.size() != 2)
    fail(key, "entries need exactly r_m and r_p, or squeezing_db and antisqueezing_db");
  std::pair<double, double> level;
  if (by_r) {
    if (!v.contains("r_m") || !v.contains("r_p"))
      fail(key, "entries need both r_m and r_p");
    level = {non_negative(finite(v["r_m"], "levels.r_m"), "levels.r_m"),
             non_negative(finite(v["r_p"], "levels.r_p"), "levels.r_p")};
  } else {
    if (!v.contains("squeezing_db") || !v.contains("antisqueezing_db"))
      fail(key, "entries need both squeezing_db and antisqueezing_db");
    level = {squeezing_r(finite(v["squeezing_db"], "levels.squeezing_db"), "levels.squeezing_db"),
             antisqueezing_r(finite(v["antisqueezing_db"], "levels.antisqueezing_db"),
                             "levels.antisqueezing_db")};
  }
  if (level.second < level.first)
    fail(key, "anti-squeezing must be at least as strong as squeezing (r_p >= r_m)");
  return level;
}

lab::BandwidthSpec parse_bandwidth(const json &v) {
  if (!v.is_object())
    fail("bandwidth", "expected an object {delta_omega0?, x?}");
  lab::BandwidthSpec spec;
  for (const auto &[k, val] : v.items()) {
    if (k == "delta_omega0")
      spec.delta_omega0 = positive(number(val, "bandwidth.delta_omega0"), "bandwidth.delta_omega0");
    else if (k == "x") {
      const double x = finite(val, "bandwidth.x");
      if (!(x >= 0.0 && x < 1.0))
        fail("bandwidth.x", "must lie in [0, 1)");
      spec.x = x;
    } else {
      fail("bandwidth." + k, "unknown key (accepted: delta_omega0, x)");
    }
  }
  return spec;
}

// Applies one key. `seen_r` / `seen_db` track how squeezing was specified.
void apply(RunConfig &cfg, const std::string &key, const json &v, bool &seen_r, bool &seen_db) {
  lab::Scenario &sc = cfg.scenario;
  CommandOptions &opt = cfg.options;
  if (key == "kappa") {
    sc.ou.kappa = non_negative(finite(v, key), key);
  } else if (key == "lambda") {
    sc.ou.lambda = positive(finite(v, key), key);
  } else if (key == "alpha_sq") {
    sc.beam.alpha_sq = non_negative(finite(v, key), key);
  } else if (key == "eta") {
    const double eta = finite(v, key);
    if (!(eta > 0.0 && eta <= 1.0))
      fail(key, "must lie in (0, 1]");
    sc.beam.eta = eta;
  } else if (key == "r_m") {
    seen_r = true;
    sc.beam.r_m = non_negative(finite(v, key), key);
  } else if (key == "r_p") {
    seen_r = true;
    sc.beam.r_p = non_negative(finite(v, key), key);
  } else if (key == "squeezing_db") {
    seen_db = true;
    sc.beam.r_m = squeezing_r(finite(v, key), key);
  } else if (key == "antisqueezing_db") {
    seen_db = true;
    sc.beam.r_p = antisqueezing_r(finite(v, key), key);
  } else if (key == "bandwidth") {
    if (v.is_null())
      sc.bandwidth.reset();
    else
      sc.bandwidth = parse_bandwidth(v);
  } else if (key == "noise_model") {
    if (!v.is_string())
      fail(key, "expected one of full-sine, second-order, effective-white");
    try {
      sc.noise_model = lab::noise_model_from_string(v.get<std::string>());
    } catch (const ParameterError &) {
      fail(key, "expected one of full-sine, second-order, effective-white");
    }
  } else if (key == "dt") {
    sc.dt = positive(finite(v, key), key);
  } else if (key == "noise_substeps") {
    sc.noise_substeps = static_cast<int>(integer(finite(v, key), key, 1, 1000));
  } else if (key == "duration") {
    sc.duration = positive(finite(v, key), key);
  } else if (key == "duration_ms") {
    sc.duration = positive(finite(v, key), key) * 1e-3;
  } else if (key == "warmup") {
    sc.warmup = positive(finite(v, key), key);
  } else if (key == "trials") {
    sc.trials = static_cast<int>(integer(finite(v, key), key, 1, 1000000));
  } else if (key == "seed") {
    if (v.is_number_unsigned() || (v.is_number_integer() && v.get<long long>() >= 0))
      sc.master_seed = v.get<std::uint64_t>();
    else if (v.is_number_float())
      sc.master_seed = static_cast<std::uint64_t>(
          integer(v.get<double>(), key, 0, 9007199254740992LL));
    else
      fail(key, "must be a non-negative integer");
  } else if (key == "gamma") {
    if (v.is_null())
      sc.gamma.reset();
    else
      sc.gamma = positive(finite(v, key), key);
  } else if (key == "gain_objective") {
    const std::string s = v.is_string() ? v.get<std::string>() : "";
    if (s == "filter")
      sc.gain_objective = estimator::GainObjective::filter;
    else if (s == "smoother")
      sc.gain_objective = estimator::GainObjective::smoother;
    else
      fail(key, "expected filter or smoother");
  } else if (key == "alpha_sq_list") {
    opt.alpha_sq_list = number_list(v, key);
    for (double a : opt.alpha_sq_list)
      positive(a, key);
  } else if (key == "levels") {
    if (!v.is_array() || v.empty())
      fail(key, "expected a non-empty array");
    opt.levels.clear();
    for (const auto &e : v)
      opt.levels.push_back(parse_level(e));
  } else if (key == "heatmap_squeezing_db") {
    opt.heatmap_squeezing_db = number_list(v, key);
    for (double d : opt.heatmap_squeezing_db)
      if (!(d <= 0.0))
        fail(key, "levels must be <= 0 dB");
  } else if (key == "heatmap_antisqueezing_db") {
    opt.heatmap_antisqueezing_db = number_list(v, key);
    for (double d : opt.heatmap_antisqueezing_db)
      non_negative(d, key);
  } else if (key == "l_sq") {
    const double l = finite(v, key);
    if (!(l >= 0.0 && l < 1.0))
      fail(key, "must lie in [0, 1)");
    opt.l_sq = l;
  } else if (key == "delta_omega_override") {
    if (v.is_null())
      opt.delta_omega_override.reset();
    else
      opt.delta_omega_override = positive(number(v, key), key);
  } else if (key == "monte_carlo") {
    if (!v.is_boolean())
      fail(key, "expected true or false");
    opt.monte_carlo = v.get<bool>();
  } else if (key == "trajectory_stride") {
    opt.trajectory_stride = static_cast<int>(integer(finite(v, key), key, 1, 1000000000));
  } else {
    fail(key, "unknown key");
  }
}

void check_beam(const RunConfig &cfg) {
  const auto &b = cfg.scenario.beam;
  if (b.r_p < b.r_m)
    throw ConfigError("config keys 'r_m'/'r_p': anti-squeezing must be at least as strong as "
                      "squeezing (r_p >= r_m)");
}

json number_or_inf(double x) {
  if (std::isinf(x))
    return "inf";
  return x;
}

} // namespace

RunConfig default_config() {
  RunConfig cfg;
  cfg.scenario.beam = optics::SqueezedBeam{1.0e6, 0.36, 0.59, 0.85};
  return cfg;
}

RunConfig parse_config(const std::string &text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error &e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object())
    throw ConfigError("config must be a JSON object");

  RunConfig cfg = default_config();
  bool seen_r = false;
  bool seen_db = false;
  for (const auto &[key, value] : doc.items())
    apply(cfg, key, value, seen_r, seen_db);
  if (seen_r && seen_db)
    throw ConfigError("config: give squeezing either as r_m/r_p or as squeezing_db/"
                      "antisqueezing_db, not both");
  if (doc.contains("duration") && doc.contains("duration_ms"))
    throw ConfigError("config: give either 'duration' or 'duration_ms', not both");
  check_beam(cfg);
  return cfg;
}

std::string to_json(const RunConfig &cfg) {
  const lab::Scenario &sc = cfg.scenario;
  const CommandOptions &opt = cfg.options;
  json j;
  j["kappa"] = sc.ou.kappa;
  j["lambda"] = sc.ou.lambda;
  j["alpha_sq"] = sc.beam.alpha_sq;
  j["eta"] = sc.beam.eta;
  j["r_m"] = sc.beam.r_m;
  j["r_p"] = sc.beam.r_p;
  if (sc.bandwidth) {
    json bw = json::object();
    if (sc.bandwidth->delta_omega0)
      bw["delta_omega0"] = number_or_inf(*sc.bandwidth->delta_omega0);
    if (sc.bandwidth->x)
      bw["x"] = *sc.bandwidth->x;
    j["bandwidth"] = bw;
  }
  j["noise_model"] = lab::to_string(sc.noise_model);
  j["dt"] = sc.dt;
  j["noise_substeps"] = sc.noise_substeps;
  j["duration"] = sc.duration;
  if (sc.warmup)
    j["warmup"] = *sc.warmup;
  j["trials"] = sc.trials;
  j["seed"] = sc.master_seed;
  if (sc.gamma)
    j["gamma"] = *sc.gamma;
  j["gain_objective"] =
      sc.gain_objective == estimator::GainObjective::filter ? "filter" : "smoother";
  j["alpha_sq_list"] = opt.alpha_sq_list;
  if (!opt.levels.empty()) {
    json levels = json::array();
    for (const auto &[r_m, r_p] : opt.levels)
      levels.push_back({{"r_m", r_m}, {"r_p", r_p}});
    j["levels"] = levels;
  }
  if (!opt.heatmap_squeezing_db.empty())
    j["heatmap_squeezing_db"] = opt.heatmap_squeezing_db;
  if (!opt.heatmap_antisqueezing_db.empty())
    j["heatmap_antisqueezing_db"] = opt.heatmap_antisqueezing_db;
  j["l_sq"] = opt.l_sq;
  if (opt.delta_omega_override)
    j["delta_omega_override"] = number_or_inf(*opt.delta_omega_override);
  j["monte_carlo"] = opt.monte_carlo;
  j["trajectory_stride"] = opt.trajectory_stride;
  return j.dump();
}

void set_number(RunConfig &cfg, const std::string &key, double value) {
  static const char *const kScalarKeys[] = {
      "kappa", "lambda", "alpha_sq", "eta", "r_m", "r_p", "squeezing_db", "antisqueezing_db",
      "dt", "noise_substeps", "duration", "duration_ms", "warmup", "trials", "seed", "gamma",
      "l_sq", "delta_omega_override", "trajectory_stride"};
  bool known = false;
  for (const char *k : kScalarKeys)
    known = known || key == k;
  if (!known)
    fail(key, "unknown numeric key");
  bool seen_r = false;
  bool seen_db = false;
  apply(cfg, key, json(value), seen_r, seen_db);
  check_beam(cfg);
}

std::string units_json() {
  json j = json::object();
  for (const auto &[k, u] : unit_table())
    j[k] = u;
  return j.dump();
}

} // namespace phasetrack::config
