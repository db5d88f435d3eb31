#include "phasetrack/commands.hpp"

#include "phasetrack/error.hpp"

#include <cmath>
#include <limits>

#ifndef PHASETRACK_VERSION
#define PHASETRACK_VERSION "dev"
#endif

namespace phasetrack::commands {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

using table::Column;
using table::Table;

std::vector<double> range(double from, double to, double step) {
  std::vector<double> out;
  const int n = static_cast<int>(std::lround((to - from) / step));
  for (int i = 0; i <= n; ++i)
    out.push_back(from + step * i);
  return out;
}

// Squeezing ladder 0 to -4 dB along the loss curve of the configured l_sq.
lab::LevelList default_levels(double l_sq) {
  lab::LevelList levels;
  for (double db : range(0.0, -4.0, -0.5)) {
    const double r_minus = optics::from_db(db);
    if (!(r_minus > l_sq))
      break;
    const double r_plus = optics::antisq_from_sq(r_minus, l_sq);
    levels.emplace_back(-0.5 * std::log(r_minus), 0.5 * std::log(r_plus));
  }
  return levels;
}

Table predict(const config::RunConfig &cfg) {
  const lab::Scenario &sc = cfg.scenario;
  const lab::LoopPlan p = lab::analyze(sc);
  Table t;
  t.columns = {{"alpha_sq", "1/s"},        {"detected_alpha_sq", "1/s"},
               {"r_minus", "1"},           {"r_plus", "1"},
               {"gamma", "rad/s"},         {"sigma_f_sq", "rad^2"},
               {"sigma_s_sq", "rad^2"},    {"r_bar", "1"},
               {"epsilon", "1"},           {"csl_sigma_s_sq", "rad^2"},
               {"improvement_vs_csl", "1"}, {"delta_omega_eff", "rad/s"},
               {"x", "1"},                 {"n_sq_eff", "1/s"}};
  const double dw = optics::effective_bandwidth(sc.ou.lambda, p.gamma);
  double x = kNaN;
  double n_sq = 0.0;
  if (!sc.beam.is_coherent() && p.levels.r_minus < 1.0 && p.levels.r_plus > 1.0) {
    x = p.bandwidth ? p.bandwidth->x : optics::pump_x(p.levels.r_minus, p.levels.r_plus);
    n_sq = optics::photon_flux_sq(p.levels.r_minus, p.levels.r_plus, x, dw);
  }
  t.add_row({sc.beam.alpha_sq, sc.beam.detected_alpha_sq(), p.levels.r_minus, p.levels.r_plus,
             p.gamma, p.prediction.sigma_f_sq, p.prediction.sigma_s_sq, p.prediction.r_bar,
             p.prediction.epsilon, p.csl_sigma_s_sq,
             1.0 - p.prediction.sigma_s_sq / p.csl_sigma_s_sq, dw, x, n_sq});
  return t;
}

Table simulate(const config::RunConfig &cfg) {
  const lab::Trajectory tr = lab::run_closed_loop(cfg.scenario, 0);
  Table t;
  t.columns = {{"t", "s"},         {"phi", "rad"},   {"current", "sqrt(s)"},
               {"phi_f", "rad"},   {"phi_s", "rad"}, {"in_window", "bool"}};
  const auto stride = static_cast<std::size_t>(cfg.options.trajectory_stride);
  for (std::size_t i = 0; i < tr.size(); i += stride) {
    const bool in_window = i >= tr.window_begin && i < tr.window_end;
    t.add_row({tr.t[i], tr.phi[i], tr.current[i], tr.phi_f[i], tr.phi_s[i], in_window ? 1.0 : 0.0});
  }
  return t;
}

Table mc(const config::RunConfig &cfg, int jobs) {
  const lab::MseReport r = lab::monte_carlo(cfg.scenario, jobs);
  Table t;
  t.columns = {{"trials", "count"},
               {"sigma_f_sq_mean", "rad^2"},
               {"sigma_f_sq_stderr", "rad^2"},
               {"sigma_s_sq_mean", "rad^2"},
               {"sigma_s_sq_stderr", "rad^2"},
               {"pred_sigma_f_sq", "rad^2"},
               {"pred_sigma_s_sq", "rad^2"},
               {"gamma", "rad/s"},
               {"r_bar", "1"},
               {"epsilon", "1"},
               {"csl_sigma_s_sq", "rad^2"},
               {"improvement_vs_csl", "1"},
               {"independent_samples", "count"}};
  t.add_row({static_cast<double>(r.trials), r.sigma_f_sq_mean, r.sigma_f_sq_stderr,
             r.sigma_s_sq_mean, r.sigma_s_sq_stderr, r.predicted.sigma_f_sq,
             r.predicted.sigma_s_sq, r.predicted.gamma, r.predicted.r_bar, r.predicted.epsilon,
             r.csl_sigma_s_sq, r.improvement_vs_csl, r.independent_samples});
  return t;
}

Table sweep_squeezing(const config::RunConfig &cfg, int jobs) {
  const lab::LevelList levels =
      cfg.options.levels.empty() ? default_levels(cfg.options.l_sq) : cfg.options.levels;
  const auto rows =
      lab::sweep_squeezing(cfg.scenario, levels, {cfg.options.monte_carlo, jobs});
  Table t;
  t.columns = {{"squeezing_db", "dB"}, {"antisqueezing_db", "dB"}, {"mse_mc_mean", "rad^2"},
               {"mse_mc_stderr", "rad^2"}, {"mse_pred", "rad^2"},   {"mse_csl", "rad^2"},
               {"mse_first_order", "rad^2"}, {"mse_pure", "rad^2"}};
  for (const auto &r : rows)
    t.add_row({r.squeezing_db, r.antisqueezing_db, r.mse_mc_mean, r.mse_mc_stderr, r.mse_pred,
               r.mse_csl, r.mse_first_order, r.mse_pure});
  return t;
}

Table sweep_alpha(const config::RunConfig &cfg, int jobs) {
  const auto rows = lab::sweep_alpha(cfg.scenario, cfg.options.alpha_sq_list,
                                     {cfg.options.monte_carlo, jobs});
  Table t;
  t.columns = {{"alpha_sq", "1/s"},           {"mse_mc_sq_mean", "rad^2"},
               {"mse_mc_sq_stderr", "rad^2"}, {"mse_mc_coh_mean", "rad^2"},
               {"mse_mc_coh_stderr", "rad^2"}, {"mse_csl", "rad^2"},
               {"mse_coh_pred", "rad^2"},     {"mse_sq_pred", "rad^2"},
               {"mse_pure_opt", "rad^2"},     {"mse_sq_opt", "rad^2"},
               {"fixed_vs_opt_gap", "1"},     {"gamma", "rad/s"},
               {"delta_omega_eff", "rad/s"},  {"n_sq_eff", "1/s"},
               {"n_eff", "1/s"}};
  for (const auto &r : rows)
    t.add_row({r.alpha_sq, r.mse_mc_sq_mean, r.mse_mc_sq_stderr, r.mse_mc_coh_mean,
               r.mse_mc_coh_stderr, r.mse_csl, r.mse_coh_pred, r.mse_sq_pred, r.mse_pure_opt,
               r.mse_sq_opt, r.fixed_vs_opt_gap, r.gamma, r.delta_omega_eff, r.n_sq_eff,
               r.n_eff});
  return t;
}

Table heatmap(const config::RunConfig &cfg) {
  const auto &o = cfg.options;
  const std::vector<double> sq =
      o.heatmap_squeezing_db.empty() ? range(0.0, -12.0, -0.5) : o.heatmap_squeezing_db;
  const std::vector<double> asq =
      o.heatmap_antisqueezing_db.empty() ? range(0.0, 20.0, 0.5) : o.heatmap_antisqueezing_db;
  const lab::Heatmap map = lab::heatmap_squeezing(cfg.scenario, sq, asq, o.l_sq);
  Table t;
  t.columns = {{"squeezing_db", "dB"},
               {"antisqueezing_db", "dB"},
               {"forbidden", "bool"},
               {"mse", "rad^2"},
               {"loss_curve_antisqueezing_db", "dB"},
               {"loss_curve_mse", "rad^2"}};
  const std::size_t per_row = asq.size();
  for (std::size_t i = 0; i < map.cells.size(); ++i) {
    const auto &c = map.cells[i];
    const auto &lc = map.loss_curve[i / per_row];
    t.add_row({c.squeezing_db, c.antisqueezing_db, c.forbidden ? 1.0 : 0.0, c.mse,
               lc.antisqueezing_db, lc.mse});
  }
  return t;
}

Table bandwidth(const config::RunConfig &cfg) {
  lab::BandwidthOptions opts;
  opts.delta_omega_override = cfg.options.delta_omega_override;
  opts.objective = cfg.scenario.gain_objective;
  const auto rows = lab::bandwidth_comparison(cfg.scenario, cfg.options.alpha_sq_list, opts);
  Table t;
  t.columns = {{"alpha_sq", "1/s"},     {"gamma", "rad/s"},       {"delta_omega_eff", "rad/s"},
               {"gamma_tilde", "rad/s"}, {"mse_broadband", "rad^2"}, {"mse_finite", "rad^2"},
               {"gap", "1"},            {"n_sq_eff", "1/s"},       {"n_eff", "1/s"},
               {"sq_flux_share", "1"}};
  for (const auto &r : rows)
    t.add_row({r.alpha_sq, r.gamma, r.delta_omega_eff, r.gamma_tilde, r.mse_broadband,
               r.mse_finite, r.gap, r.n_sq_eff, r.n_eff, r.sq_flux_share});
  return t;
}

// Optimal pure squeezing on the configured loss curve, plus the gain the
// scenario would run with.
Table optimize(const config::RunConfig &cfg) {
  const lab::Scenario &sc = cfg.scenario;
  sc.ou.validate();
  sc.beam.validate();
  const double detected = sc.beam.detected_alpha_sq();
  const estimator::OptimalSqueezing best =
      estimator::optimal_squeezing(detected, sc.ou, cfg.options.l_sq);
  const lab::LoopPlan p = lab::analyze(sc);
  Table t;
  t.columns = {{"detected_alpha_sq", "1/s"}, {"l_sq", "1"},           {"r", "1"},
               {"pure_db", "dB"},            {"squeezing_db", "dB"},  {"antisqueezing_db", "dB"},
               {"sigma_s_sq", "rad^2"},      {"gamma", "rad/s"}};
  t.add_row({detected, cfg.options.l_sq, best.r, best.pure_db, best.squeezing_db,
             best.antisqueezing_db, best.sigma_s_sq, p.gamma});
  return t;
}

} // namespace

const std::vector<std::string> &names() {
  static const std::vector<std::string> n{"predict", "simulate", "mc",        "sweep-squeezing",
                                          "sweep-alpha", "heatmap", "bandwidth", "optimize"};
  return n;
}

bool is_command(const std::string &name) {
  for (const auto &n : names())
    if (n == name)
      return true;
  return false;
}

Table run(const std::string &name, const config::RunConfig &cfg, int jobs) {
  if (name == "predict")
    return predict(cfg);
  if (name == "simulate")
    return simulate(cfg);
  if (name == "mc")
    return mc(cfg, jobs);
  if (name == "sweep-squeezing")
    return sweep_squeezing(cfg, jobs);
  if (name == "sweep-alpha")
    return sweep_alpha(cfg, jobs);
  if (name == "heatmap")
    return heatmap(cfg);
  if (name == "bandwidth")
    return bandwidth(cfg);
  if (name == "optimize")
    return optimize(cfg);
  throw ParameterError("unknown command '" + name + "'");
}

table::Meta meta_for(const std::string &name, const config::RunConfig &cfg) {
  table::Meta m;
  m.command = name;
  m.seed = cfg.scenario.master_seed;
  m.version = PHASETRACK_VERSION;
  m.scenario_json = config::to_json(cfg);
  m.units_json = config::units_json();
  return m;
}

} // namespace phasetrack::commands
