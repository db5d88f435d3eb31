#include "phasetrack/lab.hpp"

#include "phasetrack/error.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numeric>
#include <thread>

namespace phasetrack::lab {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kMaxLoopStep = 0.05; // dt * (lambda + gamma)
constexpr double kWarmupTimeConstants = 5.0;
constexpr double kTailTimeConstants = 5.0;

std::size_t steps_for(double time, double dt) {
  return static_cast<std::size_t>(std::llround(time / dt));
}

struct MeanStderr {
  double mean = 0.0;
  double stderr_ = 0.0;
};

MeanStderr mean_stderr(std::span<const double> values) {
  const double n = static_cast<double>(values.size());
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  if (values.size() < 2)
    return {mean, kNaN};
  double ss = 0.0;
  for (double v : values)
    ss += (v - mean) * (v - mean);
  return {mean, std::sqrt(ss / (n - 1.0)) / std::sqrt(n)};
}

// Runs body(i) for i in [0, count) on up to `jobs` threads; rethrows the
// first exception.
template <class Body> void parallel_for(std::size_t count, int jobs, Body body) {
  const std::size_t workers = std::clamp<std::size_t>(jobs < 1 ? 1 : jobs, 1, count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i)
      body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure)
            failure = std::current_exception();
        }
      }
    });
  }
  for (auto &t : pool)
    t.join();
  if (failure)
    std::rethrow_exception(failure);
}

optics::BandwidthModel resolve_bandwidth(const BandwidthSpec &spec, const Scenario &sc,
                                         const optics::Levels &levels) {
  optics::BandwidthModel bw;
  if (spec.x)
    bw.x = *spec.x;
  else if (!sc.beam.is_coherent())
    bw.x = optics::pump_x(levels.r_minus, levels.r_plus);
  if (spec.delta_omega0) {
    bw.delta_omega0 = *spec.delta_omega0;
  } else {
    const double gamma = estimator::gain_explicit(sc.beam.detected_alpha_sq(), sc.ou, sc.beam.r_m,
                                                  sc.beam.r_p);
    bw.delta_omega0 = optics::effective_bandwidth(sc.ou.lambda, gamma);
  }
  if (!std::isinf(bw.delta_omega0))
    bw.validate();
  return bw;
}

estimator::MsePrediction prediction_at_gain(double gamma, double alpha_sq, const sde::OUParams &ou,
                                            const optics::Levels &levels,
                                            const optics::BandwidthModel &bw) {
  estimator::MsePrediction p;
  p.gamma = gamma;
  p.sigma_f_sq = estimator::sigma_f_finite_bw(gamma, alpha_sq, ou, levels, bw);
  p.sigma_s_sq = estimator::sigma_s_finite_bw(gamma, alpha_sq, ou, levels, bw);
  p.r_bar = p.sigma_f_sq * levels.r_plus + (1.0 - p.sigma_f_sq) * levels.r_minus;
  p.epsilon = estimator::epsilon(alpha_sq, ou, p.r_bar);
  return p;
}

double mean_square_diff(std::span<const double> a, std::span<const double> b, std::size_t begin,
                        std::size_t end) {
  double acc = 0.0;
  for (std::size_t i = begin; i < end; ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return acc / static_cast<double>(end - begin);
}

// Normalized autocovariance at lags 0, 1, ... until it drops below `floor`
// or max_lag is reached.
std::vector<double> normalized_acf(std::span<const double> x, std::size_t max_lag, double floor) {
  const std::size_t n = x.size();
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
  std::vector<double> centered(n);
  std::transform(x.begin(), x.end(), centered.begin(), [&](double v) { return v - mean; });
  double var = 0.0;
  for (double v : centered)
    var += v * v;
  var /= static_cast<double>(n);

  std::vector<double> acf{1.0};
  for (std::size_t lag = 1; lag <= max_lag && lag < n; ++lag) {
    double acc = 0.0;
    for (std::size_t i = 0; i + lag < n; ++i)
      acc += centered[i] * centered[i + lag];
    const double rho = acc / static_cast<double>(n - lag) / var;
    acf.push_back(rho);
    if (rho < floor)
      break;
  }
  return acf;
}

// Least-squares fit of ln(rho) = -lag / tau through the origin, over lags
// where rho >= min_rho.
double fit_correlation_time(const std::vector<double> &acf, double lag_step, double min_rho) {
  double num = 0.0;
  double den = 0.0;
  for (std::size_t k = 1; k < acf.size(); ++k) {
    if (acf[k] < min_rho)
      break;
    const double tau = static_cast<double>(k) * lag_step;
    num += tau * tau;
    den += -tau * std::log(acf[k]);
  }
  if (!(den > 0.0))
    throw NumericError("autocorrelation decays within one sample; cannot fit a correlation time");
  return num / den;
}

} // namespace

std::string to_string(NoiseModel model) {
  switch (model) {
  case NoiseModel::full_sine:
    return "full-sine";
  case NoiseModel::second_order:
    return "second-order";
  case NoiseModel::effective_white:
    return "effective-white";
  }
  return "full-sine";
}

NoiseModel noise_model_from_string(const std::string &name) {
  if (name == "full-sine")
    return NoiseModel::full_sine;
  if (name == "second-order")
    return NoiseModel::second_order;
  if (name == "effective-white")
    return NoiseModel::effective_white;
  throw ParameterError("unknown noise model '" + name +
                       "' (accepted: full-sine, second-order, effective-white)");
}

double Scenario::warmup_time() const {
  return warmup.value_or(kWarmupTimeConstants / ou.lambda);
}

void Scenario::validate() const {
  ou.validate();
  beam.validate();
  if (!(beam.alpha_sq > 0.0))
    throw ParameterError("alpha_sq must be > 0 for a closed-loop run");
  if (!(dt > 0.0) || !std::isfinite(dt))
    throw ParameterError("dt must be > 0");
  if (noise_substeps < 1)
    throw ParameterError("noise_substeps must be >= 1");
  if (!(duration > 0.0) || !std::isfinite(duration))
    throw ParameterError("duration must be > 0");
  if (warmup && !(*warmup >= kWarmupTimeConstants / ou.lambda * (1.0 - 1e-12)))
    throw ParameterError("warmup must be >= 5 / lambda");
  if (trials < 1)
    throw ParameterError("trials must be >= 1");
  if (gamma && !(*gamma > 0.0))
    throw ParameterError("gain override must be > 0");
  if (duration / dt > 1e9)
    throw ParameterError("duration / dt exceeds 1e9 steps");
}

LoopPlan analyze(const Scenario &sc) {
  sc.validate();
  LoopPlan p;
  const double alpha_sq = sc.beam.detected_alpha_sq();
  p.alpha = sc.beam.detected_alpha();
  p.levels = {sc.beam.r_minus(), sc.beam.r_plus()};
  p.csl_sigma_s_sq = estimator::sigma_s(sc.beam.alpha_sq, sc.ou, 1.0);

  if (sc.bandwidth) {
    p.bandwidth = resolve_bandwidth(*sc.bandwidth, sc, p.levels);
    if (sc.gamma)
      p.prediction = prediction_at_gain(*sc.gamma, alpha_sq, sc.ou, p.levels, *p.bandwidth);
    else
      p.prediction = estimator::predict_finite_bw(alpha_sq, sc.ou, p.levels, *p.bandwidth,
                                                  sc.gain_objective);
  } else if (sc.gamma) {
    const optics::BandwidthModel broadband{std::numeric_limits<double>::infinity(), 0.0};
    p.prediction = prediction_at_gain(*sc.gamma, alpha_sq, sc.ou, p.levels, broadband);
  } else {
    p.prediction = estimator::predict(alpha_sq, sc.ou, sc.beam.r_m, sc.beam.r_p);
  }
  p.gamma = p.prediction.gamma;
  return p;
}

LoopPlan plan(const Scenario &sc) {
  LoopPlan p = analyze(sc);
  const double loop_rate = sc.ou.lambda + p.gamma;
  if (sc.dt * loop_rate > kMaxLoopStep * (1.0 + 1e-12))
    throw ParameterError("dt too coarse: need dt <= 0.05 / (lambda + gamma) = " +
                         std::to_string(kMaxLoopStep / loop_rate) + " s");
  p.warmup_steps = steps_for(sc.warmup_time(), sc.dt);
  p.window_steps = std::max<std::size_t>(1, steps_for(sc.duration, sc.dt));
  p.tail_steps = static_cast<std::size_t>(std::ceil(kTailTimeConstants / loop_rate / sc.dt));
  return p;
}

Trajectory run_closed_loop(const Scenario &sc, std::uint64_t trial_index) {
  const LoopPlan p = plan(sc);
  const std::size_t n = p.total_steps();
  const int sub = sc.noise_substeps;
  const double base_dt = sc.dt / sub;

  sde::NormalSource rng(sc.master_seed, trial_index);
  const sde::OuPropagator signal(sc.ou, base_dt);

  std::optional<sde::ShapingFilter> shape_x;
  std::optional<sde::ShapingFilter> shape_p;
  if (p.bandwidth && !std::isinf(p.bandwidth->delta_omega0)) {
    shape_x.emplace(p.bandwidth->squeezed_pole(), p.levels.r_minus, base_dt);
    shape_p.emplace(p.bandwidth->antisqueezed_pole(), p.levels.r_plus, base_dt);
  }
  const double white_x = std::sqrt(p.levels.r_minus * base_dt);
  const double white_p = std::sqrt(p.levels.r_plus * base_dt);

  // effective-white uses the predicted mixture of the two quadratures.
  const double mix_var = std::clamp(p.prediction.sigma_f_sq, 0.0, 1.0);
  const double mix_x = std::sqrt(1.0 - mix_var);
  const double mix_p = std::sqrt(mix_var);

  const estimator::FilterConfig cfg{p.gamma, sc.ou.lambda, p.alpha};
  cfg.validate();

  Trajectory tr;
  tr.dt = sc.dt;
  tr.lambda = sc.ou.lambda;
  tr.gamma = p.gamma;
  tr.t.resize(n);
  tr.phi.resize(n);
  tr.current.resize(n);
  tr.phi_f.resize(n);
  tr.window_begin = p.warmup_steps;
  tr.window_end = p.warmup_steps + p.window_steps;

  double phi = std::sqrt(sc.ou.stationary_variance()) * rng.next();
  estimator::FilterState filter;

  for (std::size_t k = 0; k < n; ++k) {
    tr.t[k] = static_cast<double>(k) * sc.dt;
    tr.phi[k] = phi;
    tr.phi_f[k] = filter.phi_f;
    const double delta = phi - filter.phi_f;

    optics::QuadratureNoise noise;
    for (int s = 0; s < sub; ++s) {
      const double g_signal = rng.next();
      const double g_x = rng.next();
      const double g_p = rng.next();
      phi = signal.step(phi, g_signal);
      noise.x += shape_x ? shape_x->step(g_x) : white_x * g_x;
      noise.p += shape_p ? shape_p->step(g_p) : white_p * g_p;
    }

    double increment = 0.0;
    switch (sc.noise_model) {
    case NoiseModel::full_sine:
      increment = optics::homodyne_increment_full(delta, sc.beam, sc.dt, noise);
      break;
    case NoiseModel::second_order:
      increment = optics::homodyne_increment_second_order(delta, sc.beam, sc.dt, noise);
      break;
    case NoiseModel::effective_white:
      increment = 2.0 * p.alpha * delta * sc.dt + mix_x * noise.x + mix_p * noise.p;
      break;
    }
    tr.current[k] = increment;
    filter = estimator::filter_step(filter, increment, cfg, sc.dt);
  }

  tr.phi_s = estimator::smooth(tr.phi_f, sc.ou.lambda, p.gamma, sc.dt);
  return tr;
}

TrialMse window_mse(const Trajectory &tr) {
  if (tr.window_end <= tr.window_begin || tr.window_end > tr.size())
    throw ParameterError("trajectory has an empty MSE window");
  return {mean_square_diff(tr.phi, tr.phi_f, tr.window_begin, tr.window_end),
          mean_square_diff(tr.phi, tr.phi_s, tr.window_begin, tr.window_end)};
}

MseReport monte_carlo(const Scenario &sc, int jobs) {
  if (sc.trials < 2)
    throw ParameterError("monte_carlo needs trials >= 2");
  const LoopPlan p = plan(sc);

  MseReport report;
  report.trials = sc.trials;
  report.per_trial.resize(static_cast<std::size_t>(sc.trials));
  parallel_for(report.per_trial.size(), jobs, [&](std::size_t i) {
    report.per_trial[i] = window_mse(run_closed_loop(sc, i));
  });

  std::vector<double> f;
  std::vector<double> s;
  for (const auto &m : report.per_trial) {
    f.push_back(m.sigma_f_sq);
    s.push_back(m.sigma_s_sq);
  }
  const MeanStderr fs = mean_stderr(f);
  const MeanStderr ss = mean_stderr(s);
  report.sigma_f_sq_mean = fs.mean;
  report.sigma_f_sq_stderr = fs.stderr_;
  report.sigma_s_sq_mean = ss.mean;
  report.sigma_s_sq_stderr = ss.stderr_;
  report.predicted = p.prediction;
  report.csl_sigma_s_sq = p.csl_sigma_s_sq;
  report.improvement_vs_csl = 1.0 - ss.mean / p.csl_sigma_s_sq;
  report.independent_samples = sc.duration * sc.ou.lambda;
  return report;
}

std::vector<SqueezingRow> sweep_squeezing(const Scenario &base, const LevelList &levels,
                                          const SweepOptions &opts) {
  if (levels.empty())
    throw ParameterError("sweep_squeezing: empty level list");
  std::vector<SqueezingRow> rows;
  rows.reserve(levels.size());
  for (const auto &[r_m, r_p] : levels) {
    Scenario sc = base;
    sc.beam.r_m = r_m;
    sc.beam.r_p = r_p;
    sc.beam.validate();
    const double alpha_sq = sc.beam.detected_alpha_sq();

    SqueezingRow row;
    row.squeezing_db = optics::to_db(sc.beam.r_minus());
    row.antisqueezing_db = optics::to_db(sc.beam.r_plus());
    row.mse_csl = estimator::sigma_s(sc.beam.alpha_sq, sc.ou, 1.0);
    row.mse_first_order = estimator::sigma_s(alpha_sq, sc.ou, sc.beam.r_minus());
    const double pure_minus = sc.beam.r_minus();
    row.mse_pure = estimator::sigma_s_for_levels(sc.beam.alpha_sq, sc.ou,
                                                 {pure_minus, 1.0 / pure_minus});
    if (opts.monte_carlo) {
      const MseReport mc = monte_carlo(sc, opts.jobs);
      row.mse_pred = mc.predicted.sigma_s_sq;
      row.mse_mc_mean = mc.sigma_s_sq_mean;
      row.mse_mc_stderr = mc.sigma_s_sq_stderr;
    } else {
      row.mse_pred = analyze(sc).prediction.sigma_s_sq;
      row.mse_mc_mean = kNaN;
      row.mse_mc_stderr = kNaN;
    }
    rows.push_back(row);
  }
  return rows;
}

std::vector<AlphaRow> sweep_alpha(const Scenario &base, const std::vector<double> &alpha_sq_list,
                                  const SweepOptions &opts) {
  if (alpha_sq_list.empty())
    throw ParameterError("sweep_alpha: empty amplitude list");
  std::vector<AlphaRow> rows;
  for (double alpha_sq : alpha_sq_list) {
    Scenario sq = base;
    sq.beam.alpha_sq = alpha_sq;
    Scenario coh = sq;
    coh.beam.r_m = 0.0;
    coh.beam.r_p = 0.0;
    const LoopPlan sq_plan = analyze(sq);
    const double detected = sq.beam.detected_alpha_sq();

    AlphaRow row;
    row.alpha_sq = alpha_sq;
    row.mse_csl = estimator::sigma_s(alpha_sq, sq.ou, 1.0);
    row.mse_coh_pred = estimator::sigma_s(detected, sq.ou, 1.0);
    row.mse_sq_pred = sq_plan.prediction.sigma_s_sq;
    row.mse_pure_opt = estimator::optimal_squeezing(alpha_sq, sq.ou, 0.0).sigma_s_sq;
    row.gamma = estimator::gain_explicit(detected, sq.ou, sq.beam.r_m, sq.beam.r_p);
    row.delta_omega_eff = optics::effective_bandwidth(sq.ou.lambda, row.gamma);

    if (sq.beam.is_coherent()) {
      row.mse_sq_opt = kNaN;
      row.fixed_vs_opt_gap = kNaN;
      row.n_sq_eff = 0.0;
    } else {
      const optics::Levels lv = sq_plan.levels;
      const double loss = optics::loss_from_levels(lv.r_minus, lv.r_plus);
      row.mse_sq_opt = estimator::optimal_squeezing(detected, sq.ou, loss).sigma_s_sq;
      const double broadband = estimator::sigma_s_for_levels(detected, sq.ou, lv);
      row.fixed_vs_opt_gap = broadband / row.mse_sq_opt - 1.0;
      row.n_sq_eff = optics::photon_flux_sq(lv.r_minus, lv.r_plus,
                                            optics::pump_x(lv.r_minus, lv.r_plus),
                                            row.delta_omega_eff);
    }
    row.n_eff = alpha_sq + row.n_sq_eff;

    if (opts.monte_carlo) {
      const MseReport sq_mc = monte_carlo(sq, opts.jobs);
      const MseReport coh_mc = monte_carlo(coh, opts.jobs);
      row.mse_mc_sq_mean = sq_mc.sigma_s_sq_mean;
      row.mse_mc_sq_stderr = sq_mc.sigma_s_sq_stderr;
      row.mse_mc_coh_mean = coh_mc.sigma_s_sq_mean;
      row.mse_mc_coh_stderr = coh_mc.sigma_s_sq_stderr;
    } else {
      row.mse_mc_sq_mean = row.mse_mc_sq_stderr = kNaN;
      row.mse_mc_coh_mean = row.mse_mc_coh_stderr = kNaN;
    }
    rows.push_back(row);
  }
  return rows;
}

Heatmap heatmap_squeezing(const Scenario &base, const std::vector<double> &squeezing_db,
                          const std::vector<double> &antisqueezing_db, double l_sq) {
  if (squeezing_db.empty() || antisqueezing_db.empty())
    throw ParameterError("heatmap_squeezing: empty grid");
  base.ou.validate();
  base.beam.validate();
  const double alpha_sq = base.beam.detected_alpha_sq();

  Heatmap map;
  for (double sq_db : squeezing_db) {
    if (!(sq_db <= 0.0))
      throw ParameterError("heatmap_squeezing: squeezing levels must be <= 0 dB");
    const double r_minus = optics::from_db(sq_db);
    for (double asq_db : antisqueezing_db) {
      if (!(asq_db >= 0.0))
        throw ParameterError("heatmap_squeezing: anti-squeezing levels must be >= 0 dB");
      HeatmapCell cell{sq_db, asq_db, false, kNaN};
      const double r_plus = optics::from_db(asq_db);
      cell.forbidden = r_minus * r_plus < 1.0;
      if (!cell.forbidden)
        cell.mse = estimator::sigma_s_for_levels(alpha_sq, base.ou, {r_minus, r_plus});
      map.cells.push_back(cell);
    }
    LossCurvePoint pt{sq_db, kNaN, kNaN};
    if (r_minus > l_sq) {
      const double r_plus = optics::antisq_from_sq(r_minus, l_sq);
      pt.antisqueezing_db = optics::to_db(r_plus);
      pt.mse = estimator::sigma_s_for_levels(alpha_sq, base.ou, {r_minus, r_plus});
    }
    map.loss_curve.push_back(pt);
  }
  return map;
}

AutocorrReport autocorr_report(const Trajectory &tr) {
  const double loop_rate = tr.lambda + tr.gamma;
  const std::size_t begin = tr.window_begin;
  const std::size_t end = tr.window_end;
  if (end <= begin || static_cast<double>(end - begin) * tr.dt < 100.0 / loop_rate)
    throw ParameterError("autocorr_report: window shorter than 100 / (lambda + gamma)");

  std::vector<double> delta(end - begin);
  std::vector<double> delta_sq(end - begin);
  for (std::size_t i = begin; i < end; ++i) {
    delta[i - begin] = tr.phi[i] - tr.phi_f[i];
    delta_sq[i - begin] = delta[i - begin] * delta[i - begin];
  }
  const auto max_lag = static_cast<std::size_t>(std::ceil(10.0 / loop_rate / tr.dt));

  AutocorrReport rep;
  rep.lag_step = tr.dt;
  rep.acf_delta = normalized_acf(delta, max_lag, 0.1);
  rep.acf_delta_sq = normalized_acf(delta_sq, max_lag, 0.1);
  rep.tau_delta = fit_correlation_time(rep.acf_delta, tr.dt, 0.2);
  rep.tau_delta_sq = fit_correlation_time(rep.acf_delta_sq, tr.dt, 0.2);
  rep.expected_tau_delta = 1.0 / loop_rate;
  rep.expected_tau_delta_sq = 0.5 / loop_rate;
  return rep;
}

long cross_correlation_peak_lag(std::span<const double> x, std::span<const double> y, long max_lag) {
  if (x.size() != y.size() || x.empty())
    throw ParameterError("cross_correlation_peak_lag: series must be non-empty and equal length");
  const long n = static_cast<long>(x.size());
  if (max_lag < 0 || max_lag >= n)
    throw ParameterError("cross_correlation_peak_lag: max_lag out of range");
  long best_lag = 0;
  double best = -std::numeric_limits<double>::infinity();
  for (long lag = -max_lag; lag <= max_lag; ++lag) {
    const long lo = std::max(0L, -lag);
    const long hi = std::min(n, n - lag);
    double acc = 0.0;
    for (long i = lo; i < hi; ++i)
      acc += x[i] * y[i + lag];
    acc /= static_cast<double>(hi - lo);
    if (acc > best) {
      best = acc;
      best_lag = lag;
    }
  }
  return best_lag;
}

std::vector<BandwidthRow> bandwidth_comparison(const Scenario &base,
                                               const std::vector<double> &alpha_sq_list,
                                               const BandwidthOptions &opts) {
  if (alpha_sq_list.empty())
    throw ParameterError("bandwidth_comparison: empty amplitude list");
  base.ou.validate();
  base.beam.validate();
  if (base.beam.is_coherent())
    throw ParameterError("bandwidth_comparison: needs a squeezed beam");
  const optics::Levels levels{base.beam.r_minus(), base.beam.r_plus()};
  const double x = optics::pump_x(levels.r_minus, levels.r_plus);

  std::vector<BandwidthRow> rows;
  for (double alpha_sq : alpha_sq_list) {
    optics::SqueezedBeam beam = base.beam;
    beam.alpha_sq = alpha_sq;
    const double detected = beam.detected_alpha_sq();

    BandwidthRow row;
    row.alpha_sq = alpha_sq;
    row.gamma = estimator::gain_explicit(detected, base.ou, beam.r_m, beam.r_p);
    row.delta_omega_eff =
        opts.delta_omega_override.value_or(optics::effective_bandwidth(base.ou.lambda, row.gamma));
    const optics::BandwidthModel bw{row.delta_omega_eff, x};
    row.gamma_tilde = estimator::optimize_gain(detected, base.ou, levels, bw, opts.objective);
    row.mse_broadband = estimator::sigma_s_for_levels(detected, base.ou, levels);
    row.mse_finite = estimator::sigma_s_finite_bw(row.gamma_tilde, detected, base.ou, levels, bw);
    row.gap = row.mse_finite / row.mse_broadband - 1.0;
    row.n_sq_eff = std::isinf(row.delta_omega_eff)
                       ? std::numeric_limits<double>::infinity()
                       : optics::photon_flux_sq(levels.r_minus, levels.r_plus, x, row.delta_omega_eff);
    row.n_eff = alpha_sq + row.n_sq_eff;
    row.sq_flux_share = row.n_sq_eff / row.n_eff;
    rows.push_back(row);
  }
  return rows;
}

} // namespace phasetrack::lab
