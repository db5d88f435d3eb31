#pragma once

// Closed-loop Monte Carlo harness: OU signal, homodyne measurement with
// feedback, Kalman filter and smoother, MSE statistics and the sweeps built
// on top of them.

#include "phasetrack/estimator.hpp"
#include "phasetrack/optics.hpp"
#include "phasetrack/sde.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace phasetrack::lab {

enum class NoiseModel { full_sine, second_order, effective_white };

std::string to_string(NoiseModel model);
NoiseModel noise_model_from_string(const std::string &name);

/// Finite squeezing bandwidth. An absent delta_omega0 selects the effective
/// bandwidth 2 (lambda + gamma); an absent x is derived from the levels.
struct BandwidthSpec {
  std::optional<double> delta_omega0;
  std::optional<double> x;
};

struct Scenario {
  sde::OUParams ou;
  optics::SqueezedBeam beam;
  std::optional<BandwidthSpec> bandwidth; ///< absent: white squeezing
  NoiseModel noise_model = NoiseModel::full_sine;
  double dt = 1e-8;                       ///< loop step, s
  int noise_substeps = 1;                 ///< noise is generated on a dt / substeps grid
  double duration = 2e-3;                 ///< MSE window per trial, s
  std::optional<double> warmup;           ///< default 5 / lambda
  int trials = 15;
  std::uint64_t master_seed = 1;
  std::optional<double> gamma;            ///< gain override, rad/s
  estimator::GainObjective gain_objective = estimator::GainObjective::filter;

  double warmup_time() const;
  /// Checks everything that does not need the loop gain.
  void validate() const;
};

/// Scenario with its gain, bandwidth and analytic predictions worked out.
struct LoopPlan {
  double alpha = 0.0; ///< detected |alpha|
  double gamma = 0.0;
  std::optional<optics::BandwidthModel> bandwidth;
  optics::Levels levels;
  estimator::MsePrediction prediction;
  double csl_sigma_s_sq = 0.0;
  std::size_t warmup_steps = 0;
  std::size_t window_steps = 0;
  std::size_t tail_steps = 0;

  std::size_t total_steps() const { return warmup_steps + window_steps + tail_steps; }
};

/// Gain, bandwidth and predictions without the step-size checks.
LoopPlan analyze(const Scenario &sc);

/// analyze() plus dt <= 0.05 / (lambda + gamma) and the step counts.
LoopPlan plan(const Scenario &sc);

struct Trajectory {
  double dt = 0.0;
  double lambda = 0.0;
  double gamma = 0.0;
  std::vector<double> t;
  std::vector<double> phi;
  std::vector<double> current; ///< homodyne increments I dt
  std::vector<double> phi_f;
  std::vector<double> phi_s;
  std::size_t window_begin = 0; ///< MSE window [begin, end)
  std::size_t window_end = 0;

  std::size_t size() const { return t.size(); }
};

/// One closed-loop run, deterministic in (master_seed, trial_index).
Trajectory run_closed_loop(const Scenario &sc, std::uint64_t trial_index);

struct TrialMse {
  double sigma_f_sq = 0.0;
  double sigma_s_sq = 0.0;
};

TrialMse window_mse(const Trajectory &tr);

struct MseReport {
  double sigma_f_sq_mean = 0.0;
  double sigma_f_sq_stderr = 0.0;
  double sigma_s_sq_mean = 0.0;
  double sigma_s_sq_stderr = 0.0;
  int trials = 0;
  estimator::MsePrediction predicted;
  double csl_sigma_s_sq = 0.0;
  double improvement_vs_csl = 0.0;       ///< 1 - sigma_s^2 / CSL
  double independent_samples = 0.0;     ///< duration * lambda per trial
  std::vector<TrialMse> per_trial;
};

/// Runs sc.trials closed loops on up to `jobs` threads.
MseReport monte_carlo(const Scenario &sc, int jobs = 1);

struct SweepOptions {
  bool monte_carlo = true;
  int jobs = 1;
};

struct SqueezingRow {
  double squeezing_db = 0.0;
  double antisqueezing_db = 0.0;
  double mse_mc_mean = 0.0;
  double mse_mc_stderr = 0.0;
  double mse_pred = 0.0;        ///< self-consistent theory, detected amplitude
  double mse_csl = 0.0;         ///< coherent beam, unit efficiency
  double mse_first_order = 0.0; ///< r_bar = e^{-2 r_m}
  double mse_pure = 0.0;        ///< pure state with the same squeezing, unit efficiency
};

/// (r_m, r_p) pairs.
using LevelList = std::vector<std::pair<double, double>>;

std::vector<SqueezingRow> sweep_squeezing(const Scenario &base, const LevelList &levels,
                                          const SweepOptions &opts = {});

struct AlphaRow {
  double alpha_sq = 0.0;
  double mse_mc_sq_mean = 0.0;
  double mse_mc_sq_stderr = 0.0;
  double mse_mc_coh_mean = 0.0;
  double mse_mc_coh_stderr = 0.0;
  double mse_csl = 0.0;          ///< (i)
  double mse_coh_pred = 0.0;     ///< (ii) coherent, with efficiency
  double mse_sq_pred = 0.0;      ///< (iii) squeezed, with efficiency
  double mse_pure_opt = 0.0;     ///< (iv) pure, unit efficiency, optimal squeezing
  double mse_sq_opt = 0.0;       ///< optimal squeezing on this beam's loss curve
  double fixed_vs_opt_gap = 0.0; ///< (iii) / mse_sq_opt - 1
  double gamma = 0.0;
  double delta_omega_eff = 0.0;
  double n_sq_eff = 0.0;
  double n_eff = 0.0;
};

std::vector<AlphaRow> sweep_alpha(const Scenario &base, const std::vector<double> &alpha_sq_list,
                                  const SweepOptions &opts = {});

struct HeatmapCell {
  double squeezing_db = 0.0;
  double antisqueezing_db = 0.0;
  bool forbidden = false;
  double mse = 0.0; ///< NaN when forbidden
};

struct LossCurvePoint {
  double squeezing_db = 0.0;
  double antisqueezing_db = 0.0; ///< NaN when unreachable for this loss
  double mse = 0.0;
};

struct Heatmap {
  std::vector<HeatmapCell> cells; ///< squeezing-major order
  std::vector<LossCurvePoint> loss_curve;
};

Heatmap heatmap_squeezing(const Scenario &base, const std::vector<double> &squeezing_db,
                          const std::vector<double> &antisqueezing_db, double l_sq);

struct AutocorrReport {
  double lag_step = 0.0;
  std::vector<double> acf_delta;    ///< normalized, lag 0 first
  std::vector<double> acf_delta_sq;
  double tau_delta = 0.0;           ///< exponential-fit correlation time, s
  double tau_delta_sq = 0.0;
  double expected_tau_delta = 0.0;  ///< 1 / (lambda + gamma)
  double expected_tau_delta_sq = 0.0;
};

AutocorrReport autocorr_report(const Trajectory &tr);

/// Lag (in samples) in [-max_lag, max_lag] maximizing mean x(t) y(t + lag).
long cross_correlation_peak_lag(std::span<const double> x, std::span<const double> y, long max_lag);

struct BandwidthOptions {
  std::optional<double> delta_omega_override; ///< replaces 2 (lambda + gamma)
  estimator::GainObjective objective = estimator::GainObjective::filter;
};

struct BandwidthRow {
  double alpha_sq = 0.0;
  double gamma = 0.0;
  double delta_omega_eff = 0.0;
  double gamma_tilde = 0.0;
  double mse_broadband = 0.0;
  double mse_finite = 0.0;
  double gap = 0.0; ///< mse_finite / mse_broadband - 1
  double n_sq_eff = 0.0;
  double n_eff = 0.0;
  double sq_flux_share = 0.0;
};

std::vector<BandwidthRow> bandwidth_comparison(const Scenario &base,
                                               const std::vector<double> &alpha_sq_list,
                                               const BandwidthOptions &opts = {});

} // namespace phasetrack::lab
