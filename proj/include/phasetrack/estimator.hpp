#pragma once

// Causal Kalman filter, anticausal smoother and the closed-form mean-square
// error theory for broadband and finite-bandwidth squeezing.
//
// Every alpha_sq argument below is the flux seen by the detector (the
// coherent flux already multiplied by the detection efficiency).

#include "phasetrack/optics.hpp"
#include "phasetrack/sde.hpp"

#include <span>
#include <vector>

namespace phasetrack::estimator {

struct FilterConfig {
  double gamma = 0.0;  ///< Kalman gain, rad/s
  double lambda = 0.0; ///< filter pole, rad/s (equal to the signal's lambda)
  double alpha = 1.0;  ///< detected |alpha|, sqrt(1/s)

  void validate() const;
};

struct FilterState {
  double phi_f = 0.0; ///< rad
  double t = 0.0;     ///< s
};

struct MsePrediction {
  double sigma_f_sq = 0.0; ///< filtered MSE, rad^2
  double sigma_s_sq = 0.0; ///< smoothed MSE, rad^2
  double gamma = 0.0;      ///< gain used, rad/s
  double r_bar = 1.0;      ///< effective squeezing factor
  double epsilon = 0.0;
};

/// Kalman gain for white measurement noise of level r_bar:
///   -lambda + sqrt(lambda^2 + 4 kappa alpha^2 / r_bar).
double gain_whitened(double alpha_sq, const sde::OUParams &ou, double r_bar);

/// Filtered MSE for white noise of level r_bar.
double sigma_f_whitened(double alpha_sq, const sde::OUParams &ou, double r_bar);

/// Gain with the sigma_f^2 / r_bar self-consistency solved exactly.
double gain_explicit(double alpha_sq, const sde::OUParams &ou, double r_m, double r_p);

/// Filtered MSE with the self-consistency solved exactly.
double sigma_f_explicit(double alpha_sq, const sde::OUParams &ou, double r_m, double r_p);

/// Smoothed MSE kappa / (2 sqrt(4 kappa alpha^2 / r_bar + lambda^2)).
double sigma_s(double alpha_sq, const sde::OUParams &ou, double r_bar);

/// Small parameter sqrt(lambda^2 r_bar / (4 alpha^2 kappa)).
double epsilon(double alpha_sq, const sde::OUParams &ou, double r_bar);

/// Stationary variance of the tracking error for an arbitrary gain:
///   (kappa + gamma^2 r_bar / (4 alpha^2)) / (2 (lambda + gamma)).
double stationary_error_variance(double alpha_sq, const sde::OUParams &ou, double gamma,
                                 double r_bar);

/// Broadband predictions for a beam with measured squeezing (r_m, r_p).
/// Throws DomainError if the self-consistent sigma_f^2 leaves [0, 1].
MsePrediction predict(double alpha_sq, const sde::OUParams &ou, double r_m, double r_p);

/// One Euler step of dphi_f = -lambda phi_f dt + gamma / (2 |alpha|) dI.
FilterState filter_step(const FilterState &state, double current_increment,
                        const FilterConfig &cfg, double dt);

/// Anticausal smoother
///   phi_s(t) = (2 lambda + gamma) int_t^inf e^{-(lambda + gamma)(s - t)} phi_f(s) ds
/// by one backward pass, with phi_f linear between samples. The integral is
/// cut at the end of the series.
std::vector<double> smooth(std::span<const double> phi_f, double lambda, double gamma, double dt);

// Finite-bandwidth squeezing. bw.delta_omega0 may be +infinity (broadband).

/// Filtered MSE for gain gamma_t; solves the linear self-consistency in
/// closed form. Throws DomainError if the solve is unphysical.
double sigma_f_finite_bw(double gamma_t, double alpha_sq, const sde::OUParams &ou,
                         const optics::Levels &levels, const optics::BandwidthModel &bw);

/// Smoothed MSE for gain gamma_t.
double sigma_s_finite_bw(double gamma_t, double alpha_sq, const sde::OUParams &ou,
                         const optics::Levels &levels, const optics::BandwidthModel &bw);

enum class GainObjective { filter, smoother };

/// Gain minimizing the finite-bandwidth filtered (default) or smoothed MSE
/// over (0, 20 gamma_coherent], golden-section to 1e-8 relative.
double optimize_gain(double alpha_sq, const sde::OUParams &ou, const optics::Levels &levels,
                     const optics::BandwidthModel &bw,
                     GainObjective objective = GainObjective::filter);

/// Finite-bandwidth predictions at the optimized gain.
MsePrediction predict_finite_bw(double alpha_sq, const sde::OUParams &ou,
                                const optics::Levels &levels, const optics::BandwidthModel &bw,
                                GainObjective objective = GainObjective::filter);

struct OptimalSqueezing {
  double r = 0.0;                ///< pure squeezing parameter
  double pure_db = 0.0;          ///< 10 log10 e^{2r}
  double squeezing_db = 0.0;     ///< measured, <= 0
  double antisqueezing_db = 0.0; ///< measured, >= 0
  double sigma_s_sq = 0.0;
};

/// Pure squeezing that minimizes the smoothed MSE when the state passes
/// through overall loss l_sq. Searches 0 to 20 dB; ties go to smaller r.
OptimalSqueezing optimal_squeezing(double alpha_sq, const sde::OUParams &ou, double l_sq);

/// Smoothed MSE of the self-consistent theory for measured levels.
double sigma_s_for_levels(double alpha_sq, const sde::OUParams &ou, const optics::Levels &levels);

} // namespace phasetrack::estimator
