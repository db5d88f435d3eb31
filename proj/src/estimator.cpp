#include "phasetrack/estimator.hpp"

#include "phasetrack/error.hpp"
#include "phasetrack/minimize.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace phasetrack::estimator {

namespace {

void require_inputs(double alpha_sq, const sde::OUParams &ou) {
  ou.validate();
  if (!(alpha_sq >= 0.0) || !std::isfinite(alpha_sq))
    throw ParameterError("alpha_sq must be a finite value >= 0");
}

void require_r_bar(double r_bar) {
  if (!(r_bar > 0.0) || !std::isfinite(r_bar))
    throw ParameterError("effective squeezing factor must be > 0");
}

// h / (h + 1) and h (h + 2) / (h + 1)^2, finite at h = inf.
double filter_band_fraction(double h) { return 1.0 / (1.0 + 1.0 / h); }
double smoother_band_fraction(double h) {
  const double inv = 1.0 / (h + 1.0);
  return 1.0 - inv * inv;
}

struct BandRatios {
  double plus = 0.0;
  double minus = 0.0;
};

BandRatios band_ratios(double gamma_t, double lambda, const optics::BandwidthModel &bw) {
  if (std::isinf(bw.delta_omega0)) {
    if (!(bw.x >= 0.0 && bw.x < 1.0))
      throw ParameterError("bandwidth: pump parameter x must lie in [0, 1)");
    const double inf = std::numeric_limits<double>::infinity();
    return {inf, inf};
  }
  bw.validate();
  const double est_band = lambda + gamma_t;
  return {bw.antisqueezed_pole() / est_band, bw.squeezed_pole() / est_band};
}

void require_levels(const optics::Levels &levels) {
  if (!(levels.r_minus > 0.0) || !(levels.r_plus > 0.0))
    throw ParameterError("squeezing levels must be > 0");
}

} // namespace

void FilterConfig::validate() const {
  if (!(gamma >= 0.0))
    throw ParameterError("filter gain must be >= 0");
  if (!(lambda > 0.0))
    throw ParameterError("filter lambda must be > 0");
  if (!(alpha > 0.0))
    throw ParameterError("filter |alpha| must be > 0");
}

double gain_whitened(double alpha_sq, const sde::OUParams &ou, double r_bar) {
  require_inputs(alpha_sq, ou);
  require_r_bar(r_bar);
  const double c = 4.0 * ou.kappa * alpha_sq / r_bar;
  return c / (ou.lambda + std::sqrt(ou.lambda * ou.lambda + c));
}

double sigma_f_whitened(double alpha_sq, const sde::OUParams &ou, double r_bar) {
  require_inputs(alpha_sq, ou);
  require_r_bar(r_bar);
  const double u = 4.0 * ou.kappa * alpha_sq / (ou.lambda * ou.lambda * r_bar);
  return (ou.kappa / ou.lambda) / (1.0 + std::sqrt(1.0 + u));
}

double gain_explicit(double alpha_sq, const sde::OUParams &ou, double r_m, double r_p) {
  require_inputs(alpha_sq, ou);
  const double rm = std::exp(-2.0 * r_m);
  const double spread = std::exp(2.0 * r_p) - rm;
  const double b = ou.lambda + ou.kappa * spread / (2.0 * rm);
  const double c = 4.0 * alpha_sq * ou.kappa / rm;
  // -b + sqrt(b^2 + c), rationalized.
  return c / (b + std::sqrt(b * b + c));
}

double sigma_f_explicit(double alpha_sq, const sde::OUParams &ou, double r_m, double r_p) {
  require_inputs(alpha_sq, ou);
  const double rm = std::exp(-2.0 * r_m);
  const double spread = std::exp(2.0 * r_p) - rm;
  const double denom = 8.0 * alpha_sq + 4.0 * ou.lambda * spread;
  if (denom == 0.0)
    return ou.stationary_variance();
  const double p = 2.0 * ou.lambda * rm + ou.kappa * spread;
  const double q = 16.0 * alpha_sq * ou.kappa * rm;
  // -2 lambda R- + kappa d + sqrt(p^2 + q) = (sqrt(p^2 + q) - p) + 2 kappa d
  const double root = std::sqrt(p * p + q);
  const double numer = (root + p > 0.0 ? q / (root + p) : 0.0) + 2.0 * ou.kappa * spread;
  return numer / denom;
}

double sigma_s(double alpha_sq, const sde::OUParams &ou, double r_bar) {
  require_inputs(alpha_sq, ou);
  require_r_bar(r_bar);
  return ou.kappa /
         (2.0 * std::sqrt(4.0 * ou.kappa * alpha_sq / r_bar + ou.lambda * ou.lambda));
}

double epsilon(double alpha_sq, const sde::OUParams &ou, double r_bar) {
  require_inputs(alpha_sq, ou);
  require_r_bar(r_bar);
  return std::sqrt(ou.lambda * ou.lambda * r_bar / (4.0 * alpha_sq * ou.kappa));
}

double stationary_error_variance(double alpha_sq, const sde::OUParams &ou, double gamma,
                                 double r_bar) {
  require_inputs(alpha_sq, ou);
  require_r_bar(r_bar);
  if (!(gamma >= 0.0))
    throw ParameterError("gain must be >= 0");
  const double noise = gamma == 0.0 ? 0.0 : gamma * gamma * r_bar / (4.0 * alpha_sq);
  return (ou.kappa + noise) / (2.0 * (ou.lambda + gamma));
}

MsePrediction predict(double alpha_sq, const sde::OUParams &ou, double r_m, double r_p) {
  MsePrediction out;
  out.sigma_f_sq = sigma_f_explicit(alpha_sq, ou, r_m, r_p);
  if (!(out.sigma_f_sq <= 1.0))
    throw DomainError("filtered MSE exceeds 1 rad^2; second-order expansion invalid");
  out.r_bar = optics::effective_R(out.sigma_f_sq, r_m, r_p);
  out.gamma = gain_explicit(alpha_sq, ou, r_m, r_p);
  out.sigma_s_sq = sigma_s(alpha_sq, ou, out.r_bar);
  out.epsilon = epsilon(alpha_sq, ou, out.r_bar);
  return out;
}

FilterState filter_step(const FilterState &state, double current_increment,
                        const FilterConfig &cfg, double dt) {
  if (!(dt > 0.0))
    throw ParameterError("filter_step: dt must be > 0");
  FilterState next;
  next.phi_f = state.phi_f - cfg.lambda * state.phi_f * dt +
               cfg.gamma / (2.0 * cfg.alpha) * current_increment;
  next.t = state.t + dt;
  return next;
}

std::vector<double> smooth(std::span<const double> phi_f, double lambda, double gamma, double dt) {
  if (phi_f.empty())
    throw ParameterError("smooth: empty series");
  if (!(dt > 0.0))
    throw ParameterError("smooth: dt must be > 0");
  if (!(lambda > 0.0) || !(gamma >= 0.0))
    throw ParameterError("smooth: need lambda > 0 and gamma >= 0");

  const double rate = lambda + gamma;
  const double ch = rate * dt;
  const double decay = std::exp(-ch);
  const double one_minus = -std::expm1(-ch);
  // int_0^dt e^{-rate u} (phi_k (1 - u/dt) + phi_{k+1} u/dt) du = w_now phi_k + w_next phi_{k+1}
  const double w_next = (one_minus - ch * decay) / (rate * ch);
  const double w_now = one_minus / rate - w_next;
  const double scale = 2.0 * lambda + gamma;

  const std::size_t n = phi_f.size();
  std::vector<double> out(n);
  double tail = 0.0;
  out[n - 1] = 0.0;
  for (std::size_t k = n - 1; k-- > 0;) {
    tail = decay * tail + w_now * phi_f[k] + w_next * phi_f[k + 1];
    out[k] = scale * tail;
  }
  return out;
}

double sigma_f_finite_bw(double gamma_t, double alpha_sq, const sde::OUParams &ou,
                         const optics::Levels &levels, const optics::BandwidthModel &bw) {
  require_inputs(alpha_sq, ou);
  require_levels(levels);
  if (!(gamma_t >= 0.0))
    throw ParameterError("sigma_f_finite_bw: gain must be >= 0");
  const double est_band = ou.lambda + gamma_t;
  const double signal = ou.kappa / (2.0 * est_band);
  if (gamma_t == 0.0)
    return signal;
  if (!(alpha_sq > 0.0))
    throw ParameterError("sigma_f_finite_bw: alpha_sq must be > 0 for a nonzero gain");

  const BandRatios h = band_ratios(gamma_t, ou.lambda, bw);
  const double fp = (levels.r_plus - 1.0) * filter_band_fraction(h.plus);
  const double fm = (levels.r_minus - 1.0) * filter_band_fraction(h.minus);
  const double noise = gamma_t * gamma_t / (8.0 * alpha_sq * est_band);
  // s = signal + noise (1 + s fp + (1 - s) fm), linear in s.
  const double denom = 1.0 - noise * (fp - fm);
  if (!(denom > 0.0))
    throw DomainError("sigma_f_finite_bw: no physical solution for these parameters");
  return (signal + noise * (1.0 + fm)) / denom;
}

double sigma_s_finite_bw(double gamma_t, double alpha_sq, const sde::OUParams &ou,
                         const optics::Levels &levels, const optics::BandwidthModel &bw) {
  const double s_f = sigma_f_finite_bw(gamma_t, alpha_sq, ou, levels, bw);
  const double lam = ou.lambda;
  const double est_band = lam + gamma_t;
  const double cube = est_band * est_band * est_band;
  const double signal =
      ou.kappa * (2.0 * lam * lam + gamma_t * gamma_t + 2.0 * lam * gamma_t) / (4.0 * cube);
  if (gamma_t == 0.0)
    return signal;
  const BandRatios h = band_ratios(gamma_t, lam, bw);
  const double gp = smoother_band_fraction(h.plus);
  const double gm = smoother_band_fraction(h.minus);
  const double lead = 2.0 * lam + gamma_t;
  const double noise = gamma_t * gamma_t * lead * lead / (16.0 * alpha_sq * cube);
  return signal + noise * (1.0 + s_f * (levels.r_plus - 1.0) * gp +
                           (1.0 - s_f) * (levels.r_minus - 1.0) * gm);
}

double optimize_gain(double alpha_sq, const sde::OUParams &ou, const optics::Levels &levels,
                     const optics::BandwidthModel &bw, GainObjective objective) {
  require_inputs(alpha_sq, ou);
  require_levels(levels);
  if (ou.kappa == 0.0 || alpha_sq == 0.0)
    return 0.0;
  const double hi = 20.0 * gain_whitened(alpha_sq, ou, 1.0);
  auto mse = [&](double g) {
    try {
      return objective == GainObjective::filter ? sigma_f_finite_bw(g, alpha_sq, ou, levels, bw)
                                                : sigma_s_finite_bw(g, alpha_sq, ou, levels, bw);
    } catch (const DomainError &) {
      return std::numeric_limits<double>::infinity();
    }
  };
  const ScalarMinimum best = golden_section_minimize(mse, 0.0, hi, 1e-8);
  if (!std::isfinite(best.value))
    throw NumericError("optimize_gain: no admissible gain in the bracket");
  if (best.x >= hi * (1.0 - 1e-6) || best.x <= hi * 1e-9)
    throw NumericError("optimize_gain: minimum at the bracket edge (bracket exhausted)");
  return best.x;
}

MsePrediction predict_finite_bw(double alpha_sq, const sde::OUParams &ou,
                                const optics::Levels &levels, const optics::BandwidthModel &bw,
                                GainObjective objective) {
  MsePrediction out;
  out.gamma = optimize_gain(alpha_sq, ou, levels, bw, objective);
  out.sigma_f_sq = sigma_f_finite_bw(out.gamma, alpha_sq, ou, levels, bw);
  out.sigma_s_sq = sigma_s_finite_bw(out.gamma, alpha_sq, ou, levels, bw);
  if (out.sigma_f_sq <= 1.0) {
    out.r_bar = out.sigma_f_sq * levels.r_plus + (1.0 - out.sigma_f_sq) * levels.r_minus;
    out.epsilon = epsilon(alpha_sq, ou, out.r_bar);
  } else {
    out.r_bar = std::numeric_limits<double>::quiet_NaN();
    out.epsilon = std::numeric_limits<double>::quiet_NaN();
  }
  return out;
}

double sigma_s_for_levels(double alpha_sq, const sde::OUParams &ou, const optics::Levels &levels) {
  const double r_m = -0.5 * std::log(levels.r_minus);
  const double r_p = 0.5 * std::log(levels.r_plus);
  const double s_f = sigma_f_explicit(alpha_sq, ou, r_m, r_p);
  return sigma_s(alpha_sq, ou, optics::effective_R(s_f, r_m, r_p));
}

OptimalSqueezing optimal_squeezing(double alpha_sq, const sde::OUParams &ou, double l_sq) {
  require_inputs(alpha_sq, ou);
  if (!(l_sq >= 0.0 && l_sq < 1.0))
    throw ParameterError("optimal_squeezing: loss must lie in [0, 1)");
  auto objective = [&](double r) {
    return sigma_s_for_levels(alpha_sq, ou, optics::lossy_levels(r, l_sq));
  };
  const double r_max = std::numbers::ln10; // 20 dB of pure squeezing
  ScalarMinimum best = golden_section_minimize(objective, 0.0, r_max, 0.0, 1e-7);
  const double at_zero = objective(0.0);
  if (at_zero <= best.value * (1.0 + 1e-12))
    best = {0.0, at_zero, best.evaluations + 1};

  OptimalSqueezing out;
  out.r = best.x;
  out.sigma_s_sq = best.value;
  const optics::Levels levels = optics::lossy_levels(best.x, l_sq);
  out.pure_db = optics::to_db(std::exp(2.0 * best.x));
  out.squeezing_db = optics::to_db(levels.r_minus);
  out.antisqueezing_db = optics::to_db(levels.r_plus);
  return out;
}

} // namespace phasetrack::estimator
