#pragma once

// Seedable noise generators: Wiener increments, the Ornstein-Uhlenbeck
// phase signal and one-pole shaped (Lorentzian) noise.

#include <cstdint>
#include <random>
#include <vector>

namespace phasetrack::sde {

/// Ornstein-Uhlenbeck signal parameters.
///   dphi = -lambda * phi dt + sqrt(kappa) dV
struct OUParams {
  double kappa = 1.9e4;  ///< rad^2/s
  double lambda = 5.9e4; ///< rad/s

  void validate() const;
  /// kappa / (2 lambda), rad^2.
  double stationary_variance() const;
};

/// One standard normal draw together with the step it scales.
struct NoiseDraw {
  double value = 0.0;
  double dt = 0.0;

  /// Wiener increment value * sqrt(dt).
  double increment() const;
};

/// Deterministic stream of standard normal variates.
///
/// 64-bit Mersenne Twister seeded through std::seed_seq, Box-Muller
/// transform. Both pieces are fully specified by the standard and this file,
/// so a given (seed, stream) replays bit-identically on every platform.
class NormalSource {
public:
  explicit NormalSource(std::uint64_t seed, std::uint64_t stream = 0);

  double next();
  /// Uniform in (0, 1].
  double uniform();

private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// n i.i.d. N(0, dt) increments.
std::vector<double> wiener_increments(std::uint64_t seed, std::size_t n, double dt);

/// Exact one-step OU transition driven by the standard normal g.
double ou_step(double prev, const OUParams &params, double dt, double g);

/// ou_step with the decay and noise scale cached for a fixed dt.
class OuPropagator {
public:
  OuPropagator(const OUParams &params, double dt);

  double step(double prev, double g) const { return decay_ * prev + scale_ * g; }
  double decay() const { return decay_; }
  double noise_scale() const { return scale_; }

private:
  double decay_;
  double scale_;
};

/// Streaming generator of noise increments whose power spectral density is
///   R(w) = 1 + (R - 1) b^2 / (w^2 + b^2)
/// (unit = white shot noise). A sampled version of H(s) = (s + b sqrt(R))/(s + b):
/// the ARMA(1,1) recursion below reproduces the exact autocovariance of the
/// continuous process integrated over each step, so the spectrum does not
/// depend on dt.
class ShapingFilter {
public:
  ShapingFilter(double pole_rate, double level, double dt);

  /// Output increment for one standard normal input.
  double step(double white);

  double pole_rate() const { return pole_rate_; }
  double level() const { return level_; }
  double dt() const { return dt_; }
  /// Internal one-pole memory.
  double memory() const { return memory_; }

private:
  double pole_rate_;
  double level_;
  double dt_;
  double sqrt_dt_;
  double decay_ = 0.0;   // e^{-b dt}
  double gain_ = 1.0;    // MA gain
  double feed_ = 0.0;    // gain * (decay - theta)
  bool identity_ = true; // level == 1
  double memory_ = 0.0;
};

/// Applies one step of the shaping filter. white_in.dt must equal the
/// filter's step.
double shaped_noise_step(ShapingFilter &state, const NoiseDraw &white_in);

} // namespace phasetrack::sde
