#pragma once

// Squeezed-beam measurement model: homodyne current increments, loss and
// efficiency transforms, Lorentzian squeezing spectra and photon flux.
//
// Squeezing levels are variance ratios to shot noise: R- = e^{-2 r_m} <= 1,
// R+ = e^{2 r_p} >= 1. In dB they are 10 log10(R), negative for squeezing.

namespace phasetrack::optics {

/// Phase-squeezed beam as seen by the homodyne detector.
///
/// r_m and r_p are the measured (post-loss) squeezing parameters. Detection
/// efficiency enters only through the coherent amplitude, which the detector
/// sees as sqrt(eta) |alpha| against unit vacuum noise.
struct SqueezedBeam {
  double alpha_sq = 1.0e6; ///< coherent photon flux |alpha|^2, 1/s
  double r_m = 0.0;
  double r_p = 0.0;
  double eta = 1.0;

  static SqueezedBeam coherent(double alpha_sq, double eta = 1.0);
  /// From squeezing / anti-squeezing levels in dB (squeezing_db <= 0 <= antisqueezing_db).
  static SqueezedBeam from_db(double alpha_sq, double squeezing_db, double antisqueezing_db,
                              double eta = 1.0);

  void validate() const;
  double r_minus() const; ///< e^{-2 r_m}
  double r_plus() const;  ///< e^{2 r_p}
  double detected_alpha_sq() const { return eta * alpha_sq; }
  double detected_alpha() const;
  bool is_coherent() const { return r_m == 0.0 && r_p == 0.0; }
};

/// Lorentzian squeezing spectrum parameters. The squeezed quadrature has pole
/// (1 + x) delta_omega0, the anti-squeezed one (1 - x) delta_omega0.
struct BandwidthModel {
  double delta_omega0 = 0.0; ///< rad/s
  double x = 0.0;            ///< normalized pump amplitude in [0, 1)

  void validate() const;
  double squeezed_pole() const { return (1.0 + x) * delta_omega0; }
  double antisqueezed_pole() const { return (1.0 - x) * delta_omega0; }
};

enum class Quadrature { squeezed, antisqueezed };

/// Measured squeezing / anti-squeezing levels.
struct Levels {
  double r_minus = 1.0;
  double r_plus = 1.0;
};

/// White or colored noise increments of the two quadratures for one step.
struct QuadratureNoise {
  double x = 0.0; ///< squeezed quadrature, variance R- dt when white
  double p = 0.0; ///< anti-squeezed quadrature, variance R+ dt when white
};

// Homodyne current, LO phase offset delta = phi - phi_f.

/// 2|a| sin(delta) dt + sin(delta) dP + cos(delta) dX.
double homodyne_increment_full(double delta, const SqueezedBeam &beam, double dt,
                               const QuadratureNoise &noise);

/// Second-order expansion: 2|a| delta dt + sqrt(delta^2 R+ + (1 - delta^2) R-) dW,
/// with dW a unit-rate Wiener increment.
double homodyne_increment_second_order(double delta, const SqueezedBeam &beam, double dt,
                                       double unit_noise);

/// Second-order expansion driven by quadrature noises. The noises are mixed
/// as c dX + s dP with (c, s) = (sqrt(1 - d^2), d), d = clamp(delta, -1, 1),
/// and rescaled so the white-noise variance is exactly the second-order one.
double homodyne_increment_second_order(double delta, const SqueezedBeam &beam, double dt,
                                       const QuadratureNoise &noise);

/// Effective time-independent squeezing factor
///   sigma_f^2 e^{2 r_p} + (1 - sigma_f^2) e^{-2 r_m}.
/// Throws ParameterError for sigma_f_sq outside [0, 1].
double effective_R(double sigma_f_sq, double r_m, double r_p);

/// Levels after overall loss l_sq applied to a pure state with parameter r.
Levels lossy_levels(double r, double l_sq);

/// Anti-squeezing level on the loss curve through R- for overall loss l_sq.
double antisq_from_sq(double r_minus, double l_sq);

/// Overall loss of the loss curve passing through (R-, R+).
double loss_from_levels(double r_minus, double r_plus);

/// Pure squeezing parameter that produces R- under loss l_sq.
double pure_r_from_sq(double r_minus, double l_sq);

/// Homodyne efficiency xi^2 rho zeta (S - 1)/S.
double efficiency(double xi, double rho, double zeta, double shot_to_circuit);

/// R(omega) = 1 + (R - 1) p^2 / (omega^2 + p^2) with p the quadrature's pole.
double spectrum(double omega, double level, const BandwidthModel &bw, Quadrature quadrature);

/// Normalized pump amplitude for a (R-, R+) pair.
double pump_x(double r_minus, double r_plus);

/// Squeezing photons per frequency mode: (R+(w) + R-(w))/4 - 1/2.
double photon_number_density(double omega, const Levels &levels, const BandwidthModel &bw);

/// Photon flux of the squeezed vacuum with bandwidth delta_omega, 1/s.
double photon_flux_sq(double r_minus, double r_plus, double x, double delta_omega);

/// Effective squeezing bandwidth 2 (lambda + gamma).
double effective_bandwidth(double lambda, double gamma);

double to_db(double ratio);
double from_db(double db);
/// r_m from a squeezing level in dB (<= 0).
double r_from_squeezing_db(double db);
/// r_p from an anti-squeezing level in dB (>= 0).
double r_from_antisqueezing_db(double db);

} // namespace phasetrack::optics
