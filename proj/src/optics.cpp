#include "phasetrack/optics.hpp"

#include "phasetrack/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace phasetrack::optics {

namespace {

constexpr double kDbPerNeper = 20.0 / std::numbers::ln10; // 10 log10(e^{2r}) = r * kDbPerNeper

void require_loss(double l_sq, const char *where) {
  if (!(l_sq >= 0.0 && l_sq < 1.0))
    throw ParameterError(std::string(where) + ": loss must lie in [0, 1) (got " +
                         std::to_string(l_sq) + ")");
}

} // namespace

SqueezedBeam SqueezedBeam::coherent(double alpha_sq, double eta) {
  return SqueezedBeam{alpha_sq, 0.0, 0.0, eta};
}

SqueezedBeam SqueezedBeam::from_db(double alpha_sq, double squeezing_db, double antisqueezing_db,
                                   double eta) {
  return SqueezedBeam{alpha_sq, r_from_squeezing_db(squeezing_db),
                      r_from_antisqueezing_db(antisqueezing_db), eta};
}

void SqueezedBeam::validate() const {
  if (!(alpha_sq >= 0.0) || !std::isfinite(alpha_sq))
    throw ParameterError("alpha_sq must be >= 0");
  if (!(r_m >= 0.0) || !std::isfinite(r_m))
    throw ParameterError("r_m must be >= 0");
  if (!(r_p >= 0.0) || !std::isfinite(r_p))
    throw ParameterError("r_p must be >= 0");
  if (r_p < r_m)
    throw ParameterError("anti-squeezing below the uncertainty bound: r_p must be >= r_m");
  if (!(eta > 0.0 && eta <= 1.0))
    throw ParameterError("eta must lie in (0, 1]");
}

double SqueezedBeam::r_minus() const { return std::exp(-2.0 * r_m); }
double SqueezedBeam::r_plus() const { return std::exp(2.0 * r_p); }
double SqueezedBeam::detected_alpha() const { return std::sqrt(detected_alpha_sq()); }

void BandwidthModel::validate() const {
  if (!(delta_omega0 > 0.0))
    throw ParameterError("bandwidth: delta_omega0 must be > 0");
  if (!(x >= 0.0 && x < 1.0))
    throw ParameterError("bandwidth: pump parameter x must lie in [0, 1)");
}

double homodyne_increment_full(double delta, const SqueezedBeam &beam, double dt,
                               const QuadratureNoise &noise) {
  const double s = std::sin(delta);
  const double c = std::cos(delta);
  return 2.0 * beam.detected_alpha() * s * dt + s * noise.p + c * noise.x;
}

double homodyne_increment_second_order(double delta, const SqueezedBeam &beam, double dt,
                                       double unit_noise) {
  const double d2 = delta * delta;
  const double r_sq = d2 * beam.r_plus() + (1.0 - d2) * beam.r_minus();
  return 2.0 * beam.detected_alpha() * delta * dt + std::sqrt(r_sq) * unit_noise;
}

double homodyne_increment_second_order(double delta, const SqueezedBeam &beam, double dt,
                                       const QuadratureNoise &noise) {
  const double rm = beam.r_minus();
  const double rp = beam.r_plus();
  const double s = std::clamp(delta, -1.0, 1.0);
  const double c = std::sqrt(1.0 - s * s);
  const double mixed_var = c * c * rm + s * s * rp;
  const double target_var = rm + delta * delta * (rp - rm);
  const double mixed = c * noise.x + s * noise.p;
  return 2.0 * beam.detected_alpha() * delta * dt + std::sqrt(target_var / mixed_var) * mixed;
}

double effective_R(double sigma_f_sq, double r_m, double r_p) {
  if (!(sigma_f_sq >= 0.0 && sigma_f_sq <= 1.0))
    throw ParameterError("effective_R: sigma_f^2 must lie in [0, 1] (got " +
                         std::to_string(sigma_f_sq) + "); second-order expansion invalid");
  return sigma_f_sq * std::exp(2.0 * r_p) + (1.0 - sigma_f_sq) * std::exp(-2.0 * r_m);
}

Levels lossy_levels(double r, double l_sq) {
  if (!(r >= 0.0))
    throw ParameterError("lossy_levels: r must be >= 0");
  require_loss(l_sq, "lossy_levels");
  return Levels{(1.0 - l_sq) * std::exp(-2.0 * r) + l_sq, (1.0 - l_sq) * std::exp(2.0 * r) + l_sq};
}

double antisq_from_sq(double r_minus, double l_sq) {
  require_loss(l_sq, "antisq_from_sq");
  if (!(r_minus > l_sq))
    throw DomainError("antisq_from_sq: squeezing level must exceed the loss (R- > l_sq)");
  if (!(r_minus <= 1.0))
    throw DomainError("antisq_from_sq: squeezing level must be <= 1");
  const double t = 1.0 - l_sq;
  return t * t / (r_minus - l_sq) + l_sq;
}

double loss_from_levels(double r_minus, double r_plus) {
  if (!(r_minus > 0.0 && r_minus < 1.0 && r_plus > 1.0))
    throw DomainError("loss_from_levels: need 0 < R- < 1 < R+");
  const double product = r_minus * r_plus;
  if (product < 1.0)
    throw DomainError("loss_from_levels: levels violate R- R+ >= 1");
  return (product - 1.0) / (r_minus + r_plus - 2.0);
}

double pure_r_from_sq(double r_minus, double l_sq) {
  require_loss(l_sq, "pure_r_from_sq");
  if (!(r_minus > l_sq && r_minus <= 1.0))
    throw DomainError("pure_r_from_sq: need l_sq < R- <= 1");
  return -0.5 * std::log((r_minus - l_sq) / (1.0 - l_sq));
}

double efficiency(double xi, double rho, double zeta, double shot_to_circuit) {
  for (double v : {xi, rho, zeta})
    if (!(v >= 0.0 && v <= 1.0))
      throw ParameterError("efficiency: visibility, transmission and quantum efficiency must lie in [0, 1]");
  if (!(shot_to_circuit > 1.0))
    throw DomainError("efficiency: shot-to-circuit noise ratio must be > 1");
  if (std::isinf(shot_to_circuit))
    return xi * xi * rho * zeta;
  return xi * xi * rho * zeta * (shot_to_circuit - 1.0) / shot_to_circuit;
}

double spectrum(double omega, double level, const BandwidthModel &bw, Quadrature quadrature) {
  if (std::isinf(bw.delta_omega0))
    return level;
  bw.validate();
  const double pole = quadrature == Quadrature::squeezed ? bw.squeezed_pole() : bw.antisqueezed_pole();
  const double p2 = pole * pole;
  return 1.0 + (level - 1.0) * p2 / (omega * omega + p2);
}

double pump_x(double r_minus, double r_plus) {
  if (!(r_minus < 1.0) || !(r_plus > 1.0))
    throw DomainError("pump_x: requires R- < 1 < R+ (x undefined at vacuum)");
  if (!(r_minus > 0.0))
    throw DomainError("pump_x: requires R- > 0");
  const double root = std::sqrt((1.0 - r_minus) * (r_plus - 1.0));
  const double x = (r_plus - r_minus - 2.0 * root) / (r_plus + r_minus - 2.0);
  if (!std::isfinite(x))
    throw DomainError("pump_x: degenerate levels");
  return x;
}

double photon_number_density(double omega, const Levels &levels, const BandwidthModel &bw) {
  return 0.25 * (spectrum(omega, levels.r_plus, bw, Quadrature::antisqueezed) +
                 spectrum(omega, levels.r_minus, bw, Quadrature::squeezed)) -
         0.5;
}

double photon_flux_sq(double r_minus, double r_plus, double x, double delta_omega) {
  if (!(delta_omega > 0.0))
    throw ParameterError("photon_flux_sq: bandwidth must be > 0");
  return 0.25 * ((r_plus - 1.0) * (1.0 - x) + (r_minus - 1.0) * (1.0 + x)) * delta_omega / 2.0;
}

double effective_bandwidth(double lambda, double gamma) {
  if (!(lambda > 0.0) || !(gamma >= 0.0))
    throw ParameterError("effective_bandwidth: need lambda > 0 and gamma >= 0");
  return 2.0 * (lambda + gamma);
}

double to_db(double ratio) { return 10.0 * std::log10(ratio); }
double from_db(double db) { return std::pow(10.0, db / 10.0); }

double r_from_squeezing_db(double db) {
  if (!(db <= 0.0))
    throw ParameterError("squeezing level must be given in dB <= 0 (got " + std::to_string(db) + ")");
  return db == 0.0 ? 0.0 : -db / kDbPerNeper;
}

double r_from_antisqueezing_db(double db) {
  if (!(db >= 0.0))
    throw ParameterError("anti-squeezing level must be given in dB >= 0 (got " + std::to_string(db) +
                         ")");
  return db / kDbPerNeper;
}

} // namespace phasetrack::optics
