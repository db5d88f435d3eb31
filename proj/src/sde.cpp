#include "phasetrack/sde.hpp"

#include "phasetrack/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace phasetrack::sde {

void OUParams::validate() const {
  if (!(kappa >= 0.0) || !std::isfinite(kappa))
    throw ParameterError("kappa must be >= 0 (got " + std::to_string(kappa) + ")");
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw ParameterError("lambda must be > 0 (got " + std::to_string(lambda) + ")");
}

double OUParams::stationary_variance() const { return kappa / (2.0 * lambda); }

double NoiseDraw::increment() const { return value * std::sqrt(dt); }

namespace {

std::seed_seq make_seq(std::uint64_t seed, std::uint64_t stream) {
  return std::seed_seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                       static_cast<std::uint32_t>(stream),
                       static_cast<std::uint32_t>(stream >> 32)};
}

std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream) {
  auto seq = make_seq(seed, stream);
  return std::mt19937_64(seq);
}

} // namespace

NormalSource::NormalSource(std::uint64_t seed, std::uint64_t stream)
    : engine_(make_engine(seed, stream)) {}

double NormalSource::uniform() {
  // 53 random bits; shifted into (0, 1] so the logarithm below is finite.
  return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
}

double NormalSource::next() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double radius = std::sqrt(-2.0 * std::log(uniform()));
  const double angle = 2.0 * std::numbers::pi * uniform();
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

std::vector<double> wiener_increments(std::uint64_t seed, std::size_t n, double dt) {
  if (!(dt > 0.0))
    throw ParameterError("wiener_increments: dt must be > 0");
  if (n == 0)
    throw ParameterError("wiener_increments: n must be >= 1");
  NormalSource source(seed);
  const double scale = std::sqrt(dt);
  std::vector<double> out(n);
  for (auto &v : out)
    v = scale * source.next();
  return out;
}

double ou_step(double prev, const OUParams &params, double dt, double g) {
  return OuPropagator(params, dt).step(prev, g);
}

OuPropagator::OuPropagator(const OUParams &params, double dt) {
  params.validate();
  if (!(dt > 0.0))
    throw ParameterError("ou_step: dt must be > 0");
  decay_ = std::exp(-params.lambda * dt);
  // kappa (1 - e^{-2 lambda dt}) / (2 lambda), written with expm1 for small lambda dt.
  scale_ = std::sqrt(-params.kappa * std::expm1(-2.0 * params.lambda * dt) / (2.0 * params.lambda));
}

ShapingFilter::ShapingFilter(double pole_rate, double level, double dt)
    : pole_rate_(pole_rate), level_(level), dt_(dt), sqrt_dt_(std::sqrt(dt)) {
  if (!(pole_rate > 0.0))
    throw ParameterError("shaping filter: pole rate must be > 0");
  if (!(level > 0.0) || !std::isfinite(level))
    throw ParameterError("shaping filter: level must be > 0");
  if (!(dt > 0.0))
    throw ParameterError("shaping filter: dt must be > 0");
  decay_ = std::exp(-pole_rate * dt);
  if (level == 1.0)
    return;
  identity_ = false;

  // Autocovariance of increments / dt: gamma0 at lag 0, gamma1 * a^{m-1} at lag m >= 1.
  const double bdt = pole_rate * dt;
  const double a = decay_;
  const double one_minus_a = -std::expm1(-bdt);
  // (b dt - 1 + e^{-b dt}) / (b dt), accurate for small b dt.
  const double lag0_frac = (bdt + std::expm1(-bdt)) / bdt;
  const double gamma0 = 1.0 + (level - 1.0) * lag0_frac;
  const double gamma1 = (level - 1.0) * one_minus_a * one_minus_a / (2.0 * bdt);

  // u_k = y_k - a y_{k-1} is MA(1) with lag-0 and lag-1 covariances u0, u1.
  const double u0 = (1.0 + a * a) * gamma0 - 2.0 * a * gamma1;
  const double u1 = gamma1 - a * gamma0;
  const double rho = -u1 / u0;
  double theta = 0.0;
  if (rho != 0.0) {
    const double disc = std::max(0.0, 1.0 - 4.0 * rho * rho);
    theta = 2.0 * rho / (1.0 + std::sqrt(disc)); // invertible root, |theta| <= 1
  }
  gain_ = std::sqrt(u0 / (1.0 + theta * theta));
  feed_ = gain_ * (a - theta);
}

double ShapingFilter::step(double white) {
  if (identity_)
    return white * sqrt_dt_;
  const double y = gain_ * white + memory_;
  memory_ = decay_ * memory_ + feed_ * white;
  return y * sqrt_dt_;
}

double shaped_noise_step(ShapingFilter &state, const NoiseDraw &white_in) {
  if (white_in.dt != state.dt())
    throw ParameterError("shaped_noise_step: draw step does not match filter step");
  return state.step(white_in.value);
}

} // namespace phasetrack::sde
