#include "effrate/alpha_mu.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <limits>

#include "effrate/errors.hpp"

namespace effrate {

AlphaMuParams::AlphaMuParams(double alpha, double mu, double mean_snr)
    : alpha_(alpha), mu_(mu), mean_snr_(mean_snr) {
  if (!(alpha > 0.0) || !(mu > 0.0) || !(mean_snr > 0.0) || !std::isfinite(alpha) || !std::isfinite(mu) ||
      !std::isfinite(mean_snr)) {
    throw DomainError("AlphaMuParams: alpha, mu and mean_snr must be positive and finite");
  }
  log_beta_ = std::log(mean_snr_) + std::lgamma(mu_) - std::lgamma(mu_ + 2.0 / alpha_);
  beta_ = std::exp(log_beta_);
}

double AlphaMuParams::r_hat() const { return std::sqrt(beta_ * std::pow(mu_, 2.0 / alpha_)); }

double log_pdf(const AlphaMuParams& p, double gamma) {
  if (gamma < 0.0 || std::isnan(gamma)) throw DomainError("pdf: gamma must be non-negative");
  const double a = p.alpha();
  const double mu = p.mu();
  const double power = 0.5 * a * mu - 1.0;
  if (gamma == 0.0) {
    if (power > 0.0) return -std::numeric_limits<double>::infinity();
    if (power < 0.0) return std::numeric_limits<double>::infinity();
    return std::log(0.5 * a) - 0.5 * a * mu * p.log_beta() - std::lgamma(mu);
  }
  const double log_g = std::log(gamma);
  return std::log(0.5 * a) + power * log_g - 0.5 * a * mu * p.log_beta() - std::lgamma(mu) -
         std::exp(0.5 * a * (log_g - p.log_beta()));
}

double pdf(const AlphaMuParams& p, double gamma) { return std::exp(log_pdf(p, gamma)); }

double cdf(const AlphaMuParams& p, double gamma) {
  if (gamma <= 0.0) return 0.0;
  const double u = std::exp(0.5 * p.alpha() * (std::log(gamma) - p.log_beta()));
  if (!std::isfinite(u)) return 1.0;
  return boost::math::gamma_p(p.mu(), u);
}

double log_moment(const AlphaMuParams& p, double n) {
  const double shifted = p.mu() + 2.0 * n / p.alpha();
  if (!(shifted > 0.0)) throw DomainError("moment: requires mu + 2n/alpha > 0");
  return n * p.log_beta() + std::lgamma(shifted) - std::lgamma(p.mu());
}

double moment(const AlphaMuParams& p, double n) {
  if (n == 0.0) return 1.0;
  if (n == 1.0) return p.mean_snr();
  return std::exp(log_moment(p, n));
}

double sample(const AlphaMuParams& p, RngStream& stream) { return AlphaMuSampler(p)(stream); }

SpecialCase validate_special_cases(const AlphaMuParams& p) {
  constexpr double kTol = 1e-12;
  const bool alpha_two = std::abs(p.alpha() - 2.0) <= kTol;
  const bool mu_one = std::abs(p.mu() - 1.0) <= kTol;
  if (alpha_two && mu_one) return {FadingModel::rayleigh, 1.0};
  if (alpha_two && std::abs(p.mu() - 0.5) <= kTol) return {FadingModel::one_sided_gaussian, 0.5};
  if (alpha_two) return {FadingModel::nakagami_m, p.mu()};
  if (mu_one) return {FadingModel::weibull, p.alpha()};
  return {};
}

std::string to_string(FadingModel model) {
  switch (model) {
    case FadingModel::rayleigh: return "rayleigh";
    case FadingModel::one_sided_gaussian: return "one_sided_gaussian";
    case FadingModel::nakagami_m: return "nakagami_m";
    case FadingModel::weibull: return "weibull";
    case FadingModel::general: return "general";
  }
  return "general";
}

}  // namespace effrate
