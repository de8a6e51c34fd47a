#pragma once

#include <cmath>
#include <random>
#include <string>

#include "effrate/rng.hpp"

namespace effrate {

/// Parameters of an alpha-mu SNR variate. The scale beta is fixed by
///   beta = mean_snr * Gamma(mu) / Gamma(mu + 2/alpha),
/// so a parameter set is fully described by (alpha, mu, mean_snr).
class AlphaMuParams {
 public:
  AlphaMuParams(double alpha, double mu, double mean_snr = 1.0);

  double alpha() const { return alpha_; }
  double mu() const { return mu_; }
  double mean_snr() const { return mean_snr_; }
  double beta() const { return beta_; }
  double log_beta() const { return log_beta_; }
  /// alpha-root mean value of the envelope, sqrt(beta * mu^{2/alpha}).
  double r_hat() const;

  /// Same shape, different mean.
  AlphaMuParams with_mean(double mean_snr) const { return {alpha_, mu_, mean_snr}; }

 private:
  double alpha_;
  double mu_;
  double mean_snr_;
  double log_beta_;
  double beta_;
};

/// SNR density. At gamma == 0 returns the continuous extension (0, a finite
/// value, or +inf when alpha*mu < 2). Throws DomainError for gamma < 0.
double pdf(const AlphaMuParams& p, double gamma);
double log_pdf(const AlphaMuParams& p, double gamma);

/// P(gamma_1 <= gamma) = P(mu, (gamma/beta)^{alpha/2}).
double cdf(const AlphaMuParams& p, double gamma);

/// E{gamma^n} = beta^n Gamma(mu + 2n/alpha) / Gamma(mu). Throws DomainError
/// when mu + 2n/alpha <= 0.
double moment(const AlphaMuParams& p, double n);
double log_moment(const AlphaMuParams& p, double n);

/// Draws with the exact alpha-mu law: gamma = beta * W^{2/alpha}, W ~ Gamma(mu, 1).
class AlphaMuSampler {
 public:
  explicit AlphaMuSampler(const AlphaMuParams& p)
      : beta_(p.beta()), exponent_(2.0 / p.alpha()), shape_(p.mu(), 1.0) {}

  double operator()(RngStream& stream) { return beta_ * std::pow(shape_(stream.engine()), exponent_); }

 private:
  double beta_;
  double exponent_;
  std::gamma_distribution<double> shape_;
};

double sample(const AlphaMuParams& p, RngStream& stream);

enum class FadingModel { rayleigh, one_sided_gaussian, nakagami_m, weibull, general };

struct SpecialCase {
  FadingModel model = FadingModel::general;
  /// Nakagami m (= mu) or Weibull shape (= alpha); zero otherwise.
  double parameter = 0.0;
};

/// Names the classical fading model an (alpha, mu) pair reduces to.
SpecialCase validate_special_cases(const AlphaMuParams& p);

std::string to_string(FadingModel model);

}  // namespace effrate
