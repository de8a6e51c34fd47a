#include "effrate/sum_matching.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "effrate/errors.hpp"

namespace effrate {

namespace {

double log_binomial(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

double log_sum_exp(const std::vector<double>& terms) {
  const double peak = *std::max_element(terms.begin(), terms.end());
  if (!std::isfinite(peak)) return peak;
  double acc = 0.0;
  for (double t : terms) acc += std::exp(t - peak);
  return peak + std::log(acc);
}

constexpr double kResidualTol = 1e-10;
constexpr int kMaxIterations = 100;
constexpr int kMaxHalvings = 30;

}  // namespace

std::vector<double> log_sum_moments(const AlphaMuParams& branch, int n_t, int q_max) {
  if (n_t < 1) throw DomainError("sum_moments: n_t must be >= 1");
  if (q_max < 0) throw DomainError("sum_moments: order must be >= 0");
  std::vector<double> single(static_cast<std::size_t>(q_max) + 1);
  for (int n = 0; n <= q_max; ++n) single[n] = n == 0 ? 0.0 : log_moment(branch, n);

  // Moments of a sum of k branches, extended one branch at a time:
  //   E{(S + g)^n} = sum_j C(n, j) E{S^j} E{g^{n-j}}.
  std::vector<double> acc = single;
  std::vector<double> terms;
  for (int k = 2; k <= n_t; ++k) {
    std::vector<double> next(acc.size());
    for (int n = 0; n <= q_max; ++n) {
      terms.clear();
      for (int j = 0; j <= n; ++j) terms.push_back(log_binomial(n, j) + acc[j] + single[n - j]);
      next[n] = log_sum_exp(terms);
    }
    acc = std::move(next);
  }
  return acc;
}

double sum_moments(const AlphaMuParams& branch, int n_t, int q) {
  if (q < 1) throw DomainError("sum_moments: q must be >= 1");
  if (n_t < 1) throw DomainError("sum_moments: n_t must be >= 1");
  if (q == 1) return n_t * branch.mean_snr();
  return std::exp(log_sum_moments(branch, n_t, q).back());
}

std::array<double, 2> alpha_mu_excess_ratios(double alpha, double mu) {
  const double l0 = std::lgamma(mu);
  const double l2 = std::lgamma(mu + 2.0 / alpha);
  const double l4 = std::lgamma(mu + 4.0 / alpha);
  const double l8 = std::lgamma(mu + 8.0 / alpha);
  return {std::expm1(l0 + l4 - 2.0 * l2), std::expm1(l0 + l8 - 2.0 * l4)};
}

SumFit fit_sum(const AlphaMuParams& branch, int n_t) {
  if (n_t < 1) throw DomainError("fit_sum: n_t must be >= 1");
  const auto log_m = log_sum_moments(branch, n_t, 4);
  SumFit fit;
  for (int q = 1; q <= 4; ++q) fit.exact_moments[q - 1] = std::exp(log_m[q]);
  fit.exact_moments[0] = n_t * branch.mean_snr();

  const double target1 = std::expm1(log_m[2] - 2.0 * log_m[1]);
  const double target2 = std::expm1(log_m[4] - 2.0 * log_m[2]);
  if (!(target1 > 0.0) || !(target2 > 0.0) || !std::isfinite(target1) || !std::isfinite(target2)) {
    throw DomainError("fit_sum: sum moment ratios are degenerate (zero or non-finite variance)");
  }
  const double log_t1 = std::log(target1);
  const double log_t2 = std::log(target2);

  // Unknowns x = (log alpha, log mu) keep both parameters positive.
  auto residual = [&](double la, double lm) -> std::array<double, 2> {
    const auto k = alpha_mu_excess_ratios(std::exp(la), std::exp(lm));
    if (!(k[0] > 0.0) || !(k[1] > 0.0)) {
      const double inf = std::numeric_limits<double>::infinity();
      return {inf, inf};
    }
    return {std::log(k[0]) - log_t1, std::log(k[1]) - log_t2};
  };
  auto norm = [](const std::array<double, 2>& r) { return std::hypot(r[0], r[1]); };
  auto converged = [](const std::array<double, 2>& r) {
    return std::abs(r[0]) <= kResidualTol && std::abs(r[1]) <= kResidualTol;
  };

  double la = std::log(branch.alpha());
  double lm = std::log(n_t * branch.mu());
  auto r = residual(la, lm);
  int iter = 0;
  for (; iter < kMaxIterations && !converged(r); ++iter) {
    constexpr double h = 1e-6;
    const auto ra_p = residual(la + h, lm);
    const auto ra_m = residual(la - h, lm);
    const auto rm_p = residual(la, lm + h);
    const auto rm_m = residual(la, lm - h);
    const double j00 = (ra_p[0] - ra_m[0]) / (2 * h);
    const double j10 = (ra_p[1] - ra_m[1]) / (2 * h);
    const double j01 = (rm_p[0] - rm_m[0]) / (2 * h);
    const double j11 = (rm_p[1] - rm_m[1]) / (2 * h);
    const double det = j00 * j11 - j01 * j10;
    if (!std::isfinite(det) || det == 0.0) break;
    const double da = -(j11 * r[0] - j01 * r[1]) / det;
    const double dm = -(-j10 * r[0] + j00 * r[1]) / det;

    double step = 1.0;
    const double base = norm(r);
    bool improved = false;
    for (int half = 0; half <= kMaxHalvings; ++half, step *= 0.5) {
      const auto trial = residual(la + step * da, lm + step * dm);
      if (norm(trial) < base) {
        la += step * da;
        lm += step * dm;
        r = trial;
        improved = true;
        break;
      }
    }
    if (!improved) break;
  }
  fit.iterations = iter;
  fit.residuals = r;
  if (!converged(r)) {
    std::ostringstream msg;
    msg << "fit_sum: Newton did not converge after " << iter << " iterations (residuals " << r[0] << ", "
        << r[1] << ")";
    throw ConvergenceError(msg.str());
  }
  fit.fitted = AlphaMuParams(std::exp(la), std::exp(lm), fit.exact_moments[0]);
  if (n_t == 1) fit.fitted = branch;
  return fit;
}

}  // namespace effrate
