#pragma once

#include <array>
#include <vector>

#include "effrate/alpha_mu.hpp"

namespace effrate {

/// log E{gamma^q}, q = 0..q_max, for gamma the sum of n_t i.i.d. branch
/// SNRs. Computed exactly from the branch moments by repeated binomial
/// convolution in log space.
std::vector<double> log_sum_moments(const AlphaMuParams& branch, int n_t, int q_max);

/// E{(gamma_1 + ... + gamma_{n_t})^q}.
double sum_moments(const AlphaMuParams& branch, int n_t, int q);

/// Single alpha-mu variate matched to the sum of n_t i.i.d. branches.
struct SumFit {
  AlphaMuParams fitted{1.0, 1.0, 1.0};
  /// Log-ratio mismatch of the two scale-free moment equations.
  std::array<double, 2> residuals{};
  /// Exact sum moments of orders 1..4.
  std::array<double, 4> exact_moments{};
  int iterations = 0;
};

/// Fits (alpha, mu) so that the fitted variate reproduces the exact sum
/// moments of orders 1, 2 and 4, then fixes the mean to the exact first
/// moment. Damped Newton on (log alpha, log mu) with a finite-difference
/// Jacobian. Throws ConvergenceError (residuals in the message) when the
/// residuals stay above 1e-10, DomainError for degenerate moment ratios.
SumFit fit_sum(const AlphaMuParams& branch, int n_t);

/// Scale-free moment ratios of an alpha-mu variate,
///   K1 - 1 = Gamma(mu) Gamma(mu + 4/alpha) / Gamma(mu + 2/alpha)^2 - 1,
///   K2 - 1 = Gamma(mu) Gamma(mu + 8/alpha) / Gamma(mu + 4/alpha)^2 - 1.
/// These equal E{g^2}/E{g}^2 - 1 and E{g^4}/E{g^2}^2 - 1.
std::array<double, 2> alpha_mu_excess_ratios(double alpha, double mu);

}  // namespace effrate
