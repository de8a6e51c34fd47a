#pragma once

#include <memory>
#include <mutex>
#include <optional>

#include "effrate/alpha_mu.hpp"
#include "effrate/sum_matching.hpp"

namespace effrate {

/// MISO link over i.i.d. alpha-mu branches with equal power per antenna.
/// The delay constraint enters only through A = theta*T*B/ln 2.
/// The moment-matched sum fit is computed on first use and shared by copies.
class MisoLink {
 public:
  MisoLink(int n_t, double delay_a, AlphaMuParams branch);

  int n_t() const { return n_t_; }
  double delay_a() const { return delay_a_; }
  const AlphaMuParams& branch() const { return branch_; }
  const SumFit& fit() const;
  /// Fitted alpha-mu parameters of the instantaneous sum SNR.
  const AlphaMuParams& sum_params() const { return fit().fitted; }

  MisoLink with_delay(double delay_a) const;

 private:
  struct LazyFit {
    std::once_flag once;
    std::optional<SumFit> value;
  };
  int n_t_;
  double delay_a_;
  AlphaMuParams branch_;
  std::shared_ptr<LazyFit> fit_;
};

// ---------------------------------------------------------------------------
// Exact (moment-matched) effective rate, bit/s/Hz.
//
// Every exact route evaluates
//   R = -(1/A) log2 E{(1 + rho*gamma/N_t)^{-A}}
// with gamma distributed as the fitted sum. The overloads taking
// `sum` accept an explicit sum distribution.
// ---------------------------------------------------------------------------

/// Adaptive quadrature of the defining expectation; the reference for all
/// closed forms.
double rate_exact_quadrature(const MisoLink& link, double rho);
double rate_exact_quadrature(const AlphaMuParams& sum, int n_t, double delay_a, double rho);

/// Compact H^{2,1}_{1,2} form.
double rate_exact_foxh(const MisoLink& link, double rho);
double rate_exact_foxh(const AlphaMuParams& sum, int n_t, double delay_a, double rho);

/// Positive integers (l, k) with l/k = alpha/2.
struct MeijerOrders {
  int l = 0;
  int k = 0;
};

/// Integer alpha uses (alpha, 2); otherwise the continued-fraction
/// convergent of alpha/2 with the smallest denominator <= max_denominator
/// that matches to 1e-12 relative. Empty when no such convergent exists.
std::optional<MeijerOrders> rationalize_half_alpha(double alpha, int max_denominator = 25);

/// G^{k+l,l}_{l,k+l} form with Delta(l, 1 - alpha*mu/2); Delta(k, 0),
/// Delta(l, A - alpha*mu/2). Throws DomainError when alpha/2 does not
/// rationalize within the denominator cap; callers fall back to the Fox-H
/// route.
double rate_exact_meijerg(const MisoLink& link, double rho);
double rate_exact_meijerg(const AlphaMuParams& sum, int n_t, double delay_a, double rho);

/// Nakagami-m closed form through the Tricomi function; omega is the
/// per-branch mean SNR.
double rate_nakagami(double m, double omega, int n_t, double delay_a, double rho);

/// E{log2(1 + rho*gamma/N_t)} over the fitted sum, by quadrature.
double ergodic_capacity_quadrature(const MisoLink& link, double rho);

// ---------------------------------------------------------------------------
// High-SNR asymptote
// ---------------------------------------------------------------------------

enum class HighSnrValidity {
  valid,           ///< A < alpha*mu/2 - 1
  weak,            ///< alpha*mu/2 - 1 <= A < alpha*mu/2: integral converges, outside the stricter rule
  invalid,         ///< A >= alpha*mu/2: Gamma(mu - 2A/alpha) diverges
};

HighSnrValidity high_snr_validity(const MisoLink& link);

/// log2(beta*rho/N_t) - (1/A) log2(Gamma(mu - 2A/alpha)/Gamma(mu)) with the
/// fitted sum parameters. Throws DomainError when A >= alpha*mu/2.
double rate_high_snr(const MisoLink& link, double rho);

// ---------------------------------------------------------------------------
// Low-SNR (wideband) regime
// ---------------------------------------------------------------------------

struct ChannelMoments {
  double first = 0.0;   ///< E{h h^H}
  double second = 0.0;  ///< E{(h h^H)^2}
};

/// Per-branch closed forms summed over the N_t antennas.
ChannelMoments channel_power_moments(const MisoLink& link);

struct WidebandMetrics {
  double eb_n0_min = 0.0;  ///< linear
  double s0 = 0.0;         ///< bits/s/Hz per 3 dB
};

WidebandMetrics wideband_metrics(const MisoLink& link);

struct LowSnrRate {
  double rate = 0.0;
  bool below_minimum = false;
};

/// S0 * log2(eb_n0 / eb_n0_min); clamped to zero (flagged) below the minimum.
LowSnrRate rate_low_snr(const MisoLink& link, double eb_n0);

/// AWGN benchmark: every branch gain fixed at its mean, log2(1 + rho * mean).
double rate_awgn(const MisoLink& link, double rho);

}  // namespace effrate
