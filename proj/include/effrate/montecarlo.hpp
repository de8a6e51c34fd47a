#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "effrate/effective_rate.hpp"

namespace effrate {

/// Monte Carlo configuration. The sample index space is cut into `streams`
/// contiguous chunks, chunk i drawing from RngStream(seed, i); chunk results
/// are reduced in index order, so output depends only on
/// (samples, seed, streams) and never on thread scheduling.
struct McConfig {
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 1;
  unsigned streams = 8;
  /// Worker threads; 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;

  void validate() const;
};

struct McEstimate {
  double value = 0.0;
  /// 95% confidence half-width.
  double ci_halfwidth = 0.0;
};

/// Effective rate at every rho in `rhos`, all from the same channel draws.
/// Each draw sums n_t independent branch SNRs; the CI comes from the delta
/// method on the sample mean of (1 + rho*gamma/N_t)^{-A}.
std::vector<McEstimate> simulate_rate_curve(const MisoLink& link, std::span<const double> rhos,
                                            const McConfig& cfg);

McEstimate simulate_rate(const MisoLink& link, double rho, const McConfig& cfg);

/// Sample mean of log2(1 + rho*gamma/N_t) with a normal-theory 95% CI.
McEstimate simulate_ergodic_capacity(const MisoLink& link, double rho, const McConfig& cfg);

/// Empirical E{hh^H} and E{(hh^H)^2}, for cross-checking the closed forms.
struct McMoments {
  McEstimate first;
  McEstimate second;
};
McMoments simulate_power_moments(const MisoLink& link, const McConfig& cfg);

}  // namespace effrate
