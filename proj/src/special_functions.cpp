#include "effrate/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "effrate/errors.hpp"
#include "effrate/quadrature.hpp"

namespace effrate {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool is_nonpositive_integer(complex z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

// Stirling series; coefficients B_{2k} / (2k (2k-1)), k = 8..1.
complex log_gamma_stirling(complex z) {
  static constexpr std::array<double, 8> kCoeffs = {
      -2.955065359477124183e-2, 6.4102564102564102564e-3, -1.9175269175269175269e-3,
      8.4175084175084175084e-4, -5.952380952380952381e-4, 7.9365079365079365079e-4,
      -2.7777777777777777778e-3, 8.3333333333333333333e-2};
  const complex rz = 1.0 / z;
  const complex rzz = rz * rz;
  complex series = kCoeffs[0];
  for (std::size_t i = 1; i < kCoeffs.size(); ++i) series = series * rzz + kCoeffs[i];
  const double half_log_two_pi = 0.5 * std::log(2.0 * std::numbers::pi);
  return (z - 0.5) * std::log(z) - z + half_log_two_pi + rz * series;
}

}  // namespace

complex log_gamma_complex(complex z) {
  const double x = z.real();
  const double y = z.imag();
  if (!std::isfinite(x) || !std::isfinite(y)) throw DomainError("log_gamma_complex: non-finite argument");
  if (is_nonpositive_integer(z)) {
    throw PoleError("log_gamma_complex: pole at z = " + std::to_string(x));
  }
  if (y == 0.0 && x > 0.0) return {std::lgamma(x), 0.0};
  if (y < 0.0) return std::conj(log_gamma_complex(std::conj(z)));

  // Shift into the region where eight Stirling terms reach double precision.
  // Summing principal logs of z, z+1, ... keeps the continuous branch.
  int shift = 0;
  if (y < 10.0 && x < 10.0) {
    shift = static_cast<int>(std::ceil(10.0 - x));
  } else if (x < 0.0) {
    shift = static_cast<int>(std::ceil(-x));
  }
  complex log_prod = 0.0;
  complex w = z;
  for (int k = 0; k < shift; ++k) {
    log_prod += std::log(w);
    w += 1.0;
  }
  return log_gamma_stirling(w) - log_prod;
}

double log_tricomi_u(double a, double b, double z) {
  if (!(a > 0.0) || !(z > 0.0) || !std::isfinite(a) || !std::isfinite(b) || !std::isfinite(z)) {
    throw DomainError("tricomi_u: requires a > 0 and z > 0");
  }
  const double c = b - a - 1.0;
  // With t = e^x the integrand e^{-zt} t^a (1+t)^c peaks where
  // a + c t/(1+t) - z t = 0, which has a single root in t > 0.
  auto slope = [&](double t) { return a + c * t / (1.0 + t) - z * t; };
  double lo = -700.0;
  double hi = std::log((a + std::max(c, 0.0)) / z) + 1.0;
  for (int i = 0; i < 200 && hi - lo > 1e-3; ++i) {
    const double mid = 0.5 * (lo + hi);
    (slope(std::exp(mid)) > 0.0 ? lo : hi) = mid;
  }
  const double x0 = 0.5 * (lo + hi);
  auto phi = [&](double x) { return a * x - z * std::exp(x) + c * std::log1p(std::exp(x)); };
  const double offset = phi(x0);
  auto integrand = [&](double x) { return std::exp(phi(x) - offset); };
  quad::TailOptions opt;
  opt.inner.rel_tol = 1e-14;
  const auto r = quad::integrate_line(integrand, x0, 2.0, opt);
  if (!r.converged && r.abs_error > 1e-11 * std::abs(r.value)) {
    throw ConvergenceError("tricomi_u: quadrature did not converge");
  }
  return std::log(r.value) + offset - std::lgamma(a);
}

double tricomi_u(double a, double b, double z) { return std::exp(log_tricomi_u(a, b, z)); }

FoxHSpec::FoxHSpec(int m, int n, std::vector<Pair> upper, std::vector<Pair> lower)
    : m_(m), n_(n), upper_(std::move(upper)), lower_(std::move(lower)), strip_(-kInf, kInf) {
  if (m_ < 0 || n_ < 0 || n_ > p() || m_ > q()) {
    throw DomainError("FoxHSpec: orders must satisfy 0 <= n <= p and 0 <= m <= q");
  }
  for (const auto& [coef, scale] : upper_) {
    if (!std::isfinite(coef) || !(scale > 0.0) || !std::isfinite(scale)) {
      throw DomainError("FoxHSpec: upper scale coefficients must be positive and finite");
    }
  }
  for (const auto& [coef, scale] : lower_) {
    if (!std::isfinite(coef) || !(scale > 0.0) || !std::isfinite(scale)) {
      throw DomainError("FoxHSpec: lower scale coefficients must be positive and finite");
    }
  }
  for (int j = 0; j < m_; ++j) {
    strip_.first = std::max(strip_.first, -lower_[j].first / lower_[j].second);
  }
  for (int j = 0; j < n_; ++j) {
    strip_.second = std::min(strip_.second, (1.0 - upper_[j].first) / upper_[j].second);
  }
  if (!(strip_.first < strip_.second)) {
    throw ContourError("FoxHSpec: no vertical contour separates the left and right pole families");
  }
}

double FoxHSpec::contour() const {
  const auto [left, right] = strip_;
  if (std::isfinite(left) && std::isfinite(right)) return 0.5 * (left + right);
  if (std::isfinite(left)) return left + 1.0;
  if (std::isfinite(right)) return right - 1.0;
  return 0.0;
}

double FoxHSpec::decay_exponent() const {
  double delta = 0.0;
  for (int j = 0; j < q(); ++j) delta += (j < m_ ? 1.0 : -1.0) * lower_[j].second;
  for (int j = 0; j < p(); ++j) delta += (j < n_ ? 1.0 : -1.0) * upper_[j].second;
  return delta;
}

complex FoxHSpec::log_kernel(complex s) const {
  complex acc = 0.0;
  for (int j = 0; j < q(); ++j) {
    const auto [b, scale] = lower_[j];
    if (j < m_) {
      acc += log_gamma_complex(b + scale * s);
    } else {
      const complex arg = 1.0 - b - scale * s;
      if (is_nonpositive_integer(arg)) return {-kInf, 0.0};
      acc -= log_gamma_complex(arg);
    }
  }
  for (int j = 0; j < p(); ++j) {
    const auto [a, scale] = upper_[j];
    if (j < n_) {
      acc += log_gamma_complex(1.0 - a - scale * s);
    } else {
      const complex arg = a + scale * s;
      if (is_nonpositive_integer(arg)) return {-kInf, 0.0};
      acc -= log_gamma_complex(arg);
    }
  }
  return acc;
}

double fox_h_log_arg(const FoxHSpec& spec, double log_z) {
  if (!std::isfinite(log_z)) throw DomainError("fox_h: argument must be positive and finite");
  const double delta = spec.decay_exponent();
  if (!(delta > 0.0)) {
    throw ConvergenceError("fox_h: kernel does not decay along the contour (sum of scale terms <= 0)");
  }
  const double c = spec.contour();
  const double decay_rate = 0.5 * std::numbers::pi * delta;

  // The kernel is conjugate-symmetric, so H = (1/pi) int_0^inf Re[chi(s) z^{-s}] dt.
  // Everything stays in log space until the single exponentiation.
  auto integrand = [&](double t) {
    const complex s(c, t);
    const complex log_term = spec.log_kernel(s) - s * log_z;
    if (log_term.real() == -kInf) return 0.0;
    return std::exp(log_term.real()) * std::cos(log_term.imag()) / std::numbers::pi;
  };
  auto envelope = [&](double t) {
    const double lr = spec.log_kernel(complex(c, t)).real() - c * log_z;
    return lr == -kInf ? 0.0 : std::exp(lr) / std::numbers::pi;
  };

  constexpr double kTruncationTol = 1e-12;
  constexpr double kTargetRelError = 1e-8;
  constexpr int kMaxDoublings = 40;

  const double first = std::max(4.0, 24.0 / decay_rate);
  quad::Options inner;
  inner.rel_tol = 1e-13;
  inner.abs_tol = 4.0 * std::numeric_limits<double>::epsilon() * envelope(0.0);
  inner.max_intervals = 4000;
  auto r = quad::integrate(integrand, 0.0, first, inner);
  double value = r.value;
  double error = r.abs_error;
  double lo = first;
  double width = first;
  for (int i = 0; i < kMaxDoublings; ++i) {
    const double hi = lo + width;
    quad::Options tail = inner;
    tail.abs_tol = std::max(inner.abs_tol, 1e-3 * kTruncationTol * std::abs(value));
    const auto chunk = quad::integrate(integrand, lo, hi, tail);
    value += chunk.value;
    error += chunk.abs_error;
    const double remainder = envelope(hi) / decay_rate;
    if (std::abs(chunk.value) + remainder <= kTruncationTol * std::abs(value)) {
      if (error > kTargetRelError * std::abs(value)) {
        throw ConvergenceError("fox_h: quadrature error estimate above target");
      }
      return value;
    }
    lo = hi;
    width *= 2.0;
  }
  throw ConvergenceError("fox_h: contour truncation did not converge within the iteration cap");
}

double fox_h(const FoxHSpec& spec, double z) {
  if (!(z > 0.0) || !std::isfinite(z)) throw DomainError("fox_h: argument must be positive and finite");
  return fox_h_log_arg(spec, std::log(z));
}

FoxHSpec to_fox_h(const MeijerGSpec& spec) {
  std::vector<FoxHSpec::Pair> upper;
  std::vector<FoxHSpec::Pair> lower;
  upper.reserve(spec.upper.size());
  lower.reserve(spec.lower.size());
  for (double a : spec.upper) upper.emplace_back(a, 1.0);
  for (double b : spec.lower) lower.emplace_back(b, 1.0);
  return FoxHSpec(spec.m, spec.n, std::move(upper), std::move(lower));
}

double meijer_g(const MeijerGSpec& spec, double z) { return fox_h(to_fox_h(spec), z); }

std::vector<double> delta_block(int k, double tau) {
  if (k < 1) throw DomainError("delta_block: k must be a positive integer");
  std::vector<double> out(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) out[static_cast<std::size_t>(i)] = (tau + i) / k;
  return out;
}

}  // namespace effrate
