#include "effrate/effective_rate.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "effrate/errors.hpp"
#include "effrate/quadrature.hpp"
#include "effrate/special_functions.hpp"

namespace effrate {

namespace {

constexpr double kLn2 = std::numbers::ln2;

void check_rate_args(int n_t, double delay_a, double rho) {
  if (n_t < 1) throw DomainError("effective rate: n_t must be >= 1");
  if (!(delay_a > 0.0) || !std::isfinite(delay_a)) throw DomainError("effective rate: delay exponent A must be > 0");
  if (!(rho >= 0.0) || !std::isfinite(rho)) throw DomainError("effective rate: rho must be >= 0 and finite");
}

quad::TailOptions expectation_options() {
  quad::TailOptions opt;
  opt.inner.rel_tol = 1e-13;
  opt.tail_rel_tol = 1e-16;
  return opt;
}

}  // namespace

MisoLink::MisoLink(int n_t, double delay_a, AlphaMuParams branch)
    : n_t_(n_t), delay_a_(delay_a), branch_(branch), fit_(std::make_shared<LazyFit>()) {
  if (n_t < 1) throw DomainError("MisoLink: n_t must be >= 1");
  if (!(delay_a > 0.0) || !std::isfinite(delay_a)) throw DomainError("MisoLink: delay exponent A must be > 0");
}

const SumFit& MisoLink::fit() const {
  std::call_once(fit_->once, [this] { fit_->value = fit_sum(branch_, n_t_); });
  return *fit_->value;
}

MisoLink MisoLink::with_delay(double delay_a) const {
  MisoLink out(n_t_, delay_a, branch_);
  out.fit_ = fit_;  // the fit does not depend on A
  return out;
}

double rate_exact_quadrature(const AlphaMuParams& sum, int n_t, double delay_a, double rho) {
  check_rate_args(n_t, delay_a, rho);
  if (rho == 0.0) return 0.0;
  const double y = rho * sum.beta() / n_t;
  const double power = 2.0 / sum.alpha();
  const auto opt = expectation_options();

  // E = E{(1 + y u^{2/alpha})^{-A}} with u ~ Gamma(mu). Near E = 1 the
  // complement 1 - E is integrated directly to keep relative accuracy at
  // vanishing rho.
  auto kept = [&](double u) { return std::exp(-delay_a * std::log1p(y * std::pow(u, power))); };
  const auto e = quad::gamma_expectation(kept, sum.mu(), opt);
  if (!(e.value > 0.0)) throw ConvergenceError("rate_exact_quadrature: expectation underflowed");
  if (e.value < 0.5) return -std::log(e.value) / (delay_a * kLn2);

  auto lost = [&](double u) { return -std::expm1(-delay_a * std::log1p(y * std::pow(u, power))); };
  const auto d = quad::gamma_expectation(lost, sum.mu(), opt);
  return -std::log1p(-d.value) / (delay_a * kLn2);
}

double rate_exact_quadrature(const MisoLink& link, double rho) {
  return rate_exact_quadrature(link.sum_params(), link.n_t(), link.delay_a(), rho);
}

double rate_exact_foxh(const AlphaMuParams& sum, int n_t, double delay_a, double rho) {
  check_rate_args(n_t, delay_a, rho);
  if (rho == 0.0) return 0.0;
  const double a = sum.alpha();
  const double mu = sum.mu();
  const FoxHSpec spec(2, 1, {{1.0, 0.5 * a}}, {{mu, 1.0}, {delay_a, 0.5 * a}});
  const double log_x = 0.5 * a * (std::log(static_cast<double>(n_t)) - std::log(rho) - sum.log_beta());
  const double h = fox_h_log_arg(spec, log_x);
  if (!(h > 0.0)) throw ConvergenceError("rate_exact_foxh: non-positive Fox-H value");
  const double log2_front = (std::log(a) - std::lgamma(delay_a) - std::lgamma(mu)) / kLn2;
  return (1.0 - log2_front - std::log2(h)) / delay_a;
}

double rate_exact_foxh(const MisoLink& link, double rho) {
  return rate_exact_foxh(link.sum_params(), link.n_t(), link.delay_a(), rho);
}

std::optional<MeijerOrders> rationalize_half_alpha(double alpha, int max_denominator) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) return std::nullopt;
  const double rounded = std::round(alpha);
  if (rounded >= 1.0 && std::abs(alpha - rounded) <= 1e-12 * alpha) {
    return MeijerOrders{static_cast<int>(rounded), 2};
  }
  const double target = 0.5 * alpha;
  // Continued-fraction convergents h/k of target.
  double rest = target;
  long long h_prev = 1, h = static_cast<long long>(std::floor(rest));
  long long k_prev = 0, k = 1;
  for (int i = 0; i < 64; ++i) {
    if (k > max_denominator) break;
    if (h > 0 && std::abs(static_cast<double>(h) / k - target) <= 1e-12 * target) {
      return MeijerOrders{static_cast<int>(h), static_cast<int>(k)};
    }
    const double frac = rest - std::floor(rest);
    if (frac < 1e-15) break;
    rest = 1.0 / frac;
    const long long digit = static_cast<long long>(std::floor(rest));
    const long long h_next = digit * h + h_prev;
    const long long k_next = digit * k + k_prev;
    h_prev = h;
    k_prev = k;
    h = h_next;
    k = k_next;
  }
  return std::nullopt;
}

double rate_exact_meijerg(const AlphaMuParams& sum, int n_t, double delay_a, double rho) {
  check_rate_args(n_t, delay_a, rho);
  const auto orders = rationalize_half_alpha(sum.alpha());
  if (!orders) {
    std::ostringstream msg;
    msg << "rate_exact_meijerg: alpha/2 = " << 0.5 * sum.alpha()
        << " has no rational form l/k with k <= 25; use the Fox-H route";
    throw DomainError(msg.str());
  }
  if (rho == 0.0) return 0.0;
  const auto [l, k] = *orders;
  const double a = sum.alpha();
  const double mu = sum.mu();
  const double half_am = 0.5 * a * mu;

  MeijerGSpec spec;
  spec.m = k + l;
  spec.n = l;
  spec.upper = delta_block(l, 1.0 - half_am);
  spec.lower = delta_block(k, 0.0);
  const auto tail = delta_block(l, delay_a - half_am);
  spec.lower.insert(spec.lower.end(), tail.begin(), tail.end());

  const double log_n_over_rho = std::log(static_cast<double>(n_t)) - std::log(rho);
  const double log_z = l * log_n_over_rho - k * (std::log(static_cast<double>(k)) + 0.5 * a * sum.log_beta());
  const double g = fox_h_log_arg(to_fox_h(spec), log_z);
  if (!(g > 0.0)) throw ConvergenceError("rate_exact_meijerg: non-positive Meijer-G value");

  const double log_front = std::log(a) + 0.5 * std::log(static_cast<double>(k)) + (delay_a - 1.0) * std::log(l) +
                           half_am * (log_n_over_rho - sum.log_beta()) -
                           (l + 0.5 * k - 1.5) * std::log(2.0 * std::numbers::pi) - std::lgamma(delay_a) -
                           std::lgamma(mu);
  return 1.0 / delay_a - (log_front + std::log(g)) / (delay_a * kLn2);
}

double rate_exact_meijerg(const MisoLink& link, double rho) {
  return rate_exact_meijerg(link.sum_params(), link.n_t(), link.delay_a(), rho);
}

double rate_nakagami(double m, double omega, int n_t, double delay_a, double rho) {
  if (!(m > 0.0) || !(omega > 0.0) || !(rho > 0.0)) {
    throw DomainError("rate_nakagami: m, omega and rho must be positive");
  }
  check_rate_args(n_t, delay_a, rho);
  const double shape = m * n_t;
  const double log_c = std::log(omega) + std::log(rho) - std::log(shape);
  const double log_u = log_tricomi_u(shape, shape + 1.0 - delay_a, std::exp(-log_c));
  return (shape * log_c - log_u) / (delay_a * kLn2);
}

double ergodic_capacity_quadrature(const MisoLink& link, double rho) {
  check_rate_args(link.n_t(), link.delay_a(), rho);
  const auto& sum = link.sum_params();
  const double y = rho * sum.beta() / link.n_t();
  const double power = 2.0 / sum.alpha();
  auto g = [&](double u) { return std::log1p(y * std::pow(u, power)); };
  return quad::gamma_expectation(g, sum.mu(), expectation_options()).value / kLn2;
}

HighSnrValidity high_snr_validity(const MisoLink& link) {
  const auto& sum = link.sum_params();
  const double bound = 0.5 * sum.alpha() * sum.mu();
  if (link.delay_a() >= bound) return HighSnrValidity::invalid;
  if (link.delay_a() >= bound - 1.0) return HighSnrValidity::weak;
  return HighSnrValidity::valid;
}

double rate_high_snr(const MisoLink& link, double rho) {
  check_rate_args(link.n_t(), link.delay_a(), rho);
  if (!(rho > 0.0)) throw DomainError("rate_high_snr: rho must be > 0");
  const auto& sum = link.sum_params();
  const double shifted = sum.mu() - 2.0 * link.delay_a() / sum.alpha();
  if (!(shifted > 0.0)) {
    std::ostringstream msg;
    msg << "rate_high_snr: requires A < alpha*mu/2 (A = " << link.delay_a()
        << ", alpha*mu/2 = " << 0.5 * sum.alpha() * sum.mu() << ")";
    throw DomainError(msg.str());
  }
  return (sum.log_beta() + std::log(rho) - std::log(static_cast<double>(link.n_t()))) / kLn2 -
         (std::lgamma(shifted) - std::lgamma(sum.mu())) / (link.delay_a() * kLn2);
}

ChannelMoments channel_power_moments(const MisoLink& link) {
  const auto& b = link.branch();
  const double n = link.n_t();
  const double l0 = std::lgamma(b.mu());
  const double l2 = std::lgamma(b.mu() + 2.0 / b.alpha());
  const double l4 = std::lgamma(b.mu() + 4.0 / b.alpha());
  ChannelMoments out;
  out.first = n * std::exp(b.log_beta() + l2 - l0);
  out.second = n * std::exp(2.0 * b.log_beta() - l0) * (std::exp(l4) + (n - 1.0) * std::exp(2.0 * l2 - l0));
  return out;
}

WidebandMetrics wideband_metrics(const MisoLink& link) {
  const auto& b = link.branch();
  const double n = link.n_t();
  WidebandMetrics out;
  out.eb_n0_min = std::exp(std::lgamma(b.mu()) - b.log_beta() - std::lgamma(b.mu() + 2.0 / b.alpha())) * kLn2;
  // Dividing numerator and denominator by Gamma(mu + 2/alpha)^2 leaves the
  // excess ratio Gamma(mu)Gamma(mu + 4/alpha)/Gamma(mu + 2/alpha)^2 - 1.
  const double excess = alpha_mu_excess_ratios(b.alpha(), b.mu())[0];
  out.s0 = 2.0 * n / ((link.delay_a() + 1.0) * excess + n);
  return out;
}

LowSnrRate rate_low_snr(const MisoLink& link, double eb_n0) {
  if (!(eb_n0 > 0.0)) throw DomainError("rate_low_snr: eb_n0 must be > 0");
  const auto w = wideband_metrics(link);
  if (eb_n0 < w.eb_n0_min) return {0.0, true};
  return {w.s0 * std::log2(eb_n0 / w.eb_n0_min), false};
}

double rate_awgn(const MisoLink& link, double rho) {
  if (!(rho >= 0.0)) throw DomainError("rate_awgn: rho must be >= 0");
  return std::log2(1.0 + rho * link.branch().mean_snr());
}

}  // namespace effrate
