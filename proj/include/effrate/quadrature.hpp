#pragma once

// Adaptive Gauss-Kronrod (7/15) quadrature with global error control, plus
// helpers for half-lines and whole lines built from geometrically growing
// chunks.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <span>
#include <vector>

#include "effrate/errors.hpp"

namespace effrate::quad {

struct Options {
  double abs_tol = 0.0;
  double rel_tol = 1e-13;
  int max_intervals = 4000;
};

struct Result {
  double value = 0.0;
  double abs_error = 0.0;
  int evaluations = 0;
  bool converged = false;
};

namespace detail {

// QUADPACK qk15 abscissae and weights.
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b, value, error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

template <class F>
Segment kronrod15(F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kron = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double fsum = f(center - dx) + f(center + dx);
    kron += kWgk[j] * fsum;
    if (j % 2 == 1) gauss += kWg[j / 2] * fsum;
  }
  kron *= half;
  gauss *= half;
  return {a, b, kron, std::abs(kron - gauss)};
}

}  // namespace detail

/// Integrates f over consecutive breakpoints [x0, x1, ..., xn]. Bisects the
/// segment with the largest error estimate until the total estimate is below
/// max(abs_tol, rel_tol * |value|) or max_intervals is reached.
template <class F>
Result integrate(F&& f, std::span<const double> breakpoints, const Options& opt = {}) {
  Result out;
  if (breakpoints.size() < 2) return out;
  std::priority_queue<detail::Segment> heap;
  double value = 0.0;
  double error = 0.0;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    if (breakpoints[i + 1] == breakpoints[i]) continue;
    auto seg = detail::kronrod15(f, breakpoints[i], breakpoints[i + 1]);
    out.evaluations += 15;
    value += seg.value;
    error += seg.error;
    heap.push(seg);
  }
  int intervals = static_cast<int>(heap.size());
  auto target = [&] { return std::max(opt.abs_tol, opt.rel_tol * std::abs(value)); };
  while (error > target() && intervals < opt.max_intervals && !heap.empty()) {
    const auto worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) break;  // interval at machine resolution
    heap.pop();
    const auto left = detail::kronrod15(f, worst.a, mid);
    const auto right = detail::kronrod15(f, mid, worst.b);
    out.evaluations += 30;
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++intervals;
  }
  // Re-sum to shed the drift of the running updates.
  value = 0.0;
  error = 0.0;
  while (!heap.empty()) {
    value += heap.top().value;
    error += heap.top().error;
    heap.pop();
  }
  out.value = value;
  out.abs_error = error;
  out.converged = error <= std::max(opt.abs_tol, opt.rel_tol * std::abs(value)) ||
                  error <= 64.0 * std::numeric_limits<double>::epsilon() * std::abs(value);
  return out;
}

template <class F>
Result integrate(F&& f, double a, double b, const Options& opt = {}) {
  const std::array<double, 2> pts{a, b};
  return integrate(f, std::span<const double>(pts), opt);
}

struct TailOptions {
  Options inner;
  /// Stop once a chunk contributes less than this fraction of the running total.
  double tail_rel_tol = 1e-15;
  int max_chunks = 60;
};

/// Integrates f over [start, +inf) (direction = +1) or (-inf, start]
/// (direction = -1) with chunks whose widths double from `width`. Stops after
/// two consecutive negligible chunks. Throws ConvergenceError at the cap.
template <class F>
Result integrate_tail(F&& f, double start, double width, int direction, double reference,
                      const TailOptions& opt = {}) {
  Result out;
  out.converged = true;
  double pos = start;
  double w = width;
  int quiet = 0;
  for (int chunk = 0; chunk < opt.max_chunks; ++chunk) {
    const double next = pos + direction * w;
    Options inner = opt.inner;
    inner.abs_tol = std::max(inner.abs_tol, 1e-3 * opt.tail_rel_tol * std::abs(reference + out.value));
    const auto r = direction > 0 ? integrate(f, pos, next, inner) : integrate(f, next, pos, inner);
    out.value += r.value;
    out.abs_error += r.abs_error;
    out.evaluations += r.evaluations;
    out.converged = out.converged && r.converged;
    const double scale = std::abs(reference + out.value);
    if (std::abs(r.value) <= opt.tail_rel_tol * scale || (r.value == 0.0 && scale == 0.0)) {
      if (++quiet >= 2) return out;
    } else {
      quiet = 0;
    }
    pos = next;
    w *= 2.0;
  }
  throw ConvergenceError("integrate_tail: tail contribution did not decay within the chunk cap");
}

/// Integrates f over the whole real line. The core window is
/// [center - half_width, center + half_width]; both tails are then added
/// chunk by chunk. Suited to integrands that are smooth and unimodal-ish
/// after a logarithmic change of variable.
template <class F>
Result integrate_line(F&& f, double center, double half_width, const TailOptions& opt = {}) {
  const std::array<double, 3> pts{center - half_width, center, center + half_width};
  auto out = integrate(f, std::span<const double>(pts), opt.inner);
  const auto right = integrate_tail(f, center + half_width, half_width, +1, out.value, opt);
  const auto left = integrate_tail(f, center - half_width, half_width, -1, out.value + right.value, opt);
  out.value += right.value + left.value;
  out.abs_error += right.abs_error + left.abs_error;
  out.evaluations += right.evaluations + left.evaluations;
  out.converged = out.converged && right.converged && left.converged;
  return out;
}

/// E[g(W)] for W ~ Gamma(shape, 1), computed through u = e^x so that both
/// the origin (shape < 1 singularity) and multi-scale features of g become
/// O(1)-wide bumps on the real line. g must be bounded on (0, inf).
template <class G>
Result gamma_expectation(G&& g, double shape, const TailOptions& opt = {}) {
  const double log_norm = std::lgamma(shape);
  auto integrand = [&](double x) {
    const double u = std::exp(x);
    const double w = std::exp(shape * x - u - log_norm);
    if (w == 0.0) return 0.0;
    return w * g(u);
  };
  const double center = std::log(shape);
  const double half = std::max(1.0, 4.0 / std::sqrt(shape));
  return integrate_line(integrand, center, half, opt);
}

}  // namespace effrate::quad
