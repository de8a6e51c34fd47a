#pragma once

#include <complex>
#include <utility>
#include <vector>

namespace effrate {

using complex = std::complex<double>;

/// log Gamma(z) on the branch that is real for real z > 0 and continuous
/// off the negative real axis, so that logGamma(z+1) = logGamma(z) + log(z).
/// Throws PoleError at non-positive integers.
complex log_gamma_complex(complex z);

/// Tricomi confluent hypergeometric function U(a; b; z) for a > 0, z > 0,
/// from its Laplace-type integral representation. Throws DomainError
/// outside that domain.
double tricomi_u(double a, double b, double z);

/// log U(a; b; z); same domain as tricomi_u, never overflows.
double log_tricomi_u(double a, double b, double z);

/// A Fox-H function
///   H^{m,n}_{p,q}[z | (a_1,A_1)..(a_p,A_p); (b_1,B_1)..(b_q,B_q)]
/// with Mellin-Barnes kernel
///   chi(s) = prod_{j<=m} G(b_j + B_j s) prod_{j<=n} G(1 - a_j - A_j s)
///          / (prod_{j>m} G(1 - b_j - B_j s) prod_{j>n} G(a_j + A_j s)),
/// integrated against z^{-s} along Re(s) = c.
class FoxHSpec {
 public:
  using Pair = std::pair<double, double>;

  /// Validates orders, positivity of the scale coefficients and the
  /// existence of a pole-separating strip. Throws DomainError / ContourError.
  FoxHSpec(int m, int n, std::vector<Pair> upper, std::vector<Pair> lower);

  int m() const { return m_; }
  int n() const { return n_; }
  int p() const { return static_cast<int>(upper_.size()); }
  int q() const { return static_cast<int>(lower_.size()); }
  const std::vector<Pair>& upper() const { return upper_; }
  const std::vector<Pair>& lower() const { return lower_; }

  /// Open strip (left, right) free of poles; either side may be infinite.
  std::pair<double, double> strip() const { return strip_; }
  /// Abscissa of the integration contour.
  double contour() const;
  /// Exponential decay rate of |chi(c + it)| is (pi/2) * decay_exponent().
  double decay_exponent() const;

  /// log chi(s).
  complex log_kernel(complex s) const;

 private:
  int m_;
  int n_;
  std::vector<Pair> upper_;
  std::vector<Pair> lower_;
  std::pair<double, double> strip_;
};

/// Meijer-G G^{m,n}_{p,q}[z | a_1..a_p; b_1..b_q]: a Fox-H function with all
/// scale coefficients equal to one.
struct MeijerGSpec {
  int m = 0;
  int n = 0;
  std::vector<double> upper;
  std::vector<double> lower;
};

FoxHSpec to_fox_h(const MeijerGSpec& spec);

/// Value of the Fox-H function at z > 0 by numerical Mellin-Barnes
/// integration. Throws DomainError for z <= 0 and ConvergenceError when the
/// truncated contour does not converge.
double fox_h(const FoxHSpec& spec, double z);

/// Same as fox_h but takes log z, for arguments outside double range.
double fox_h_log_arg(const FoxHSpec& spec, double log_z);

double meijer_g(const MeijerGSpec& spec, double z);

/// Delta(k, tau) = tau/k, (tau+1)/k, ..., (tau+k-1)/k.
std::vector<double> delta_block(int k, double tau);

}  // namespace effrate
