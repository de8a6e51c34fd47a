#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace effrate {

enum class RateMethod {
  fox_h,
  meijer_g,
  quadrature,
  nakagami_closed,
  high_snr,
  low_snr_wideband,
  monte_carlo,
  awgn,
};

std::string_view to_label(RateMethod method);
/// Throws DomainError for an unknown label.
RateMethod method_from_label(std::string_view label);

struct RatePoint {
  double x = 0.0;  ///< SNR or Eb/N0, dB
  double rate = 0.0;
  std::optional<double> ci_halfwidth;

  bool operator==(const RatePoint&) const = default;
};

/// One curve of a figure: strictly increasing x, non-negative rates.
struct RateCurve {
  RateMethod method = RateMethod::quadrature;
  /// Column name of the x axis: "snr_db" or "eb_n0_db".
  std::string axis = "snr_db";
  std::vector<RatePoint> points;

  /// Throws DomainError when x is not strictly increasing or a rate is negative.
  void validate() const;
  bool operator==(const RateCurve&) const = default;
};

/// CSV with header `<axis>,rate,method,ci_halfwidth`; values written with
/// 17 significant digits so that read_csv reproduces them bit for bit.
void write_csv(std::ostream& out, const RateCurve& curve);
void write_csv(std::ostream& out, const std::vector<RateCurve>& curves);

/// Splits rows by method label, preserving first-appearance order.
std::vector<RateCurve> read_csv(std::istream& in);

/// JSON array of row objects with the same fields as the CSV.
void write_json(std::ostream& out, const std::vector<RateCurve>& curves);

double db_to_linear(double db);
double linear_to_db(double linear);

/// `points` values evenly spaced from start to stop inclusive.
std::vector<double> linspace(double start, double stop, int points);

}  // namespace effrate
