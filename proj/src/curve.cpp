#include "effrate/curve.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <istream>
#include <iterator>
#include <ostream>
#include <sstream>

#include "effrate/errors.hpp"
#include "json.hpp"

namespace effrate {

namespace {

constexpr std::array<std::pair<RateMethod, std::string_view>, 8> kLabels = {{
    {RateMethod::fox_h, "fox_h"},
    {RateMethod::meijer_g, "meijer_g"},
    {RateMethod::quadrature, "quadrature"},
    {RateMethod::nakagami_closed, "nakagami_closed"},
    {RateMethod::high_snr, "high_snr"},
    {RateMethod::low_snr_wideband, "low_snr_wideband"},
    {RateMethod::monte_carlo, "monte_carlo"},
    {RateMethod::awgn, "awgn"},
}};

std::string format_double(double v) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

double parse_double(std::string_view text) {
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw DomainError("read_csv: malformed number '" + std::string(text) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

std::string_view to_label(RateMethod method) {
  for (const auto& [m, label] : kLabels) {
    if (m == method) return label;
  }
  return "unknown";
}

RateMethod method_from_label(std::string_view label) {
  for (const auto& [m, l] : kLabels) {
    if (l == label) return m;
  }
  throw DomainError("unknown method label '" + std::string(label) + "'");
}

void RateCurve::validate() const {
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (i > 0 && !(points[i].x > points[i - 1].x)) {
      throw DomainError("RateCurve: x values must be strictly increasing");
    }
    if (!(points[i].rate >= 0.0)) throw DomainError("RateCurve: rates must be non-negative");
  }
}

void write_csv(std::ostream& out, const std::vector<RateCurve>& curves) {
  const std::string axis = curves.empty() ? "snr_db" : curves.front().axis;
  out << axis << ",rate,method,ci_halfwidth\n";
  for (const auto& curve : curves) {
    for (const auto& p : curve.points) {
      out << format_double(p.x) << ',' << format_double(p.rate) << ',' << to_label(curve.method) << ',';
      if (p.ci_halfwidth) out << format_double(*p.ci_halfwidth);
      out << '\n';
    }
  }
}

void write_csv(std::ostream& out, const RateCurve& curve) { write_csv(out, std::vector<RateCurve>{curve}); }

std::vector<RateCurve> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw DomainError("read_csv: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = split(line, ',');
  if (header.size() != 4 || header[1] != "rate" || header[2] != "method" || header[3] != "ci_halfwidth") {
    throw DomainError("read_csv: unexpected header '" + line + "'");
  }
  const std::string axis(header[0]);
  std::vector<RateCurve> curves;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split(line, ',');
    if (fields.size() != 4) throw DomainError("read_csv: expected 4 fields in '" + line + "'");
    const RateMethod method = method_from_label(fields[2]);
    RatePoint p{parse_double(fields[0]), parse_double(fields[1]), std::nullopt};
    if (!fields[3].empty()) p.ci_halfwidth = parse_double(fields[3]);
    auto it = std::find_if(curves.begin(), curves.end(), [&](const RateCurve& c) { return c.method == method; });
    if (it == curves.end()) {
      curves.push_back(RateCurve{method, axis, {}});
      it = std::prev(curves.end());
    }
    it->points.push_back(p);
  }
  return curves;
}

void write_json(std::ostream& out, const std::vector<RateCurve>& curves) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& curve : curves) {
    for (const auto& p : curve.points) {
      nlohmann::json row;
      row[curve.axis] = p.x;
      row["rate"] = p.rate;
      row["method"] = std::string(to_label(curve.method));
      row["ci_halfwidth"] = p.ci_halfwidth ? nlohmann::json(*p.ci_halfwidth) : nlohmann::json(nullptr);
      rows.push_back(std::move(row));
    }
  }
  out << rows.dump(2) << '\n';
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

std::vector<double> linspace(double start, double stop, int points) {
  if (points < 2) throw DomainError("linspace: need at least 2 points");
  if (!(start < stop)) throw DomainError("linspace: start must be below stop");
  std::vector<double> out(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) out[i] = start + (stop - start) * i / (points - 1);
  return out;
}

}  // namespace effrate
