#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace effrate {

struct VerifyOptions {
  std::uint64_t samples = 100'000;
  std::uint64_t seed = 1;
  unsigned streams = 8;
  unsigned threads = 0;
  /// Negative control: evaluate the analytic side with beta^{2/alpha} in
  /// place of beta, which must make the Monte Carlo comparison fail.
  bool inject_beta_fault = false;
};

struct CheckRow {
  std::string label;
  double measured = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

struct CheckGroup {
  std::string name;
  std::vector<CheckRow> rows;

  bool passed() const;
  std::size_t failures() const;
};

struct VerifyReport {
  std::vector<CheckGroup> groups;
  double seconds = 0.0;

  bool passed() const;
};

/// Method agreement, Nakagami reduction, Gamma closure, Monte Carlo vs
/// exact on the SNR figure families, high-SNR slope and offset, and the
/// wideband metrics.
VerifyReport run_verify(const VerifyOptions& opt);

/// One line per grid point, then a per-group summary and an overall
/// PASS/FAIL line.
void print_report(std::ostream& out, const VerifyReport& report, bool show_rows = true);

}  // namespace effrate
