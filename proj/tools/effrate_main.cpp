#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "effrate/curve.hpp"
#include "effrate/effective_rate.hpp"
#include "effrate/errors.hpp"
#include "effrate/figures.hpp"
#include "effrate/montecarlo.hpp"
#include "effrate/sum_matching.hpp"
#include "effrate/verify.hpp"

using namespace effrate;

namespace {

// Exit codes.
constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kBadInput = 2;
constexpr int kNoConvergence = 3;

// Diagnostics are kept to one line so scripts can parse them.
void report_error(const std::string& what) {
  std::string line = what;
  for (char& c : line) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  std::cerr << "error: " << line << '\n';
}

struct RateArgs {
  double alpha = 2.0;
  double mu = 1.0;
  int n_t = 1;
  double delay_a = 1.0;
  double mean_snr = 1.0;
  std::optional<double> snr_db;
  std::string snr_range;
  std::string method = "foxh";
  std::string out;
  std::string format = "csv";
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 1;
};

std::vector<double> parse_range(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
  if (parts.size() != 3) throw DomainError("--snr-db-range must be start:stop:points");
  double start = 0, stop = 0;
  int points = 0;
  try {
    std::size_t used = 0;
    start = std::stod(parts[0], &used);
    if (used != parts[0].size()) throw std::invalid_argument("start");
    stop = std::stod(parts[1], &used);
    if (used != parts[1].size()) throw std::invalid_argument("stop");
    points = std::stoi(parts[2], &used);
    if (used != parts[2].size()) throw std::invalid_argument("points");
  } catch (const std::logic_error&) {
    throw DomainError("--snr-db-range must be start:stop:points with numeric fields");
  }
  if (!(start < stop)) throw DomainError("--snr-db-range needs start < stop");
  if (points < 2) throw DomainError("--snr-db-range needs points >= 2");
  return linspace(start, stop, points);
}

// Output stream for --out (stdout when empty).
template <class F>
void with_output(const std::string& path, F&& write) {
  if (path.empty() || path == "-") {
    write(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  write(out);
  if (!out) throw std::runtime_error("write to " + path + " failed");
}

int cmd_rate(const RateArgs& a) {
  if (a.snr_db && !a.snr_range.empty()) throw DomainError("give either --snr-db or --snr-db-range, not both");
  if (!a.snr_db && a.snr_range.empty()) throw DomainError("one of --snr-db or --snr-db-range is required");
  const std::vector<double> db = a.snr_db ? std::vector<double>{*a.snr_db} : parse_range(a.snr_range);

  const MisoLink link(a.n_t, a.delay_a, AlphaMuParams(a.alpha, a.mu, a.mean_snr));
  std::vector<double> rhos;
  for (double x : db) rhos.push_back(db_to_linear(x));

  RateCurve curve{RateMethod::fox_h, "snr_db", {}};
  if (a.method == "foxh" || a.method == "quadrature") {
    const bool quad = a.method == "quadrature";
    curve.method = quad ? RateMethod::quadrature : RateMethod::fox_h;
    for (std::size_t k = 0; k < rhos.size(); ++k) {
      curve.points.push_back({db[k], quad ? rate_exact_quadrature(link, rhos[k]) : rate_exact_foxh(link, rhos[k]), {}});
    }
  } else if (a.method == "meijerg") {
    curve.method = RateMethod::meijer_g;
    if (!rationalize_half_alpha(link.sum_params().alpha())) {
      std::cerr << "warning: fitted alpha " << link.sum_params().alpha()
                << " has no rational alpha/2 with denominator <= 25; using the Fox-H form\n";
      curve.method = RateMethod::fox_h;
    }
    for (std::size_t k = 0; k < rhos.size(); ++k) {
      const double r = curve.method == RateMethod::meijer_g ? rate_exact_meijerg(link, rhos[k])
                                                            : rate_exact_foxh(link, rhos[k]);
      curve.points.push_back({db[k], r, {}});
    }
  } else if (a.method == "nakagami") {
    if (a.alpha != 2.0) throw DomainError("--method nakagami requires --alpha 2");
    curve.method = RateMethod::nakagami_closed;
    for (std::size_t k = 0; k < rhos.size(); ++k) {
      curve.points.push_back({db[k], rate_nakagami(a.mu, a.mean_snr, a.n_t, a.delay_a, rhos[k]), {}});
    }
  } else if (a.method == "high-snr") {
    const auto validity = high_snr_validity(link);
    const auto& s = link.sum_params();
    if (validity == HighSnrValidity::invalid) {
      throw DomainError("high-SNR asymptote needs A < alpha*mu/2 of the fitted sum (alpha=" +
                        std::to_string(s.alpha()) + ", mu=" + std::to_string(s.mu()) + ")");
    }
    if (validity == HighSnrValidity::weak) {
      std::cerr << "warning: A >= alpha*mu/2 - 1 for the fitted sum; the asymptote converges slowly\n";
    }
    curve.method = RateMethod::high_snr;
    for (std::size_t k = 0; k < rhos.size(); ++k) curve.points.push_back({db[k], rate_high_snr(link, rhos[k]), {}});
  } else if (a.method == "mc") {
    McConfig mc;
    mc.samples = a.samples;
    mc.seed = a.seed;
    mc.validate();
    curve.method = RateMethod::monte_carlo;
    const auto est = simulate_rate_curve(link, rhos, mc);
    for (std::size_t k = 0; k < rhos.size(); ++k) curve.points.push_back({db[k], est[k].value, est[k].ci_halfwidth});
  } else {
    throw DomainError("unknown --method " + a.method);
  }

  // The high-SNR asymptote can be negative at low SNR, so it skips the
  // curve invariant check.
  if (curve.method != RateMethod::high_snr) curve.validate();
  with_output(a.out, [&](std::ostream& os) {
    if (a.format == "json") {
      write_json(os, std::vector<RateCurve>{curve});
    } else {
      write_csv(os, curve);
    }
  });
  return kOk;
}

int cmd_fit_sum(double alpha, double mu, int n_t, double mean_snr) {
  const AlphaMuParams branch(alpha, mu, mean_snr);
  const auto fit = fit_sum(branch, n_t);
  std::printf("alpha=%.6f mu=%.6f mean_snr=%.6f residuals=%.3e,%.3e iterations=%d\n", fit.fitted.alpha(),
              fit.fitted.mu(), fit.fitted.mean_snr(), fit.residuals[0], fit.residuals[1], fit.iterations);
  return kOk;
}

int cmd_verify(const VerifyOptions& opt, bool quiet) {
  const auto report = run_verify(opt);
  print_report(std::cout, report, !quiet);
  if (report.passed()) return kOk;
  std::string failed;
  for (const auto& g : report.groups) {
    if (g.passed()) continue;
    if (!failed.empty()) failed += "; ";
    failed += g.name + " (" + std::to_string(g.failures()) + ")";
  }
  report_error("verify failed: " + failed);
  return kCheckFailed;
}

int cmd_sweep(int figure, std::string out_dir, const FigureOptions& opt) {
  if (out_dir.empty()) {
    const char* env = std::getenv("EFFRATE_OUT_DIR");
    out_dir = env && *env ? env : "figures";
  }
  const auto data = build_figure(figure, opt);
  for (const auto& p : write_figure(data, out_dir)) std::cout << p.string() << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Effective rate of MISO links over alpha-mu fading"};
  app.require_subcommand(1);

  RateArgs ra;
  auto* rate = app.add_subcommand("rate", "Effective rate over an SNR point or range");
  rate->add_option("--alpha", ra.alpha, "alpha of each branch")->required();
  rate->add_option("--mu", ra.mu, "mu of each branch")->required();
  rate->add_option("--nt", ra.n_t, "number of transmit antennas")->required();
  rate->add_option("--delay-a", ra.delay_a, "delay exponent A = theta*T*B/ln 2")->required();
  rate->add_option("--mean-snr", ra.mean_snr, "mean SNR per branch")->capture_default_str();
  rate->add_option("--snr-db", ra.snr_db, "single transmit SNR in dB");
  rate->add_option("--snr-db-range", ra.snr_range, "start:stop:points in dB");
  rate->add_option("--method", ra.method, "foxh, meijerg, quadrature, nakagami, high-snr or mc")
      ->check(CLI::IsMember({"foxh", "meijerg", "quadrature", "nakagami", "high-snr", "mc"}))
      ->capture_default_str();
  rate->add_option("--out", ra.out, "output file (default stdout)");
  rate->add_option("--format", ra.format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  rate->add_option("--samples", ra.samples, "Monte Carlo samples (mc method)")->capture_default_str();
  rate->add_option("--seed", ra.seed, "Monte Carlo seed (mc method)")->capture_default_str();

  double fa = 0, fm = 0, fmean = 1.0;
  int fn = 1;
  auto* fit = app.add_subcommand("fit-sum", "Fit one alpha-mu variate to the sum of N_t branches");
  fit->add_option("--alpha", fa, "alpha of each branch")->required();
  fit->add_option("--mu", fm, "mu of each branch")->required();
  fit->add_option("--nt", fn, "number of branches")->required();
  fit->add_option("--mean-snr", fmean, "mean SNR per branch")->capture_default_str();

  VerifyOptions vo;
  bool v_full = false, v_quiet = false;
  std::optional<std::uint64_t> v_samples;
  auto* verify = app.add_subcommand("verify", "Cross-check every method and the simulator");
  auto* fast_flag = verify->add_flag("--fast", "10^5 Monte Carlo samples (default)");
  verify->add_flag("--full", v_full, "10^7 Monte Carlo samples")->excludes(fast_flag);
  verify->add_option("--samples", v_samples, "override the Monte Carlo sample count");
  verify->add_option("--seed", vo.seed, "Monte Carlo seed")->capture_default_str();
  verify->add_option("--threads", vo.threads, "worker threads (0 = all cores)")->capture_default_str();
  verify->add_flag("--inject-fault", vo.inject_beta_fault, "use a wrong beta exponent on the analytic side");
  verify->add_flag("--quiet", v_quiet, "print failing rows and summaries only");

  int figure = 1;
  std::string out_dir;
  FigureOptions fo;
  bool no_mc = false;
  auto* sweep = app.add_subcommand("sweep-figures", "Write the curves and SVG of one figure");
  sweep->add_option("--figure", figure, "1, 2 or 3")->required()->check(CLI::Range(1, 3));
  sweep->add_option("--out-dir", out_dir, "output directory (default $EFFRATE_OUT_DIR, else ./figures)");
  sweep->add_option("--samples", fo.mc.samples, "Monte Carlo samples per curve")->capture_default_str();
  sweep->add_option("--seed", fo.mc.seed, "Monte Carlo seed")->capture_default_str();
  sweep->add_option("--threads", fo.threads, "worker threads (0 = all cores)")->capture_default_str();
  sweep->add_flag("--no-mc", no_mc, "skip the simulated curves");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    report_error(e.what());
    return kBadInput;
  }

  try {
    if (*rate) return cmd_rate(ra);
    if (*fit) return cmd_fit_sum(fa, fm, fn, fmean);
    if (*verify) {
      vo.samples = v_samples ? *v_samples : v_full ? 10'000'000 : 100'000;
      return cmd_verify(vo, v_quiet);
    }
    if (*sweep) {
      fo.monte_carlo = !no_mc;
      fo.mc.validate();
      return cmd_sweep(figure, out_dir, fo);
    }
  } catch (const ConvergenceError& e) {
    report_error(e.what());
    return kNoConvergence;
  } catch (const std::exception& e) {
    report_error(e.what());
    return kBadInput;
  }
  return kOk;
}
