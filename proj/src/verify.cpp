#include "effrate/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <ostream>

#include "effrate/curve.hpp"
#include "effrate/effective_rate.hpp"
#include "effrate/errors.hpp"
#include "effrate/figures.hpp"
#include "effrate/montecarlo.hpp"
#include "effrate/parallel.hpp"
#include "effrate/sum_matching.hpp"

namespace effrate {

namespace {

std::string fmt(const char* pattern, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, pattern, args...);
  return buf;
}

double rel_diff(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// Sum distribution with the scale replaced by beta^{2/alpha}.
AlphaMuParams faulty_sum(const AlphaMuParams& sum) {
  const double a = sum.alpha(), m = sum.mu();
  const double log_beta = 2.0 / a * sum.log_beta();
  const double log_mean = log_beta + std::lgamma(m + 2.0 / a) - std::lgamma(m);
  return {a, m, std::exp(log_mean)};
}

CheckGroup method_agreement(unsigned threads) {
  struct Case {
    double alpha, mu;
    int n_t;
    double a, rho;
  };
  std::vector<Case> cases;
  for (double alpha : {0.8, 2.0, 4.0})
    for (double mu : {1.0, 2.0})
      for (int n_t : {1, 2, 4})
        for (double a : {0.5, 1.0, 2.0})
          for (double rho : {0.1, 1.0, 10.0, 100.0}) cases.push_back({alpha, mu, n_t, a, rho});

  std::vector<CheckRow> rows(cases.size());
  parallel_for(
      cases.size(),
      [&](std::size_t i) {
        const auto& c = cases[i];
        const MisoLink link(c.n_t, c.a, AlphaMuParams(c.alpha, c.mu));
        const double q = rate_exact_quadrature(link, c.rho);
        const double h = rate_exact_foxh(link, c.rho);
        double worst = rel_diff(h, q);
        std::string extra;
        if (rationalize_half_alpha(link.sum_params().alpha())) {
          const double g = rate_exact_meijerg(link, c.rho);
          worst = std::max({worst, rel_diff(g, q), rel_diff(g, h)});
        } else {
          extra = " (no Meijer-G form)";
        }
        rows[i] = {fmt("alpha=%g mu=%g Nt=%d A=%g rho=%g%s", c.alpha, c.mu, c.n_t, c.a, c.rho, extra.c_str()), worst,
                   1e-6, worst <= 1e-6};
      },
      threads);
  return {"exact methods agree pairwise", std::move(rows)};
}

CheckGroup nakagami_reduction() {
  CheckGroup g{"Fox-H matches the Nakagami closed form", {}};
  for (double m : {0.5, 1.0, 2.0, 3.5})
    for (int n_t : {1, 2})
      for (double a : {0.5, 1.0})
        for (double rho : {1.0, 10.0}) {
          const MisoLink link(n_t, a, AlphaMuParams(2.0, m));
          const double d = rel_diff(rate_exact_foxh(link, rho), rate_nakagami(m, 1.0, n_t, a, rho));
          g.rows.push_back({fmt("m=%g Nt=%d A=%g rho=%g", m, n_t, a, rho), d, 1e-8, d <= 1e-8});
        }
  return g;
}

CheckGroup gamma_closure() {
  CheckGroup g{"moment matching closes on Gamma sums", {}};
  for (double mu : {0.5, 1.0, 2.5})
    for (int n_t : {2, 4, 8}) {
      const auto fit = fit_sum(AlphaMuParams(2.0, mu), n_t);
      const double d = std::max(std::abs(fit.fitted.alpha() - 2.0), std::abs(fit.fitted.mu() - n_t * mu));
      g.rows.push_back({fmt("mu=%g Nt=%d -> alpha=%.9f mu=%.9f", mu, n_t, fit.fitted.alpha(), fit.fitted.mu()), d, 1e-6,
                        d <= 1e-6});
    }
  return g;
}

// Monte Carlo against the exact curve for the SNR-axis figures, plus ordering.
std::vector<CheckGroup> figure_agreement(const VerifyOptions& opt) {
  McConfig mc;
  mc.samples = opt.samples;
  mc.seed = opt.seed;
  mc.streams = opt.streams;
  mc.threads = 1;
  mc.validate();
  const auto rho_db = linspace(0.0, 20.0, 11);
  std::vector<double> rhos;
  for (double db : rho_db) rhos.push_back(db_to_linear(db));

  std::vector<CheckGroup> out;
  for (int figure : {1, 2}) {
    const auto setup = figure_setup(figure);
    const std::size_t n = setup.links.size();
    std::vector<std::vector<CheckRow>> rows(n);
    std::vector<std::vector<double>> exact(n);
    parallel_for(
        n,
        [&](std::size_t i) {
          const auto& link = setup.links[i];
          const auto est = simulate_rate_curve(link, rhos, mc);
          const AlphaMuParams sum = opt.inject_beta_fault ? faulty_sum(link.sum_params()) : link.sum_params();
          for (std::size_t k = 0; k < rhos.size(); ++k) {
            const double r = rate_exact_foxh(sum, link.n_t(), link.delay_a(), rhos[k]);
            exact[i].push_back(r);
            const double d = std::abs(est[k].value - r);
            const double rel = d / r;
            const bool ok = rel <= 0.02 || d <= est[k].ci_halfwidth;
            rows[i].push_back({fmt("%s=%g snr=%gdB exact=%.6f mc=%.6f ci=%.2e", setup.parameter.c_str(),
                                   setup.values[i], rho_db[k], r, est[k].value, est[k].ci_halfwidth),
                               rel, 0.02, ok});
          }
        },
        opt.threads);

    CheckGroup agree{fmt("Fig. %d: Monte Carlo within 2%% or the 95%% CI", figure), {}};
    for (auto& r : rows)
      for (auto& row : r) agree.rows.push_back(std::move(row));
    out.push_back(std::move(agree));

    CheckGroup order{fmt("Fig. %d: rate increases with %s", figure, setup.parameter.c_str()), {}};
    for (std::size_t k = 0; k < rhos.size(); ++k) {
      double worst = INFINITY;
      for (std::size_t i = 1; i < n; ++i) worst = std::min(worst, exact[i][k] - exact[i - 1][k]);
      order.rows.push_back({fmt("snr=%gdB min step=%.3e", rho_db[k], worst), worst, 0.0, worst > 0.0});
    }
    out.push_back(std::move(order));
  }
  return out;
}

// Slope per 3 dB of the exact rate and offset from the asymptote, on the
// points where A < alpha*mu/2 - 1 for the fitted sum.
CheckGroup high_snr(unsigned threads) {
  std::vector<MisoLink> links;
  for (double alpha : {0.8, 2.0, 4.0})
    for (double mu : {1.0, 2.0})
      for (int n_t : {1, 2, 4})
        for (double a : {0.5, 1.0, 2.0}) {
          MisoLink link(n_t, a, AlphaMuParams(alpha, mu));
          if (high_snr_validity(link) == HighSnrValidity::valid) links.push_back(link);
        }
  std::vector<CheckRow> rows(2 * links.size());
  parallel_for(
      links.size(),
      [&](std::size_t i) {
        const auto& link = links[i];
        const double h = 1.01;
        const double slope =
            (rate_exact_foxh(link, 1e5 * h) - rate_exact_foxh(link, 1e5 / h)) / (2.0 * std::log2(h));
        const double gap = std::abs(rate_exact_foxh(link, 1e6) - rate_high_snr(link, 1e6));
        const auto& b = link.branch();
        const std::string tag = fmt("alpha=%g mu=%g Nt=%d A=%g", b.alpha(), b.mu(), link.n_t(), link.delay_a());
        rows[2 * i] = {tag + fmt(" slope=%.6f", slope), std::abs(slope - 1.0), 1e-2, std::abs(slope - 1.0) <= 1e-2};
        rows[2 * i + 1] = {tag + fmt(" gap=%.2e", gap), gap, 0.01, gap <= 0.01};
      },
      threads);
  return {"high-SNR slope and offset (A < alpha*mu/2 - 1)", std::move(rows)};
}

CheckGroup wideband() {
  CheckGroup g{"wideband metrics", {}};
  const double ln2_db = linear_to_db(std::log(2.0));
  for (double a : {0.5, 1.0, 2.0}) {
    const MisoLink link(2, a, AlphaMuParams(2.0, 2.0));
    const double min_db = linear_to_db(wideband_metrics(link).eb_n0_min);
    const double rho = 1e-4;
    const double icpt_db = linear_to_db(rho / rate_exact_foxh(link, rho));
    const double d = std::max(std::abs(min_db - ln2_db), std::abs(icpt_db - ln2_db));
    g.rows.push_back({fmt("A=%g Eb/N0 min=%.4fdB intercept=%.4fdB", a, min_db, icpt_db), d, 0.05, d <= 0.05});
  }
  for (double m : {0.5, 1.0, 2.0, 3.5})
    for (int n_t : {1, 2, 4})
      for (double a : {0.5, 1.0, 2.0}) {
        const MisoLink link(n_t, a, AlphaMuParams(2.0, m));
        const double ref = 2.0 * m * n_t / (a + 1.0 + m * n_t);
        const double d = rel_diff(wideband_metrics(link).s0, ref);
        g.rows.push_back({fmt("Nakagami S0 m=%g Nt=%d A=%g", m, n_t, a), d, 1e-10, d <= 1e-10});
      }
  const double s0 = wideband_metrics(MisoLink(2, 1.0, AlphaMuParams(2.0, 1e4))).s0;
  g.rows.push_back({fmt("S0 at mu=1e4: %.6f", s0), std::abs(s0 - 2.0), 1e-3, std::abs(s0 - 2.0) <= 1e-3});
  return g;
}

// Runs one group, turning an exception into a single failed row.
void run_group(std::vector<CheckGroup>& groups, const std::string& name, const std::function<CheckGroup()>& f) {
  try {
    groups.push_back(f());
  } catch (const std::exception& e) {
    groups.push_back({name, {{std::string("exception: ") + e.what(), NAN, 0.0, false}}});
  }
}

}  // namespace

bool CheckGroup::passed() const { return failures() == 0 && !rows.empty(); }

std::size_t CheckGroup::failures() const {
  return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const CheckRow& r) { return !r.passed; }));
}

bool VerifyReport::passed() const {
  return !groups.empty() && std::all_of(groups.begin(), groups.end(), [](const CheckGroup& g) { return g.passed(); });
}

VerifyReport run_verify(const VerifyOptions& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  VerifyReport report;
  run_group(report.groups, "exact methods agree pairwise", [&] { return method_agreement(opt.threads); });
  run_group(report.groups, "Nakagami reduction", nakagami_reduction);
  run_group(report.groups, "Gamma closure", gamma_closure);
  try {
    for (auto& g : figure_agreement(opt)) report.groups.push_back(std::move(g));
  } catch (const std::exception& e) {
    report.groups.push_back({"Monte Carlo agreement", {{std::string("exception: ") + e.what(), NAN, 0.0, false}}});
  }
  run_group(report.groups, "high-SNR asymptote", [&] { return high_snr(opt.threads); });
  run_group(report.groups, "wideband metrics", wideband);
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

void print_report(std::ostream& out, const VerifyReport& report, bool show_rows) {
  for (const auto& g : report.groups) {
    out << "== " << g.name << '\n';
    for (const auto& r : g.rows) {
      if (!show_rows && r.passed) continue;
      out << (r.passed ? "  ok    " : "  FAIL  ") << r.label << "  delta=" << fmt("%.3e", r.measured)
          << " tol=" << fmt("%.1e", r.tolerance) << '\n';
    }
    out << (g.passed() ? "PASS " : "FAIL ") << g.name << " (" << g.rows.size() - g.failures() << '/' << g.rows.size()
        << ")\n";
  }
  out << (report.passed() ? "PASS" : "FAIL") << " verify: " << report.groups.size() << " groups, "
      << fmt("%.1f s", report.seconds) << '\n';
}

}  // namespace effrate
