#include "effrate/figures.hpp"

#include <cstdio>
#include <fstream>

#include "effrate/errors.hpp"
#include "effrate/parallel.hpp"

namespace effrate {

namespace {

std::string short_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

// Transmit SNR grid of the Eb/N0 figure, in dB.
constexpr double kFig3StartDb = -40.0;
constexpr double kFig3StopDb = 10.0;
constexpr int kFig3Points = 26;

}  // namespace

FigureSetup figure_setup(int figure) {
  FigureSetup s;
  s.figure = figure;
  switch (figure) {
    case 1:
      s.title = "Effective rate vs SNR, N_t = 2, A = 0.5, mu = 2";
      s.axis = "snr_db";
      s.x_label = "Transmit SNR rho (dB)";
      s.parameter = "alpha";
      s.values = {0.8, 2.0, 4.0, 8.0};
      for (double a : s.values) s.links.emplace_back(2, 0.5, AlphaMuParams(a, 2.0, 1.0));
      break;
    case 2:
      s.title = "Effective rate vs SNR, N_t = 2, A = 0.5, alpha = 4";
      s.axis = "snr_db";
      s.x_label = "Transmit SNR rho (dB)";
      s.parameter = "mu";
      s.values = {0.5, 1.0, 2.0, 4.0};
      for (double m : s.values) s.links.emplace_back(2, 0.5, AlphaMuParams(4.0, m, 1.0));
      break;
    case 3:
      s.title = "Effective rate vs Eb/N0, N_t = 2, alpha = 2, mu = 2";
      s.axis = "eb_n0_db";
      s.x_label = "Eb/N0 (dB)";
      s.parameter = "A";
      s.values = {0.5, 1.0, 2.0};
      for (double a : s.values) s.links.emplace_back(2, a, AlphaMuParams(2.0, 2.0, 1.0));
      break;
    default:
      throw DomainError("figure must be 1, 2 or 3");
  }
  return s;
}

FigureData build_figure(int figure, const FigureOptions& opt) {
  FigureData data{figure_setup(figure), {}};
  const auto& setup = data.setup;
  const bool eb_axis = setup.axis == "eb_n0_db";
  const auto rho_db = eb_axis ? linspace(kFig3StartDb, kFig3StopDb, kFig3Points)
                              : linspace(opt.start_db, opt.stop_db, opt.points);
  std::vector<double> rhos;
  for (double db : rho_db) rhos.push_back(db_to_linear(db));

  // Per link: exact, approximation, Monte Carlo (optional).
  const std::size_t n = setup.links.size();
  std::vector<std::vector<NamedCurve>> per_link(n);
  parallel_for(
      n,
      [&](std::size_t i) {
        const auto& link = setup.links[i];
        // Fit once, before any concurrent readers.
        link.fit();
        const std::string stem = "fig" + std::to_string(figure) + "_" + setup.parameter + "_" + short_num(setup.values[i]);
        const std::string tag = setup.parameter + " = " + short_num(setup.values[i]);

        RateCurve exact{RateMethod::fox_h, setup.axis, {}};
        std::vector<double> exact_rates;
        for (std::size_t k = 0; k < rhos.size(); ++k) {
          const double r = rate_exact_foxh(link, rhos[k]);
          exact_rates.push_back(r);
          const double x = eb_axis ? linear_to_db(rhos[k] / r) : rho_db[k];
          exact.points.push_back({x, r, std::nullopt});
        }
        per_link[i].push_back({stem + "_exact", "exact, " + tag, exact});

        if (eb_axis) {
          RateCurve approx{RateMethod::low_snr_wideband, setup.axis, {}};
          for (const auto& p : exact.points) {
            approx.points.push_back({p.x, rate_low_snr(link, db_to_linear(p.x)).rate, std::nullopt});
          }
          per_link[i].push_back({stem + "_low_snr", "low-SNR, " + tag, approx});
        } else if (high_snr_validity(link) != HighSnrValidity::invalid) {
          RateCurve asym{RateMethod::high_snr, setup.axis, {}};
          for (std::size_t k = 0; k < rhos.size(); ++k) {
            // The asymptote dips below zero at low SNR; those points are not plotted.
            const double r = rate_high_snr(link, rhos[k]);
            if (r >= 0.0) asym.points.push_back({rho_db[k], r, std::nullopt});
          }
          per_link[i].push_back({stem + "_high_snr", "high-SNR, " + tag, asym});
        }

        if (opt.monte_carlo) {
          McConfig mc = opt.mc;
          mc.threads = 1;
          const auto est = simulate_rate_curve(link, rhos, mc);
          RateCurve sim{RateMethod::monte_carlo, setup.axis, {}};
          for (std::size_t k = 0; k < rhos.size(); ++k) {
            const double x = eb_axis ? linear_to_db(rhos[k] / est[k].value) : rho_db[k];
            if (!sim.points.empty() && !(x > sim.points.back().x)) continue;
            sim.points.push_back({x, est[k].value, est[k].ci_halfwidth});
          }
          per_link[i].push_back({stem + "_mc", "simulation, " + tag, sim});
        }
      },
      opt.threads);

  for (auto& curves : per_link) {
    for (auto& c : curves) data.curves.push_back(std::move(c));
  }
  if (!eb_axis) {
    RateCurve awgn{RateMethod::awgn, setup.axis, {}};
    for (std::size_t k = 0; k < rhos.size(); ++k) {
      awgn.points.push_back({rho_db[k], rate_awgn(setup.links.front(), rhos[k]), std::nullopt});
    }
    data.curves.push_back({"fig" + std::to_string(figure) + "_awgn", "AWGN", awgn});
  }
  return data;
}

Plot to_plot(const FigureData& data) {
  Plot plot;
  plot.title = data.setup.title;
  plot.x_label = data.setup.x_label;
  plot.y_label = "Effective rate (bit/s/Hz)";
  std::size_t color = 0;
  std::string last_tag;
  for (const auto& nc : data.curves) {
    // Curves of the same link share a colour.
    const auto comma = nc.label.find(", ");
    const std::string tag = comma == std::string::npos ? nc.label : nc.label.substr(comma + 2);
    if (!last_tag.empty() && tag != last_tag) ++color;
    last_tag = tag;
    PlotSeries s;
    s.label = nc.label;
    s.color = nc.curve.method == RateMethod::awgn ? "#000000" : palette(color);
    s.dashed = nc.curve.method == RateMethod::high_snr || nc.curve.method == RateMethod::low_snr_wideband;
    s.markers_only = nc.curve.method == RateMethod::monte_carlo;
    for (const auto& p : nc.curve.points) {
      s.x.push_back(p.x);
      s.y.push_back(p.rate);
      if (p.ci_halfwidth) s.err.push_back(*p.ci_halfwidth);
    }
    if (s.err.size() != s.y.size()) s.err.clear();
    plot.series.push_back(std::move(s));
  }
  return plot;
}

std::vector<std::filesystem::path> write_figure(const FigureData& data, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> written;
  for (const auto& nc : data.curves) {
    const auto path = dir / (nc.name + ".csv");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    write_csv(out, nc.curve);
    written.push_back(path);
  }
  const auto svg = dir / ("fig" + std::to_string(data.setup.figure) + ".svg");
  std::ofstream out(svg);
  if (!out) throw std::runtime_error("cannot write " + svg.string());
  render_svg(out, to_plot(data));
  written.push_back(svg);
  return written;
}

}  // namespace effrate
