#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "effrate/curve.hpp"
#include "effrate/effective_rate.hpp"
#include "effrate/montecarlo.hpp"
#include "effrate/svg_plot.hpp"

namespace effrate {

/// Curve family of one figure: a set of links that differ in one parameter.
struct FigureSetup {
  int figure = 1;
  std::string title;
  std::string axis;  ///< "snr_db" or "eb_n0_db"
  std::string x_label;
  std::string parameter;  ///< name of the swept parameter
  std::vector<double> values;
  std::vector<MisoLink> links;
};

/// Fig. 1: N_t = 2, A = 0.5, mu = 2, alpha in {0.8, 2, 4, 8}.
/// Fig. 2: N_t = 2, A = 0.5, alpha = 4, mu in {0.5, 1, 2, 4}.
/// Fig. 3: N_t = 2, alpha = 2, mu = 2, A in {0.5, 1, 2}.
FigureSetup figure_setup(int figure);

struct FigureOptions {
  McConfig mc;
  bool monte_carlo = true;
  double start_db = 0.0;
  double stop_db = 20.0;
  int points = 11;
  unsigned threads = 0;
};

struct NamedCurve {
  std::string name;  ///< file stem, e.g. "fig1_alpha_0.8_exact"
  std::string label;  ///< legend text
  RateCurve curve;
};

struct FigureData {
  FigureSetup setup;
  std::vector<NamedCurve> curves;
};

/// SNR-axis figures (1, 2): exact Fox-H curve, high-SNR asymptote (when the
/// asymptote exists), Monte Carlo with CI, and the AWGN benchmark.
/// Eb/N0-axis figure (3): exact parametric curve (rho/R, R), wideband
/// approximation, Monte Carlo.
FigureData build_figure(int figure, const FigureOptions& opt);

/// One CSV per curve plus fig<N>.svg. Returns the written paths.
std::vector<std::filesystem::path> write_figure(const FigureData& data, const std::filesystem::path& dir);

Plot to_plot(const FigureData& data);

}  // namespace effrate
