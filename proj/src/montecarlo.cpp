#include "effrate/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <thread>

#include "effrate/errors.hpp"
#include "effrate/rng.hpp"

namespace effrate {

namespace {

constexpr double kZ95 = 1.959963984540054;

// Welford accumulator with Chan's pairwise merge.
struct Moments {
  double count = 0.0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    count += 1.0;
    const double delta = x - mean;
    mean += delta / count;
    m2 += delta * (x - mean);
  }
  void merge(const Moments& o) {
    if (o.count == 0.0) return;
    const double total = count + o.count;
    const double delta = o.mean - mean;
    mean += delta * o.count / total;
    m2 += o.m2 + delta * delta * count * o.count / total;
    count = total;
  }
  double variance() const { return count > 1.0 ? m2 / (count - 1.0) : 0.0; }
  double std_error() const { return count > 0.0 ? std::sqrt(variance() / count) : 0.0; }
};

// Runs body(chunk_index, stream, n_draws, accumulators) for every chunk and
// reduces the per-chunk accumulators in chunk order.
template <class Body>
std::vector<Moments> run_chunks(const McConfig& cfg, std::size_t outputs, Body body) {
  cfg.validate();
  const std::uint64_t streams = cfg.streams;
  std::vector<std::vector<Moments>> per_chunk(streams, std::vector<Moments>(outputs));
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    for (std::uint64_t i = next++; i < streams; i = next++) {
      const std::uint64_t begin = cfg.samples * i / streams;
      const std::uint64_t end = cfg.samples * (i + 1) / streams;
      RngStream stream(cfg.seed, i);
      body(stream, end - begin, per_chunk[i]);
    }
  };
  unsigned threads = cfg.threads != 0 ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, streams));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  std::vector<Moments> total(outputs);
  for (const auto& chunk : per_chunk) {
    for (std::size_t k = 0; k < outputs; ++k) total[k].merge(chunk[k]);
  }
  return total;
}

}  // namespace

void McConfig::validate() const {
  if (samples < 1000) throw DomainError("McConfig: samples must be >= 1000");
  if (streams < 1) throw DomainError("McConfig: streams must be >= 1");
  if (streams > samples) throw DomainError("McConfig: more streams than samples");
}

std::vector<McEstimate> simulate_rate_curve(const MisoLink& link, std::span<const double> rhos,
                                            const McConfig& cfg) {
  for (double rho : rhos) {
    if (!(rho >= 0.0) || !std::isfinite(rho)) throw DomainError("simulate_rate: rho must be >= 0 and finite");
  }
  const double a = link.delay_a();
  const int n_t = link.n_t();
  const auto branch = link.branch();
  const std::vector<double> scaled = [&] {
    std::vector<double> s(rhos.begin(), rhos.end());
    for (double& v : s) v /= n_t;
    return s;
  }();
  const std::size_t points = scaled.size();

  // Two accumulators per point: kept = (1+w)^{-A} and lost = 1 - kept.
  // Their means are complementary; whichever is small carries the precision.
  auto stats = run_chunks(cfg, 2 * points, [&](RngStream& stream, std::uint64_t draws, std::vector<Moments>& acc) {
    AlphaMuSampler sampler(branch);
    for (std::uint64_t j = 0; j < draws; ++j) {
      double gamma = 0.0;
      for (int i = 0; i < n_t; ++i) gamma += sampler(stream);
      for (std::size_t k = 0; k < points; ++k) {
        const double lost = -std::expm1(-a * std::log1p(scaled[k] * gamma));
        acc[2 * k].add(1.0 - lost);
        acc[2 * k + 1].add(lost);
      }
    }
  });

  std::vector<McEstimate> out(points);
  for (std::size_t k = 0; k < points; ++k) {
    const auto& kept = stats[2 * k];
    const auto& lost = stats[2 * k + 1];
    const double denom = a * std::numbers::ln2;
    if (kept.mean < 0.5) {
      out[k].value = -std::log(kept.mean) / denom;
      out[k].ci_halfwidth = kZ95 * kept.std_error() / (denom * kept.mean);
    } else {
      out[k].value = -std::log1p(-lost.mean) / denom;
      out[k].ci_halfwidth = kZ95 * lost.std_error() / (denom * (1.0 - lost.mean));
    }
  }
  return out;
}

McEstimate simulate_rate(const MisoLink& link, double rho, const McConfig& cfg) {
  const double rhos[] = {rho};
  return simulate_rate_curve(link, rhos, cfg).front();
}

McEstimate simulate_ergodic_capacity(const MisoLink& link, double rho, const McConfig& cfg) {
  if (!(rho >= 0.0) || !std::isfinite(rho)) throw DomainError("simulate_ergodic_capacity: rho must be >= 0");
  const double scaled = rho / link.n_t();
  const int n_t = link.n_t();
  const auto branch = link.branch();
  auto stats = run_chunks(cfg, 1, [&](RngStream& stream, std::uint64_t draws, std::vector<Moments>& acc) {
    AlphaMuSampler sampler(branch);
    for (std::uint64_t j = 0; j < draws; ++j) {
      double gamma = 0.0;
      for (int i = 0; i < n_t; ++i) gamma += sampler(stream);
      acc[0].add(std::log2(1.0 + scaled * gamma));
    }
  });
  return {stats[0].mean, kZ95 * stats[0].std_error()};
}

McMoments simulate_power_moments(const MisoLink& link, const McConfig& cfg) {
  const int n_t = link.n_t();
  const auto branch = link.branch();
  auto stats = run_chunks(cfg, 2, [&](RngStream& stream, std::uint64_t draws, std::vector<Moments>& acc) {
    AlphaMuSampler sampler(branch);
    for (std::uint64_t j = 0; j < draws; ++j) {
      double gamma = 0.0;
      for (int i = 0; i < n_t; ++i) gamma += sampler(stream);
      acc[0].add(gamma);
      acc[1].add(gamma * gamma);
    }
  });
  return {{stats[0].mean, kZ95 * stats[0].std_error()}, {stats[1].mean, kZ95 * stats[1].std_error()}};
}

}  // namespace effrate
