#pragma once

// Monte Carlo study of the moment and maximum-likelihood estimators of mu:
// bias and MSE per (mu, n) cell, and sampling densities of the estimates.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <thread>
#include <vector>

#include "sslud/distribution.hpp"
#include "sslud/error.hpp"
#include "sslud/estimation.hpp"
#include "sslud/numerics.hpp"
#include "sslud/sample.hpp"

namespace sslud {

struct SimCell {
  double mu = 0.0;
  std::size_t n = 0;
  std::size_t reps = 0;
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;
  double mle_bias = 0.0;
  double mle_mse = 0.0;
  double mom_bias = 0.0;
  double mom_mse = 0.0;
  // Monte Carlo standard errors of the four statistics above.
  double mle_bias_se = 0.0;
  double mle_mse_se = 0.0;
  double mom_bias_se = 0.0;
  double mom_mse_se = 0.0;
  std::string diagnostic;  // non-empty if the cell aborted

  bool ok() const noexcept { return diagnostic.empty(); }
  friend bool operator==(const SimCell&, const SimCell&) = default;
};

struct GridSpec {
  std::vector<double> mus;
  std::vector<std::size_t> ns;
  std::size_t reps = 2000;
  std::uint64_t seed = 0;
};

struct SimGrid {
  std::vector<double> mus;
  std::vector<std::size_t> ns;
  std::size_t reps = 0;
  std::uint64_t seed = 0;
  std::vector<SimCell> cells;  // row-major: cells[row * ns.size() + col]

  const SimCell& at(std::size_t row, std::size_t col) const { return cells.at(row * ns.size() + col); }
  bool ok() const {
    return std::all_of(cells.begin(), cells.end(), [](const SimCell& c) { return c.ok(); });
  }
  friend bool operator==(const SimGrid&, const SimGrid&) = default;
};

/// Stream identifier of grid cell (row, col); stable when rows/cols are appended.
constexpr std::uint64_t cell_stream_id(std::size_t row, std::size_t col) noexcept {
  return (static_cast<std::uint64_t>(row) << 32) | static_cast<std::uint64_t>(col);
}

namespace detail {

// Streaming mean/variance (Welford) of one statistic.
class Moments {
 public:
  void add(double x) {
    ++count_;
    const double delta = x - mean_;
    mean_ += delta / static_cast<double>(count_);
    m2_ += delta * (x - mean_);
  }
  double mean() const noexcept { return mean_; }
  double standard_error() const noexcept {
    if (count_ < 2) return 0.0;
    const double var = m2_ / static_cast<double>(count_ - 1);
    return std::sqrt(var / static_cast<double>(count_));
  }

 private:
  std::size_t count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

struct EstimatorStats {
  Moments error;
  Moments squared_error;
  void add(double estimate, double truth) {
    const double e = estimate - truth;
    error.add(e);
    squared_error.add(e * e);
  }
};

}  // namespace detail

/// Draws `reps` samples of size n, fitting both estimators to each. Any fit
/// failure aborts the cell with an Error naming the replicate.
inline SimCell run_cell(double mu, std::size_t n, std::size_t reps, RngStream& stream) {
  if (n < 2 || reps < 1) throw Error(ErrorCode::DomainError, "run_cell needs n >= 2 and reps >= 1");
  const SsludParams params(mu);
  detail::EstimatorStats mle;
  detail::EstimatorStats mom;
  for (std::size_t rep = 0; rep < reps; ++rep) {
    try {
      const Sample data(sample(params, n, stream));
      mle.add(fit_mle(data).mu(), mu);
      mom.add(fit_mom(data).mu(), mu);
    } catch (const Error& e) {
      throw Error(e.code(), "cell mu=" + std::to_string(mu) + " n=" + std::to_string(n) +
                                " replicate " + std::to_string(rep) + ": " + e.what());
    }
  }
  SimCell cell;
  cell.mu = mu;
  cell.n = n;
  cell.reps = reps;
  cell.seed = stream.seed();
  cell.stream_id = stream.stream_id();
  cell.mle_bias = mle.error.mean();
  cell.mle_mse = mle.squared_error.mean();
  cell.mom_bias = mom.error.mean();
  cell.mom_mse = mom.squared_error.mean();
  cell.mle_bias_se = mle.error.standard_error();
  cell.mle_mse_se = mle.squared_error.standard_error();
  cell.mom_bias_se = mom.error.standard_error();
  cell.mom_mse_se = mom.squared_error.standard_error();
  return cell;
}

/// Runs every (mu, n) cell, each on its own stream keyed by (row, col), so
/// results do not depend on `threads` or on scheduling order. threads == 0
/// uses the hardware concurrency.
inline SimGrid run_grid(const GridSpec& spec, unsigned threads = 1) {
  if (spec.mus.empty() || spec.ns.empty()) throw Error(ErrorCode::InvalidInput, "grid needs at least one mu and one n");
  SimGrid grid{spec.mus, spec.ns, spec.reps, spec.seed, {}};
  const std::size_t cols = spec.ns.size();
  const std::size_t total = spec.mus.size() * cols;
  grid.cells.resize(total);

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t idx = next.fetch_add(1); idx < total; idx = next.fetch_add(1)) {
      const std::size_t row = idx / cols;
      const std::size_t col = idx % cols;
      RngStream stream(spec.seed, cell_stream_id(row, col));
      try {
        grid.cells[idx] = run_cell(spec.mus[row], spec.ns[col], spec.reps, stream);
      } catch (const std::exception& e) {
        SimCell failed;
        failed.mu = spec.mus[row];
        failed.n = spec.ns[col];
        failed.reps = spec.reps;
        failed.seed = spec.seed;
        failed.stream_id = stream.stream_id();
        failed.diagnostic = e.what();
        grid.cells[idx] = failed;
      }
    }
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, total));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  return grid;
}

struct Histogram {
  std::vector<double> edges;    // bins + 1 ascending edges
  std::vector<double> density;  // per-bin density; sum(density * width) == 1

  double mass() const {
    double m = 0.0;
    for (std::size_t i = 0; i < density.size(); ++i) m += density[i] * (edges[i + 1] - edges[i]);
    return m;
  }
  double at(double x) const {
    if (density.empty() || x < edges.front() || x > edges.back()) return 0.0;
    const auto it = std::upper_bound(edges.begin(), edges.end(), x);
    const std::size_t bin = std::min<std::size_t>(static_cast<std::size_t>(it - edges.begin()) - 1, density.size() - 1);
    return density[bin];
  }
};

/// Equal-width density histogram over [min, max] of `values`.
inline Histogram make_histogram(std::span<const double> values, std::size_t bins) {
  if (values.empty() || bins == 0) throw Error(ErrorCode::InvalidInput, "histogram needs values and bins");
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  double lo = *lo_it;
  double hi = *hi_it;
  if (lo == hi) {
    lo -= 0.5;
    hi += 0.5;
  }
  const double width = (hi - lo) / static_cast<double>(bins);
  Histogram h;
  h.edges.resize(bins + 1);
  for (std::size_t i = 0; i <= bins; ++i) h.edges[i] = lo + width * static_cast<double>(i);
  h.edges.back() = hi;
  std::vector<std::size_t> counts(bins, 0);
  for (double v : values) {
    auto bin = static_cast<std::size_t>((v - lo) / width);
    ++counts[std::min(bin, bins - 1)];
  }
  h.density.resize(bins);
  const double total = static_cast<double>(values.size());
  for (std::size_t i = 0; i < bins; ++i) {
    h.density[i] = static_cast<double>(counts[i]) / (total * (h.edges[i + 1] - h.edges[i]));
  }
  return h;
}

struct ShapeStats {
  double mean;
  double sd;
  double skewness;         // g1
  double excess_kurtosis;  // g2

  /// Jarque-Bera statistic per observation: 0 for an exactly normal shape.
  double normality_score() const noexcept {
    return skewness * skewness / 6.0 + excess_kurtosis * excess_kurtosis / 24.0;
  }
};

inline ShapeStats shape_stats(std::span<const double> values) {
  const double n = static_cast<double>(values.size());
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= n;
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double v : values) {
    const double d = v - mean;
    m2 += d * d;
    m3 += d * d * d;
    m4 += d * d * d * d;
  }
  m2 /= n;
  m3 /= n;
  m4 /= n;
  if (m2 <= 0.0) return {mean, 0.0, 0.0, 0.0};
  return {mean, std::sqrt(m2), m3 / std::pow(m2, 1.5), m4 / (m2 * m2) - 3.0};
}

struct SamplingDensity {
  double mu;
  std::size_t n;
  std::size_t reps;
  std::vector<double> mle;
  std::vector<double> mom;
  Histogram mle_histogram;
  Histogram mom_histogram;
  ShapeStats mle_shape;
  ShapeStats mom_shape;
};

/// Empirical sampling distribution of both estimators over `reps` replicates.
inline SamplingDensity sampling_density(double mu, std::size_t n, std::size_t reps, RngStream& stream,
                                        std::size_t bins = 40) {
  if (reps < 100) throw Error(ErrorCode::DomainError, "sampling_density needs reps >= 100");
  if (n < 2) throw Error(ErrorCode::DomainError, "sampling_density needs n >= 2");
  const SsludParams params(mu);
  SamplingDensity out{mu, n, reps, {}, {}, {}, {}, {}, {}};
  out.mle.reserve(reps);
  out.mom.reserve(reps);
  for (std::size_t rep = 0; rep < reps; ++rep) {
    const Sample data(sample(params, n, stream));
    out.mle.push_back(fit_mle(data).mu());
    out.mom.push_back(fit_mom(data).mu());
  }
  out.mle_histogram = make_histogram(out.mle, bins);
  out.mom_histogram = make_histogram(out.mom, bins);
  out.mle_shape = shape_stats(out.mle);
  out.mom_shape = shape_stats(out.mom);
  return out;
}

}  // namespace sslud
