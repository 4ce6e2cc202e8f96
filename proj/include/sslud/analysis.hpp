#pragma once

// Data-analysis workflow behind the CLI: series ingestion, percentage
// changes, the Wald-Wolfowitz runs test, four-model comparison, density
// overlays and reference tables.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "sslud/baselines.hpp"
#include "sslud/distribution.hpp"
#include "sslud/error.hpp"
#include "sslud/estimation.hpp"
#include "sslud/sample.hpp"
#include "sslud/simstudy.hpp"
#include "sslud/table.hpp"

namespace sslud {

// ---------------------------------------------------------------------------
// Ingestion

struct PriceSeries {
  std::vector<std::string> dates;  // empty when the input had no date column
  std::vector<double> prices;
};

enum class SeriesKind { Prices, Returns };

struct SeriesInput {
  std::vector<std::string> dates;
  std::vector<double> values;
};

namespace detail {

inline std::optional<double> parse_double(std::string_view text) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '"')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '"' || text.back() == '\r')) text.remove_suffix(1);
  if (text.empty()) return std::nullopt;
  if (text.front() == '+') text.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
  return v;
}

// Separators: comma, tab, semicolon, space. Empty fields are dropped.
inline std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string current;
  for (char c : line) {
    if (c == ',' || c == '\t' || c == ';' || c == ' ' || c == '\r') {
      if (!current.empty()) fields.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  if (!current.empty()) fields.push_back(std::move(current));
  return fields;
}

}  // namespace detail

/// Reads single-column (value) or two-column (date, value) delimited text.
/// Comma, tab, semicolon and spaces separate fields; blank lines and lines
/// starting with '#' are skipped; a non-numeric first row is a header.
inline SeriesInput read_series(std::istream& in) {
  SeriesInput out;
  std::string line;
  std::size_t line_no = 0;
  bool seen_row = false;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto fields = detail::split_fields(line);
    if (fields.empty()) continue;
    const auto value = detail::parse_double(fields.back());
    if (!value) {
      if (!seen_row) {
        seen_row = true;
        continue;
      }
      throw Error(ErrorCode::InvalidInput, "line " + std::to_string(line_no) + ": '" + fields.back() +
                                               "' is not a number");
    }
    seen_row = true;
    if (fields.size() >= 2) out.dates.push_back(fields.front());
    out.values.push_back(*value);
  }
  if (!out.dates.empty() && out.dates.size() != out.values.size()) {
    throw Error(ErrorCode::InvalidInput, "mixed one- and two-column rows");
  }
  if (out.values.empty()) throw Error(ErrorCode::InvalidInput, "input contains no numeric rows");
  return out;
}

/// Y_t = (X_t - X_{t-1}) / X_{t-1} * 100.
inline Sample pct_change(const PriceSeries& series) {
  const auto& p = series.prices;
  if (p.size() < 2) throw Error(ErrorCode::InvalidInput, "pct_change needs at least two prices");
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!(p[i] > 0.0) || !std::isfinite(p[i])) {
      throw Error(ErrorCode::NonPositivePrice, "price " + std::to_string(i) + " is not positive");
    }
  }
  std::vector<double> out;
  out.reserve(p.size() - 1);
  for (std::size_t t = 1; t < p.size(); ++t) out.push_back((p[t] - p[t - 1]) / p[t - 1] * 100.0);
  return Sample(std::move(out));
}

/// {x_i - c}.
inline Sample shift(const Sample& data, double c) {
  std::vector<double> out(data.values().begin(), data.values().end());
  for (double& x : out) x -= c;
  return Sample(std::move(out));
}

// ---------------------------------------------------------------------------
// Descriptive statistics and the runs test

struct Descriptive {
  std::size_t n;
  double mean;
  double variance;  // divisor n - 1
  double skewness;  // moment coefficient g1
};

inline Descriptive describe(const Sample& data) {
  const auto shape = shape_stats(data.values());
  const double n = static_cast<double>(data.size());
  const double var = data.size() > 1 ? shape.sd * shape.sd * n / (n - 1.0) : 0.0;
  return {data.size(), shape.mean, var, shape.skewness};
}

enum class RunsThreshold { Mean, Median };

struct RunsTestResult {
  std::size_t runs;
  std::size_t above;
  std::size_t below;
  double threshold;
  double z;
  double p_value;  // two-sided, normal approximation
};

/// Wald-Wolfowitz runs test. Observations are dichotomized about the sample
/// mean (default) or median; observations equal to the threshold are dropped.
inline RunsTestResult runs_test(const Sample& data, RunsThreshold rule = RunsThreshold::Mean) {
  if (data.size() < 10) throw Error(ErrorCode::DegenerateSample, "runs_test needs n >= 10");
  double threshold = data.mean();
  if (rule == RunsThreshold::Median) {
    const auto s = data.sorted();
    const std::size_t n = s.size();
    threshold = (n % 2 == 1) ? s[n / 2] : 0.5 * (s[n / 2 - 1] + s[n / 2]);
  }
  std::vector<bool> signs;
  for (double x : data.values()) {
    if (x != threshold) signs.push_back(x > threshold);
  }
  const auto above = static_cast<std::size_t>(std::count(signs.begin(), signs.end(), true));
  const std::size_t below = signs.size() - above;
  if (above < 2 || below < 2) {
    throw Error(ErrorCode::DegenerateSample, "runs_test needs at least two values on each side of the threshold");
  }
  std::size_t runs = 1;
  for (std::size_t i = 1; i < signs.size(); ++i) runs += signs[i] != signs[i - 1];
  const double n1 = static_cast<double>(above);
  const double n2 = static_cast<double>(below);
  const double n = n1 + n2;
  const double expected = 2.0 * n1 * n2 / n + 1.0;
  const double variance = 2.0 * n1 * n2 * (2.0 * n1 * n2 - n) / (n * n * (n - 1.0));
  const double z = (static_cast<double>(runs) - expected) / std::sqrt(variance);
  return {runs, above, below, threshold, z, std::erfc(std::abs(z) / std::sqrt(2.0))};
}

// ---------------------------------------------------------------------------
// Model comparison

struct ModelFailure {
  Model model;
  std::string message;
};

struct ModelComparison {
  std::vector<FitResult> fits;
  std::vector<ModelFailure> failures;
  std::size_t n = 0;
  std::optional<Model> best_aic;
  std::optional<Model> best_bic;

  const FitResult* find(Model model) const {
    for (const auto& f : fits) {
      if (f.model == model) return &f;
    }
    return nullptr;
  }
  bool ok() const noexcept { return failures.empty(); }
};

/// Fits SSLUD (k=1), SL (k=1), Laplace (k=2) and Normal (k=2) to the same
/// data and ranks them by AIC and BIC. A failing model is recorded and the
/// comparison continues with the rest.
inline ModelComparison fit_compare(const Sample& data) {
  if (data.size() < 3) throw Error(ErrorCode::InvalidInput, "fit_compare needs n >= 3");
  ModelComparison cmp;
  cmp.n = data.size();
  auto attempt = [&](Model model, auto&& fit) {
    try {
      cmp.fits.push_back(fit());
    } catch (const std::exception& e) {
      cmp.failures.push_back({model, e.what()});
    }
  };
  attempt(Model::Sslud, [&] { return fit_mle(data); });
  attempt(Model::SkewLaplace, [&] {
    const auto est = skew_laplace_mle(data);
    auto fit = FitResult::make(Model::SkewLaplace, est.params, est.loglik, 1, data.size());
    fit.boundary_hit = est.boundary_hit;
    return fit;
  });
  attempt(Model::Laplace, [&] {
    const auto est = laplace_mle(data);
    return FitResult::make(Model::Laplace, est.params, est.loglik, 2, data.size());
  });
  attempt(Model::Normal, [&] {
    const auto est = normal_mle(data);
    return FitResult::make(Model::Normal, est.params, est.loglik, 2, data.size());
  });
  if (!cmp.fits.empty()) {
    cmp.best_aic = std::min_element(cmp.fits.begin(), cmp.fits.end(),
                                    [](const auto& a, const auto& b) { return a.aic < b.aic; })->model;
    cmp.best_bic = std::min_element(cmp.fits.begin(), cmp.fits.end(),
                                    [](const auto& a, const auto& b) { return a.bic < b.bic; })->model;
  }
  return cmp;
}

inline std::string describe_params(const ModelParams& params) {
  struct Visitor {
    std::string operator()(const SsludParams& p) const { return "mu=" + format_number(p.mu()); }
    std::string operator()(const SkewLaplaceParams& p) const { return "lambda=" + format_number(p.lambda); }
    std::string operator()(const LaplaceParams& p) const {
      return "theta=" + format_number(p.theta) + ";beta=" + format_number(p.beta);
    }
    std::string operator()(const NormalParams& p) const {
      return "theta=" + format_number(p.theta) + ";sigma2=" + format_number(p.sigma2);
    }
  };
  return std::visit(Visitor{}, params);
}

/// Fitted density of any supported model.
inline double model_pdf(const ModelParams& params, double x) {
  struct Visitor {
    double x;
    double operator()(const SsludParams& p) const { return pdf(p, x); }
    double operator()(const SkewLaplaceParams& p) const { return skew_laplace_pdf(p, x); }
    double operator()(const LaplaceParams& p) const { return laplace_pdf(p, x); }
    double operator()(const NormalParams& p) const { return normal_pdf(p, x); }
  };
  return std::visit(Visitor{x}, params);
}

inline Table comparison_table(const ModelComparison& cmp) {
  Table t{{"model", "params", "loglik", "k", "aic", "bic", "aic_rank", "bic_rank", "branch", "boundary_hit"}, {}};
  auto rank = [&](const FitResult& f, double FitResult::*field) {
    std::size_t r = 1;
    for (const auto& other : cmp.fits) r += (other.*field) < (f.*field);
    return std::to_string(r);
  };
  for (const auto& f : cmp.fits) {
    t.add_row({std::string(to_string(f.model)), describe_params(f.params), format_number(f.loglik),
               std::to_string(f.k), format_number(f.aic), format_number(f.bic), rank(f, &FitResult::aic),
               rank(f, &FitResult::bic), std::string(to_string(f.branch)), f.boundary_hit ? "1" : "0"});
  }
  return t;
}

struct DensityOverlay {
  Histogram histogram;
  std::vector<double> x;
  std::vector<Model> models;
  std::vector<std::vector<double>> curves;  // curves[m][i] = pdf of models[m] at x[i]

  Table to_table() const {
    Table t;
    t.header = {"x", "histogram"};
    for (Model m : models) t.header.emplace_back(to_string(m));
    for (std::size_t i = 0; i < x.size(); ++i) {
      std::vector<double> row{x[i], histogram.at(x[i])};
      for (const auto& c : curves) row.push_back(c[i]);
      t.add_numeric_row(row);
    }
    return t;
  }
};

/// Observed histogram (Sturges bins) and each fitted density on a uniform
/// grid spanning [min - 1, max + 1].
inline DensityOverlay density_overlay(const Sample& data, const ModelComparison& cmp, std::size_t grid = 200) {
  if (grid < 16) throw Error(ErrorCode::DomainError, "density overlay needs grid >= 16");
  const auto bins = static_cast<std::size_t>(std::ceil(std::log2(static_cast<double>(data.size())))) + 1;
  DensityOverlay out;
  out.histogram = make_histogram(data.values(), bins);
  const double lo = data.min() - 1.0;
  const double hi = data.max() + 1.0;
  out.x.resize(grid);
  for (std::size_t i = 0; i < grid; ++i) out.x[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(grid - 1);
  for (const auto& fit : cmp.fits) {
    out.models.push_back(fit.model);
    std::vector<double> curve;
    curve.reserve(grid);
    for (double x : out.x) curve.push_back(model_pdf(fit.params, x));
    out.curves.push_back(std::move(curve));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Reference tables

inline Table median_table() {
  Table t{{"mu", "median"}, {}};
  for (double mu : {0.25, 0.5, 0.75, 1.0, 1.25, 1.5}) t.add_numeric_row({mu, median(SsludParams(mu))});
  return t;
}

/// Mean, variance, skewness and kurtosis over mu in [-limit, limit], mu != 0.
inline Table measures_curve(double step = 0.1, double limit = 10.0) {
  if (!(step > 0.0) || !(limit > 0.0)) throw Error(ErrorCode::DomainError, "measures_curve needs step, limit > 0");
  Table t{{"mu", "mean", "variance", "skewness", "kurtosis"}, {}};
  const auto count = static_cast<long>(std::floor(limit / step + 1e-9));
  for (long i = -count; i <= count; ++i) {
    if (i == 0) continue;
    const double mu = static_cast<double>(i) * step;
    const auto s = summary_measures(SsludParams(mu));
    t.add_numeric_row({mu, s.mean, s.variance, s.skewness, s.kurtosis});
  }
  return t;
}

/// Shannon entropy (bits) over mu in (0, limit].
inline Table entropy_curve(double step = 0.1, double limit = 30.0) {
  if (!(step > 0.0) || !(limit > 0.0)) throw Error(ErrorCode::DomainError, "entropy_curve needs step, limit > 0");
  Table t{{"mu", "shannon_entropy"}, {}};
  const auto count = static_cast<long>(std::floor(limit / step + 1e-9));
  for (long i = 1; i <= count; ++i) {
    const double mu = static_cast<double>(i) * step;
    t.add_numeric_row({mu, shannon_entropy(SsludParams(mu))});
  }
  return t;
}

inline Table grid_table(const SimGrid& grid) {
  Table t{{"mu", "n", "reps", "mle_bias", "mle_mse", "mom_bias", "mom_mse", "mle_bias_se", "mle_mse_se",
           "mom_bias_se", "mom_mse_se"},
          {}};
  for (const auto& c : grid.cells) {
    t.add_row({format_number(c.mu), std::to_string(c.n), std::to_string(c.reps), format_number(c.mle_bias),
               format_number(c.mle_mse), format_number(c.mom_bias), format_number(c.mom_mse),
               format_number(c.mle_bias_se), format_number(c.mle_mse_se), format_number(c.mom_bias_se),
               format_number(c.mom_mse_se)});
  }
  return t;
}

}  // namespace sslud
