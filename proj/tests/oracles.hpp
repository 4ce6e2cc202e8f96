#pragma once

// Test-only reference computations, deliberately independent of the library
// code paths they check: the density is built from the skewing construction
// 2 f(x) K(lambda x) and integrated with Boost.Math quadrature.

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sslud::oracle {

/// e^{-|x|} * clamp((x/mu + 1)/2, 0, 1): standard Laplace density skewed by
/// the Uniform(-theta, theta) cdf with theta/lambda = mu.
inline double skewed_density(double mu, double x) {
  const double k = std::clamp(0.5 * (x / mu + 1.0), 0.0, 1.0);
  return std::exp(-std::abs(x)) * k;
}

/// Integral of f over [lo, hi] split at the given interior breakpoints.
inline double quad(const std::function<double(double)>& f, double lo, double hi,
                   std::vector<double> breaks = {}) {
  using boost::math::quadrature::gauss_kronrod;
  breaks.push_back(lo);
  breaks.push_back(hi);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (breaks[i] < lo || breaks[i + 1] > hi) continue;
    total += gauss_kronrod<double, 61>::integrate(f, breaks[i], breaks[i + 1], 12, 1e-13);
  }
  return total;
}

/// Integral of h(x) * g(x; mu) over the support of SSLUD(mu), tails
/// truncated where e^{-|x|} is negligible.
inline double expect(double mu, const std::function<double(double)>& h, double reach = 60.0) {
  const double m = std::abs(mu);
  const double lo = mu > 0 ? -m : -m - reach;
  const double hi = mu > 0 ? m + reach : m;
  return quad([&](double x) { return h(x) * skewed_density(mu, x); }, lo, hi, {-m, 0.0, m});
}

/// Sum of log densities, one observation at a time.
inline double brute_loglik(double mu, const std::vector<double>& data) {
  double ll = 0.0;
  for (double x : data) ll += std::log(skewed_density(mu, x));
  return ll;
}

/// Kolmogorov-Smirnov statistic of `data` against the cdf `F`.
inline double ks_statistic(std::vector<double> data, const std::function<double(double)>& F) {
  std::sort(data.begin(), data.end());
  const double n = static_cast<double>(data.size());
  double d = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double f = F(data[i]);
    d = std::max({d, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
  }
  return d;
}

/// Asymptotic 1% critical value of the one-sample KS statistic.
inline double ks_critical_1pct(std::size_t n) { return 1.6276 / std::sqrt(static_cast<double>(n)); }

/// The 82 daily percentage changes of the NIFTY 50 index used throughout.
inline std::vector<double> nifty_returns() {
  std::ifstream in(SSLUD_DATA_DIR "/nifty50_returns.csv");
  if (!in) throw std::runtime_error("missing data/nifty50_returns.csv");
  std::vector<double> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line == "pct_change") continue;
    out.push_back(std::stod(line));
  }
  return out;
}

}  // namespace sslud::oracle
