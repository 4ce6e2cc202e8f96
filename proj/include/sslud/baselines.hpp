#pragma once

// Comparison models: Normal(theta, sigma^2), Laplace(theta, beta) and the
// skew-Laplace SL(lambda) with density e^{-|x|} K_L(lambda x), K_L being the
// standard Laplace cdf.

#include <cmath>
#include <numbers>
#include <string>

#include "sslud/error.hpp"
#include "sslud/numerics.hpp"
#include "sslud/sample.hpp"

namespace sslud {

struct NormalParams {
  double theta;
  double sigma2;
  friend bool operator==(const NormalParams&, const NormalParams&) = default;
};

struct LaplaceParams {
  double theta;
  double beta;
  friend bool operator==(const LaplaceParams&, const LaplaceParams&) = default;
};

struct SkewLaplaceParams {
  double lambda;
  friend bool operator==(const SkewLaplaceParams&, const SkewLaplaceParams&) = default;
};

template <class Params>
struct Estimate {
  Params params;
  double loglik;
  bool boundary_hit = false;
};

inline double normal_pdf(const NormalParams& p, double x) {
  const double z = x - p.theta;
  return std::exp(-0.5 * z * z / p.sigma2) / std::sqrt(2.0 * std::numbers::pi * p.sigma2);
}

inline double laplace_pdf(const LaplaceParams& p, double x) {
  return std::exp(-std::abs(x - p.theta) / p.beta) / (2.0 * p.beta);
}

namespace detail {

inline void require_spread(const Sample& data, const char* who) {
  if (data.size() < 2) throw Error(ErrorCode::DegenerateSample, std::string(who) + " needs n >= 2");
  if (data.min() == data.max()) {
    throw Error(ErrorCode::DegenerateSample, std::string(who) + ": all observations are equal");
  }
}

// log K_L(y), stable in both tails.
inline double log_laplace_cdf(double y) {
  return y < 0.0 ? y - std::numbers::ln2 : std::log1p(-0.5 * std::exp(-y));
}

}  // namespace detail

/// theta = sample mean, sigma2 = divide-by-n variance.
inline Estimate<NormalParams> normal_mle(const Sample& data) {
  detail::require_spread(data, "normal_mle");
  const double n = static_cast<double>(data.size());
  const double theta = data.mean();
  double ss = 0.0;
  for (double x : data.values()) ss += (x - theta) * (x - theta);
  const double sigma2 = ss / n;
  const double loglik = -0.5 * n * (std::log(2.0 * std::numbers::pi * sigma2) + 1.0);
  return {{theta, sigma2}, loglik};
}

/// theta = sample median (midpoint of the two central order statistics for
/// even n), beta = mean absolute deviation about theta.
inline Estimate<LaplaceParams> laplace_mle(const Sample& data) {
  detail::require_spread(data, "laplace_mle");
  const auto s = data.sorted();
  const std::size_t n = s.size();
  const double theta = (n % 2 == 1) ? s[n / 2] : 0.5 * (s[n / 2 - 1] + s[n / 2]);
  double sad = 0.0;
  for (double x : s) sad += std::abs(x - theta);
  const double beta = sad / static_cast<double>(n);
  const double loglik = -static_cast<double>(n) * (std::log(2.0 * beta) + 1.0);
  return {{theta, beta}, loglik};
}

inline double skew_laplace_pdf(const SkewLaplaceParams& p, double x) {
  return std::exp(-std::abs(x) + detail::log_laplace_cdf(p.lambda * x));
}

inline double skew_laplace_loglik(const SkewLaplaceParams& p, const Sample& data) {
  double ll = 0.0;
  for (double x : data.values()) ll += -std::abs(x) + detail::log_laplace_cdf(p.lambda * x);
  return ll;
}

/// Maximizes the SL(lambda) log-likelihood over `bracket` (default [-50, 50]).
/// Past |lambda| = 50, K_L(lambda x) is numerically a step function.
inline Estimate<SkewLaplaceParams> skew_laplace_mle(const Sample& data,
                                                    const Bracket& bracket = Bracket(-50.0, 50.0)) {
  auto objective = [&data](double lambda) { return skew_laplace_loglik({lambda}, data); };
  const Maximum best = maximize_scalar(objective, bracket);
  const double edge_tol = 2.0 * kMaximizeTol;
  const bool at_edge =
      best.argmax - bracket.lo <= edge_tol || bracket.hi - best.argmax <= edge_tol;
  return {{best.argmax}, best.value, at_edge};
}

}  // namespace sslud
