#pragma once

// Method-of-moments and maximum-likelihood estimation of mu, plus the
// information criteria used to compare fitted models.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "sslud/baselines.hpp"
#include "sslud/distribution.hpp"
#include "sslud/error.hpp"
#include "sslud/numerics.hpp"
#include "sslud/sample.hpp"

namespace sslud {

enum class Model { Sslud, SkewLaplace, Laplace, Normal };
enum class Branch { NotApplicable, NegativeMu, PositiveMu };

constexpr std::string_view to_string(Model model) noexcept {
  switch (model) {
    case Model::Sslud: return "SSLUD";
    case Model::SkewLaplace: return "SL";
    case Model::Laplace: return "Laplace";
    case Model::Normal: return "Normal";
  }
  return "?";
}

constexpr std::string_view to_string(Branch branch) noexcept {
  switch (branch) {
    case Branch::NotApplicable: return "n/a";
    case Branch::NegativeMu: return "negative-mu";
    case Branch::PositiveMu: return "positive-mu";
  }
  return "?";
}

using ModelParams = std::variant<SsludParams, SkewLaplaceParams, LaplaceParams, NormalParams>;

struct InformationCriteria {
  double aic;
  double bic;
};

/// AIC = 2k - 2 lnL, BIC = k ln n - 2 lnL.
inline InformationCriteria information_criteria(double loglik, int k, std::size_t n) {
  if (k < 1 || n < 1) throw Error(ErrorCode::DomainError, "information_criteria needs k >= 1 and n >= 1");
  return {2.0 * k - 2.0 * loglik, k * std::log(static_cast<double>(n)) - 2.0 * loglik};
}

struct FitResult {
  Model model;
  ModelParams params;
  double loglik;
  double aic;
  double bic;
  int k;
  std::size_t n;
  bool boundary_hit = false;
  Branch branch = Branch::NotApplicable;

  static FitResult make(Model model, ModelParams params, double loglik, int k, std::size_t n) {
    const auto ic = information_criteria(loglik, k, n);
    return {model, params, loglik, ic.aic, ic.bic, k, n};
  }

  /// mu of an SSLUD fit.
  double mu() const { return std::get<SsludParams>(params).mu(); }
};

/// SSLUD log-likelihood; -inf outside the feasible region
/// mu < min(0, -x_(n)) or mu > max(0, -x_(1)).
inline double sslud_loglik(double mu, const Sample& data) {
  if (!std::isfinite(mu) || mu == 0.0) return -std::numeric_limits<double>::infinity();
  const auto s = data.sorted();
  double partial = 0.0;
  std::size_t count = 0;
  if (mu > 0.0) {
    if (!(s.front() > -mu)) return -std::numeric_limits<double>::infinity();
    // Observations in [-mu, mu) carry the uniform factor; x >= mu does not.
    const auto end = std::lower_bound(s.begin(), s.end(), mu);
    for (auto it = s.begin(); it != end; ++it) partial += std::log(*it + mu);
    count = static_cast<std::size_t>(end - s.begin());
    return -data.sum_abs() + partial - static_cast<double>(count) * std::log(2.0 * mu);
  }
  if (!(s.back() < -mu)) return -std::numeric_limits<double>::infinity();
  // Observations in (mu, -mu] carry the uniform factor; x <= mu does not.
  const auto begin = std::upper_bound(s.begin(), s.end(), mu);
  for (auto it = begin; it != s.end(); ++it) partial += std::log(-(*it + mu));
  count = static_cast<std::size_t>(s.end() - begin);
  return -data.sum_abs() + partial - static_cast<double>(count) * std::log(-2.0 * mu);
}

namespace detail {

inline constexpr double kMomClamp = 1e-5;
inline constexpr double kMomCap = 1e10;

// Positive mu with mean_pos(mu) = target, target in [0, 1).
inline std::pair<double, bool> invert_mean_pos(double target) {
  const double log_lo = std::log(kMomClamp);
  const double log_hi = std::log(kMomCap);
  auto residual = [target](double log_mu) { return mean_pos(std::exp(log_mu)) - target; };
  if (residual(log_lo) <= 0.0) return {kMomClamp, true};
  if (residual(log_hi) >= 0.0) return {kMomCap, true};
  const double log_mu = find_root(residual, Bracket(log_lo, log_hi), 0.0, 1e-15);
  return {std::exp(log_mu), false};
}

}  // namespace detail

/// Moment estimator: solves xbar = E[X](mu) on the branch selected by the
/// sign of xbar, clamped to -/+1e-5 when xbar <= -1 or xbar >= 1.
inline FitResult fit_mom(const Sample& data) {
  const double xbar = data.mean();
  double mu = 0.0;
  bool clamped = false;
  if (xbar <= -1.0) {
    mu = -detail::kMomClamp;
    clamped = true;
  } else if (xbar >= 1.0) {
    mu = detail::kMomClamp;
    clamped = true;
  } else if (xbar < 0.0) {
    auto [m, hit] = detail::invert_mean_pos(-xbar);
    mu = -m;
    clamped = hit;
  } else {
    auto [m, hit] = detail::invert_mean_pos(xbar);
    mu = m;
    clamped = hit;
  }
  auto fit = FitResult::make(Model::Sslud, SsludParams(mu), sslud_loglik(mu, data), 1, data.size());
  fit.boundary_hit = clamped;
  fit.branch = mu < 0.0 ? Branch::NegativeMu : Branch::PositiveMu;
  return fit;
}

/// Default search limit a = max(100, 10 max|x_i|).
inline double default_search_limit(const Sample& data) { return std::max(100.0, 10.0 * data.max_abs()); }

/// Two-branch maximum likelihood: maximize over (-a, min(0, -x_(n))) and over
/// (max(0, -x_(1)), a); the negative branch wins only if strictly better.
inline FitResult fit_mle(const Sample& data, std::optional<double> search_limit = std::nullopt) {
  const double a = search_limit.value_or(default_search_limit(data));
  if (!(a > 0.0) || !std::isfinite(a)) throw Error(ErrorCode::DomainError, "fit_mle: a must be positive");
  auto objective = [&data](double mu) { return sslud_loglik(mu, data); };
  auto inset = [](double e) { return 1e-9 * (1.0 + std::abs(e)); };

  auto run_branch = [&](double lo, double hi) -> std::optional<Maximum> {
    lo += inset(lo);
    hi -= inset(hi);
    if (!(hi - lo > 2.0 * kMaximizeTol)) return std::nullopt;
    return maximize_scalar(objective, Bracket(lo, hi));
  };
  const auto negative = run_branch(-a, std::min(0.0, -data.max()));
  const auto positive = run_branch(std::max(-data.min(), 0.0), a);
  if (!negative && !positive) {
    throw Error(ErrorCode::EmptyBracket, "fit_mle: no feasible mu in (-a, a); increase a");
  }

  const bool take_negative = negative && (!positive || negative->value > positive->value);
  const Maximum best = take_negative ? *negative : *positive;
  auto fit = FitResult::make(Model::Sslud, SsludParams(best.argmax), best.value, 1, data.size());
  fit.branch = take_negative ? Branch::NegativeMu : Branch::PositiveMu;
  fit.boundary_hit = a - std::abs(best.argmax) <= inset(a) + 2.0 * kMaximizeTol;
  return fit;
}

}  // namespace sslud
