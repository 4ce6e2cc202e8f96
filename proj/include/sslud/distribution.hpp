#pragma once

// The skew-symmetric-Laplace-uniform distribution SSLUD(mu).
//
// Density 2 f(x) K(lambda x) with f the standard Laplace density and K the
// Uniform(-theta, theta) cdf, parameterized by mu = theta / lambda. For mu > 0
// the support is [-mu, inf); for mu < 0 it is (-inf, -mu]. Every quantity for
// mu < 0 is obtained from the mu > 0 closed forms through X -> -X.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "sslud/error.hpp"
#include "sslud/numerics.hpp"

namespace sslud {

/// The single shape parameter mu; nonzero and finite.
class SsludParams {
 public:
  explicit SsludParams(double mu) : mu_(mu) {
    if (!std::isfinite(mu) || mu == 0.0) {
      throw Error(ErrorCode::DomainError, "SSLUD requires finite nonzero mu, got " + std::to_string(mu));
    }
  }

  double mu() const noexcept { return mu_; }
  double magnitude() const noexcept { return std::abs(mu_); }
  bool positive() const noexcept { return mu_ > 0.0; }

  /// Finite end of the support (-mu): lower bound for mu > 0, upper for mu < 0.
  double support_edge() const noexcept { return -mu_; }
  bool in_support(double x) const noexcept { return positive() ? x >= -mu_ : x <= -mu_; }

  friend bool operator==(const SsludParams&, const SsludParams&) = default;

 private:
  double mu_;
};

struct SummaryMeasures {
  double mean;
  double variance;
  double skewness;
  double kurtosis;  // Pearson beta_2 (not excess)
};

namespace detail {

// phi(u) = e^u (u - 1) + 1 = sum_{k>=2} (k-1) u^k / k!, accurate near u = 0.
inline double phi(double u) {
  if (std::abs(u) < 0.5) {
    double term = u;  // u^k / k!, starting at k = 1
    double sum = 0.0;
    for (int k = 2; k < 40; ++k) {
      term *= u / k;
      const double add = (k - 1) * term;
      sum += add;
      if (std::abs(add) <= 1e-17 * std::abs(sum)) break;
    }
    return sum;
  }
  return std::exp(u) * (u - 1.0) + 1.0;
}

// Everything below with suffix _pos takes m = |mu| > 0.

inline double pdf_pos(double m, double x) {
  if (x < -m) return 0.0;
  if (x < m) return std::exp(-std::abs(x)) * (x + m) / (2.0 * m);
  return std::exp(-x);
}

inline double cdf_pos(double m, double x) {
  if (x < -m) return 0.0;
  if (x < 0.0) {
    const double u = x + m;
    if (u <= 0.5) return std::exp(-m) * phi(u) / (2.0 * m);
    return (std::exp(x) * (u - 1.0) + std::exp(-m)) / (2.0 * m);
  }
  // G(0) plus the integral over [0, x]; every term is nonnegative.
  if (x < m) return (std::exp(-m) * phi(m) + phi(-x) - m * std::expm1(-x)) / (2.0 * m);
  return -std::expm1(-x);
}

inline double reliability_pos(double m, double x) {
  if (x < -m) return 1.0;
  if (x < 0.0) return 1.0 - cdf_pos(m, x);
  if (x < m) {
    const double g = cdf_pos(m, x);
    if (g < 0.5) return 1.0 - g;
    return (std::exp(-x) * (x + m + 1.0) - std::exp(-m)) / (2.0 * m);
  }
  return std::exp(-x);
}

inline double mean_pos(double m) { return -2.0 * std::expm1(-m) / m - std::exp(-m); }

inline double third_moment_pos(double m) {
  return -24.0 * std::expm1(-m) / m - std::exp(-m) * (m * m + 6.0 * m + 18.0);
}

// Solves cdf_pos(m, x) = r on one branch of the piecewise cdf.
inline double solve_cdf_pos(double m, double r, double lo, double hi) {
  auto residual = [m, r](double x) { return cdf_pos(m, x) - r; };
  auto slope = [m](double x) { return pdf_pos(m, x); };
  const double tol = 1e-15 * std::max(r, 1e-290);
  return find_root(residual, slope, Bracket(lo, hi), 0.5 * (lo + hi), tol);
}

inline double quantile_pos(double m, double r) {
  const double g_mu = -std::expm1(-m);
  if (r >= g_mu) return -std::log1p(-r);
  const double g_zero = cdf_pos(m, 0.0);
  if (r < g_zero) return solve_cdf_pos(m, r, -m, 0.0);
  return solve_cdf_pos(m, r, 0.0, m);
}

// Solves reliability_pos(m, x) = s without forming 1 - s.
inline double upper_quantile_pos(double m, double s) {
  if (s <= std::exp(-m)) return -std::log(s);
  auto residual = [m, s](double x) { return s - reliability_pos(m, x); };
  auto slope = [m](double x) { return pdf_pos(m, x); };
  const double tol = 1e-15 * std::max(s, 1e-290);
  if (s > reliability_pos(m, 0.0)) {
    if (s >= 0.5) return quantile_pos(m, 1.0 - s);
    return find_root(residual, slope, Bracket(-m, 0.0), -0.5 * m, tol);
  }
  return find_root(residual, slope, Bracket(0.0, m), 0.5 * m, tol);
}

inline double median_pos(double m) {
  const double g_mu = -std::expm1(-m);
  if (g_mu <= 0.5) return std::numbers::ln2;
  // G(0) = 1/2 + (e^{-m} - 1)/(2m) never exceeds 1/2 for m > 0, but the
  // first case is kept for completeness.
  if (cdf_pos(m, 0.0) > 0.5) return solve_cdf_pos(m, 0.5, -m, 0.0);
  return solve_cdf_pos(m, 0.5, 0.0, m);
}

inline double mgf_pos(double m, double t) {
  const double s = 1.0 + t;
  const double y = s * m;
  if (std::abs(y) < 1e-2) {
    // Near t = -1 the closed form is 0/0; integrate the [-m, 0] piece by series.
    double term = 0.5;  // (-y)^k / (k+2)!
    double series = 0.0;
    for (int k = 0; k < 12; ++k) {
      series += term;
      term *= -y / (k + 3);
    }
    const double left = 0.5 * m * series;
    const double u = 1.0 - t;
    const double right = -std::expm1(-m * u) / (2.0 * m * u * u) + 0.5 / u;
    return left + right;
  }
  const double u = 1.0 - t;
  return (std::expm1(-m * s) / (s * s) - std::expm1(-m * u) / (u * u)) / (2.0 * m) +
         1.0 / (1.0 - t * t);
}

inline double hazard_pos(double m, double x) {
  if (x < -m) return 0.0;
  if (x < 0.0) {
    const double v = x + m;
    return v / (1.0 - v + (2.0 * m - std::exp(-m)) * std::exp(-x));
  }
  if (x < m) return (x + m) / (x + m - std::expm1(x - m));
  return 1.0;
}

// Hazard of X = -Y, Y ~ SSLUD(m), at x = -y: g_Y(y) / G_Y(y).
inline double reversed_hazard_pos(double m, double y) {
  if (y >= m) return 1.0 / std::expm1(y);
  if (y >= 0.0) return (y + m) / ((2.0 * m + std::exp(-m)) * std::exp(y) - (y + m + 1.0));
  const double u = y + m;
  return u * std::exp(u) / phi(u);
}

inline double mean_deviation_pos(double m, double a) {
  if (a < -m) return mean_pos(m) - a;
  if (a < 0.0) {
    const double ea = std::exp(a);
    return (a / m) * (std::exp(-m) + ea) + ea - a - 2.0 * std::expm1(a) / m;
  }
  if (a < m) {
    const double ea = std::exp(-a);
    return (a / m) * (std::exp(-m) + ea) + ea + a + 2.0 * std::expm1(-a) / m;
  }
  return a - mean_pos(m) + 2.0 * std::exp(-a);
}

inline double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

// Integral of g^alpha over the support for integer alpha >= 2 (closed form).
inline double power_integral_pos(double m, int alpha) {
  const double a = alpha;
  const double tail = std::exp(-m * a);
  const double scale = 2.0 * m * a;
  double sum = 0.0;
  double falling = 1.0;  // alpha! / (alpha - j)!
  for (int j = 0; j <= alpha; ++j) {
    const double parity = (j % 2 == 0) ? 2.0 : 0.0;
    sum += falling * (std::ldexp(parity, -(alpha - j)) - tail) / std::pow(scale, j);
    falling *= (alpha - j);
  }
  const double sign = (alpha % 2 == 0) ? 1.0 : -1.0;
  return sum / a + (tail / a) * (1.0 - factorial(alpha) * sign / std::pow(scale, alpha));
}

}  // namespace detail

inline double pdf(const SsludParams& p, double x) {
  return p.positive() ? detail::pdf_pos(p.mu(), x) : detail::pdf_pos(-p.mu(), -x);
}

inline double cdf(const SsludParams& p, double x) {
  return p.positive() ? detail::cdf_pos(p.mu(), x) : detail::reliability_pos(-p.mu(), -x);
}

inline double reliability(const SsludParams& p, double x) {
  return p.positive() ? detail::reliability_pos(p.mu(), x) : detail::cdf_pos(-p.mu(), -x);
}

/// Inverse cdf by the piecewise generator: the exponential tail is explicit,
/// the two middle branches are solved by safeguarded Newton.
inline double quantile(const SsludParams& p, double r) {
  if (!(r > 0.0 && r < 1.0)) {
    throw Error(ErrorCode::DomainError, "quantile requires 0 < r < 1, got " + std::to_string(r));
  }
  return p.positive() ? detail::quantile_pos(p.mu(), r) : -detail::upper_quantile_pos(-p.mu(), r);
}

/// n inverse-transform draws; consumes exactly n uniforms from `rng`.
inline std::vector<double> sample(const SsludParams& p, std::size_t n, RngStream& rng) {
  std::vector<double> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(quantile(p, rng.uniform()));
  return out;
}

/// Raw moment E[X^r] for r in 1..4. Even orders are (2k)! regardless of mu.
inline double raw_moment(const SsludParams& p, int order) {
  const double m = p.magnitude();
  const double sign = p.positive() ? 1.0 : -1.0;
  switch (order) {
    case 1: return sign * detail::mean_pos(m);
    case 2: return 2.0;
    case 3: return sign * detail::third_moment_pos(m);
    case 4: return 24.0;
    default:
      throw Error(ErrorCode::DomainError, "raw_moment order must be 1..4, got " + std::to_string(order));
  }
}

inline SummaryMeasures summary_measures(const SsludParams& p) {
  const double m1 = raw_moment(p, 1);
  const double m2 = raw_moment(p, 2);
  const double m3 = raw_moment(p, 3);
  const double m4 = raw_moment(p, 4);
  const double var = m2 - m1 * m1;
  const double c3 = m3 - 3.0 * m1 * m2 + 2.0 * m1 * m1 * m1;
  const double c4 = m4 - 4.0 * m1 * m3 + 6.0 * m1 * m1 * m2 - 3.0 * m1 * m1 * m1 * m1;
  return {m1, var, c3 / std::pow(var, 1.5), c4 / (var * var)};
}

/// E[e^{tX}]; defined for t < 1 when mu > 0 and t > -1 when mu < 0.
inline double mgf(const SsludParams& p, double t) {
  const double s = p.positive() ? t : -t;
  if (!(s < 1.0)) {
    throw Error(ErrorCode::DomainError, "mgf diverges at t=" + std::to_string(t));
  }
  return detail::mgf_pos(p.magnitude(), s);
}

inline double mode(const SsludParams& p) {
  const double m = p.magnitude();
  if (m < 0.5) return p.mu();
  if (m < 1.0) return (p.positive() ? 1.0 : -1.0) - p.mu();
  return 0.0;
}

/// Solution of G(M) = 1/2.
inline double median(const SsludParams& p) {
  const double m = detail::median_pos(p.magnitude());
  return p.positive() ? m : -m;
}

/// Increasing failure rate g(x) / R(x). Throws DegenerateTail where R(x) is 0.
inline double hazard(const SsludParams& p, double x) {
  if (reliability(p, x) <= 0.0) {
    throw Error(ErrorCode::DegenerateTail, "hazard undefined where reliability is 0, x=" + std::to_string(x));
  }
  return p.positive() ? detail::hazard_pos(p.mu(), x) : detail::reversed_hazard_pos(-p.mu(), -x);
}

/// Mean absolute deviation E|X - a|.
inline double mean_deviation(const SsludParams& p, double a) {
  if (!std::isfinite(a)) throw Error(ErrorCode::DomainError, "mean_deviation requires finite a");
  return p.positive() ? detail::mean_deviation_pos(p.mu(), a)
                      : detail::mean_deviation_pos(-p.mu(), -a);
}

/// Renyi entropy (base 2) of integer order alpha >= 2.
inline double renyi_entropy(const SsludParams& p, int alpha) {
  if (alpha < 2) {
    throw Error(ErrorCode::DomainError, "renyi_entropy needs integer alpha >= 2, got " + std::to_string(alpha));
  }
  const double m = p.magnitude();
  double integral = 0.0;
  // The alternating closed form loses about log10(alpha! / (2 m alpha)^alpha)
  // digits; past ~6 digits integrate g^alpha directly instead.
  if (detail::factorial(alpha) / std::pow(2.0 * m * alpha, alpha) > 1e6) {
    auto ga = [m, alpha](double x) { return std::pow(detail::pdf_pos(m, x), alpha); };
    integral = integrate(ga, -m, 0.0) + integrate(ga, 0.0, m) + std::exp(-m * alpha) / alpha;
  } else {
    integral = detail::power_integral_pos(m, alpha);
  }
  return std::log2(integral) / (1.0 - alpha);
}

inline double renyi_entropy(const SsludParams& p, double alpha) {
  if (!(alpha >= 2.0) || std::floor(alpha) != alpha || alpha > 170.0) {
    throw Error(ErrorCode::DomainError, "renyi_entropy needs integer alpha >= 2, got " + std::to_string(alpha));
  }
  return renyi_entropy(p, static_cast<int>(alpha));
}

/// Shannon entropy E[-log2 g(X)], reduced to 1/ln 2 minus an integral over [0, |mu|].
inline double shannon_entropy(const SsludParams& p) {
  const double m = p.magnitude();
  auto integrand = [m](double x) {
    const double up = (m + x) / (2.0 * m);
    const double down = (m - x) / (2.0 * m);
    const double ex = std::exp(-x);
    return x * ex / (2.0 * m) * std::log2(up / down) + 0.5 * ex * std::log2(up * down);
  };
  return 1.0 / std::numbers::ln2 - integrate(integrand, 0.0, m);
}

}  // namespace sslud
