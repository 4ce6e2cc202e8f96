#pragma once

// Scalar numerical kernel: safeguarded root finding, bounded 1-D maximization,
// adaptive Gauss-Kronrod quadrature and reproducible random streams.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>
#include <random>
#include <string>
#include <vector>

#include "sslud/error.hpp"

namespace sslud {

inline constexpr double kRootTol = 1e-10;
inline constexpr double kMaximizeTol = 1e-9;
inline constexpr double kQuadratureTol = 1e-10;
inline constexpr int kMaximizeGrid = 256;

/// Closed search interval [lo, hi] with finite lo < hi.
struct Bracket {
  double lo;
  double hi;

  Bracket(double lo_, double hi_) : lo(lo_), hi(hi_) {
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
      throw Error(ErrorCode::DomainError,
                  "bracket requires finite lo < hi, got [" + std::to_string(lo) + ", " +
                      std::to_string(hi) + "]");
    }
  }

  double width() const noexcept { return hi - lo; }
  double midpoint() const noexcept { return lo + 0.5 * (hi - lo); }
  bool contains(double x) const noexcept { return x >= lo && x <= hi; }
};

/// Random stream identified by (seed, stream_id). Equal identifiers replay the
/// same sequence bit for bit; the pair is expanded through std::seed_seq, whose
/// output is fixed by the standard, into a 64-bit Mersenne Twister.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id) : seed_(seed), stream_id_(stream_id) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream_id),
                      static_cast<std::uint32_t>(stream_id >> 32), 0x5353u /* tag */};
    engine_.seed(seq);
  }

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform variate on the open interval (0, 1) with 53 random bits.
  double uniform() { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
};

namespace detail {

template <class F>
double checked_eval(F& f, double x, const char* what) {
  const double v = f(x);
  if (!std::isfinite(v)) {
    throw Error(ErrorCode::NonFinite,
                std::string(what) + ": function is not finite at x=" + std::to_string(x));
  }
  return v;
}

inline bool same_sign(double a, double b) noexcept { return std::signbit(a) == std::signbit(b); }

}  // namespace detail

/// Newton iteration safeguarded by bisection. `df` is the derivative of `f`.
/// A Newton step that leaves the current bracket or does not reduce |f| is
/// replaced by a bisection step, so a sign-changing bracket always converges.
template <class F, class DF>
double find_root(F&& f, DF&& df, const Bracket& bracket, double x0, double tol = kRootTol) {
  if (!(tol > 0.0)) throw Error(ErrorCode::DomainError, "find_root: tol must be positive");
  double lo = bracket.lo;
  double hi = bracket.hi;
  double flo = detail::checked_eval(f, lo, "find_root");
  double fhi = detail::checked_eval(f, hi, "find_root");
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (detail::same_sign(flo, fhi)) {
    throw Error(ErrorCode::NoSignChange, "find_root: f(lo) and f(hi) have the same sign on [" +
                                             std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }

  double x = std::clamp(x0, lo, hi);
  double fx = detail::checked_eval(f, x, "find_root");
  constexpr int kMaxIter = 400;
  for (int iter = 0; iter < kMaxIter; ++iter) {
    if (std::abs(fx) <= tol) return x;
    if (detail::same_sign(fx, flo)) {
      lo = x;
      flo = fx;
    } else {
      hi = x;
      fhi = fx;
    }
    // Bracket collapsed to adjacent doubles: report the better endpoint.
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) return std::abs(flo) <= std::abs(fhi) ? lo : hi;

    double next = mid;
    double fnext = 0.0;
    bool accepted = false;
    const double d = df(x);
    if (std::isfinite(d) && d != 0.0) {
      const double cand = x - fx / d;
      if (cand > lo && cand < hi) {
        const double fc = detail::checked_eval(f, cand, "find_root");
        if (std::abs(fc) < std::abs(fx)) {
          next = cand;
          fnext = fc;
          accepted = true;
        }
      }
    }
    if (!accepted) fnext = detail::checked_eval(f, next, "find_root");

    const double step = next - x;
    x = next;
    fx = fnext;
    if (std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(x))) {
      return x;
    }
  }
  return x;
}

/// Root finding with a central-difference derivative estimate.
template <class F>
double find_root(F&& f, const Bracket& bracket, double x0, double tol = kRootTol) {
  auto derivative = [&f, &bracket](double x) {
    const double h = 1e-7 * std::max(1.0, std::abs(x));
    const double a = std::max(bracket.lo, x - h);
    const double b = std::min(bracket.hi, x + h);
    if (!(b > a)) return std::numeric_limits<double>::quiet_NaN();
    return (f(b) - f(a)) / (b - a);
  };
  return find_root(f, derivative, bracket, x0, tol);
}

struct Maximum {
  double argmax;
  double value;
};

/// Maximizes f on [lo, hi]: a uniform grid scan locates the best cell, then
/// golden-section search refines it to width `tol`. f may return -inf (an
/// infeasible probe); NaN or +inf raise NonFinite.
template <class F>
Maximum maximize_scalar(F&& f, const Bracket& bracket, double tol = kMaximizeTol,
                        int grid = kMaximizeGrid) {
  if (!(tol > 0.0)) throw Error(ErrorCode::DomainError, "maximize_scalar: tol must be positive");
  if (bracket.width() <= 2.0 * tol) {
    throw Error(ErrorCode::EmptyBracket, "maximize_scalar: bracket narrower than 2*tol");
  }
  grid = std::max(grid, 3);
  auto probe = [&f](double x) {
    const double v = f(x);
    if (std::isnan(v) || v == std::numeric_limits<double>::infinity()) {
      throw Error(ErrorCode::NonFinite,
                  "maximize_scalar: objective is NaN or +inf at x=" + std::to_string(x));
    }
    return v;
  };

  const double step = bracket.width() / (grid - 1);
  auto grid_point = [&](int i) { return i == grid - 1 ? bracket.hi : bracket.lo + i * step; };
  int best_i = 0;
  double best_v = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid; ++i) {
    const double v = probe(grid_point(i));
    if (v > best_v) {
      best_v = v;
      best_i = i;
    }
  }
  Maximum best{grid_point(best_i), best_v};

  double a = grid_point(std::max(best_i - 1, 0));
  double b = grid_point(std::min(best_i + 1, grid - 1));
  const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = probe(c);
  double fd = probe(d);
  while (b - a > tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = probe(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = probe(d);
    }
  }
  const double mid = a + 0.5 * (b - a);
  for (const auto& [x, v] : {std::pair{mid, probe(mid)}, std::pair{c, fc}, std::pair{d, fd}}) {
    if (v >= best.value) best = {x, v};
  }
  return best;
}

namespace detail {

// 15-point Kronrod rule with its embedded 7-point Gauss rule.
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double lo;
  double hi;
  double value;
  double error;
  int depth;
  bool operator<(const Segment& other) const noexcept { return error < other.error; }
};

template <class F>
Segment gauss_kronrod_15(F& f, double lo, double hi, int depth) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double fc = checked_eval(f, center, "integrate");
  double kronrod = kKronrodWeights[7] * fc;
  double gauss = kGaussWeights[3] * fc;
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kKronrodNodes[j];
    const double pair = checked_eval(f, center - dx, "integrate") +
                        checked_eval(f, center + dx, "integrate");
    kronrod += kKronrodWeights[j] * pair;
    if (j % 2 == 1) gauss += kGaussWeights[j / 2] * pair;
  }
  kronrod *= half;
  gauss *= half;
  return {lo, hi, kronrod, std::abs(kronrod - gauss), depth};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod (7/15) quadrature on a finite interval.
/// The segment with the largest error estimate is bisected until the summed
/// estimate is below `tol` (or below the round-off floor of the result).
template <class F>
double integrate(F&& f, double lo, double hi, double tol = kQuadratureTol) {
  if (!std::isfinite(lo) || !std::isfinite(hi)) {
    throw Error(ErrorCode::DomainError, "integrate: limits must be finite");
  }
  if (lo == hi) return 0.0;
  if (lo > hi) return -integrate(f, hi, lo, tol);
  constexpr int kMaxDepth = 60;
  constexpr std::size_t kMaxSegments = 20000;

  std::priority_queue<detail::Segment> heap;
  auto first = detail::gauss_kronrod_15(f, lo, hi, 0);
  double total = first.value;
  double error = first.error;
  heap.push(first);
  while (true) {
    const double floor = 50.0 * std::numeric_limits<double>::epsilon() * std::abs(total);
    if (error <= std::max(tol, floor)) break;
    if (heap.size() >= kMaxSegments) {
      throw Error(ErrorCode::MaxDepthExceeded, "integrate: subdivision limit reached");
    }
    const detail::Segment worst = heap.top();
    if (worst.depth >= kMaxDepth) {
      throw Error(ErrorCode::MaxDepthExceeded,
                  "integrate: cannot resolve integrand near x=" + std::to_string(worst.lo));
    }
    heap.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    auto left = detail::gauss_kronrod_15(f, worst.lo, mid, worst.depth + 1);
    auto right = detail::gauss_kronrod_15(f, mid, worst.hi, worst.depth + 1);
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }
  // Re-sum from the segments to shed the drift of the running updates.
  double sum = 0.0;
  while (!heap.empty()) {
    sum += heap.top().value;
    heap.pop();
  }
  return sum;
}

}  // namespace sslud
