#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "sslud/error.hpp"

namespace sslud {

/// Observed data with cached ascending order statistics.
class Sample {
 public:
  explicit Sample(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) throw Error(ErrorCode::InvalidInput, "sample must contain at least one value");
    for (std::size_t i = 0; i < values_.size(); ++i) {
      if (!std::isfinite(values_[i])) {
        throw Error(ErrorCode::InvalidInput, "sample value " + std::to_string(i) + " is not finite");
      }
    }
    sorted_ = values_;
    std::sort(sorted_.begin(), sorted_.end());
    for (double x : sorted_) {
      sum_ += x;
      sum_abs_ += std::abs(x);
    }
  }

  std::size_t size() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  std::span<const double> sorted() const noexcept { return sorted_; }

  double min() const noexcept { return sorted_.front(); }
  double max() const noexcept { return sorted_.back(); }
  double mean() const noexcept { return sum_ / static_cast<double>(size()); }
  double sum_abs() const noexcept { return sum_abs_; }
  double max_abs() const noexcept { return std::max(std::abs(min()), std::abs(max())); }

 private:
  std::vector<double> values_;
  std::vector<double> sorted_;
  double sum_ = 0.0;
  double sum_abs_ = 0.0;
};

}  // namespace sslud
