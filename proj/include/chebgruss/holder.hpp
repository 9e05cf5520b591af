// Copyright 2026 The chebgruss Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "chebgruss/errors.hpp"
#include "chebgruss/summation.hpp"

namespace chebgruss {

/// Exponent of a Holder-type reduction: the maximum (p = infinity), a
/// finite power mean with p > 1, or the plain sum (p = 1).
class holder_exponent {
 public:
  static constexpr holder_exponent max() { return holder_exponent(kind::max); }
  static constexpr holder_exponent sum() { return holder_exponent(kind::sum); }
  static holder_exponent finite(double p) {
    if (!(p > 1.0) || !std::isfinite(p)) {
      throw exponent_error("finite Holder exponent must satisfy p > 1, got " +
                           std::to_string(p));
    }
    holder_exponent e(kind::finite);
    e.p_ = p;
    return e;
  }

  bool is_max() const { return kind_ == kind::max; }
  bool is_sum() const { return kind_ == kind::sum; }
  bool is_finite() const { return kind_ == kind::finite; }
  double p() const { return p_; }

  /// Conjugate exponent: 1/p + 1/q = 1, with max <-> sum.
  holder_exponent conjugate() const {
    switch (kind_) {
      case kind::max:
        return sum();
      case kind::sum:
        return max();
      case kind::finite:
      default:
        return finite(p_ / (p_ - 1.0));
    }
  }

 private:
  enum class kind { max, finite, sum };
  constexpr explicit holder_exponent(kind k) : kind_(k) {}
  kind kind_;
  double p_ = 0.0;
};

/// Weighted Holder reduction of nonnegative values:
///   max   -> max_i v_i                (weights ignored, the q -> inf limit)
///   p > 1 -> (sum_i w_i v_i^p)^(1/p)
///   sum   -> sum_i w_i v_i
/// The finite branch is evaluated in scaled form around max v_i so large
/// exponents neither overflow nor lose the dominant term.
inline double holder_sum(std::span<const double> values,
                         std::span<const double> wts, holder_exponent e) {
  if (values.empty()) return 0.0;
  if (e.is_max()) return *std::max_element(values.begin(), values.end());
  if (e.is_sum()) {
    kahan_sum acc;
    for (std::size_t i = 0; i < values.size(); ++i)
      acc.add(wts[i] * values[i]);
    return acc.value();
  }
  const double m = *std::max_element(values.begin(), values.end());
  if (m == 0.0) return 0.0;
  kahan_sum acc;
  for (std::size_t i = 0; i < values.size(); ++i) {
    acc.add(wts[i] * std::pow(values[i] / m, e.p()));
  }
  return m * std::pow(acc.value(), 1.0 / e.p());
}

/// Unweighted form.
inline double holder_sum(std::span<const double> values, holder_exponent e) {
  if (values.empty()) return 0.0;
  if (e.is_max()) return *std::max_element(values.begin(), values.end());
  if (e.is_sum()) {
    kahan_sum acc;
    for (double v : values) acc.add(v);
    return acc.value();
  }
  const double m = *std::max_element(values.begin(), values.end());
  if (m == 0.0) return 0.0;
  kahan_sum acc;
  for (double v : values) acc.add(std::pow(v / m, e.p()));
  return m * std::pow(acc.value(), 1.0 / e.p());
}

}  // namespace chebgruss
