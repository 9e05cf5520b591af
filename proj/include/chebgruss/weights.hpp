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

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "chebgruss/errors.hpp"
#include "chebgruss/scalar.hpp"
#include "chebgruss/summation.hpp"

namespace chebgruss {

/// Real weight sequence p_1..p_n with its prefix sums P_i and tail sums
/// Pbar_i = P_n - P_i. Prefix sums are snapshots of a compensated
/// running sum, so P_n is reproducible in index order.
class weights {
 public:
  explicit weights(std::vector<double> p) : p_(std::move(p)) {
    prefix_.resize(p_.size());
    kahan_sum acc;
    for (std::size_t i = 0; i < p_.size(); ++i) {
      acc.add(p_[i]);
      prefix_[i] = acc.value();
    }
    total_ = p_.empty() ? 0.0 : prefix_.back();
  }

  static weights uniform(std::size_t n) {
    return weights(std::vector<double>(n, 1.0 / static_cast<double>(n)));
  }

  std::size_t size() const { return p_.size(); }
  double operator[](std::size_t i) const { return p_[i]; }
  const std::vector<double>& raw() const { return p_; }

  /// P_{i+1} in 1-based terms: sum of the first i+1 weights.
  double prefix(std::size_t i) const { return prefix_[i]; }

  /// Pbar_{i+1} = P_n - P_{i+1}; meaningful for i <= n-2.
  double tail(std::size_t i) const { return total_ - prefix_[i]; }

  double total() const { return total_; }

  bool is_probability(double eps = probability_tolerance) const {
    for (double w : p_) {
      if (w < 0.0) return false;
    }
    return std::abs(total_ - 1.0) <= eps;
  }

  bool is_uniform(double eps = probability_tolerance) const {
    if (p_.empty()) return false;
    const double u = 1.0 / static_cast<double>(p_.size());
    for (double w : p_) {
      if (std::abs(w - u) > eps) return false;
    }
    return true;
  }

  void require_probability() const {
    if (!is_probability()) {
      throw not_probability(
          "weights are not a probability sequence (need nonnegative entries "
          "summing to 1; total = " +
          std::to_string(total_) + ")");
    }
  }

  /// Throws if any prefix sum P_1..P_m is within the degeneracy guard.
  /// `m` defaults to n (check all of them, P_n included).
  void require_nonzero_prefixes(std::size_t m = static_cast<std::size_t>(-1),
                                double guard = partial_sum_guard) const {
    const std::size_t stop = std::min(m, p_.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (std::abs(prefix_[i]) <= guard) {
        throw degenerate_partial_sum(i + 1, false, prefix_[i]);
      }
    }
  }

  /// Throws if any tail sum Pbar_1..Pbar_{n-1} is within the guard.
  void require_nonzero_tails(double guard = partial_sum_guard) const {
    for (std::size_t i = 0; i + 1 < p_.size(); ++i) {
      const double t = tail(i);
      if (std::abs(t) <= guard) {
        throw degenerate_partial_sum(i + 1, true, t);
      }
    }
  }

 private:
  std::vector<double> p_;
  std::vector<double> prefix_;
  double total_ = 0.0;
};

}  // namespace chebgruss
