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

#include "chebgruss/scalar.hpp"

namespace chebgruss {

/// Neumaier-compensated accumulator. All reductions in the library run
/// through this in index order so identity residuals are reproducible.
class kahan_sum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Compensated accumulator over the ground field (real or complex parts
/// are compensated independently).
template <scalar S>
class scalar_sum {
 public:
  void add(const S& x) {
    re_.add(re_of(x));
    if constexpr (is_complex_v<S>) im_.add(im_of(x));
  }

  S value() const {
    if constexpr (is_complex_v<S>) {
      return S(re_.value(), im_.value());
    } else {
      return re_.value();
    }
  }

 private:
  kahan_sum re_;
  kahan_sum im_;
};

}  // namespace chebgruss
