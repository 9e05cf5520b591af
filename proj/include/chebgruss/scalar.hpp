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
#include <complex>
#include <concepts>
#include <type_traits>

namespace chebgruss {

/// The ground field is either the reals (double) or the complex numbers.
template <typename T>
concept scalar =
    std::same_as<T, double> || std::same_as<T, std::complex<double>>;

using cplx = std::complex<double>;

template <scalar S>
inline constexpr bool is_complex_v = std::same_as<S, cplx>;

inline double conj_of(double x) { return x; }
inline cplx conj_of(const cplx& x) { return std::conj(x); }

inline double re_of(double x) { return x; }
inline double re_of(const cplx& x) { return x.real(); }

inline double im_of(double) { return 0.0; }
inline double im_of(const cplx& x) { return x.imag(); }

inline double abs_of(double x) { return std::abs(x); }
inline double abs_of(const cplx& x) { return std::abs(x); }

/// Default comparison tolerances used across the library.
inline constexpr double rel_tolerance = 1e-10;
inline constexpr double abs_tolerance = 1e-12;

/// Guard below which a partial sum counts as degenerate (division unsafe).
inline constexpr double partial_sum_guard = 1e-12;

/// Probability check tolerance on |P_n - 1|.
inline constexpr double probability_tolerance = 1e-12;

inline bool approx_equal(double a, double b, double rel = rel_tolerance,
                         double abs = abs_tolerance) {
  return std::abs(a - b) <= abs + rel * std::max(std::abs(a), std::abs(b));
}

}  // namespace chebgruss
