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
#include <initializer_list>
#include <string>
#include <vector>

#include "chebgruss/errors.hpp"
#include "chebgruss/scalar.hpp"
#include "chebgruss/summation.hpp"

namespace chebgruss {

/// Finite-dimensional coordinate vector over the real or complex field.
/// Immutable in spirit: operations return new values.
template <scalar S>
class vec {
 public:
  vec() = default;
  explicit vec(std::size_t dim, S fill = S{}) : coords_(dim, fill) {}
  vec(std::initializer_list<S> init) : coords_(init) {}
  explicit vec(std::vector<S> coords) : coords_(std::move(coords)) {}

  static vec zero(std::size_t dim) { return vec(dim); }

  /// Coordinate unit vector e_k.
  static vec unit(std::size_t dim, std::size_t k) {
    vec v(dim);
    v.coords_[k] = S{1.0};
    return v;
  }

  std::size_t dim() const { return coords_.size(); }
  S& operator[](std::size_t i) { return coords_[i]; }
  const S& operator[](std::size_t i) const { return coords_[i]; }
  const std::vector<S>& coords() const { return coords_; }

  vec& operator+=(const vec& o) {
    require_same_dim(o);
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
    return *this;
  }
  vec& operator-=(const vec& o) {
    require_same_dim(o);
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= o.coords_[i];
    return *this;
  }
  vec& operator*=(double a) {
    for (auto& c : coords_) c *= a;
    return *this;
  }
  vec& operator*=(const S& a)
    requires is_complex_v<S>
  {
    for (auto& c : coords_) c *= a;
    return *this;
  }

  friend vec operator+(vec a, const vec& b) { return a += b; }
  friend vec operator-(vec a, const vec& b) { return a -= b; }
  friend vec operator*(vec a, double s) { return a *= s; }
  friend vec operator*(double s, vec a) { return a *= s; }

  bool operator==(const vec& o) const = default;

  void require_same_dim(const vec& o) const {
    if (coords_.size() != o.coords_.size()) {
      throw dimension_error("vector dimensions differ: " +
                            std::to_string(coords_.size()) + " vs " +
                            std::to_string(o.coords_.size()));
    }
  }

 private:
  std::vector<S> coords_;
};

using rvec = vec<double>;
using cvec = vec<cplx>;

/// Inner product, linear in the first argument and conjugate-linear in
/// the second: <u, v> = sum_k u_k * conj(v_k).
template <scalar S>
S inner(const vec<S>& u, const vec<S>& v) {
  u.require_same_dim(v);
  scalar_sum<S> acc;
  for (std::size_t k = 0; k < u.dim(); ++k) acc.add(u[k] * conj_of(v[k]));
  return acc.value();
}

template <scalar S>
double norm(const vec<S>& u) {
  scalar_sum<double> acc;
  for (std::size_t k = 0; k < u.dim(); ++k) {
    const double a = abs_of(u[k]);
    acc.add(a * a);
  }
  return std::sqrt(std::max(0.0, acc.value()));
}

template <scalar S>
using sequence = std::vector<vec<S>>;

/// Checks one sequence for shape validity and returns its common
/// coordinate dimension.
template <scalar S>
std::size_t sequence_dim(const sequence<S>& s) {
  if (s.empty()) throw sequence_too_short("sequence is empty");
  const std::size_t d = s.front().dim();
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (s[i].dim() != d) {
      throw dimension_error("sequence element " + std::to_string(i) +
                            " has dimension " + std::to_string(s[i].dim()) +
                            ", expected " + std::to_string(d));
    }
  }
  return d;
}

/// Validates that two sequences form an aligned pair of length >= 2 with
/// a common coordinate dimension.
template <scalar S>
void require_pair(const sequence<S>& x, const sequence<S>& y) {
  if (x.size() != y.size()) {
    throw dimension_error("sequence lengths differ: " +
                          std::to_string(x.size()) + " vs " +
                          std::to_string(y.size()));
  }
  if (x.size() < 2) throw sequence_too_short("need at least two elements");
  if (sequence_dim(x) != sequence_dim(y)) {
    throw dimension_error("sequences have different coordinate dimensions");
  }
}

/// Forward differences (x_2 - x_1, ..., x_n - x_{n-1}).
template <scalar S>
sequence<S> forward_differences(const sequence<S>& x) {
  if (x.size() < 2) {
    throw sequence_too_short("forward differences need at least two elements");
  }
  sequence_dim(x);
  sequence<S> d;
  d.reserve(x.size() - 1);
  for (std::size_t i = 0; i + 1 < x.size(); ++i) d.push_back(x[i + 1] - x[i]);
  return d;
}

/// Norms of the forward differences, the workhorse of every bound here.
template <scalar S>
std::vector<double> forward_difference_norms(const sequence<S>& x) {
  const sequence<S> d = forward_differences(x);
  std::vector<double> out(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) out[i] = norm(d[i]);
  return out;
}

/// Compensated weighted sum  sum_i c_i * v_i  taken in index order.
template <scalar S>
vec<S> weighted_sum(const std::vector<double>& c, const sequence<S>& v) {
  if (c.size() != v.size()) {
    throw dimension_error("coefficient count does not match sequence length");
  }
  const std::size_t d = sequence_dim(v);
  std::vector<scalar_sum<S>> acc(d);
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t k = 0; k < d; ++k) acc[k].add(v[i][k] * c[i]);
  }
  vec<S> out(d);
  for (std::size_t k = 0; k < d; ++k) out[k] = acc[k].value();
  return out;
}

}  // namespace chebgruss
