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

#include <cstddef>
#include <string>
#include <vector>

#include "chebgruss/errors.hpp"
#include "chebgruss/scalar.hpp"
#include "chebgruss/summation.hpp"
#include "chebgruss/vector.hpp"
#include "chebgruss/weights.hpp"

namespace chebgruss {

/// Value of the functional together with its modulus.
template <scalar S>
struct functional_value {
  S value{};
  double modulus = 0.0;
};

/// Weighted prefix sums A_i = sum_{k<=i} p_k a_k (n entries) and the
/// complementary tails Abar_i = A_n - A_i (n-1 entries).
template <scalar S>
struct partial_sums {
  sequence<S> prefix;  // A_1..A_n at indices 0..n-1
  sequence<S> tail;    // Abar_1..Abar_{n-1} at indices 0..n-2
};

namespace detail {

template <scalar S>
void require_triple(const weights& p, const sequence<S>& x,
                    const sequence<S>& y) {
  if (p.size() != x.size() || x.size() != y.size()) {
    throw dimension_error("weights/x/y lengths differ: " +
                          std::to_string(p.size()) + "/" +
                          std::to_string(x.size()) + "/" +
                          std::to_string(y.size()));
  }
  require_pair(x, y);
}

}  // namespace detail

/// T_n(p; x, y) = P_n sum_i p_i <x_i, y_i> - <sum_i p_i x_i, sum_i p_i y_i>.
template <scalar S>
functional_value<S> chebyshev(const weights& p, const sequence<S>& x,
                              const sequence<S>& y) {
  detail::require_triple(p, x, y);
  scalar_sum<S> diag;
  for (std::size_t i = 0; i < x.size(); ++i) {
    diag.add(inner(x[i], y[i]) * p[i]);
  }
  const vec<S> mx = weighted_sum(p.raw(), x);
  const vec<S> my = weighted_sum(p.raw(), y);
  const S value = diag.value() * p.total() - inner(mx, my);
  return {value, abs_of(value)};
}

/// The functional under the uniform probability distribution (1/n,...,1/n).
template <scalar S>
functional_value<S> chebyshev_uniform(const sequence<S>& x,
                                      const sequence<S>& y) {
  require_pair(x, y);
  return chebyshev(weights::uniform(x.size()), x, y);
}

template <scalar S>
partial_sums<S> make_partial_sums(const weights& p, const sequence<S>& a) {
  if (p.size() != a.size()) {
    throw dimension_error("weights and sequence lengths differ");
  }
  const std::size_t n = a.size();
  const std::size_t d = sequence_dim(a);
  partial_sums<S> out;
  out.prefix.reserve(n);
  std::vector<scalar_sum<S>> acc(d);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < d; ++k) acc[k].add(a[i][k] * p[i]);
    vec<S> snapshot(d);
    for (std::size_t k = 0; k < d; ++k) snapshot[k] = acc[k].value();
    out.prefix.push_back(std::move(snapshot));
  }
  out.tail.reserve(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    out.tail.push_back(out.prefix.back() - out.prefix[i]);
  }
  return out;
}

/// Right-hand side of the Abel-transform representation,
///   sum_{i=1}^{n-1} <P_i A_n - P_n A_i, Delta b_i>,
/// an independently evaluable route to T_n(p; a, b).
template <scalar S>
functional_value<S> identity_abel_rhs(const weights& p, const sequence<S>& a,
                                      const sequence<S>& b) {
  detail::require_triple(p, a, b);
  const auto ps = make_partial_sums(p, a);
  const sequence<S> db = forward_differences(b);
  scalar_sum<S> acc;
  for (std::size_t i = 0; i + 1 < a.size(); ++i) {
    const vec<S> k =
        ps.prefix.back() * p.prefix(i) - ps.prefix[i] * p.total();
    acc.add(inner(k, db[i]));
  }
  const S v = acc.value();
  return {v, abs_of(v)};
}

/// Prefix-mean form, P_n sum_i P_i <A_n/P_n - A_i/P_i, Delta b_i>.
/// Requires every P_i (P_n included) to clear the degeneracy guard.
template <scalar S>
functional_value<S> identity_normalized_rhs(const weights& p,
                                            const sequence<S>& a,
                                            const sequence<S>& b) {
  detail::require_triple(p, a, b);
  p.require_nonzero_prefixes();
  const auto ps = make_partial_sums(p, a);
  const sequence<S> db = forward_differences(b);
  const vec<S> grand_mean = ps.prefix.back() * (1.0 / p.total());
  scalar_sum<S> acc;
  for (std::size_t i = 0; i + 1 < a.size(); ++i) {
    const vec<S> m = grand_mean - ps.prefix[i] * (1.0 / p.prefix(i));
    acc.add(inner(m, db[i]) * p.prefix(i));
  }
  const S v = acc.value() * p.total();
  return {v, abs_of(v)};
}

/// Tail-vs-prefix mean form,
///   sum_i P_i Pbar_i <Abar_i/Pbar_i - A_i/P_i, Delta b_i>.
/// Requires P_i and Pbar_i (i <= n-1) to clear the guard.
template <scalar S>
functional_value<S> identity_tail_mean_rhs(const weights& p,
                                           const sequence<S>& a,
                                           const sequence<S>& b) {
  detail::require_triple(p, a, b);
  p.require_nonzero_prefixes(p.size() - 1);
  p.require_nonzero_tails();
  const auto ps = make_partial_sums(p, a);
  const sequence<S> db = forward_differences(b);
  scalar_sum<S> acc;
  for (std::size_t i = 0; i + 1 < a.size(); ++i) {
    const vec<S> m = ps.tail[i] * (1.0 / p.tail(i)) -
                     ps.prefix[i] * (1.0 / p.prefix(i));
    acc.add(inner(m, db[i]) * (p.prefix(i) * p.tail(i)));
  }
  const S v = acc.value();
  return {v, abs_of(v)};
}

/// Kernel vector K(i) = sum_{j=1}^{n-1} P_min(i,j) Pbar_max(i,j) Delta a_j,
/// which reproduces P_i A_n - P_n A_i. `i` is the 1-based subscript,
/// valid in 1..n-1 to match the partial sums it pairs with.
template <scalar S>
vec<S> kernel(const weights& p, const sequence<S>& a, std::size_t i) {
  if (p.size() != a.size()) {
    throw dimension_error("weights and sequence lengths differ");
  }
  const std::size_t n = a.size();
  if (n < 2) throw sequence_too_short("kernel needs n >= 2");
  if (i < 1 || i > n - 1) {
    throw index_error("kernel index " + std::to_string(i) +
                      " outside 1.." + std::to_string(n - 1));
  }
  const sequence<S> da = forward_differences(a);
  const std::size_t d = sequence_dim(a);
  std::vector<scalar_sum<S>> acc(d);
  for (std::size_t j = 1; j <= n - 1; ++j) {
    const double c =
        p.prefix(std::min(i, j) - 1) * p.tail(std::max(i, j) - 1);
    for (std::size_t k = 0; k < d; ++k) acc[k].add(da[j - 1][k] * c);
  }
  vec<S> out(d);
  for (std::size_t k = 0; k < d; ++k) out[k] = acc[k].value();
  return out;
}

/// Kernel-weighted double-sum representation,
///   sum_i sum_j P_min(i,j) Pbar_max(i,j) <Delta a_j, Delta b_i>.
template <scalar S>
functional_value<S> double_sum_rhs(const weights& p, const sequence<S>& a,
                                   const sequence<S>& b) {
  detail::require_triple(p, a, b);
  const sequence<S> da = forward_differences(a);
  const sequence<S> db = forward_differences(b);
  const std::size_t m = da.size();
  scalar_sum<S> acc;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const double c = p.prefix(std::min(i, j)) * p.tail(std::max(i, j));
      acc.add(inner(da[j], db[i]) * c);
    }
  }
  const S v = acc.value();
  return {v, abs_of(v)};
}

/// Left side of summation by parts: sum_{l=1}^{m-1} <d_l, Delta v_l>.
/// Equals <d_m, v_m> - <d_1, v_1> - sum_l <Delta d_l, v_{l+1}>.
template <scalar S>
S summation_by_parts(const sequence<S>& d, const sequence<S>& v) {
  require_pair(d, v);
  const sequence<S> dv = forward_differences(v);
  scalar_sum<S> acc;
  for (std::size_t l = 0; l + 1 < d.size(); ++l) acc.add(inner(d[l], dv[l]));
  return acc.value();
}

}  // namespace chebgruss
