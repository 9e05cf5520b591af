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

// Shared generators and independent oracles for the test suites. The
// oracles deliberately use plain uncompensated arithmetic so they form a
// separate route from the library's summation strategy.

#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "chebgruss/chebgruss.hpp"

namespace chebgruss::testing {

inline double random_coord(rng& gen) { return gen.next_uniform(-2.0, 2.0); }

template <scalar S>
S random_scalar(rng& gen) {
  if constexpr (is_complex_v<S>) {
    return {random_coord(gen), random_coord(gen)};
  } else {
    return random_coord(gen);
  }
}

template <scalar S>
vec<S> random_vector(rng& gen, std::size_t d) {
  vec<S> v(d);
  for (std::size_t k = 0; k < d; ++k) v[k] = random_scalar<S>(gen);
  return v;
}

template <scalar S>
sequence<S> random_sequence(rng& gen, std::size_t n, std::size_t d) {
  sequence<S> s;
  s.reserve(n);
  for (std::size_t i = 0; i < n; ++i) s.push_back(random_vector<S>(gen, d));
  return s;
}

inline weights random_probability_weights(rng& gen, std::size_t n) {
  std::vector<double> p(n);
  double total = 0.0;
  for (double& v : p) {
    v = -std::log(1.0 - gen.next_double());
    total += v;
  }
  for (double& v : p) v /= total;
  return weights(std::move(p));
}

/// Signed weights of moderate size whose prefix sums, tail sums, and
/// total all clear `guard`.
inline weights random_signed_weights(rng& gen, std::size_t n,
                                     double guard = 1e-6) {
  const double scale = 3.0 / static_cast<double>(n);
  for (;;) {
    std::vector<double> p(n);
    for (double& v : p) v = scale * gen.next_gaussian();
    weights w(std::move(p));
    bool ok = std::abs(w.total()) > guard;
    for (std::size_t i = 0; ok && i < n; ++i) {
      ok = std::abs(w.prefix(i)) > guard;
    }
    for (std::size_t i = 0; ok && i + 1 < n; ++i) {
      ok = std::abs(w.tail(i)) > guard;
    }
    if (ok) return w;
  }
}

/// A ball plus a sequence of points inside it.
template <scalar S>
std::pair<sequence<S>, ball_enclosure<S>> random_enclosed_sequence(
    rng& gen, std::size_t n, std::size_t d) {
  vec<S> mid = random_vector<S>(gen, d);
  vec<S> dir = random_vector<S>(gen, d);
  const double dn = norm(dir);
  if (dn < 1e-9) dir[0] = S{1.0};
  dir *= 1.0 / norm(dir);
  const double radius = gen.next_uniform(0.3, 1.5);
  ball_enclosure<S> enc{mid - dir * radius, mid + dir * radius};
  sequence<S> seq;
  seq.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    vec<S> u = random_vector<S>(gen, d);
    const double un = norm(u);
    if (un < 1e-9) {
      seq.push_back(mid);
      continue;
    }
    u *= 1.0 / un;
    seq.push_back(mid + u * (radius * gen.next_double()));
  }
  return {std::move(seq), std::move(enc)};
}

/// Independent oracle: the functional evaluated directly from its
/// definition with plain loops, no compensation.
template <scalar S>
S chebyshev_naive(const std::vector<double>& p, const sequence<S>& x,
                  const sequence<S>& y) {
  const std::size_t n = x.size();
  const std::size_t d = x.front().dim();
  double total = 0.0;
  for (double v : p) total += v;
  S diag{};
  for (std::size_t i = 0; i < n; ++i) {
    S dot{};
    for (std::size_t k = 0; k < d; ++k) dot += x[i][k] * conj_of(y[i][k]);
    diag += dot * p[i];
  }
  vec<S> sx(d), sy(d);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < d; ++k) {
      sx[k] += x[i][k] * p[i];
      sy[k] += y[i][k] * p[i];
    }
  }
  S cross{};
  for (std::size_t k = 0; k < d; ++k) cross += sx[k] * conj_of(sy[k]);
  return diag * total - cross;
}

/// Relative residual |a - b| / (1 + |b|).
template <scalar S>
double residual(const S& a, const S& b) {
  return abs_of(a - b) / (1.0 + abs_of(b));
}

}  // namespace chebgruss::testing
