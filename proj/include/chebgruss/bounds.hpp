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
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "chebgruss/chebyshev.hpp"
#include "chebgruss/errors.hpp"
#include "chebgruss/holder.hpp"
#include "chebgruss/scalar.hpp"
#include "chebgruss/vector.hpp"
#include "chebgruss/weights.hpp"

namespace chebgruss {

/// Identifiers of the bound families. T* rows hold for general weights
/// as noted per operation; C* rows are their uniform-weight forms.
enum class theorem_id {
  T1_1,
  T1_2,
  T1_3,
  T3_1,
  T3_3,
  T3_5,
  T3_6,
  C3_2,
  C3_4,
  C3_7,
  C3_9,
};

/// Branch labels. For three-branch families these are positional: the
/// first line pairs a maximum with a sum (or max/max for T1_2), the
/// second is the Holder pairing, the third swaps the first. line1/line2
/// name the stages of two-line chains (T1_3, C3_7, C3_9, and the single
/// line of T1_1).
enum class branch_id { max_sum, holder, sum_max, line1, line2 };

struct branch_spec {
  branch_id id = branch_id::holder;
  double p = 2.0;  // Holder exponent on the forward-difference side

  double q() const { return p / (p - 1.0); }
  void validate() const {
    if (id == branch_id::holder && (!(p > 1.0) || !std::isfinite(p))) {
      throw exponent_error("Holder branch needs finite p > 1, got " +
                           std::to_string(p));
    }
  }
};

inline std::string_view to_string(theorem_id t) {
  switch (t) {
    case theorem_id::T1_1: return "T1_1";
    case theorem_id::T1_2: return "T1_2";
    case theorem_id::T1_3: return "T1_3";
    case theorem_id::T3_1: return "T3_1";
    case theorem_id::T3_3: return "T3_3";
    case theorem_id::T3_5: return "T3_5";
    case theorem_id::T3_6: return "T3_6";
    case theorem_id::C3_2: return "C3_2";
    case theorem_id::C3_4: return "C3_4";
    case theorem_id::C3_7: return "C3_7";
    case theorem_id::C3_9: return "C3_9";
  }
  return "?";
}

inline std::string_view to_string(branch_id b) {
  switch (b) {
    case branch_id::max_sum: return "max_sum";
    case branch_id::holder: return "holder";
    case branch_id::sum_max: return "sum_max";
    case branch_id::line1: return "line1";
    case branch_id::line2: return "line2";
  }
  return "?";
}

inline std::optional<theorem_id> parse_theorem(std::string_view s) {
  using t = theorem_id;
  for (t id : {t::T1_1, t::T1_2, t::T1_3, t::T3_1, t::T3_3, t::T3_5, t::T3_6,
               t::C3_2, t::C3_4, t::C3_7, t::C3_9}) {
    if (s == to_string(id)) return id;
  }
  return std::nullopt;
}

inline std::optional<branch_id> parse_branch(std::string_view s) {
  using b = branch_id;
  for (b id : {b::max_sum, b::holder, b::sum_max, b::line1, b::line2}) {
    if (s == to_string(id)) return id;
  }
  return std::nullopt;
}

/// One evaluated bound. `ratio` is |T_n| / value; it is left undefined
/// (ratio_defined = false) when the bound value is below 1e-15 so reports
/// never divide by a vanishing number.
struct bound_report {
  theorem_id theorem{};
  branch_id branch{};
  double holder_p = 2.0;
  double value = 0.0;
  bool preconditions_ok = true;
  std::string diagnostic;
  double functional_modulus = 0.0;
  double ratio = 0.0;
  bool ratio_defined = false;
};

inline constexpr double ratio_floor = 1e-15;

namespace detail {

inline bound_report make_report(theorem_id t, branch_id b, double p,
                                double value, double functional_modulus) {
  bound_report r;
  r.theorem = t;
  r.branch = b;
  r.holder_p = p;
  r.value = value;
  r.functional_modulus = functional_modulus;
  if (value > ratio_floor) {
    r.ratio = functional_modulus / value;
    r.ratio_defined = true;
  }
  return r;
}

inline bound_report failed_report(theorem_id t, branch_id b,
                                  std::string diagnostic) {
  bound_report r;
  r.theorem = t;
  r.branch = b;
  r.preconditions_ok = false;
  r.diagnostic = std::move(diagnostic);
  return r;
}

/// Maps a positional branch to the exponent pair (left factor, right
/// factor) of a sharp Holder pairing: max/sum, q/p, sum/max.
inline std::pair<holder_exponent, holder_exponent> branch_exponents(
    const branch_spec& br) {
  br.validate();
  switch (br.id) {
    case branch_id::max_sum:
      return {holder_exponent::max(), holder_exponent::sum()};
    case branch_id::sum_max:
      return {holder_exponent::sum(), holder_exponent::max()};
    case branch_id::holder:
      return {holder_exponent::finite(br.q()), holder_exponent::finite(br.p)};
    default:
      throw exponent_error("branch " + std::string(to_string(br.id)) +
                           " is not a three-branch selector");
  }
}

}  // namespace detail

/// Ball described by two vectors: every admissible point lies within
/// distance ||high - low||/2 of the midpoint.
template <scalar S>
struct ball_enclosure {
  vec<S> low;
  vec<S> high;

  vec<S> midpoint() const { return (low + high) * 0.5; }
  double radius() const { return 0.5 * norm(high - low); }
  double diameter() const { return norm(high - low); }
};

struct enclosure_check {
  bool ok = true;
  std::size_t worst_index = 0;  // 0-based element with the largest excess
  double excess = 0.0;          // max_i (||v_i - mid|| - radius)
};

inline constexpr double enclosure_slack = 1e-12;

/// Midpoint-ball membership test for a whole sequence.
template <scalar S>
enclosure_check check_enclosure(const sequence<S>& seq,
                                const ball_enclosure<S>& e) {
  const vec<S> mid = e.midpoint();
  const double radius = e.radius();
  enclosure_check res;
  res.excess = -radius;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const double excess = norm(seq[i] - mid) - radius;
    if (excess > res.excess) {
      res.excess = excess;
      res.worst_index = i;
    }
  }
  res.ok = res.excess <= enclosure_slack;
  return res;
}

namespace detail {

template <scalar S>
void require_enclosure(const sequence<S>& seq, const ball_enclosure<S>& e,
                       const char* which) {
  const enclosure_check c = check_enclosure(seq, e);
  if (!c.ok) throw enclosure_violated(which, c.worst_index, c.excess);
}

}  // namespace detail

/// |T_n| <= (1/4) ||X - x|| ||Y - y|| for probability weights and
/// sequences confined to the two balls.
template <scalar S>
bound_report gruss_bound(const weights& p, const sequence<S>& x,
                         const sequence<S>& y, const ball_enclosure<S>& ex,
                         const ball_enclosure<S>& ey) {
  p.require_probability();
  detail::require_enclosure(x, ex, "x");
  detail::require_enclosure(y, ey, "y");
  const double t = chebyshev(p, x, y).modulus;
  const double value = 0.25 * ex.diameter() * ey.diameter();
  return detail::make_report(theorem_id::T1_1, branch_id::line1, 2.0, value, t);
}

/// Coefficient in front of the forward-difference products:
///   max_sum -> variance of the index, sum_i i^2 p_i - (sum_i i p_i)^2
///   holder  -> sum_{j<i} p_i p_j (i - j)
///   sum_max -> (1/2) sum_i p_i (1 - p_i)
/// Indices are 1-based as in the index sequence (1, 2, ..., n).
inline double forward_diff_coefficient(const weights& p, branch_id b) {
  const std::size_t n = p.size();
  switch (b) {
    case branch_id::max_sum: {
      kahan_sum m1, m2;
      for (std::size_t i = 0; i < n; ++i) {
        const double idx = static_cast<double>(i + 1);
        m1.add(idx * p[i]);
        m2.add(idx * idx * p[i]);
      }
      const double mean = m1.value();
      return m2.value() - mean * mean;
    }
    case branch_id::holder: {
      kahan_sum acc;
      for (std::size_t i = 1; i < n; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
          acc.add(p[i] * p[j] * static_cast<double>(i - j));
        }
      }
      return acc.value();
    }
    case branch_id::sum_max: {
      kahan_sum acc;
      for (std::size_t i = 0; i < n; ++i) acc.add(p[i] * (1.0 - p[i]));
      return 0.5 * acc.value();
    }
    default:
      throw exponent_error("invalid branch for forward-difference bounds");
  }
}

/// Forward-difference bounds for probability weights. The first branch
/// pairs maxima, the Holder branch puts p on the x side and q on the y
/// side, the third pairs plain sums.
template <scalar S>
bound_report forward_diff_bounds(const weights& p, const sequence<S>& x,
                                 const sequence<S>& y,
                                 const branch_spec& br) {
  br.validate();
  p.require_probability();
  const double t = chebyshev(p, x, y).modulus;
  const std::vector<double> ndx = forward_difference_norms(x);
  const std::vector<double> ndy = forward_difference_norms(y);
  const double coeff = forward_diff_coefficient(p, br.id);
  double value = 0.0;
  switch (br.id) {
    case branch_id::max_sum:
      value = coeff * holder_sum(ndx, holder_exponent::max()) *
              holder_sum(ndy, holder_exponent::max());
      break;
    case branch_id::holder:
      value = coeff * holder_sum(ndx, holder_exponent::finite(br.p)) *
              holder_sum(ndy, holder_exponent::finite(br.q()));
      break;
    case branch_id::sum_max:
      value = coeff * holder_sum(ndx, holder_exponent::sum()) *
              holder_sum(ndy, holder_exponent::sum());
      break;
    default:
      throw exponent_error("invalid branch for forward-difference bounds");
  }
  return detail::make_report(theorem_id::T1_2, br.id, br.p, value, t);
}

struct half_norm_chain {
  bound_report line1;  // (1/2) ||X - x|| sum_i p_i ||y_i - ybar||
  bound_report line2;  // (1/2) ||X - x|| (sum_i p_i ||y_i||^2 - ||ybar||^2)^(1/2)
};

/// Half-range bounds: probability weights, x confined to a ball. The
/// first line is never larger than the second.
template <scalar S>
half_norm_chain half_norm_bounds(const weights& p, const sequence<S>& x,
                                 const sequence<S>& y,
                                 const ball_enclosure<S>& ex) {
  p.require_probability();
  detail::require_enclosure(x, ex, "x");
  detail::require_triple(p, x, y);
  const double t = chebyshev(p, x, y).modulus;
  const vec<S> ybar = weighted_sum(p.raw(), y);
  kahan_sum dev, sq;
  for (std::size_t i = 0; i < y.size(); ++i) {
    dev.add(p[i] * norm(y[i] - ybar));
    const double ni = norm(y[i]);
    sq.add(p[i] * ni * ni);
  }
  const double nbar = norm(ybar);
  const double variance = std::max(0.0, sq.value() - nbar * nbar);
  const double half_range = 0.5 * ex.diameter();
  half_norm_chain out;
  out.line1 = detail::make_report(theorem_id::T1_3, branch_id::line1, 2.0,
                                  half_range * dev.value(), t);
  out.line2 = detail::make_report(theorem_id::T1_3, branch_id::line2, 2.0,
                                  half_range * std::sqrt(variance), t);
  return out;
}

/// Bounds from the Abel-transform representation; weights may be any
/// reals. The left factors are the norms ||P_i A_n - P_n A_i||.
template <scalar S>
bound_report abel_bounds(const weights& p, const sequence<S>& a,
                         const sequence<S>& b, const branch_spec& br) {
  detail::require_triple(p, a, b);
  const double t = chebyshev(p, a, b).modulus;
  const auto ps = make_partial_sums(p, a);
  const std::size_t n = a.size();
  std::vector<double> nk(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    nk[i] = norm(ps.prefix.back() * p.prefix(i) - ps.prefix[i] * p.total());
  }
  const std::vector<double> ndb = forward_difference_norms(b);
  const auto [ea, eb] = detail::branch_exponents(br);
  const double value = holder_sum(nk, ea) * holder_sum(ndb, eb);
  return detail::make_report(theorem_id::T3_1, br.id, br.p, value, t);
}

/// Bounds from the prefix-mean representation, weighted by |P_i| and
/// scaled by |P_n|; requires every P_i away from zero.
template <scalar S>
bound_report normalized_bounds(const weights& p, const sequence<S>& a,
                               const sequence<S>& b, const branch_spec& br) {
  detail::require_triple(p, a, b);
  p.require_nonzero_prefixes();
  const double t = chebyshev(p, a, b).modulus;
  const auto ps = make_partial_sums(p, a);
  const std::size_t n = a.size();
  const vec<S> grand_mean = ps.prefix.back() * (1.0 / p.total());
  std::vector<double> nm(n - 1), wts(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    nm[i] = norm(grand_mean - ps.prefix[i] * (1.0 / p.prefix(i)));
    wts[i] = std::abs(p.prefix(i));
  }
  const std::vector<double> ndb = forward_difference_norms(b);
  const auto [ea, eb] = detail::branch_exponents(br);
  const double value = std::abs(p.total()) * holder_sum(nm, wts, ea) *
                       holder_sum(ndb, wts, eb);
  return detail::make_report(theorem_id::T3_3, br.id, br.p, value, t);
}

/// Bounds from the tail-vs-prefix mean representation, weighted by
/// |P_i Pbar_i|; requires P_i and Pbar_i away from zero for i <= n-1.
template <scalar S>
bound_report tail_mean_bounds(const weights& p, const sequence<S>& a,
                              const sequence<S>& b, const branch_spec& br) {
  detail::require_triple(p, a, b);
  p.require_nonzero_prefixes(p.size() - 1);
  p.require_nonzero_tails();
  const double t = chebyshev(p, a, b).modulus;
  const auto ps = make_partial_sums(p, a);
  const std::size_t n = a.size();
  std::vector<double> nt(n - 1), wts(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    nt[i] = norm(ps.tail[i] * (1.0 / p.tail(i)) -
                 ps.prefix[i] * (1.0 / p.prefix(i)));
    wts[i] = std::abs(p.prefix(i) * p.tail(i));
  }
  const std::vector<double> ndb = forward_difference_norms(b);
  const auto [ea, eb] = detail::branch_exponents(br);
  const double value = holder_sum(nt, wts, ea) * holder_sum(ndb, wts, eb);
  return detail::make_report(theorem_id::T3_5, br.id, br.p, value, t);
}

/// Bounds from the kernel double sum. Branch roles:
///   max_sum -> sup-norm of the kernel times both difference sums
///   holder  -> q-norm of the kernel times both difference p-norms
///   sum_max -> 1-norm of the kernel times both difference maxima
/// With `strict_literal` the first branch replaces the kernel sup-norm
/// max|P_min Pbar_max| by max{|P_min|, |Pbar_max|}; that variant is
/// only comparable, not the default, because the product form is the
/// one whose uniform specialization is k_infinity.
template <scalar S>
bound_report double_sum_bounds(const weights& p, const sequence<S>& a,
                               const sequence<S>& b, const branch_spec& br,
                               bool strict_literal = false) {
  br.validate();
  detail::require_triple(p, a, b);
  const double t = chebyshev(p, a, b).modulus;
  const std::size_t m = a.size() - 1;
  const std::vector<double> nda = forward_difference_norms(a);
  const std::vector<double> ndb = forward_difference_norms(b);
  double value = 0.0;
  switch (br.id) {
    case branch_id::max_sum: {
      double coeff = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
          const double pm = p.prefix(std::min(i, j));
          const double pt = p.tail(std::max(i, j));
          const double c = strict_literal
                               ? std::max(std::abs(pm), std::abs(pt))
                               : std::abs(pm * pt);
          coeff = std::max(coeff, c);
        }
      }
      value = coeff * holder_sum(nda, holder_exponent::sum()) *
              holder_sum(ndb, holder_exponent::sum());
      break;
    }
    case branch_id::holder: {
      double kmax = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
          kmax = std::max(kmax, std::abs(p.prefix(std::min(i, j)) *
                                         p.tail(std::max(i, j))));
        }
      }
      double coeff = 0.0;
      if (kmax > 0.0) {
        const double q = br.q();
        kahan_sum acc;
        for (std::size_t i = 0; i < m; ++i) {
          for (std::size_t j = 0; j < m; ++j) {
            const double c = std::abs(p.prefix(std::min(i, j)) *
                                      p.tail(std::max(i, j)));
            acc.add(std::pow(c / kmax, q));
          }
        }
        coeff = kmax * std::pow(acc.value(), 1.0 / q);
      }
      value = coeff * holder_sum(nda, holder_exponent::finite(br.p)) *
              holder_sum(ndb, holder_exponent::finite(br.p));
      break;
    }
    case branch_id::sum_max: {
      kahan_sum acc;
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
          acc.add(std::abs(p.prefix(std::min(i, j)) *
                           p.tail(std::max(i, j))));
        }
      }
      value = acc.value() * holder_sum(nda, holder_exponent::max()) *
              holder_sum(ndb, holder_exponent::max());
      break;
    }
    default:
      throw exponent_error("invalid branch for double-sum bounds");
  }
  return detail::make_report(theorem_id::T3_6, br.id, br.p, value, t);
}

/// k_infinity(n) = max_{1<=i,j<=n-1} (min{i,j}/n)(1 - max{i,j}/n); never
/// exceeds 1/4.
inline double k_infinity(std::size_t n) {
  if (n < 2) throw index_error("constants need n >= 2");
  const double dn = static_cast<double>(n);
  double best = 0.0;
  for (std::size_t i = 1; i <= n - 1; ++i) {
    const double v = (static_cast<double>(i) / dn) *
                     (1.0 - static_cast<double>(i) / dn);
    best = std::max(best, v);
  }
  return best;
}

/// k_q(n) = (1/n^2) (sum_{i,j} [min{i,j}(n - max{i,j})]^q)^(1/q), q > 1.
inline double k_q(std::size_t n, double q) {
  if (n < 2) throw index_error("constants need n >= 2");
  if (!(q > 1.0) || !std::isfinite(q)) {
    throw exponent_error("k_q needs finite q > 1");
  }
  const double dn = static_cast<double>(n);
  double m = 0.0;
  for (std::size_t i = 1; i <= n - 1; ++i) {
    for (std::size_t j = 1; j <= n - 1; ++j) {
      m = std::max(m, static_cast<double>(std::min(i, j)) *
                          (dn - static_cast<double>(std::max(i, j))));
    }
  }
  kahan_sum acc;
  for (std::size_t i = 1; i <= n - 1; ++i) {
    for (std::size_t j = 1; j <= n - 1; ++j) {
      const double term = static_cast<double>(std::min(i, j)) *
                          (dn - static_cast<double>(std::max(i, j)));
      acc.add(std::pow(term / m, q));
    }
  }
  return (m / (dn * dn)) * std::pow(acc.value(), 1.0 / q);
}

/// k_1(n) = (1/n^2) sum_{i,j} min{i,j}(n - max{i,j}) = (n^2 - 1)/12.
inline double k_one(std::size_t n) {
  if (n < 2) throw index_error("constants need n >= 2");
  const double dn = static_cast<double>(n);
  kahan_sum acc;
  for (std::size_t i = 1; i <= n - 1; ++i) {
    for (std::size_t j = 1; j <= n - 1; ++j) {
      acc.add(static_cast<double>(std::min(i, j)) *
              (dn - static_cast<double>(std::max(i, j))));
    }
  }
  return acc.value() / (dn * dn);
}

/// Uniform-weight form of the Abel-transform bounds, evaluated from the
/// literal expression (1/n^2) with vectors i*sum_k a_k - n*sum_{k<=i} a_k.
/// Serves as an independent route against abel_bounds(uniform, ...).
template <scalar S>
bound_report uniform_abel_bounds(const sequence<S>& a, const sequence<S>& b,
                                 const branch_spec& br) {
  require_pair(a, b);
  const std::size_t n = a.size();
  const double t = chebyshev_uniform(a, b).modulus;
  const std::size_t d = sequence_dim(a);
  std::vector<double> nu(n - 1);
  std::vector<scalar_sum<S>> run(d), full(d);
  for (std::size_t k = 0; k < d; ++k) {
    for (std::size_t i = 0; i < n; ++i) full[k].add(a[i][k]);
  }
  vec<S> total(d);
  for (std::size_t k = 0; k < d; ++k) total[k] = full[k].value();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t k = 0; k < d; ++k) run[k].add(a[i][k]);
    vec<S> u(d);
    for (std::size_t k = 0; k < d; ++k) {
      u[k] = total[k] * static_cast<double>(i + 1) -
             run[k].value() * static_cast<double>(n);
    }
    nu[i] = norm(u);
  }
  const std::vector<double> ndb = forward_difference_norms(b);
  const auto [ea, eb] = detail::branch_exponents(br);
  const double scale = 1.0 / (static_cast<double>(n) * static_cast<double>(n));
  const double value = scale * holder_sum(nu, ea) * holder_sum(ndb, eb);
  return detail::make_report(theorem_id::C3_2, br.id, br.p, value, t);
}

/// Uniform-weight form of the prefix-mean bounds, evaluated from the
/// literal expression (1/n) with running means and weights i.
template <scalar S>
bound_report uniform_normalized_bounds(const sequence<S>& a,
                                       const sequence<S>& b,
                                       const branch_spec& br) {
  require_pair(a, b);
  const std::size_t n = a.size();
  const double t = chebyshev_uniform(a, b).modulus;
  const std::size_t d = sequence_dim(a);
  std::vector<scalar_sum<S>> run(d), full(d);
  for (std::size_t k = 0; k < d; ++k) {
    for (std::size_t i = 0; i < n; ++i) full[k].add(a[i][k]);
  }
  vec<S> mean_all(d);
  for (std::size_t k = 0; k < d; ++k) {
    mean_all[k] = full[k].value() * (1.0 / static_cast<double>(n));
  }
  std::vector<double> nm(n - 1), wts(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t k = 0; k < d; ++k) run[k].add(a[i][k]);
    vec<S> m(d);
    for (std::size_t k = 0; k < d; ++k) {
      m[k] = mean_all[k] -
             run[k].value() * (1.0 / static_cast<double>(i + 1));
    }
    nm[i] = norm(m);
    wts[i] = static_cast<double>(i + 1);
  }
  const std::vector<double> ndb = forward_difference_norms(b);
  const auto [ea, eb] = detail::branch_exponents(br);
  const double value = (1.0 / static_cast<double>(n)) *
                       holder_sum(nm, wts, ea) * holder_sum(ndb, wts, eb);
  return detail::make_report(theorem_id::C3_4, br.id, br.p, value, t);
}

struct bound_chain {
  bound_report line1;
  bound_report line2;
};

/// Uniform-weight kernel sup bounds: k_infinity(n) and its ceiling 1/4,
/// each times the two forward-difference sums.
template <scalar S>
bound_chain kernel_sup_bounds(const sequence<S>& a, const sequence<S>& b) {
  require_pair(a, b);
  const double t = chebyshev_uniform(a, b).modulus;
  const double sa = holder_sum(forward_difference_norms(a),
                               holder_exponent::sum());
  const double sb = holder_sum(forward_difference_norms(b),
                               holder_exponent::sum());
  bound_chain out;
  out.line1 = detail::make_report(theorem_id::C3_7, branch_id::line1, 2.0,
                                  k_infinity(a.size()) * sa * sb, t);
  out.line2 = detail::make_report(theorem_id::C3_7, branch_id::line2, 2.0,
                                  0.25 * sa * sb, t);
  return out;
}

/// Uniform-weight kernel q-norm bounds: k_q(n) and its ceiling
/// (1/4)(n-1)^(2/q), each times the two forward-difference p-norms.
template <scalar S>
bound_chain kernel_pnorm_bounds(const sequence<S>& a, const sequence<S>& b,
                                double p) {
  branch_spec br{branch_id::holder, p};
  br.validate();
  require_pair(a, b);
  const std::size_t n = a.size();
  const double t = chebyshev_uniform(a, b).modulus;
  const double pa = holder_sum(forward_difference_norms(a),
                               holder_exponent::finite(p));
  const double pb = holder_sum(forward_difference_norms(b),
                               holder_exponent::finite(p));
  const double q = br.q();
  bound_chain out;
  out.line1 = detail::make_report(theorem_id::C3_9, branch_id::line1, p,
                                  k_q(n, q) * pa * pb, t);
  out.line2 = detail::make_report(
      theorem_id::C3_9, branch_id::line2, p,
      0.25 * std::pow(static_cast<double>(n - 1), 2.0 / q) * pa * pb, t);
  return out;
}

/// Evaluates every applicable bound family on one instance. Rows whose
/// preconditions fail (non-probability weights, missing or violated
/// enclosures, degenerate partial sums, non-uniform weights for the C*
/// rows) are kept with preconditions_ok = false and a diagnostic instead
/// of being dropped. Rows with satisfied preconditions come first,
/// sorted ascending by value (ties by id), followed by the failed rows.
template <scalar S>
std::vector<bound_report> compare_all(
    const weights& w, const sequence<S>& x, const sequence<S>& y,
    const std::optional<ball_enclosure<S>>& ex,
    const std::optional<ball_enclosure<S>>& ey, double holder_p = 2.0,
    bool strict_literal_t36 = false) {
  detail::require_triple(w, x, y);
  std::vector<bound_report> rows;
  const branch_spec b1{branch_id::max_sum, holder_p};
  const branch_spec b2{branch_id::holder, holder_p};
  const branch_spec b3{branch_id::sum_max, holder_p};

  auto guard = [&rows](theorem_id t, branch_id b, auto&& fn) {
    try {
      rows.push_back(fn());
    } catch (const error& e) {
      rows.push_back(detail::failed_report(t, b, e.what()));
    }
  };

  if (ex && ey) {
    guard(theorem_id::T1_1, branch_id::line1,
          [&] { return gruss_bound(w, x, y, *ex, *ey); });
  } else {
    rows.push_back(detail::failed_report(theorem_id::T1_1, branch_id::line1,
                                         "skipped: no enclosure"));
  }
  for (const auto& br : {b1, b2, b3}) {
    guard(theorem_id::T1_2, br.id,
          [&] { return forward_diff_bounds(w, x, y, br); });
  }
  if (ex) {
    try {
      const half_norm_chain c = half_norm_bounds(w, x, y, *ex);
      rows.push_back(c.line1);
      rows.push_back(c.line2);
    } catch (const error& e) {
      rows.push_back(
          detail::failed_report(theorem_id::T1_3, branch_id::line1, e.what()));
      rows.push_back(
          detail::failed_report(theorem_id::T1_3, branch_id::line2, e.what()));
    }
  } else {
    rows.push_back(detail::failed_report(theorem_id::T1_3, branch_id::line1,
                                         "skipped: no enclosure"));
    rows.push_back(detail::failed_report(theorem_id::T1_3, branch_id::line2,
                                         "skipped: no enclosure"));
  }
  for (const auto& br : {b1, b2, b3}) {
    guard(theorem_id::T3_1, br.id, [&] { return abel_bounds(w, x, y, br); });
    guard(theorem_id::T3_3, br.id,
          [&] { return normalized_bounds(w, x, y, br); });
    guard(theorem_id::T3_5, br.id,
          [&] { return tail_mean_bounds(w, x, y, br); });
    guard(theorem_id::T3_6, br.id,
          [&] { return double_sum_bounds(w, x, y, br, strict_literal_t36); });
  }
  if (w.is_uniform()) {
    for (const auto& br : {b1, b2, b3}) {
      guard(theorem_id::C3_2, br.id,
            [&] { return uniform_abel_bounds(x, y, br); });
      guard(theorem_id::C3_4, br.id,
            [&] { return uniform_normalized_bounds(x, y, br); });
    }
    guard(theorem_id::C3_7, branch_id::line1, [&] {
      return kernel_sup_bounds(x, y).line1;
    });
    guard(theorem_id::C3_7, branch_id::line2, [&] {
      return kernel_sup_bounds(x, y).line2;
    });
    guard(theorem_id::C3_9, branch_id::line1, [&] {
      return kernel_pnorm_bounds(x, y, holder_p).line1;
    });
    guard(theorem_id::C3_9, branch_id::line2, [&] {
      return kernel_pnorm_bounds(x, y, holder_p).line2;
    });
  } else {
    for (theorem_id t :
         {theorem_id::C3_2, theorem_id::C3_4, theorem_id::C3_7,
          theorem_id::C3_9}) {
      const bool chain = t == theorem_id::C3_7 || t == theorem_id::C3_9;
      if (chain) {
        rows.push_back(detail::failed_report(t, branch_id::line1,
                                             "skipped: weights not uniform"));
        rows.push_back(detail::failed_report(t, branch_id::line2,
                                             "skipped: weights not uniform"));
      } else {
        for (const auto& br : {b1, b2, b3}) {
          rows.push_back(detail::failed_report(
              t, br.id, "skipped: weights not uniform"));
        }
      }
    }
  }

  std::stable_sort(rows.begin(), rows.end(),
                   [](const bound_report& a, const bound_report& b) {
                     if (a.preconditions_ok != b.preconditions_ok) {
                       return a.preconditions_ok;
                     }
                     if (a.preconditions_ok && a.value != b.value) {
                       return a.value < b.value;
                     }
                     if (a.theorem != b.theorem) return a.theorem < b.theorem;
                     return a.branch < b.branch;
                   });
  return rows;
}

}  // namespace chebgruss
