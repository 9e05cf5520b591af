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
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "chebgruss/bounds.hpp"
#include "chebgruss/chebyshev.hpp"
#include "chebgruss/errors.hpp"
#include "chebgruss/rng.hpp"
#include "chebgruss/vector.hpp"
#include "chebgruss/weights.hpp"

namespace chebgruss {

/// Differentiable convex function on the real coordinate space, given by
/// an evaluator and a gradient oracle. Value type; copy freely.
struct convex_function {
  std::string name;
  std::function<double(const rvec&)> value;
  std::function<rvec(const rvec&)> grad;
};

/// F(z) = ||z||^2, grad F = 2z.
inline convex_function norm_squared() {
  return {"norm-squared",
          [](const rvec& z) {
            const double n = norm(z);
            return n * n;
          },
          [](const rvec& z) { return z * 2.0; }};
}

/// Spot check of the gradient inequality F(u) - F(v) >= <grad F(v), u - v>
/// on random pairs; throws non_convex_model on a material violation.
inline void convexity_spot_check(const convex_function& f, std::size_t dim,
                                 std::uint64_t seed = 0x5eedc0de,
                                 int pairs = 50) {
  rng gen(seed);
  for (int t = 0; t < pairs; ++t) {
    rvec u(dim), v(dim);
    for (std::size_t k = 0; k < dim; ++k) {
      u[k] = gen.next_gaussian();
      v[k] = gen.next_gaussian();
    }
    const double lhs = f.value(u) - f.value(v);
    const double rhs = inner(f.grad(v), u - v);
    if (lhs < rhs - 1e-9) {
      throw non_convex_model("model '" + f.name +
                             "' violates the gradient inequality by " +
                             std::to_string(rhs - lhs));
    }
  }
}

/// F(z) = <Qz, z> with symmetric positive-semidefinite Q; grad F = 2Qz.
/// The matrix is validated for symmetry and spot-checked for convexity.
inline convex_function psd_quadratic(std::vector<std::vector<double>> q) {
  const std::size_t d = q.size();
  for (const auto& row : q) {
    if (row.size() != d) {
      throw dimension_error("quadratic coefficient matrix must be square");
    }
  }
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) {
      if (std::abs(q[i][j] - q[j][i]) > 1e-12) {
        throw error("quadratic coefficient matrix must be symmetric");
      }
    }
  }
  auto apply = [q = std::move(q), d](const rvec& z) {
    if (z.dim() != d) {
      throw dimension_error("point dimension does not match matrix size");
    }
    rvec out(d);
    for (std::size_t i = 0; i < d; ++i) {
      kahan_sum acc;
      for (std::size_t j = 0; j < d; ++j) acc.add(q[i][j] * z[j]);
      out[i] = acc.value();
    }
    return out;
  };
  convex_function f{"psd-quadratic",
                    [apply](const rvec& z) { return re_of(inner(apply(z), z)); },
                    [apply](const rvec& z) { return apply(z) * 2.0; }};
  convexity_spot_check(f, d);
  return f;
}

/// F(z) = log sum_k exp(z_k) over real coordinates; grad F = softmax(z).
inline convex_function log_sum_exp() {
  auto softmax = [](const rvec& z) {
    double m = z[0];
    for (std::size_t k = 1; k < z.dim(); ++k) m = std::max(m, z[k]);
    rvec e(z.dim());
    kahan_sum total;
    for (std::size_t k = 0; k < z.dim(); ++k) {
      e[k] = std::exp(z[k] - m);
      total.add(e[k]);
    }
    return e * (1.0 / total.value());
  };
  return {"log-sum-exp",
          [](const rvec& z) {
            double m = z[0];
            for (std::size_t k = 1; k < z.dim(); ++k) m = std::max(m, z[k]);
            kahan_sum acc;
            for (std::size_t k = 0; k < z.dim(); ++k) {
              acc.add(std::exp(z[k] - m));
            }
            return m + std::log(acc.value());
          },
          softmax};
}

/// Wraps a user-supplied evaluator/gradient pair, spot-checking convexity
/// at the given dimension before handing the model back.
inline convex_function custom_function(std::string name,
                                       std::function<double(const rvec&)> value,
                                       std::function<rvec(const rvec&)> grad,
                                       std::size_t dim) {
  convex_function f{std::move(name), std::move(value), std::move(grad)};
  convexity_spot_check(f, dim);
  return f;
}

inline convex_function builtin_function(std::string_view name,
                                        std::size_t dim) {
  if (name == "norm-squared") return norm_squared();
  if (name == "log-sum-exp") return log_sum_exp();
  if (name == "psd-quadratic") {
    std::vector<std::vector<double>> identity(dim,
                                              std::vector<double>(dim, 0.0));
    for (std::size_t i = 0; i < dim; ++i) identity[i][i] = 1.0;
    return psd_quadratic(std::move(identity));
  }
  throw error("unknown convex function model: " + std::string(name));
}

namespace detail {

inline void require_jensen_inputs(const weights& q,
                                  const std::vector<rvec>& z) {
  if (q.size() != z.size()) {
    throw dimension_error("weights and point counts differ");
  }
  if (z.size() < 2) throw sequence_too_short("need at least two points");
  sequence_dim(z);
  q.require_probability();
}

}  // namespace detail

/// Jensen gap  sum_i q_i F(z_i) - F(sum_i q_i z_i)  (nonnegative).
inline double jensen_gap(const weights& q, const std::vector<rvec>& z,
                         const convex_function& f) {
  detail::require_jensen_inputs(q, z);
  kahan_sum acc;
  for (std::size_t i = 0; i < z.size(); ++i) acc.add(q[i] * f.value(z[i]));
  return acc.value() - f.value(weighted_sum(q.raw(), z));
}

/// Upper bound on the Jensen gap through the gradient,
///   sum_i q_i <grad F(z_i), z_i> - <sum_i q_i grad F(z_i), sum_i q_i z_i>,
/// which is exactly the functional T_n(q; grad F(z), z) and is computed
/// through the same code path.
inline double gradient_gap(const weights& q, const std::vector<rvec>& z,
                           const convex_function& f) {
  detail::require_jensen_inputs(q, z);
  std::vector<rvec> grads;
  grads.reserve(z.size());
  for (const rvec& zi : z) grads.push_back(f.grad(zi));
  return chebyshev(q, grads, z).value;
}

/// One evaluated reverse-Jensen bound.
struct jensen_bound_entry {
  std::string id;  // "T4_1" or "T4_2"
  branch_id branch{};
  double holder_p = 2.0;
  double value = 0.0;
};

/// Reverse-Jensen bound built from the forward-difference family applied
/// to (grad F(z_i), z_i).
inline jensen_bound_entry reverse_jensen_t41(const weights& q,
                                             const std::vector<rvec>& z,
                                             const convex_function& f,
                                             const branch_spec& br) {
  detail::require_jensen_inputs(q, z);
  std::vector<rvec> grads;
  grads.reserve(z.size());
  for (const rvec& zi : z) grads.push_back(f.grad(zi));
  const bound_report r = forward_diff_bounds(q, grads, z, br);
  return {"T4_1", br.id, br.p, r.value};
}

/// Reverse-Jensen bound built from the kernel double-sum family applied
/// to (grad F(z_i), z_i).
inline jensen_bound_entry reverse_jensen_t42(const weights& q,
                                             const std::vector<rvec>& z,
                                             const convex_function& f,
                                             const branch_spec& br) {
  detail::require_jensen_inputs(q, z);
  std::vector<rvec> grads;
  grads.reserve(z.size());
  for (const rvec& zi : z) grads.push_back(f.grad(zi));
  const bound_report r = double_sum_bounds(q, grads, z, br);
  return {"T4_2", br.id, br.p, r.value};
}

/// Full report: the gap, its gradient upper bound, and the requested
/// branches of both reverse-Jensen families.
struct jensen_report {
  double gap = 0.0;
  double gradient_gap = 0.0;
  std::vector<jensen_bound_entry> bounds;
  bool sandwich_ok = true;  // gap <= gradient_gap <= every bound (with slack)
};

inline jensen_report jensen_full(const weights& q, const std::vector<rvec>& z,
                                 const convex_function& f,
                                 const std::vector<branch_spec>& branches,
                                 double slack = 1e-9) {
  jensen_report rep;
  rep.gap = jensen_gap(q, z, f);
  rep.gradient_gap = gradient_gap(q, z, f);
  for (const branch_spec& br : branches) {
    rep.bounds.push_back(reverse_jensen_t41(q, z, f, br));
    rep.bounds.push_back(reverse_jensen_t42(q, z, f, br));
  }
  auto leq = [slack](double a, double b) {
    return a <= b + slack * (1.0 + std::abs(b));
  };
  rep.sandwich_ok = rep.gap >= -slack && leq(rep.gap, rep.gradient_gap);
  for (const auto& e : rep.bounds) {
    rep.sandwich_ok = rep.sandwich_ok && leq(rep.gradient_gap, e.value);
  }
  return rep;
}

/// Central finite-difference gradient, for cross-checking oracles.
inline rvec finite_difference_gradient(const convex_function& f, const rvec& z,
                                       double step = 1e-5) {
  rvec g(z.dim());
  for (std::size_t k = 0; k < z.dim(); ++k) {
    rvec hi = z, lo = z;
    hi[k] += step;
    lo[k] -= step;
    g[k] = (f.value(hi) - f.value(lo)) / (2.0 * step);
  }
  return g;
}

}  // namespace chebgruss
