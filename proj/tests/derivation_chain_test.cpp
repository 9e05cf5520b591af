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

// Structural checks of every bound family against the intermediate
// quantity of its own derivation. Dominance alone cannot detect a bound
// that is accidentally looser than intended; the chain
//   |T_n| <= middle sum <= branch value
// pins each branch to the Schwarz/Holder step it is supposed to majorize.

#include <gtest/gtest.h>

#include "support.hpp"

namespace chebgruss {
namespace {

using testing::random_enclosed_sequence;
using testing::random_probability_weights;
using testing::random_sequence;
using testing::random_signed_weights;

constexpr branch_spec b1{branch_id::max_sum, 2.0};
constexpr branch_spec b2{branch_id::holder, 2.0};
constexpr branch_spec b3{branch_id::sum_max, 2.0};

double slack(double v) { return 1e-9 * (1.0 + std::abs(v)); }

// |T| <= sum_{j<i} p_i p_j ||x_i - x_j|| ||y_i - y_j||, the pairwise
// expansion behind the forward-difference family (probability weights).
template <scalar S>
double pairwise_middle(const weights& p, const sequence<S>& x,
                       const sequence<S>& y) {
  kahan_sum acc;
  for (std::size_t i = 1; i < x.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      acc.add(p[i] * p[j] * norm(x[i] - x[j]) * norm(y[i] - y[j]));
    }
  }
  return acc.value();
}

TEST(DerivationChain, PairwiseIdentityForArbitraryWeights) {
  // T_n(p; x, y) = (1/2) sum_i sum_j p_i p_j <x_i - x_j, y_i - y_j>.
  rng gen(80);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 2 + gen.next_index(15);
    const std::size_t d = 1 + gen.next_index(5);
    const weights p = random_signed_weights(gen, n);
    const auto x = random_sequence<cplx>(gen, n, d);
    const auto y = random_sequence<cplx>(gen, n, d);
    scalar_sum<cplx> acc;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        acc.add(inner(x[i] - x[j], y[i] - y[j]) * (0.5 * p[i] * p[j]));
      }
    }
    const cplx direct = chebyshev(p, x, y).value;
    EXPECT_LE(abs_of(acc.value() - direct), 1e-10 * (1.0 + abs_of(direct)));
  }
}

TEST(DerivationChain, ForwardDiffBranchesMajorizePairwiseSum) {
  rng gen(81);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 2 + gen.next_index(15);
    const std::size_t d = 1 + gen.next_index(5);
    const weights p = random_probability_weights(gen, n);
    const auto x = random_sequence<double>(gen, n, d);
    const auto y = random_sequence<double>(gen, n, d);
    const double middle = pairwise_middle(p, x, y);
    const double t_mod = chebyshev(p, x, y).modulus;
    EXPECT_LE(t_mod, middle + slack(middle));
    for (const auto& br : {b1, b2, b3}) {
      const double value = forward_diff_bounds(p, x, y, br).value;
      EXPECT_LE(middle, value + slack(value))
          << "branch " << to_string(br.id) << " n=" << n;
    }
  }
}

// Schwarz middle sums of the Abel-transform family: each branch is the
// Holder majorant of sum_i w_i * left_i * ||Delta b_i||.
template <scalar S>
double abel_middle(const weights& p, const sequence<S>& a,
                   const sequence<S>& b) {
  const auto ps = make_partial_sums(p, a);
  const auto db = forward_differences(b);
  kahan_sum acc;
  for (std::size_t i = 0; i + 1 < a.size(); ++i) {
    acc.add(norm(ps.prefix.back() * p.prefix(i) - ps.prefix[i] * p.total()) *
            norm(db[i]));
  }
  return acc.value();
}

template <scalar S>
double normalized_middle(const weights& p, const sequence<S>& a,
                         const sequence<S>& b) {
  const auto ps = make_partial_sums(p, a);
  const auto db = forward_differences(b);
  const vec<S> grand_mean = ps.prefix.back() * (1.0 / p.total());
  kahan_sum acc;
  for (std::size_t i = 0; i + 1 < a.size(); ++i) {
    acc.add(std::abs(p.prefix(i)) *
            norm(grand_mean - ps.prefix[i] * (1.0 / p.prefix(i))) *
            norm(db[i]));
  }
  return std::abs(p.total()) * acc.value();
}

template <scalar S>
double tail_mean_middle(const weights& p, const sequence<S>& a,
                        const sequence<S>& b) {
  const auto ps = make_partial_sums(p, a);
  const auto db = forward_differences(b);
  kahan_sum acc;
  for (std::size_t i = 0; i + 1 < a.size(); ++i) {
    acc.add(std::abs(p.prefix(i) * p.tail(i)) *
            norm(ps.tail[i] * (1.0 / p.tail(i)) -
                 ps.prefix[i] * (1.0 / p.prefix(i))) *
            norm(db[i]));
  }
  return acc.value();
}

template <scalar S>
double kernel_middle(const weights& p, const sequence<S>& a,
                     const sequence<S>& b) {
  const auto da = forward_differences(a);
  const auto db = forward_differences(b);
  kahan_sum acc;
  for (std::size_t i = 0; i < da.size(); ++i) {
    for (std::size_t j = 0; j < da.size(); ++j) {
      acc.add(std::abs(p.prefix(std::min(i, j)) * p.tail(std::max(i, j))) *
              norm(da[j]) * norm(db[i]));
    }
  }
  return acc.value();
}

TEST(DerivationChain, AbelFamilyBranchesMajorizeSchwarzSums) {
  rng gen(82);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 2 + gen.next_index(15);
    const std::size_t d = 1 + gen.next_index(5);
    const weights p = gen.next_double() < 0.5
                          ? random_probability_weights(gen, n)
                          : random_signed_weights(gen, n);
    bool guarded = true;
    try {
      p.require_nonzero_prefixes();
      p.require_nonzero_tails();
    } catch (const degenerate_partial_sum&) {
      guarded = false;
    }
    const auto a = random_sequence<double>(gen, n, d);
    const auto b = random_sequence<double>(gen, n, d);
    const double t_mod = chebyshev(p, a, b).modulus;

    const double m1 = abel_middle(p, a, b);
    EXPECT_LE(t_mod, m1 + slack(m1));
    for (const auto& br : {b1, b2, b3}) {
      const double value = abel_bounds(p, a, b, br).value;
      EXPECT_LE(m1, value + slack(value)) << to_string(br.id);
    }

    const double m4 = kernel_middle(p, a, b);
    EXPECT_LE(t_mod, m4 + slack(m4));
    for (const auto& br : {b1, b2, b3}) {
      const double value = double_sum_bounds(p, a, b, br).value;
      EXPECT_LE(m4, value + slack(value)) << to_string(br.id);
    }

    if (!guarded) continue;
    const double m2 = normalized_middle(p, a, b);
    EXPECT_LE(t_mod, m2 + slack(m2));
    for (const auto& br : {b1, b2, b3}) {
      const double value = normalized_bounds(p, a, b, br).value;
      EXPECT_LE(m2, value + slack(value)) << to_string(br.id);
    }
    const double m3 = tail_mean_middle(p, a, b);
    EXPECT_LE(t_mod, m3 + slack(m3));
    for (const auto& br : {b1, b2, b3}) {
      const double value = tail_mean_bounds(p, a, b, br).value;
      EXPECT_LE(m3, value + slack(value)) << to_string(br.id);
    }
  }
}

TEST(DerivationChain, GrussAndHalfNormMajorizeVarianceProduct) {
  rng gen(83);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 2 + gen.next_index(12);
    const std::size_t d = 1 + gen.next_index(5);
    const weights p = random_probability_weights(gen, n);
    auto [x, ex] = random_enclosed_sequence<double>(gen, n, d);
    auto [y, ey] = random_enclosed_sequence<double>(gen, n, d);
    const double t_mod = chebyshev(p, x, y).modulus;
    auto sd = [&](const sequence<double>& s) {
      const vec<double> mean = weighted_sum(p.raw(), s);
      kahan_sum acc;
      for (std::size_t i = 0; i < s.size(); ++i) {
        const double dev = norm(s[i] - mean);
        acc.add(p[i] * dev * dev);
      }
      return std::sqrt(std::max(0.0, acc.value()));
    };
    // Cauchy-Schwarz middle: |T| <= sd(x) sd(y) <= (1/4) |X-x||Y-y|.
    const double middle = sd(x) * sd(y);
    EXPECT_LE(t_mod, middle + slack(middle));
    const double gruss = gruss_bound(p, x, y, ex, ey).value;
    EXPECT_LE(middle, gruss + slack(gruss));
    // Half-range middle: |T| <= sum p_i ||x_i - mid|| ||y_i - ybar||
    //                        <= line1 <= line2.
    const vec<double> mid = ex.midpoint();
    const vec<double> ybar = weighted_sum(p.raw(), y);
    kahan_sum half_middle;
    for (std::size_t i = 0; i < n; ++i) {
      half_middle.add(p[i] * norm(x[i] - mid) * norm(y[i] - ybar));
    }
    const auto chain = half_norm_bounds(p, x, y, ex);
    const double hm = half_middle.value();
    EXPECT_LE(t_mod, hm + slack(hm));
    EXPECT_LE(hm, chain.line1.value + slack(chain.line1.value));
    EXPECT_LE(chain.line1.value, chain.line2.value + slack(chain.line2.value));
  }
}

TEST(DerivationChain, KernelChainsEqualDoubleSumBoundsUnderUniform) {
  rng gen(84);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 2 + gen.next_index(15);
    const std::size_t d = 1 + gen.next_index(4);
    const auto a = random_sequence<double>(gen, n, d);
    const auto b = random_sequence<double>(gen, n, d);
    const weights u = weights::uniform(n);
    const double sup_chain = kernel_sup_bounds(a, b).line1.value;
    const double sup_general = double_sum_bounds(u, a, b, b1).value;
    EXPECT_NEAR(sup_chain, sup_general, 1e-11 * (1.0 + sup_general));
    const double q_chain = kernel_pnorm_bounds(a, b, 2.0).line1.value;
    const double q_general = double_sum_bounds(u, a, b, b2).value;
    EXPECT_NEAR(q_chain, q_general, 1e-10 * (1.0 + q_general));
  }
}

}  // namespace
}  // namespace chebgruss
