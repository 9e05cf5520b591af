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

#include <atomic>
#include <cmath>
#include <exception>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "chebgruss/bounds.hpp"
#include "chebgruss/errors.hpp"
#include "chebgruss/instance.hpp"
#include "chebgruss/rng.hpp"

namespace chebgruss {

/// A single bound to probe: family, branch, and Holder exponent.
struct bound_key {
  theorem_id theorem = theorem_id::T1_1;
  branch_id branch = branch_id::line1;
  double holder_p = 2.0;
};

/// Which branches a family exposes.
inline std::vector<branch_id> branches_of(theorem_id t) {
  switch (t) {
    case theorem_id::T1_1:
      return {branch_id::line1};
    case theorem_id::T1_3:
    case theorem_id::C3_7:
    case theorem_id::C3_9:
      return {branch_id::line1, branch_id::line2};
    default:
      return {branch_id::max_sum, branch_id::holder, branch_id::sum_max};
  }
}

inline bool valid_branch(theorem_id t, branch_id b) {
  for (branch_id x : branches_of(t)) {
    if (x == b) return true;
  }
  return false;
}

/// Per-family instance requirements, used by the sampler and by the
/// hill-climb validity checks.
struct theorem_traits {
  bool probability = false;
  bool uniform = false;
  bool enclosure_x = false;
  bool enclosure_y = false;
  bool guard_prefixes = false;
  bool guard_tails = false;
};

inline theorem_traits traits_of(theorem_id t) {
  switch (t) {
    case theorem_id::T1_1:
      return {.probability = true, .enclosure_x = true, .enclosure_y = true};
    case theorem_id::T1_2:
      return {.probability = true};
    case theorem_id::T1_3:
      return {.probability = true, .enclosure_x = true};
    case theorem_id::T3_1:
    case theorem_id::T3_6:
      return {};
    case theorem_id::T3_3:
      return {.guard_prefixes = true};
    case theorem_id::T3_5:
      return {.guard_prefixes = true, .guard_tails = true};
    case theorem_id::C3_2:
    case theorem_id::C3_4:
    case theorem_id::C3_7:
    case theorem_id::C3_9:
      return {.uniform = true};
  }
  return {};
}

/// Evaluates |T_n| / bound for one instance; nullopt when the bound value
/// is below the ratio floor (the instance is then skipped, not scored 0).
inline std::optional<double> bound_ratio(const bound_key& key,
                                         const real_instance& inst) {
  const branch_spec br{key.branch, key.holder_p};
  bound_report r;
  switch (key.theorem) {
    case theorem_id::T1_1:
      if (!inst.ex || !inst.ey) throw error("T1_1 needs both enclosures");
      r = gruss_bound(inst.w, inst.x, inst.y, *inst.ex, *inst.ey);
      break;
    case theorem_id::T1_2:
      r = forward_diff_bounds(inst.w, inst.x, inst.y, br);
      break;
    case theorem_id::T1_3: {
      if (!inst.ex) throw error("T1_3 needs the x enclosure");
      const half_norm_chain c = half_norm_bounds(inst.w, inst.x, inst.y,
                                                 *inst.ex);
      r = key.branch == branch_id::line2 ? c.line2 : c.line1;
      break;
    }
    case theorem_id::T3_1:
      r = abel_bounds(inst.w, inst.x, inst.y, br);
      break;
    case theorem_id::T3_3:
      r = normalized_bounds(inst.w, inst.x, inst.y, br);
      break;
    case theorem_id::T3_5:
      r = tail_mean_bounds(inst.w, inst.x, inst.y, br);
      break;
    case theorem_id::T3_6:
      r = double_sum_bounds(inst.w, inst.x, inst.y, br);
      break;
    case theorem_id::C3_2:
      if (!inst.w.is_uniform()) throw error("C3_2 needs uniform weights");
      r = uniform_abel_bounds(inst.x, inst.y, br);
      break;
    case theorem_id::C3_4:
      if (!inst.w.is_uniform()) throw error("C3_4 needs uniform weights");
      r = uniform_normalized_bounds(inst.x, inst.y, br);
      break;
    case theorem_id::C3_7: {
      if (!inst.w.is_uniform()) throw error("C3_7 needs uniform weights");
      const bound_chain c = kernel_sup_bounds(inst.x, inst.y);
      r = key.branch == branch_id::line2 ? c.line2 : c.line1;
      break;
    }
    case theorem_id::C3_9: {
      if (!inst.w.is_uniform()) throw error("C3_9 needs uniform weights");
      const bound_chain c = kernel_pnorm_bounds(inst.x, inst.y, key.holder_p);
      r = key.branch == branch_id::line2 ? c.line2 : c.line1;
      break;
    }
  }
  if (!r.ratio_defined) return std::nullopt;
  return r.ratio;
}

/// Two-point equality instance for the families with a known equality
/// case: equal weights and both sequences stepping by the same unit
/// vector, plus the matching tight enclosures where the family needs
/// them. Throws no_known_witness otherwise.
inline real_instance construct_n2_witness(theorem_id t) {
  switch (t) {
    case theorem_id::T1_1:
    case theorem_id::T1_2:
    case theorem_id::T1_3:
    case theorem_id::T3_1:
    case theorem_id::T3_3:
    case theorem_id::T3_5:
    case theorem_id::T3_6:
    case theorem_id::C3_7:
      break;
    default:
      throw no_known_witness("no constructive equality instance for " +
                             std::string(to_string(t)));
  }
  real_instance inst;
  inst.w = weights({0.5, 0.5});
  const rvec zero = rvec::zero(2);
  const rvec step = rvec::unit(2, 0);
  inst.x = {zero, step};
  inst.y = {zero, step};
  const theorem_traits tr = traits_of(t);
  if (tr.enclosure_x) inst.ex = ball_enclosure<double>{zero, step};
  if (tr.enclosure_y) inst.ey = ball_enclosure<double>{zero, step};
  return inst;
}

struct search_config {
  bound_key bound;
  std::size_t n = 2;
  std::size_t dim = 1;
  std::uint64_t trials = 1000;
  std::uint64_t seed = 0;
  double perturbation = 0.5;  // initial hill-climb step scale
  unsigned workers = 1;
};

struct search_result {
  double best_ratio = 0.0;
  std::uint64_t best_trial = 0;
  real_instance witness;
  std::vector<double> history;  // best-so-far after each block of 1000 trials
  std::uint64_t evaluated = 0;
  std::uint64_t skipped = 0;
};

/// A sampled instance beat the soundness cap; this is a test-failure
/// signal carrying the offending instance, not a recoverable state.
struct counterexample_found : error {
  counterexample_found(double ratio, real_instance inst)
      : error("bound ratio " + std::to_string(ratio) +
              " exceeds 1 + 1e-9; dominance violated"),
        witness(std::move(inst)) {}
  real_instance witness;
};

namespace search_detail {

inline constexpr std::uint64_t block_size = 1000;
inline constexpr int refinement_steps = 50;
inline constexpr double soundness_cap = 1.0 + 1e-9;

inline rvec random_unit(rng& gen, std::size_t dim) {
  rvec v(dim);
  double n = 0.0;
  do {
    for (std::size_t k = 0; k < dim; ++k) v[k] = gen.next_gaussian();
    n = norm(v);
  } while (n < 1e-12);
  return v * (1.0 / n);
}

/// Point inside the ball. Half the draws land on the sphere itself,
/// where the near-equality instances live; the rest fill the ball with
/// the usual radial density.
inline rvec point_in_ball(rng& gen, const rvec& mid, double radius,
                          std::size_t dim) {
  const bool on_sphere = gen.next_double() < 0.5;
  const double s =
      on_sphere ? 1.0
                : std::pow(gen.next_double(), 1.0 / static_cast<double>(dim));
  return mid + random_unit(gen, dim) * (s * radius);
}

/// Radial clamp back into the ball; keeps coordinate proposals feasible
/// instead of wasting them on enclosure rejections.
inline void project_into_ball(rvec& v, const ball_enclosure<double>& enc) {
  const rvec mid = enc.midpoint();
  const double radius = enc.radius();
  const double dist = norm(v - mid);
  if (dist > radius && dist > 0.0) {
    v = mid + (v - mid) * (radius / dist);
  }
}

inline std::vector<double> sample_probability(rng& gen, std::size_t n) {
  std::vector<double> p(n);
  kahan_sum total;
  for (std::size_t i = 0; i < n; ++i) {
    p[i] = -std::log(1.0 - gen.next_double());
    total.add(p[i]);
  }
  const double t = total.value();
  for (double& v : p) v /= t;
  return p;
}

inline bool guards_ok(const weights& w, const theorem_traits& tr) {
  if (tr.guard_prefixes) {
    const std::size_t stop = tr.guard_tails ? w.size() - 1 : w.size();
    for (std::size_t i = 0; i < stop; ++i) {
      if (std::abs(w.prefix(i)) <= 1e-6) return false;
    }
    if (!tr.guard_tails && std::abs(w.total()) <= 1e-6) return false;
  }
  if (tr.guard_tails) {
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      if (std::abs(w.tail(i)) <= 1e-6) return false;
    }
  }
  return true;
}

inline weights sample_weights(rng& gen, std::size_t n,
                              const theorem_traits& tr) {
  if (tr.uniform) return weights::uniform(n);
  if (tr.probability) return weights(sample_probability(gen, n));
  for (int attempt = 0; attempt < 200; ++attempt) {
    const bool as_probability = gen.next_double() < 0.5;
    std::vector<double> p;
    if (as_probability) {
      p = sample_probability(gen, n);
    } else {
      p.resize(n);
      const double scale = 2.0 / std::sqrt(static_cast<double>(n));
      for (double& v : p) v = scale * gen.next_gaussian();
    }
    weights w(std::move(p));
    if (guards_ok(w, tr)) return w;
  }
  return weights::uniform(n);
}

inline real_instance sample_instance(const search_config& cfg,
                                     const theorem_traits& tr, rng& gen) {
  real_instance inst;
  inst.w = sample_weights(gen, cfg.n, tr);
  auto sample_seq = [&](std::optional<ball_enclosure<double>>& enc,
                        bool wants_ball) {
    sequence<double> s(cfg.n);
    if (wants_ball) {
      rvec mid(cfg.dim);
      for (std::size_t k = 0; k < cfg.dim; ++k) mid[k] = gen.next_gaussian();
      const double radius = 0.25 + std::abs(gen.next_gaussian());
      const rvec dir = random_unit(gen, cfg.dim);
      enc = ball_enclosure<double>{mid - dir * radius, mid + dir * radius};
      for (auto& v : s) v = point_in_ball(gen, mid, radius, cfg.dim);
    } else {
      for (auto& v : s) {
        v = rvec(cfg.dim);
        for (std::size_t k = 0; k < cfg.dim; ++k) v[k] = gen.next_gaussian();
      }
    }
    return s;
  };
  inst.x = sample_seq(inst.ex, tr.enclosure_x);
  inst.y = sample_seq(inst.ey, tr.enclosure_y);
  return inst;
}

inline bool instance_valid(const real_instance& inst,
                           const theorem_traits& tr) {
  if ((tr.probability || tr.uniform) && !inst.w.is_probability()) return false;
  if (!guards_ok(inst.w, tr)) return false;
  if (tr.enclosure_x && !check_enclosure(inst.x, *inst.ex).ok) return false;
  if (tr.enclosure_y && !check_enclosure(inst.y, *inst.ey).ok) return false;
  return true;
}

/// Applies one signed step at a site: a whole-point gaussian direction
/// for x/y sites (projected back into the ball when one applies), or a
/// single-weight nudge with renormalization for probability weights.
inline void apply_step(real_instance& inst, const theorem_traits& tr,
                       std::size_t site, const rvec& direction, double signed_scale) {
  const std::size_t n = inst.x.size();
  if (site < 2 * n) {
    const bool on_y = site >= n;
    const std::size_t i = site % n;
    const auto& enc = on_y ? inst.ey : inst.ex;
    const double step = signed_scale * (enc ? enc->radius() : 1.0);
    rvec& target = (on_y ? inst.y : inst.x)[i];
    target += direction * step;
    if (enc) project_into_ball(target, *enc);
    return;
  }
  std::vector<double> p = inst.w.raw();
  p[site - 2 * n] += signed_scale;
  if (tr.probability) {
    kahan_sum total;
    for (double& v : p) {
      v = std::max(0.0, v);
      total.add(v);
    }
    const double t = total.value();
    if (t <= 1e-12) return;  // degenerate proposal, leave weights alone
    for (double& v : p) v /= t;
  }
  inst.w = weights(std::move(p));
}

struct block_result {
  double best_ratio = -1.0;
  std::uint64_t best_trial = 0;
  real_instance witness;
  std::uint64_t evaluated = 0;
  std::uint64_t skipped = 0;
};

inline block_result run_block(const search_config& cfg,
                              const theorem_traits& tr, std::uint64_t lo,
                              std::uint64_t hi) {
  block_result out;
  for (std::uint64_t trial = lo; trial < hi; ++trial) {
    rng gen = rng::for_stream(cfg.seed, trial);
    real_instance state = sample_instance(cfg, tr, gen);
    std::optional<double> ratio;
    try {
      ratio = bound_ratio(cfg.bound, state);
    } catch (const error&) {
      ratio.reset();
    }
    if (!ratio) {
      ++out.skipped;
      continue;
    }
    // Compass-style refinement: cycle over sites, try a step and its
    // mirror, halve the scale only when both fail.
    const std::size_t n_sites =
        2 * cfg.n + (tr.uniform ? 0 : cfg.n);
    double scale = cfg.perturbation;
    auto evaluate = [&](const real_instance& cand) -> std::optional<double> {
      if (!instance_valid(cand, tr)) return std::nullopt;
      try {
        return bound_ratio(cfg.bound, cand);
      } catch (const error&) {
        return std::nullopt;
      }
    };
    for (int step = 0; step < refinement_steps; ++step) {
      const std::size_t site = step % n_sites;
      const rvec direction =
          site < 2 * cfg.n ? random_unit(gen, cfg.dim) : rvec{};
      bool improved = false;
      for (const double sign : {1.0, -1.0}) {
        real_instance proposal = state;
        apply_step(proposal, tr, site, direction, sign * scale);
        const std::optional<double> cand = evaluate(proposal);
        if (cand && *cand > *ratio) {
          state = std::move(proposal);
          ratio = cand;
          improved = true;
          break;
        }
      }
      if (improved) {
        scale = std::min(cfg.perturbation, scale * 1.5);
      } else {
        scale *= 0.5;
      }
    }
    ++out.evaluated;
    if (*ratio > soundness_cap) throw counterexample_found(*ratio, state);
    if (*ratio > out.best_ratio ||
        (*ratio == out.best_ratio && trial < out.best_trial)) {
      out.best_ratio = *ratio;
      out.best_trial = trial;
      out.witness = state;
    }
  }
  return out;
}

}  // namespace search_detail

/// Randomized sharpness probe: per-trial sampling plus coordinate-wise
/// hill climbing with step halving on rejection. Trials draw from
/// counter-split generator streams and blocks merge by maximum, so the
/// result is bit-identical for any worker count.
inline search_result random_search(const search_config& cfg) {
  if (cfg.trials < 1) throw error("trials must be >= 1");
  if (cfg.n < 2) throw error("n must be >= 2");
  if (cfg.dim < 1) throw error("dim must be >= 1");
  if (!valid_branch(cfg.bound.theorem, cfg.bound.branch)) {
    throw error(std::string("branch ") + std::string(to_string(cfg.bound.branch)) +
                " is not valid for " + std::string(to_string(cfg.bound.theorem)));
  }
  branch_spec{cfg.bound.branch, cfg.bound.holder_p}.validate();
  const theorem_traits tr = traits_of(cfg.bound.theorem);

  using search_detail::block_size;
  const std::uint64_t blocks = (cfg.trials + block_size - 1) / block_size;
  std::vector<search_detail::block_result> results(blocks);
  std::vector<std::exception_ptr> errors(blocks);

  auto run = [&](std::uint64_t b) {
    const std::uint64_t lo = b * block_size;
    const std::uint64_t hi = std::min(cfg.trials, lo + block_size);
    try {
      results[b] = search_detail::run_block(cfg, tr, lo, hi);
    } catch (...) {
      errors[b] = std::current_exception();
    }
  };

  if (cfg.workers <= 1 || blocks == 1) {
    for (std::uint64_t b = 0; b < blocks; ++b) run(b);
  } else {
    std::atomic<std::uint64_t> next{0};
    std::vector<std::thread> pool;
    const unsigned count = std::min<std::uint64_t>(cfg.workers, blocks);
    pool.reserve(count);
    for (unsigned t = 0; t < count; ++t) {
      pool.emplace_back([&] {
        for (std::uint64_t b = next.fetch_add(1); b < blocks;
             b = next.fetch_add(1)) {
          run(b);
        }
      });
    }
    for (auto& th : pool) th.join();
  }
  for (std::uint64_t b = 0; b < blocks; ++b) {
    if (errors[b]) std::rethrow_exception(errors[b]);
  }

  search_result out;
  double best = -1.0;
  std::uint64_t best_trial = 0;
  out.history.reserve(blocks);
  for (std::uint64_t b = 0; b < blocks; ++b) {
    const auto& r = results[b];
    out.evaluated += r.evaluated;
    out.skipped += r.skipped;
    if (r.best_ratio > best ||
        (r.best_ratio == best && r.best_trial < best_trial)) {
      best = r.best_ratio;
      best_trial = r.best_trial;
    }
    out.history.push_back(std::max(0.0, best));
  }
  out.best_ratio = std::max(0.0, best);
  out.best_trial = best_trial;
  for (const auto& r : results) {
    if (r.best_ratio == best && r.best_trial == best_trial) {
      out.witness = r.witness;
      break;
    }
  }
  return out;
}

}  // namespace chebgruss
