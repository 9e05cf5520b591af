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

// Acceptance suite. Runs each criterion end to end and prints one
// PASS/FAIL line per criterion; exits nonzero if any fails. The CLI
// binary path is expected as argv[1] (used by the round-trip criterion).

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "chebgruss/chebgruss.hpp"
#include "support.hpp"

namespace cg = chebgruss;
namespace fs = std::filesystem;
using cg::testing::random_enclosed_sequence;
using cg::testing::random_probability_weights;
using cg::testing::random_sequence;
using cg::testing::random_signed_weights;
using cg::testing::residual;

namespace {

std::string g_cli_path;

struct outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    pass = false;
    if (!detail.empty()) detail += "; ";
    detail += why;
  }
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

// --------------------------------------------------------------------------
// 1. Identity suite: four representation routes agree with the direct
//    functional on 500 randomized instances; kernel vectors reproduce
//    P_i A_n - P_n A_i.

template <cg::scalar S>
void identity_instances(cg::rng& gen, int count, double& worst_identity,
                        double& worst_kernel, outcome& res) {
  for (int t = 0; t < count; ++t) {
    const std::size_t n = 2 + gen.next_index(49);
    const std::size_t d = 1 + gen.next_index(20);
    const cg::weights p = gen.next_double() < 0.5
                              ? random_probability_weights(gen, n)
                              : random_signed_weights(gen, n, 1e-6);
    const auto a = random_sequence<S>(gen, n, d);
    const auto b = random_sequence<S>(gen, n, d);
    const auto ref = cg::chebyshev(p, a, b);

    double r = residual(cg::identity_abel_rhs(p, a, b).value, ref.value);
    r = std::max(r, residual(cg::double_sum_rhs(p, a, b).value, ref.value));
    bool guards = true;
    try {
      p.require_nonzero_prefixes();
      p.require_nonzero_tails();
    } catch (const cg::degenerate_partial_sum&) {
      guards = false;
    }
    if (guards) {
      r = std::max(r,
                   residual(cg::identity_normalized_rhs(p, a, b).value,
                            ref.value));
      r = std::max(r, residual(cg::identity_tail_mean_rhs(p, a, b).value,
                               ref.value));
    }
    worst_identity = std::max(worst_identity, r);
    if (r > 1e-9) {
      res.fail("identity residual " + fmt(r) + " at n=" + std::to_string(n));
      return;
    }

    const auto ps = cg::make_partial_sums(p, a);
    for (std::size_t i = 1; i <= n - 1; ++i) {
      const cg::vec<S> expect =
          ps.prefix.back() * p.prefix(i - 1) - ps.prefix[i - 1] * p.total();
      const cg::vec<S> got = cg::kernel(p, a, i);
      for (std::size_t k = 0; k < d; ++k) {
        worst_kernel =
            std::max(worst_kernel, cg::abs_of(expect[k] - got[k]));
      }
    }
    if (worst_kernel > 1e-10) {
      res.fail("kernel deviation " + fmt(worst_kernel));
      return;
    }
  }
}

outcome criterion_identities() {
  outcome res;
  cg::rng gen(2024);
  double worst_identity = 0.0, worst_kernel = 0.0;
  identity_instances<double>(gen, 250, worst_identity, worst_kernel, res);
  if (res.pass) {
    identity_instances<cg::cplx>(gen, 250, worst_identity, worst_kernel, res);
  }
  res.detail = "500 instances, max identity residual " + fmt(worst_identity) +
               ", max kernel deviation " + fmt(worst_kernel) +
               (res.detail.empty() ? "" : "; " + res.detail);
  return res;
}

// --------------------------------------------------------------------------
// 2. Dominance: every bound with satisfied preconditions is at least
//    |T_n| (1 - 1e-9) - 1e-12 on 1000 random valid instances per family.

void check_dominance(const cg::bound_report& r, double& worst, outcome& res) {
  const double floor = r.functional_modulus * (1.0 - 1e-9) - 1e-12;
  worst = std::min(worst, r.value - floor);
  if (r.value < floor) {
    res.fail(std::string(cg::to_string(r.theorem)) + "/" +
             std::string(cg::to_string(r.branch)) + " value " + fmt(r.value) +
             " < |T| " + fmt(r.functional_modulus));
  }
}

template <cg::scalar S>
void dominance_for_theorem(cg::theorem_id theorem, cg::rng& gen, int count,
                           double& worst, outcome& res) {
  using cg::branch_id;
  const cg::branch_spec b1{branch_id::max_sum, 2.0};
  const cg::branch_spec b2{branch_id::holder, 2.0};
  const cg::branch_spec b3{branch_id::sum_max, 2.0};
  for (int t = 0; t < count && res.pass; ++t) {
    const std::size_t n = 2 + gen.next_index(29);
    const std::size_t d = 1 + gen.next_index(8);
    switch (theorem) {
      case cg::theorem_id::T1_1: {
        const cg::weights p = random_probability_weights(gen, n);
        auto [x, ex] = random_enclosed_sequence<S>(gen, n, d);
        auto [y, ey] = random_enclosed_sequence<S>(gen, n, d);
        check_dominance(cg::gruss_bound(p, x, y, ex, ey), worst, res);
        break;
      }
      case cg::theorem_id::T1_2: {
        const cg::weights p = random_probability_weights(gen, n);
        const auto x = random_sequence<S>(gen, n, d);
        const auto y = random_sequence<S>(gen, n, d);
        for (const auto& br : {b1, b2, b3}) {
          check_dominance(cg::forward_diff_bounds(p, x, y, br), worst, res);
        }
        break;
      }
      case cg::theorem_id::T1_3: {
        const cg::weights p = random_probability_weights(gen, n);
        auto [x, ex] = random_enclosed_sequence<S>(gen, n, d);
        const auto y = random_sequence<S>(gen, n, d);
        const auto chain = cg::half_norm_bounds(p, x, y, ex);
        check_dominance(chain.line1, worst, res);
        check_dominance(chain.line2, worst, res);
        break;
      }
      case cg::theorem_id::T3_1:
      case cg::theorem_id::T3_3:
      case cg::theorem_id::T3_5:
      case cg::theorem_id::T3_6: {
        const cg::weights p = gen.next_double() < 0.5
                                  ? random_probability_weights(gen, n)
                                  : random_signed_weights(gen, n, 1e-6);
        const auto a = random_sequence<S>(gen, n, d);
        const auto b = random_sequence<S>(gen, n, d);
        for (const auto& br : {b1, b2, b3}) {
          if (theorem == cg::theorem_id::T3_1) {
            check_dominance(cg::abel_bounds(p, a, b, br), worst, res);
          } else if (theorem == cg::theorem_id::T3_3) {
            check_dominance(cg::normalized_bounds(p, a, b, br), worst, res);
          } else if (theorem == cg::theorem_id::T3_5) {
            check_dominance(cg::tail_mean_bounds(p, a, b, br), worst, res);
          } else {
            check_dominance(cg::double_sum_bounds(p, a, b, br), worst, res);
          }
        }
        break;
      }
      case cg::theorem_id::C3_2:
      case cg::theorem_id::C3_4: {
        const auto a = random_sequence<S>(gen, n, d);
        const auto b = random_sequence<S>(gen, n, d);
        for (const auto& br : {b1, b2, b3}) {
          check_dominance(theorem == cg::theorem_id::C3_2
                              ? cg::uniform_abel_bounds(a, b, br)
                              : cg::uniform_normalized_bounds(a, b, br),
                          worst, res);
        }
        break;
      }
      case cg::theorem_id::C3_7: {
        const auto a = random_sequence<S>(gen, n, d);
        const auto b = random_sequence<S>(gen, n, d);
        const auto chain = cg::kernel_sup_bounds(a, b);
        check_dominance(chain.line1, worst, res);
        check_dominance(chain.line2, worst, res);
        break;
      }
      case cg::theorem_id::C3_9: {
        const auto a = random_sequence<S>(gen, n, d);
        const auto b = random_sequence<S>(gen, n, d);
        const auto chain = cg::kernel_pnorm_bounds(a, b, 2.0);
        check_dominance(chain.line1, worst, res);
        check_dominance(chain.line2, worst, res);
        break;
      }
    }
  }
}

outcome criterion_dominance() {
  outcome res;
  cg::rng gen(7070);
  double worst = 1e300;
  const std::vector<cg::theorem_id> all = {
      cg::theorem_id::T1_1, cg::theorem_id::T1_2, cg::theorem_id::T1_3,
      cg::theorem_id::T3_1, cg::theorem_id::T3_3, cg::theorem_id::T3_5,
      cg::theorem_id::T3_6, cg::theorem_id::C3_2, cg::theorem_id::C3_4,
      cg::theorem_id::C3_7, cg::theorem_id::C3_9};
  for (const auto theorem : all) {
    dominance_for_theorem<double>(theorem, gen, 500, worst, res);
    dominance_for_theorem<cg::cplx>(theorem, gen, 500, worst, res);
    if (!res.pass) break;
  }
  if (res.pass) {
    res.detail = "11 families x 1000 instances, min slack " + fmt(worst);
  }
  return res;
}

// --------------------------------------------------------------------------
// 3. Exact constants over n in [2, 100].

outcome criterion_constants() {
  outcome res;
  double worst_rel = 0.0;
  for (std::size_t n = 2; n <= 100; ++n) {
    const double dn = static_cast<double>(n);
    const double closed = (dn * dn - 1.0) / 12.0;
    const double k1 = cg::k_one(n);
    worst_rel = std::max(worst_rel, std::abs(k1 - closed) / closed);
    if (std::abs(k1 - closed) > 1e-12 * closed) {
      res.fail("k_1(" + std::to_string(n) + ") off by " +
               fmt(std::abs(k1 - closed) / closed));
      break;
    }
    cg::sequence<double> e;
    for (std::size_t i = 1; i <= n; ++i) {
      e.push_back(cg::rvec{static_cast<double>(i)});
    }
    const double via_functional = cg::chebyshev_uniform(e, e).value;
    if (std::abs(k1 - via_functional) > 1e-12 * (1.0 + closed)) {
      res.fail("k_1 does not match the functional at n=" + std::to_string(n));
      break;
    }
    if (cg::k_infinity(n) > 0.25 + 1e-15 ||
        cg::k_infinity(n) > 0.5 * (1.0 - 1.0 / dn) + 1e-15) {
      res.fail("k_infinity ceiling violated at n=" + std::to_string(n));
      break;
    }
    if (cg::k_q(n, 2.0) > 0.25 * (dn - 1.0) * (1.0 + 1e-12)) {
      res.fail("k_q(2) ceiling violated at n=" + std::to_string(n));
      break;
    }
  }
  if (res.pass) {
    res.detail = "n in [2,100], max k_1 relative error " + fmt(worst_rel);
  }
  return res;
}

// --------------------------------------------------------------------------
// 4. Sharpness: constructive two-point witnesses hit ratio 1; the
//    randomized search reaches 0.99 on the Gruss bound at n = 2.

outcome criterion_sharpness() {
  outcome res;
  using cg::branch_id;
  using cg::theorem_id;
  struct target {
    theorem_id theorem;
    branch_id branch;
  };
  const std::vector<target> targets = {
      {theorem_id::T1_1, branch_id::line1},
      {theorem_id::T1_2, branch_id::max_sum},
      {theorem_id::T1_2, branch_id::sum_max},
      {theorem_id::T1_3, branch_id::line1},
      {theorem_id::T3_1, branch_id::max_sum},
      {theorem_id::T3_1, branch_id::holder},
      {theorem_id::T3_1, branch_id::sum_max},
      {theorem_id::T3_3, branch_id::max_sum},
      {theorem_id::T3_3, branch_id::holder},
      {theorem_id::T3_3, branch_id::sum_max},
      {theorem_id::T3_5, branch_id::max_sum},
      {theorem_id::T3_5, branch_id::holder},
      {theorem_id::T3_5, branch_id::sum_max},
      {theorem_id::T3_6, branch_id::max_sum},
      {theorem_id::C3_7, branch_id::line1},
  };
  double worst_low = 1.0;
  for (const auto& t : targets) {
    const auto inst = cg::construct_n2_witness(t.theorem);
    const auto ratio = cg::bound_ratio({t.theorem, t.branch, 2.0}, inst);
    if (!ratio) {
      res.fail(std::string(cg::to_string(t.theorem)) + " witness undefined");
      continue;
    }
    worst_low = std::min(worst_low, *ratio);
    if (*ratio < 1.0 - 1e-10 || *ratio > 1.0 + 1e-12) {
      res.fail(std::string(cg::to_string(t.theorem)) + "/" +
               std::string(cg::to_string(t.branch)) + " ratio " + fmt(*ratio));
    }
  }
  cg::search_config cfg;
  cfg.bound = {theorem_id::T1_1, branch_id::line1, 2.0};
  cfg.n = 2;
  cfg.dim = 3;
  cfg.trials = 10000;
  cfg.seed = 42;
  const auto search = cg::random_search(cfg);
  if (search.best_ratio < 0.99) {
    res.fail("search best_ratio " + fmt(search.best_ratio) + " < 0.99");
  }
  if (res.pass) {
    res.detail = std::to_string(targets.size()) +
                 " witnesses at ratio 1 (min " + fmt(worst_low) +
                 "), search best_ratio " + fmt(search.best_ratio);
  }
  return res;
}

// --------------------------------------------------------------------------
// 5. Two-line chain into the Gruss bound on 500 enclosed instances.

outcome criterion_chain() {
  outcome res;
  cg::rng gen(5050);
  for (int t = 0; t < 500 && res.pass; ++t) {
    const std::size_t n = 2 + gen.next_index(20);
    const std::size_t d = 1 + gen.next_index(6);
    const cg::weights p = random_probability_weights(gen, n);
    auto [x, ex] = random_enclosed_sequence<double>(gen, n, d);
    auto [y, ey] = random_enclosed_sequence<double>(gen, n, d);
    const auto chain = cg::half_norm_bounds(p, x, y, ex);
    const auto gruss = cg::gruss_bound(p, x, y, ex, ey);
    if (chain.line1.value >
        chain.line2.value + 1e-9 * (1.0 + chain.line2.value)) {
      res.fail("line1 > line2 at trial " + std::to_string(t));
    }
    if (chain.line2.value > gruss.value + 1e-9 * (1.0 + gruss.value)) {
      res.fail("line2 > quarter-diameter bound at trial " + std::to_string(t));
    }
  }
  if (res.pass) res.detail = "500 instances, line1 <= line2 <= (1/4)|X-x||Y-y|";
  return res;
}

// --------------------------------------------------------------------------
// 6. The kernel sup bound beats the third forward-difference branch for
//    uniform weights.

outcome criterion_comparison() {
  outcome res;
  cg::rng gen(6060);
  for (int t = 0; t < 200 && res.pass; ++t) {
    const std::size_t n = 2 + gen.next_index(49);
    const std::size_t d = 1 + gen.next_index(6);
    const auto a = random_sequence<double>(gen, n, d);
    const auto b = random_sequence<double>(gen, n, d);
    const double sup = cg::kernel_sup_bounds(a, b).line1.value;
    const double third =
        cg::forward_diff_bounds(cg::weights::uniform(n), a, b,
                                {cg::branch_id::sum_max, 2.0})
            .value;
    if (sup > third * (1.0 + 1e-12) + 1e-15) {
      res.fail("kernel sup bound " + fmt(sup) + " beats forward-diff " +
               fmt(third) + " at n=" + std::to_string(n));
    }
  }
  if (res.pass) res.detail = "200 uniform instances, C3_7 <= T1_2 third branch";
  return res;
}

// --------------------------------------------------------------------------
// 7. Reverse-Jensen suite for the three built-in convex models.

outcome criterion_jensen() {
  outcome res;
  cg::rng gen(7700);
  const std::vector<cg::branch_spec> branches = {
      {cg::branch_id::max_sum, 2.0},
      {cg::branch_id::holder, 2.0},
      {cg::branch_id::sum_max, 2.0}};
  for (const char* name : {"norm-squared", "psd-quadratic", "log-sum-exp"}) {
    for (int t = 0; t < 500 && res.pass; ++t) {
      const std::size_t n = 2 + gen.next_index(29);
      const std::size_t d = 1 + gen.next_index(10);
      const auto f = cg::builtin_function(name, d);
      const cg::weights q = random_probability_weights(gen, n);
      const auto z = random_sequence<double>(gen, n, d);
      const double gap = cg::jensen_gap(q, z, f);
      const double ggap = cg::gradient_gap(q, z, f);
      if (gap < -1e-10) res.fail(std::string(name) + ": negative gap");
      if (gap > ggap + 1e-9 * (1.0 + std::abs(ggap))) {
        res.fail(std::string(name) + ": gap exceeds gradient gap");
      }
      std::vector<cg::rvec> grads;
      for (const auto& zi : z) grads.push_back(f.grad(zi));
      const double direct = cg::chebyshev(q, grads, z).value;
      if (std::abs(ggap - direct) > 1e-11 * (1.0 + std::abs(direct))) {
        res.fail(std::string(name) + ": gradient gap is not the functional");
      }
      for (const auto& br : branches) {
        const double v41 = cg::reverse_jensen_t41(q, z, f, br).value;
        const double v42 = cg::reverse_jensen_t42(q, z, f, br).value;
        if (ggap > v41 + 1e-9 * (1.0 + v41) ||
            ggap > v42 + 1e-9 * (1.0 + v42)) {
          res.fail(std::string(name) + ": bound below the gradient gap");
        }
      }
    }
    // Finite-difference gradients at 100 random points.
    for (int t = 0; t < 100 && res.pass; ++t) {
      const std::size_t d = 1 + gen.next_index(10);
      const auto f = cg::builtin_function(name, d);
      const cg::rvec z = cg::testing::random_vector<double>(gen, d);
      const cg::rvec g = f.grad(z);
      const cg::rvec fd = cg::finite_difference_gradient(f, z);
      for (std::size_t k = 0; k < d; ++k) {
        if (std::abs(g[k] - fd[k]) > 1e-6) {
          res.fail(std::string(name) + ": finite-difference mismatch");
          break;
        }
      }
    }
  }
  // Uniform corollary coefficients at n = 5, q = 2.
  const cg::weights u5 = cg::weights::uniform(5);
  auto close = [](double a, double b) {
    return std::abs(a - b) <= 1e-12 * (1.0 + std::abs(b));
  };
  if (!close(cg::forward_diff_coefficient(u5, cg::branch_id::max_sum), 2.0) ||
      !close(cg::forward_diff_coefficient(u5, cg::branch_id::holder),
             24.0 / 30.0) ||
      !close(cg::forward_diff_coefficient(u5, cg::branch_id::sum_max), 0.4)) {
    res.fail("forward-difference coefficients at n=5 off");
  }
  if (!close(0.25 * std::pow(4.0, 2.0 / 2.0), 1.0) ||
      cg::k_q(5, 2.0) > 1.0 + 1e-12 || cg::k_infinity(5) > 0.25 + 1e-15) {
    res.fail("kernel ceilings at n=5 off");
  }
  if (res.pass) {
    res.detail =
        "3 models x 500 instances sandwiched, gradients verified, n=5 "
        "coefficients 2, 0.8, 0.4, 1, 1/4 reproduced";
  }
  return res;
}

// --------------------------------------------------------------------------
// 8. CLI round trip: search witness reloaded through the bounds command
//    reproduces its ratio; reruns are byte-identical.

struct cli_run {
  int exit_code = -1;
  std::string out;
};

cli_run run_cli(const std::string& args, const fs::path& dir,
                const std::string& tag) {
  const fs::path out = dir / (tag + ".out");
  const std::string cmd =
      g_cli_path + " " + args + " > " + out.string() + " 2> /dev/null";
  const int status = std::system(cmd.c_str());
  cli_run res;
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(out, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  res.out = ss.str();
  return res;
}

outcome criterion_cli_round_trip() {
  outcome res;
  if (g_cli_path.empty()) {
    res.fail("CLI binary path missing (pass as argv[1])");
    return res;
  }
  const fs::path dir = fs::temp_directory_path() / "chebgruss_acceptance";
  fs::create_directories(dir);
  const fs::path witness = dir / "witness.json";
  const std::string args =
      "extremal --bound T1_1 --n 2 --dim 3 --trials 2000 --seed 42 "
      "--witness-out " + witness.string();
  const cli_run first = run_cli(args, dir, "first");
  const cli_run second = run_cli(args, dir, "second");
  if (first.exit_code != 0 || second.exit_code != 0) {
    res.fail("extremal command failed");
    return res;
  }
  if (first.out != second.out) res.fail("reruns are not byte-identical");
  double best = -1.0;
  try {
    best = nlohmann::json::parse(first.out).at("best_ratio").get<double>();
  } catch (const std::exception& e) {
    res.fail(std::string("report parse: ") + e.what());
    return res;
  }
  const cli_run bounds =
      run_cli("bounds " + witness.string() + " --theorems T1_1", dir, "bounds");
  if (bounds.exit_code != 0) {
    res.fail("bounds command failed on the witness");
    return res;
  }
  double ratio = -1.0;
  try {
    const nlohmann::json doc = nlohmann::json::parse(bounds.out);
    for (const auto& row : doc.at("bounds")) {
      if (row.at("theorem") == "T1_1" && !row.at("ratio").is_null()) {
        ratio = row.at("ratio").get<double>();
      }
    }
  } catch (const std::exception& e) {
    res.fail(std::string("bounds parse: ") + e.what());
    return res;
  }
  if (std::abs(ratio - best) > 1e-12) {
    res.fail("round-trip ratio " + fmt(ratio) + " vs reported " + fmt(best));
  }
  std::error_code ec;
  fs::remove_all(dir, ec);
  if (res.pass) {
    res.detail = "witness ratio reproduced to 1e-12 (" + fmt(best) +
                 "), reruns byte-identical";
  }
  return res;
}

struct criterion {
  const char* name;
  std::function<outcome()> run;
  double time_limit_s;
};

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) g_cli_path = argv[1];
  const std::vector<criterion> criteria = {
      {"identity suite", criterion_identities, 30.0},
      {"dominance suite", criterion_dominance, 60.0},
      {"exact constants", criterion_constants, 60.0},
      {"sharpness witnesses", criterion_sharpness, 60.0},
      {"chain inequality", criterion_chain, 60.0},
      {"kernel sup vs forward-diff comparison", criterion_comparison, 60.0},
      {"reverse-Jensen suite", criterion_jensen, 60.0},
      {"CLI round trip", criterion_cli_round_trip, 60.0},
  };
  bool all_pass = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    outcome res;
    try {
      res = criteria[i].run();
    } catch (const std::exception& e) {
      res.pass = false;
      res.detail = std::string("exception: ") + e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (seconds > criteria[i].time_limit_s) {
      res.fail("runtime " + fmt(seconds) + "s exceeds " +
               fmt(criteria[i].time_limit_s) + "s");
    }
    std::printf("criterion %zu [%s] %s: %s (%.1f s)\n", i + 1,
                res.pass ? "PASS" : "FAIL", criteria[i].name,
                res.detail.c_str(), seconds);
    std::fflush(stdout);
    all_pass = all_pass && res.pass;
  }
  return all_pass ? 0 : 1;
}
