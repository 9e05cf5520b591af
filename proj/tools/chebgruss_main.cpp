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

// Command-line front end: functional | identities | bounds | jensen |
// extremal. Reads instance documents (schema "cheb-bounds/1"), emits JSON
// or plain-text reports with every float at 17 significant digits.
//
// Exit codes: 0 success, 1 precondition/config error, 2 parse error,
// 3 identity-check failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "chebgruss/chebgruss.hpp"

namespace cg = chebgruss;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_precondition = 1;
constexpr int exit_parse = 2;
constexpr int exit_identity = 3;

struct global_options {
  std::string format = "json";
  std::string output;  // empty -> stdout
  double tolerance = 1e-9;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw cg::parse_error("cannot read input file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const global_options& opt, const std::string& text) {
  if (opt.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(opt.output, std::ios::binary);
  if (!out) throw cg::error("cannot write output file: " + opt.output);
  out << text;
}

std::string jstr(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '"': out += "\\\""; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c; break;
    }
  }
  out += '"';
  return out;
}

std::string jnum(double v) { return cg::format_float(v); }

template <cg::scalar S>
std::string header_fields(const std::string& command, const cg::instance<S>& inst) {
  std::string out;
  out += "  \"version\": \"cheb-bounds/1\",\n";
  out += "  \"command\": " + jstr(command) + ",\n";
  out += std::string("  \"field\": \"") +
         (cg::is_complex_v<S> ? "complex" : "real") + "\",\n";
  out += "  \"n\": " + std::to_string(inst.x.size()) + ",\n";
  const std::size_t dim = inst.x.empty() ? 0 : inst.x.front().dim();
  out += "  \"dimension\": " + std::to_string(dim) + ",\n";
  return out;
}

template <cg::scalar S>
std::string functional_block(const cg::functional_value<S>& t) {
  std::string out = "{";
  out += "\"re\": " + jnum(cg::re_of(t.value));
  out += ", \"im\": " + jnum(cg::im_of(t.value));
  out += ", \"modulus\": " + jnum(t.modulus);
  out += "}";
  return out;
}

template <cg::scalar S>
void require_y(const cg::instance<S>& inst) {
  if (inst.y.empty()) {
    throw cg::error("instance has no y sequence; this command needs one");
  }
}

// ---------------------------------------------------------------------------
// functional

template <cg::scalar S>
int run_functional(const cg::instance<S>& inst, const global_options& opt) {
  require_y(inst);
  const auto t = cg::chebyshev(inst.w, inst.x, inst.y);
  if (opt.format == "table") {
    std::string out;
    out += "T = " + jnum(cg::re_of(t.value));
    if (cg::is_complex_v<S>) out += " + " + jnum(cg::im_of(t.value)) + "i";
    out += "\n|T| = " + jnum(t.modulus) + "\n";
    emit(opt, out);
    return exit_ok;
  }
  std::string out = "{\n";
  out += header_fields("functional", inst);
  out += "  \"functional\": " + functional_block(t) + "\n";
  out += "}\n";
  emit(opt, out);
  return exit_ok;
}

// ---------------------------------------------------------------------------
// identities

struct identity_row {
  std::string id;
  std::string status;  // "ok", "failed", "skipped"
  std::string reason;
  double residual = 0.0;
  bool has_residual = false;
};

template <cg::scalar S>
int run_identities(const cg::instance<S>& inst, const global_options& opt) {
  require_y(inst);
  const auto t = cg::chebyshev(inst.w, inst.x, inst.y);
  const double denom = 1.0 + t.modulus;

  std::vector<identity_row> rows;
  auto evaluate = [&](const std::string& id, auto&& fn) {
    identity_row row;
    row.id = id;
    try {
      const cg::functional_value<S> rhs = fn();
      row.residual = cg::abs_of(rhs.value - t.value) / denom;
      row.has_residual = true;
      row.status = row.residual <= opt.tolerance ? "ok" : "failed";
    } catch (const cg::degenerate_partial_sum& e) {
      row.status = "skipped";
      row.reason = e.what();
    }
    rows.push_back(row);
  };
  evaluate("abel", [&] { return cg::identity_abel_rhs(inst.w, inst.x, inst.y); });
  evaluate("normalized",
           [&] { return cg::identity_normalized_rhs(inst.w, inst.x, inst.y); });
  evaluate("tail_mean",
           [&] { return cg::identity_tail_mean_rhs(inst.w, inst.x, inst.y); });
  evaluate("double_sum",
           [&] { return cg::double_sum_rhs(inst.w, inst.x, inst.y); });

  std::vector<std::string> failing;
  for (const auto& r : rows) {
    if (r.status == "failed") failing.push_back(r.id);
  }

  if (opt.format == "table") {
    std::string out;
    for (const auto& r : rows) {
      out += r.id + ": " + r.status;
      if (r.has_residual) out += "  residual=" + jnum(r.residual);
      if (!r.reason.empty()) out += "  (" + r.reason + ")";
      out += "\n";
    }
    emit(opt, out);
  } else {
    std::string out = "{\n";
    out += header_fields("identities", inst);
    out += "  \"tolerance\": " + jnum(opt.tolerance) + ",\n";
    out += "  \"functional\": " + functional_block(t) + ",\n";
    out += "  \"identities\": [\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto& r = rows[i];
      out += "    {\"id\": " + jstr(r.id) + ", \"status\": " + jstr(r.status) +
             ", \"residual\": " + (r.has_residual ? jnum(r.residual) : "null") +
             ", \"reason\": " + jstr(r.reason) + "}";
      if (i + 1 < rows.size()) out += ",";
      out += "\n";
    }
    out += "  ],\n";
    out += std::string("  \"all_passed\": ") + (failing.empty() ? "true" : "false") +
           ",\n";
    out += "  \"failing\": [";
    for (std::size_t i = 0; i < failing.size(); ++i) {
      if (i) out += ", ";
      out += jstr(failing[i]);
    }
    out += "]\n}\n";
    emit(opt, out);
  }
  if (!failing.empty()) {
    std::cerr << "identity check failed:";
    for (const auto& id : failing) std::cerr << ' ' << id;
    std::cerr << '\n';
    return exit_identity;
  }
  return exit_ok;
}

// ---------------------------------------------------------------------------
// bounds

std::string bound_row_json(const cg::bound_report& r) {
  std::string out = "    {";
  out += "\"theorem\": " + jstr(std::string(cg::to_string(r.theorem)));
  out += ", \"branch\": " + jstr(std::string(cg::to_string(r.branch)));
  out += ", \"p\": " + jnum(r.holder_p);
  out += ", \"value\": " + jnum(r.value);
  out += std::string(", \"preconditions_ok\": ") +
         (r.preconditions_ok ? "true" : "false");
  out += ", \"ratio\": " + (r.ratio_defined ? jnum(r.ratio) : "null");
  out += std::string(", \"ratio_defined\": ") +
         (r.ratio_defined ? "true" : "false");
  out += ", \"diagnostic\": " + jstr(r.diagnostic);
  out += "}";
  return out;
}

template <cg::scalar S>
int run_bounds(const cg::instance<S>& inst, const global_options& opt,
               const std::string& theorems, double holder_p,
               bool strict_literal) {
  require_y(inst);
  std::optional<std::set<std::string>> wanted;
  if (theorems != "all") {
    wanted.emplace();
    std::stringstream ss(theorems);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      if (tok.empty()) continue;
      if (!cg::parse_theorem(tok)) {
        throw cg::error("unknown theorem id: " + tok);
      }
      wanted->insert(tok);
    }
    if (wanted->empty()) throw cg::error("no theorem ids given");
  }
  cg::branch_spec{cg::branch_id::holder, holder_p}.validate();

  const auto t = cg::chebyshev(inst.w, inst.x, inst.y);
  std::vector<cg::bound_report> rows = cg::compare_all(
      inst.w, inst.x, inst.y, inst.ex, inst.ey, holder_p, strict_literal);
  if (wanted) {
    std::erase_if(rows, [&](const cg::bound_report& r) {
      return !wanted->count(std::string(cg::to_string(r.theorem)));
    });
  }

  if (opt.format == "table") {
    std::string out;
    char line[256];
    for (const auto& r : rows) {
      std::snprintf(line, sizeof(line), "%-5s %-8s value=%-24s ratio=%-24s %s\n",
                    std::string(cg::to_string(r.theorem)).c_str(),
                    std::string(cg::to_string(r.branch)).c_str(),
                    r.preconditions_ok ? jnum(r.value).c_str() : "-",
                    r.ratio_defined ? jnum(r.ratio).c_str() : "-",
                    r.preconditions_ok ? "ok" : r.diagnostic.c_str());
      out += line;
    }
    emit(opt, out);
    return exit_ok;
  }
  std::string out = "{\n";
  out += header_fields("bounds", inst);
  out += "  \"holder_p\": " + jnum(holder_p) + ",\n";
  out += "  \"functional\": " + functional_block(t) + ",\n";
  out += "  \"bounds\": [\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out += bound_row_json(rows[i]);
    if (i + 1 < rows.size()) out += ",";
    out += "\n";
  }
  out += "  ]\n}\n";
  emit(opt, out);
  return exit_ok;
}

// ---------------------------------------------------------------------------
// jensen

int run_jensen(const cg::any_instance& parsed, const global_options& opt,
               const std::string& function_name, const std::string& branch,
               double holder_p,
               const std::vector<std::vector<double>>& q_matrix) {
  if (!std::holds_alternative<cg::real_instance>(parsed)) {
    throw cg::complex_field_unsupported(
        "jensen bounds are defined over the real field only");
  }
  const auto& inst = std::get<cg::real_instance>(parsed);
  const std::size_t dim = inst.x.empty() ? 0 : inst.x.front().dim();

  cg::convex_function f =
      (function_name == "psd-quadratic" && !q_matrix.empty())
          ? cg::psd_quadratic(q_matrix)
          : cg::builtin_function(function_name, dim);

  std::vector<cg::branch_spec> branches;
  if (branch == "all") {
    branches = {{cg::branch_id::max_sum, holder_p},
                {cg::branch_id::holder, holder_p},
                {cg::branch_id::sum_max, holder_p}};
  } else {
    const auto b = cg::parse_branch(branch);
    if (!b || *b == cg::branch_id::line1 || *b == cg::branch_id::line2) {
      throw cg::error("invalid branch for jensen: " + branch);
    }
    branches = {{*b, holder_p}};
  }
  const cg::jensen_report rep =
      cg::jensen_full(inst.w, inst.x, f, branches, opt.tolerance);

  if (opt.format == "table") {
    std::string out;
    out += "gap = " + jnum(rep.gap) + "\n";
    out += "gradient_gap = " + jnum(rep.gradient_gap) + "\n";
    for (const auto& e : rep.bounds) {
      out += e.id + " " + std::string(cg::to_string(e.branch)) +
             " value=" + jnum(e.value) + "\n";
    }
    out += std::string("sandwich_ok = ") + (rep.sandwich_ok ? "true" : "false") +
           "\n";
    emit(opt, out);
    return exit_ok;
  }
  std::string out = "{\n";
  out += header_fields("jensen", inst);
  out += "  \"function\": " + jstr(f.name) + ",\n";
  out += "  \"gap\": " + jnum(rep.gap) + ",\n";
  out += "  \"gradient_gap\": " + jnum(rep.gradient_gap) + ",\n";
  out += "  \"bounds\": [\n";
  for (std::size_t i = 0; i < rep.bounds.size(); ++i) {
    const auto& e = rep.bounds[i];
    out += "    {\"id\": " + jstr(e.id) + ", \"branch\": " +
           jstr(std::string(cg::to_string(e.branch))) +
           ", \"p\": " + jnum(e.holder_p) + ", \"value\": " + jnum(e.value) +
           "}";
    if (i + 1 < rep.bounds.size()) out += ",";
    out += "\n";
  }
  out += "  ],\n";
  out += std::string("  \"sandwich_ok\": ") +
         (rep.sandwich_ok ? "true" : "false") + "\n";
  out += "}\n";
  emit(opt, out);
  return exit_ok;
}

// ---------------------------------------------------------------------------
// extremal

int run_extremal(const global_options& opt, const std::string& bound,
                 const std::string& branch, double holder_p, std::size_t n,
                 std::size_t dim, std::uint64_t trials, std::uint64_t seed,
                 double perturbation, unsigned workers,
                 const std::string& witness_out) {
  const auto theorem = cg::parse_theorem(bound);
  if (!theorem) throw cg::error("unknown bound id: " + bound);
  cg::bound_key key;
  key.theorem = *theorem;
  key.holder_p = holder_p;
  if (branch.empty()) {
    key.branch = cg::branches_of(*theorem).front();
  } else {
    const auto b = cg::parse_branch(branch);
    if (!b) throw cg::error("unknown branch: " + branch);
    key.branch = *b;
  }
  cg::search_config cfg;
  cfg.bound = key;
  cfg.n = n;
  cfg.dim = dim;
  cfg.trials = trials;
  cfg.seed = seed;
  cfg.perturbation = perturbation;
  cfg.workers = workers;
  const cg::search_result res = cg::random_search(cfg);

  const std::string witness_doc = cg::serialize_instance(res.witness);
  if (!witness_out.empty()) {
    std::ofstream out(witness_out, std::ios::binary);
    if (!out) throw cg::error("cannot write witness file: " + witness_out);
    out << witness_doc;
  }

  if (opt.format == "table") {
    std::string out;
    out += "best_ratio = " + jnum(res.best_ratio) + "\n";
    out += "best_trial = " + std::to_string(res.best_trial) + "\n";
    out += "evaluated = " + std::to_string(res.evaluated) + ", skipped = " +
           std::to_string(res.skipped) + "\n";
    out += "history =";
    for (double h : res.history) out += " " + jnum(h);
    out += "\nwitness:\n" + witness_doc;
    emit(opt, out);
    return exit_ok;
  }
  std::string out = "{\n";
  out += "  \"version\": \"cheb-bounds/1\",\n";
  out += "  \"command\": \"extremal\",\n";
  out += "  \"config\": {\"bound\": " + jstr(bound) + ", \"branch\": " +
         jstr(std::string(cg::to_string(key.branch))) +
         ", \"p\": " + jnum(holder_p) + ", \"n\": " + std::to_string(n) +
         ", \"dim\": " + std::to_string(dim) +
         ", \"trials\": " + std::to_string(trials) +
         ", \"seed\": " + std::to_string(seed) +
         ", \"perturbation\": " + jnum(perturbation) +
         ", \"workers\": " + std::to_string(workers) + "},\n";
  out += "  \"best_ratio\": " + jnum(res.best_ratio) + ",\n";
  out += "  \"best_trial\": " + std::to_string(res.best_trial) + ",\n";
  out += "  \"evaluated\": " + std::to_string(res.evaluated) + ",\n";
  out += "  \"skipped\": " + std::to_string(res.skipped) + ",\n";
  out += "  \"history\": [";
  for (std::size_t i = 0; i < res.history.size(); ++i) {
    if (i) out += ", ";
    out += jnum(res.history[i]);
  }
  out += "],\n";
  // The witness document is itself valid JSON; splice it in.
  std::string spliced = witness_doc;
  if (!spliced.empty() && spliced.back() == '\n') spliced.pop_back();
  out += "  \"witness\": " + spliced + "\n";
  out += "}\n";
  emit(opt, out);
  return exit_ok;
}

std::vector<std::vector<double>> parse_q_matrix(const std::string& text) {
  // Optional "q_matrix" field next to the instance payload.
  const auto doc = nlohmann::json::parse(text);
  std::vector<std::vector<double>> q;
  if (!doc.is_object() || !doc.contains("q_matrix")) return q;
  const auto& jq = doc.at("q_matrix");
  if (!jq.is_array()) throw cg::parse_error("q_matrix: expected an array");
  for (std::size_t i = 0; i < jq.size(); ++i) {
    if (!jq[i].is_array()) {
      throw cg::parse_error("q_matrix[" + std::to_string(i) +
                            "]: expected an array");
    }
    std::vector<double> row;
    for (const auto& cell : jq[i]) {
      if (!cell.is_number()) {
        throw cg::parse_error("q_matrix: entries must be numbers");
      }
      row.push_back(cell.get<double>());
    }
    q.push_back(std::move(row));
  }
  return q;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Chebyshev functional, bound families, and sharpness probes"};
  app.require_subcommand(1);

  global_options opt;
  app.add_option("--format", opt.format, "Report format")
      ->check(CLI::IsMember({"json", "table"}));
  app.add_option("--output", opt.output, "Write the report to this path");
  app.add_option("--tolerance", opt.tolerance,
                 "Residual/slack tolerance (default 1e-9)");

  std::string in_functional, in_identities, in_bounds, in_jensen;
  std::string theorems = "all";
  double bounds_p = 2.0;
  bool strict_literal = false;
  std::string jensen_function = "norm-squared";
  std::string jensen_branch = "all";
  double jensen_p = 2.0;
  std::string ex_bound, ex_branch, ex_witness_out;
  double ex_p = 2.0, ex_perturbation = 0.5;
  std::size_t ex_n = 2, ex_dim = 1;
  std::uint64_t ex_trials = 1000, ex_seed = 0;
  unsigned ex_workers = 1;

  auto* c_functional =
      app.add_subcommand("functional", "Evaluate the functional on an instance");
  c_functional->fallthrough();
  c_functional->add_option("input", in_functional, "Instance JSON file")
      ->required();

  auto* c_identities = app.add_subcommand(
      "identities", "Check the representation identities on an instance");
  c_identities->fallthrough();
  c_identities->add_option("input", in_identities, "Instance JSON file")
      ->required();

  auto* c_bounds =
      app.add_subcommand("bounds", "Evaluate the bound families on an instance");
  c_bounds->fallthrough();
  c_bounds->add_option("input", in_bounds, "Instance JSON file")->required();
  c_bounds->add_option("--theorems", theorems,
                       "Comma-separated ids or 'all' (default all)");
  c_bounds->add_option("--p", bounds_p, "Holder exponent p > 1 (default 2)");
  c_bounds->add_flag("--strict-literal", strict_literal,
                     "Use max{|P_min|,|Pbar_max|} in the T3_6 first branch");

  auto* c_jensen = app.add_subcommand(
      "jensen", "Jensen gap and reverse bounds; points are read from 'x'");
  c_jensen->fallthrough();
  c_jensen->add_option("input", in_jensen, "Instance JSON file")->required();
  c_jensen->add_option("--function", jensen_function,
                       "norm-squared | psd-quadratic | log-sum-exp")
      ->check(CLI::IsMember({"norm-squared", "psd-quadratic", "log-sum-exp"}));
  c_jensen->add_option("--branch", jensen_branch,
                       "all | max_sum | holder | sum_max");
  c_jensen->add_option("--p", jensen_p, "Holder exponent p > 1 (default 2)");

  auto* c_extremal = app.add_subcommand(
      "extremal", "Randomized search for near-equality instances");
  c_extremal->fallthrough();
  c_extremal->add_option("--bound", ex_bound, "Bound id, e.g. T1_1")->required();
  c_extremal->add_option("--branch", ex_branch,
                         "Branch (defaults to the family's first branch)");
  c_extremal->add_option("--p", ex_p, "Holder exponent p > 1 (default 2)");
  c_extremal->add_option("--n", ex_n, "Sequence length (default 2)");
  c_extremal->add_option("--dim", ex_dim, "Coordinate dimension (default 1)");
  c_extremal->add_option("--trials", ex_trials, "Trial count (default 1000)");
  c_extremal->add_option("--seed", ex_seed, "RNG seed (default 0)");
  c_extremal->add_option("--perturbation", ex_perturbation,
                         "Initial hill-climb step scale (default 0.5)");
  c_extremal->add_option("--workers", ex_workers,
                         "Worker threads (default 1; result is identical)");
  c_extremal->add_option("--witness-out", ex_witness_out,
                         "Also write the witness instance to this path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_precondition;
  }

  try {
    if (*c_functional) {
      const auto parsed = cg::parse_instance_json(read_file(in_functional));
      return std::visit([&](const auto& inst) { return run_functional(inst, opt); },
                        parsed);
    }
    if (*c_identities) {
      const auto parsed = cg::parse_instance_json(read_file(in_identities));
      return std::visit(
          [&](const auto& inst) { return run_identities(inst, opt); }, parsed);
    }
    if (*c_bounds) {
      const auto parsed = cg::parse_instance_json(read_file(in_bounds));
      return std::visit(
          [&](const auto& inst) {
            return run_bounds(inst, opt, theorems, bounds_p, strict_literal);
          },
          parsed);
    }
    if (*c_jensen) {
      const std::string text = read_file(in_jensen);
      const auto parsed = cg::parse_instance_json(text);
      return run_jensen(parsed, opt, jensen_function, jensen_branch, jensen_p,
                        parse_q_matrix(text));
    }
    if (*c_extremal) {
      return run_extremal(opt, ex_bound, ex_branch, ex_p, ex_n, ex_dim,
                          ex_trials, ex_seed, ex_perturbation, ex_workers,
                          ex_witness_out);
    }
  } catch (const cg::parse_error& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return exit_parse;
  } catch (const cg::counterexample_found& e) {
    std::cerr << "error: " << e.what() << '\n'
              << cg::serialize_instance(e.witness);
    return exit_precondition;
  } catch (const cg::error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_precondition;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_precondition;
  }
  return exit_precondition;
}
