#include "munch/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "munch/equation_file.hpp"
#include "munch/error.hpp"
#include "munch/export.hpp"
#include "munch/grammar.hpp"
#include "munch/munchausen.hpp"
#include "munch/solver.hpp"
#include "munch/tensor.hpp"

namespace munch {

namespace {

constexpr std::size_t kKleeneBudget = 10000;
constexpr std::size_t kTreeNodeBudget = 5000;
constexpr std::size_t kMaxLevel = 16;
constexpr const char* kBudgetEnv = "MUNCH_DEFAULT_BUDGET";

struct InputError : Error {
  using Error::Error;
};
struct UsageError : Error {
  using Error::Error;
};
struct InvariantError : Error {
  using Error::Error;
};

struct Options {
  std::string file;
  bool json = false;
  std::optional<std::size_t> budget;
  std::string method = "kleene";
  std::optional<std::size_t> steps;
  std::string eval_at = "a";
  std::size_t dim = 0;
  bool complete = false;
  std::size_t node_budget = kTreeNodeBudget;
  std::size_t window = 3;
  bool table = false;
  bool grammar = false;
  bool left_linear = false;
  std::size_t level = 0;
  bool indexed = false;
};

EquationSystem load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_equations(buf.str());
}

std::optional<std::size_t> env_budget() {
  const char* raw = std::getenv(kBudgetEnv);
  if (!raw || !*raw) return std::nullopt;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(raw, &end, 10);
  if (*end != '\0' || v == 0) {
    throw UsageError(std::string(kBudgetEnv) + " must be a positive integer");
  }
  return static_cast<std::size_t>(v);
}

std::size_t budget_or(const Options& o, std::size_t fallback) {
  if (o.budget) return *o.budget;
  if (auto env = env_budget()) return *env;
  return fallback;
}

std::string status_name(SolveStatus s) {
  return s == SolveStatus::stabilized ? "stabilized" : "budget-exhausted";
}

ValueVector evaluation_point(const EquationSystem& sys, const Options& o) {
  if (o.eval_at == "a") return sys.a();
  if (o.eval_at == "lfp") {
    const auto lfp = kleene_solve(sys, budget_or(o, kKleeneBudget));
    if (!lfp.stabilized()) throw InputError("lfp did not stabilize within the budget");
    return lfp.value;
  }
  return parse_vector(sys.semiring(), o.eval_at, sys.size());
}

void check_point(const EquationSystem& sys, const ValueVector& b, const Options& o,
                 std::ostream& err) {
  const auto& sr = sys.semiring();
  const auto lfp = kleene_solve(sys, budget_or(o, kKleeneBudget));
  if (!lfp.stabilized()) {
    err << "warning: no stabilized lfp; evaluation point not checked\n";
  } else if (!leq(sr, sys.a(), b) || !leq(sr, b, lfp.value)) {
    err << "warning: evaluation point " << render(sr, b) << " is outside [a, lfp]\n";
  }
}

void warn_non_idempotent(const Semiring& sr, std::ostream& err) {
  if (!sr.idempotent()) {
    err << "warning: '" << sr.name()
        << "' is not idempotent; results follow the idempotent definitions\n";
  }
}

Json vectors_json(const Semiring& sr, const std::vector<ValueVector>& vs) {
  Json out = Json::array();
  for (const auto& v : vs) out.push_back(to_json(sr, v));
  return out;
}

std::size_t check_level(std::size_t n) {
  if (n > kMaxLevel) {
    throw UsageError("level above " + std::to_string(kMaxLevel) + " is not supported");
  }
  return n;
}

// Result of one command: a JSON report, its text form, and an exit code.
struct Report {
  Json json = Json::object();
  std::string text;
  int code = kExitOk;
};

Report solve(const EquationSystem& sys, const Options& o, std::ostream& err) {
  const auto& sr = sys.semiring();
  Report r;
  std::ostringstream t;
  r.json["method"] = o.method;
  if (o.method == "kleene") {
    std::vector<ValueVector> trace;
    const auto out = kleene_solve(sys, o.steps.value_or(budget_or(o, kKleeneBudget)), &trace);
    t << "lfp " << render(sr, out.value) << '\n';
    t << "status " << status_name(out.status) << " after " << out.steps_used << " steps\n";
    r.json["lfp"] = to_json(sr, out.value);
    r.json["iterates"] = vectors_json(sr, trace);
    r.json["status"] = status_name(out.status);
    r.json["steps"] = out.steps_used;
    if (!out.stabilized()) r.code = kExitBudget;
  } else if (o.method == "newton") {
    warn_non_idempotent(sr, err);
    const auto out = newton_solve(sys, o.steps.value_or(3), budget_or(o, default_linear_budget(sys)));
    for (std::size_t k = 0; k < out.iterates.size(); ++k) {
      t << "nu[" << k << "] " << render(sr, out.iterates[k]) << '\n';
    }
    t << "status " << status_name(out.status) << '\n';
    r.json["iterates"] = vectors_json(sr, out.iterates);
    r.json["status"] = status_name(out.status);
    r.json["non_idempotent"] = out.non_idempotent;
    if (out.status != SolveStatus::stabilized) r.code = kExitBudget;
  } else if (o.method == "munchausen") {
    const std::size_t n = check_level(o.steps.value_or(2));
    const ValueVector b = evaluation_point(sys, o);
    check_point(sys, b, o, err);
    const auto out = munchausen_sequence(sys, n, b, budget_or(o, default_linear_budget(sys)));
    for (std::size_t k = 0; k < out.iterates.size(); ++k) {
      t << "M[" << k << "] " << render(sr, out.iterates[k]) << '\n';
    }
    t << "status " << status_name(out.status) << '\n';
    r.json["b"] = to_json(sr, b);
    r.json["iterates"] = vectors_json(sr, out.iterates);
    r.json["status"] = status_name(out.status);
    if (out.status != SolveStatus::stabilized) r.code = kExitBudget;
  } else {
    throw UsageError("unknown method '" + o.method + "'");
  }
  r.text = t.str();
  return r;
}

Report compare(const EquationSystem& sys, const Options& o) {
  const auto& sr = sys.semiring();
  const std::size_t n = std::min<std::size_t>(check_level(o.steps.value_or(2)), 8);
  const std::size_t budget = budget_or(o, default_linear_budget(sys));
  const auto lfp = kleene_solve(sys, budget_or(o, kKleeneBudget));
  const auto newton = newton_solve(sys, std::size_t{1} << n, budget);
  const auto munch = munchausen_sequence(sys, n, sys.a(), budget);
  Report r;
  std::ostringstream t;
  t << "kleene " << render(sr, lfp.value) << " (" << status_name(lfp.status) << ")\n";
  Json rows = Json::array();
  bool exhausted = !lfp.stabilized() || newton.status != SolveStatus::stabilized ||
                   munch.status != SolveStatus::stabilized;
  bool mismatch = false;
  for (std::size_t k = 0; k <= n; ++k) {
    const std::size_t nk = std::size_t{1} << k;
    if (k >= munch.iterates.size() || nk >= newton.iterates.size()) break;
    const bool same = munch.iterates[k] == newton.iterates[nk];
    std::string verdict = same ? "OK" : (sr.idempotent() ? "MISMATCH" : "DIFFERS (not idempotent)");
    if (!same && sr.idempotent()) mismatch = true;
    t << "munchausen[" << k << "] " << render(sr, munch.iterates[k]) << "  newton["
      << nk << "] " << render(sr, newton.iterates[nk]) << '\n';
    t << "munchausen[" << k << "] == newton[2^" << k << "]: " << verdict << '\n';
    rows.push_back({{"n", k},
                    {"munchausen", to_json(sr, munch.iterates[k])},
                    {"newton", to_json(sr, newton.iterates[nk])},
                    {"verdict", verdict}});
  }
  r.json["kleene"] = {{"value", to_json(sr, lfp.value)}, {"status", status_name(lfp.status)}};
  r.json["rows"] = rows;
  r.text = t.str();
  if (mismatch) {
    r.code = kExitInvariant;
  } else if (exhausted) {
    r.code = kExitBudget;
  }
  return r;
}

Report oracle(const EquationSystem& sys, const Options& o) {
  const auto& sr = sys.semiring();
  TreeSumOptions opts;
  opts.node_budget = o.node_budget;
  opts.window = o.window;
  opts.complete_only = o.complete;
  TreeSums sums;
  if (o.complete) {
    sums = tree_sums(grammar_with_constants(sys), o.dim, opts);
  } else {
    // Incomplete trees of G_f with leaves read as a.
    opts.leaf_values = sys.a();
    sums = tree_sums(grammar_of(sys), o.dim, opts);
  }
  const auto newton = newton_solve(sys, o.dim, budget_or(o, default_linear_budget(sys)));
  Report r;
  std::ostringstream t;
  t << "tree_sum[dim<=" << o.dim << "] " << render(sr, sums.value) << " ("
    << (sums.stabilized ? "stabilized" : "not stabilized") << " at " << sums.nodes
    << " nodes)\n";
  r.json["tree_sum"] = {{"value", to_json(sr, sums.value)},
                        {"stabilized", sums.stabilized},
                        {"nodes", sums.nodes},
                        {"complete", o.complete}};
  if (newton.iterates.size() <= o.dim) {
    t << "newton[" << o.dim << "] unavailable (budget exhausted)\n";
    r.json["verdict"] = "budget-exhausted";
    r.code = kExitBudget;
  } else {
    const auto& nu = newton.iterates[o.dim];
    t << "newton[" << o.dim << "] " << render(sr, nu) << '\n';
    r.json["newton"] = to_json(sr, nu);
    std::string verdict;
    if (!sums.stabilized) {
      verdict = "UNDECIDED (not stabilized)";
      r.code = kExitBudget;
    } else if (sums.value == nu) {
      verdict = "OK";
    } else if (sr.idempotent()) {
      verdict = "MISMATCH";
      r.code = kExitInvariant;
    } else {
      verdict = "DIFFERS (not idempotent)";
    }
    t << "tree_sum == newton: " << verdict << '\n';
    r.json["verdict"] = verdict;
  }
  r.text = t.str();
  return r;
}

Report completion(const EquationSystem& sys, const Options& o) {
  const auto& sr = sys.semiring();
  if (int(o.table) + int(o.grammar) + int(o.left_linear) > 1) {
    throw UsageError("choose one of --table, --grammar, --left-linear");
  }
  Report r;
  std::ostringstream t;
  if (o.table) {
    const auto out = completion_function_table(sys, budget_or(o, 1 << 16));
    const FunctionSpace fs(sr, sys.size());
    Json tables = Json::object();
    for (VarId x = 0; x < sys.size(); ++x) {
      Json rows = Json::array();
      for (std::size_t i = 0; i < fs.domain_size(); ++i) {
        const ValueVector p = fs.point(i);
        const Value v = fs.at(out.tables[x], i);
        t << "C(f)_" << sys.vars().name(x) << ' ' << render(sr, p) << " -> " << sr.render(v) << '\n';
        rows.push_back({{"input", to_json(sr, p)}, {"output", to_json(sr, v)}});
      }
      tables[sys.vars().name(x)] = rows;
    }
    t << "status " << status_name(out.outcome.status) << '\n';
    r.json["mode"] = "table";
    r.json["tables"] = tables;
    r.json["status"] = status_name(out.outcome.status);
    if (!out.outcome.stabilized()) r.code = kExitBudget;
    r.text = t.str();
    return r;
  }
  const LinearCfg lg =
      o.left_linear ? left_linear_completion_grammar(sys) : linear_completion_grammar(sys);
  const ValueVector b = evaluation_point(sys, o);
  const std::size_t budget = budget_or(o, default_linear_budget(sys));
  for (const auto& rule : lg.rules) t << render(lg, rule) << '\n';
  const auto value = evaluate_grammar(lg, b, budget);
  t << "C(f) at " << render(sr, b) << " = " << render(sr, value.value) << " ("
    << status_name(value.status) << ")\n";
  r.json["mode"] = o.left_linear ? "left-linear" : "grammar";
  r.json["grammar"] = to_json(lg);
  r.json["b"] = to_json(sr, b);
  r.json["value"] = to_json(sr, value.value);
  r.json["status"] = status_name(value.status);
  if (!value.stabilized()) r.code = kExitBudget;
  if (sr.idempotent() && value.stabilized()) {
    const auto star = completion_via_differential_star(sys, b, budget);
    if (star.stabilized()) {
      const bool same = star.value == value.value;
      t << "differential star " << render(sr, star.value) << ": "
        << (same ? "OK" : "MISMATCH") << '\n';
      r.json["differential_star"] = to_json(sr, star.value);
      if (!same) r.code = kExitInvariant;
    }
  }
  r.text = t.str();
  return r;
}

std::string render_indexed(const IndexedGrammar& ig, const IndexedRule& rule) {
  const auto& sr = ig.semiring;
  std::string s = ig.vars.name(rule.lhs);
  s += rule.kind == IndexedRuleKind::terminal ? "[0] ->" : "[1.s] ->";
  for (const auto& sym : rule.rhs) {
    s += ' ';
    if (const auto* t = std::get_if<TerminalSym>(&sym)) {
      s += sr.render(t->value);
    } else if (const auto* y = std::get_if<VarTerminal>(&sym)) {
      s += ig.vars.name(y->var);
    } else {
      const auto& nt = std::get<IndexedNonTerm>(sym);
      s += ig.vars.name(nt.var) + (nt.keeps_stack ? "[1.s]" : "[s]");
    }
  }
  return s;
}

Report grammar(const EquationSystem& sys, const Options& o) {
  const std::size_t n = check_level(o.level);
  Report r;
  std::ostringstream t;
  if (o.indexed) {
    const IndexedGrammar ig = indexed_grammar_of(sys);
    for (const auto& rule : ig.rules) t << render_indexed(ig, rule) << '\n';
    const bool same = structurally_equal(expand_indexed(ig, n), munchausen_grammar(sys, n));
    t << "expand(IG, " << n << ") == LG^" << n << ": " << (same ? "OK" : "MISMATCH") << '\n';
    r.json["grammar"] = to_json(ig);
    r.json["expansion_matches"] = same;
    if (!same) r.code = kExitInvariant;
  } else {
    const LinearCfg lg = munchausen_grammar(sys, n);
    for (const auto& rule : lg.rules) t << render(lg, rule) << '\n';
    r.json["grammar"] = to_json(lg);
  }
  r.text = t.str();
  return r;
}

Report tensor(const EquationSystem& sys, const Options& o) {
  const auto& sr = sys.semiring();
  if (sr.kind() != SemiringKind::relation) {
    throw UsageError("tensor needs a relation instance");
  }
  const std::size_t n = std::min<std::size_t>(check_level(o.level), 8);
  const ValueVector b = evaluation_point(sys, o);
  const AdmissibleOps ops = relation_admissible(sr.relation_dim());
  const auto two_sided = two_sided_of(linear_completion_grammar(sys), b);
  const auto regular = regularize(ops, two_sided);
  const auto out = tensor_pipeline(sys, n, b);
  const auto seq = munchausen_sequence(sys, n, b, budget_or(o, default_linear_budget(sys)));
  Report r;
  std::ostringstream t;
  Json rows = Json::array();
  for (std::size_t k = 0; k < out.iterates.size(); ++k) {
    t << "T[" << k << "] readout " << render(sr, out.iterates[k]) << '\n';
    Json row = {{"n", k}, {"readout", to_json(sr, out.iterates[k])}};
    if (k < seq.iterates.size()) {
      const bool same = seq.iterates[k] == out.iterates[k];
      t << "tensor[" << k << "] == munchausen[" << k << "]: " << (same ? "OK" : "MISMATCH") << '\n';
      row["munchausen"] = to_json(sr, seq.iterates[k]);
      row["verdict"] = same ? "OK" : "MISMATCH";
      if (!same) r.code = kExitInvariant;
    }
    rows.push_back(row);
  }
  if (seq.status != SolveStatus::stabilized && r.code == kExitOk) r.code = kExitBudget;
  r.json["b"] = to_json(sr, b);
  r.json["regularized"] = to_json(two_sided, regular);
  r.json["rows"] = rows;
  r.text = t.str();
  return r;
}

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("file", o.file, "equation file")->required();
  cmd->add_flag("--json", o.json, "print a JSON report");
  cmd->add_option("--budget", o.budget, "iteration budget")->check(CLI::PositiveNumber);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fixed-point equation workbench: Kleene, Newton and Munchausen iteration"};
  app.require_subcommand(1);
  Options o;

  auto* solve_cmd = app.add_subcommand("solve", "solve a system");
  add_common(solve_cmd, o);
  solve_cmd->add_option("--method", o.method, "kleene | newton | munchausen")
      ->check(CLI::IsMember({"kleene", "newton", "munchausen"}));
  solve_cmd->add_option("--steps", o.steps, "iterations (Kleene budget, Newton steps, Munchausen level)");
  solve_cmd->add_option("--eval-at", o.eval_at, "a | lfp | (v1, v2, ...)");

  auto* compare_cmd = app.add_subcommand("compare", "compare Munchausen with Newton");
  add_common(compare_cmd, o);
  compare_cmd->add_option("--steps", o.steps, "largest Munchausen level (default 2)");

  auto* oracle_cmd = app.add_subcommand("oracle", "derivation-tree sums against Newton");
  add_common(oracle_cmd, o);
  oracle_cmd->add_option("--dim", o.dim, "dimension bound")->required();
  oracle_cmd->add_flag("--complete", o.complete, "complete trees of G_f(a) only");
  oracle_cmd->add_option("--node-budget", o.node_budget, "largest tree size")->check(CLI::PositiveNumber);
  oracle_cmd->add_option("--window", o.window, "stabilization window")->check(CLI::PositiveNumber);

  auto* completion_cmd = app.add_subcommand("completion", "linear completion C(f)");
  add_common(completion_cmd, o);
  completion_cmd->add_flag("--table", o.table, "explicit function tables");
  completion_cmd->add_flag("--grammar", o.grammar, "completion grammar (default)");
  completion_cmd->add_flag("--left-linear", o.left_linear, "left-linear grammar");
  completion_cmd->add_option("--eval-at", o.eval_at, "a | lfp | (v1, v2, ...)");

  auto* grammar_cmd = app.add_subcommand("grammar", "export LG^n or the indexed grammar");
  add_common(grammar_cmd, o);
  grammar_cmd->add_option("--level", o.level, "n");
  grammar_cmd->add_flag("--indexed", o.indexed, "indexed grammar");

  auto* tensor_cmd = app.add_subcommand("tensor", "tensor regularization path");
  add_common(tensor_cmd, o);
  tensor_cmd->add_option("--level", o.level, "n");
  tensor_cmd->add_option("--eval-at", o.eval_at, "a | lfp | (v1, v2, ...)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    const EquationSystem sys = load(o.file);
    Report r;
    std::string command;
    if (solve_cmd->parsed()) {
      command = "solve";
      r = solve(sys, o, err);
    } else if (compare_cmd->parsed()) {
      command = "compare";
      r = compare(sys, o);
    } else if (oracle_cmd->parsed()) {
      command = "oracle";
      r = oracle(sys, o);
    } else if (completion_cmd->parsed()) {
      command = "completion";
      r = completion(sys, o);
    } else if (grammar_cmd->parsed()) {
      command = "grammar";
      r = grammar(sys, o);
    } else {
      command = "tensor";
      r = tensor(sys, o);
    }
    if (o.json) {
      Json doc = {{"schema", kSchemaVersion},
                  {"command", command},
                  {"system", to_json(sys)},
                  {"exit_code", r.code}};
      doc.update(r.json);
      out << doc.dump(2) << '\n';
    } else {
      out << r.text;
    }
    if (r.code == kExitBudget) err << "error: budget exhausted\n";
    if (r.code == kExitInvariant) err << "error: invariant violated\n";
    return r.code;
  } catch (const ParseError& e) {
    err << o.file << ':' << e.what() << '\n';
    return kExitParse;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitParse;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InstanceMismatch& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInvariant;
  }
}

}  // namespace munch
