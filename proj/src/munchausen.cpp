#include "munch/munchausen.hpp"

#include <algorithm>
#include <map>
#include <optional>

#include "munch/error.hpp"

namespace munch {

namespace {

void append_monomial(std::vector<LinearSymbol>& out, const Monomial& m) {
  for (std::size_t i = 0; i < m.coefficients().size(); ++i) {
    out.emplace_back(TerminalSym{m.coefficients()[i]});
    if (i < m.degree()) out.emplace_back(VarTerminal{m.variables()[i]});
  }
}

std::uint64_t pow2(std::size_t n) {
  if (n >= 63) throw PreconditionError("level too large");
  return std::uint64_t{1} << n;
}

}  // namespace

NonTerm LinearCfg::start(VarId x) const { return {x, pow2(level)}; }

std::uint64_t LinearCfg::max_index() const {
  std::uint64_t hi = 0;
  for (const auto& r : rules) {
    hi = std::max(hi, r.lhs.index);
    for (const auto& s : r.rhs) {
      if (const auto* nt = std::get_if<NonTerm>(&s)) hi = std::max(hi, nt->index);
    }
  }
  return hi;
}

std::uint64_t LinearCfg::min_index() const {
  std::uint64_t lo = UINT64_MAX;
  for (const auto& r : rules) {
    lo = std::min(lo, r.lhs.index);
    for (const auto& s : r.rhs) {
      if (const auto* nt = std::get_if<NonTerm>(&s)) lo = std::min(lo, nt->index);
    }
  }
  return rules.empty() ? 0 : lo;
}

LinearCfg linear_completion_grammar(const EquationSystem& sys) {
  LinearCfg lg{sys.semiring(), sys.vars(), {}, 0};
  for (VarId y = 0; y < sys.size(); ++y) {
    for (const auto& m : sys.f(y).monomials()) {
      for (std::size_t o = 0; o < m.degree(); ++o) {
        const OccurrenceSplit split = split_at(m, o);
        LinearRule r{{y, 1}, {}};
        append_monomial(r.rhs, split.left);
        r.rhs.emplace_back(NonTerm{split.variable, 1});
        append_monomial(r.rhs, split.right);
        lg.rules.push_back(std::move(r));
      }
    }
    lg.rules.push_back({{y, 1}, {VarTerminal{y}}});
  }
  return lg;
}

LinearCfg left_linear_completion_grammar(const EquationSystem& sys) {
  const Semiring& sr = sys.semiring();
  if (!sr.commutative()) {
    throw PreconditionError("left-linear completion needs a commutative instance");
  }
  LinearCfg lg{sr, sys.vars(), {}, 0};
  for (VarId y = 0; y < sys.size(); ++y) {
    for (const auto& m : sys.f(y).monomials()) {
      Value c = sr.one();
      for (const auto& k : m.coefficients()) c = sr.mul(c, k);
      std::vector<VarId> seen;
      for (std::size_t o = 0; o < m.degree(); ++o) {
        const VarId z = m.variables()[o];
        if (std::find(seen.begin(), seen.end(), z) != seen.end()) continue;
        seen.push_back(z);
        LinearRule r{{y, 1}, {NonTerm{z, 1}, TerminalSym{c}}};
        for (std::size_t p = 0; p < m.degree(); ++p) {
          if (p == o) continue;
          r.rhs.emplace_back(VarTerminal{m.variables()[p]});
          r.rhs.emplace_back(TerminalSym{sr.one()});
        }
        lg.rules.push_back(std::move(r));
      }
    }
    lg.rules.push_back({{y, 1}, {VarTerminal{y}}});
  }
  return lg;
}

LinearCfg index_shift(const LinearCfg& lg, std::uint64_t k) {
  if (k == 0) throw PreconditionError("index shift needs k >= 1");
  LinearCfg out{lg.semiring, lg.vars, {}, lg.level};
  out.rules.reserve(lg.rules.size());
  for (const auto& r : lg.rules) {
    LinearRule s{{r.lhs.var, r.lhs.index + k}, {}};
    s.rhs.reserve(r.rhs.size());
    for (const auto& sym : r.rhs) {
      if (const auto* nt = std::get_if<NonTerm>(&sym)) {
        s.rhs.emplace_back(NonTerm{nt->var, nt->index + k});
      } else if (const auto* vt = std::get_if<VarTerminal>(&sym)) {
        s.rhs.emplace_back(NonTerm{vt->var, k});
      } else {
        s.rhs.push_back(sym);
      }
    }
    out.rules.push_back(std::move(s));
  }
  return out;
}

LinearCfg munchausen_grammar(const EquationSystem& sys, std::size_t n) {
  LinearCfg lg = linear_completion_grammar(sys);
  for (std::size_t level = 0; level < n; ++level) {
    LinearCfg copy = index_shift(lg, pow2(level));
    lg.rules.insert(lg.rules.end(), std::make_move_iterator(copy.rules.begin()),
                    std::make_move_iterator(copy.rules.end()));
    lg.level = level + 1;
  }
  return lg;
}

bool is_linear_per_index(const LinearCfg& lg) {
  for (const auto& r : lg.rules) {
    std::size_t same = 0;
    for (const auto& s : r.rhs) {
      const auto* nt = std::get_if<NonTerm>(&s);
      if (!nt) continue;
      if (nt->index > r.lhs.index) return false;
      if (nt->index == r.lhs.index) ++same;
    }
    if (same > 1) return false;
  }
  return true;
}

std::string render(const LinearCfg& lg, const LinearSymbol& s) {
  if (const auto* t = std::get_if<TerminalSym>(&s)) return lg.semiring.render(t->value);
  if (const auto* v = std::get_if<VarTerminal>(&s)) return lg.vars.name(v->var);
  const auto& nt = std::get<NonTerm>(s);
  return lg.vars.name(nt.var) + "(" + std::to_string(nt.index) + ")";
}

std::string render(const LinearCfg& lg, const LinearRule& r) {
  std::string out = render(lg, LinearSymbol{r.lhs}) + " ->";
  for (const auto& s : r.rhs) out += " " + render(lg, s);
  return out;
}

std::vector<std::string> canonical_form(const LinearCfg& lg) {
  std::set<std::uint64_t> used;
  for (const auto& r : lg.rules) {
    used.insert(r.lhs.index);
    for (const auto& s : r.rhs) {
      if (const auto* nt = std::get_if<NonTerm>(&s)) used.insert(nt->index);
    }
  }
  std::map<std::uint64_t, std::uint64_t> rename;
  for (std::uint64_t i : used) rename.emplace(i, rename.size() + 1);
  LinearCfg renamed{lg.semiring, lg.vars, {}, lg.level};
  for (const auto& r : lg.rules) {
    LinearRule s{{r.lhs.var, rename.at(r.lhs.index)}, r.rhs};
    for (auto& sym : s.rhs) {
      if (auto* nt = std::get_if<NonTerm>(&sym)) nt->index = rename.at(nt->index);
    }
    renamed.rules.push_back(std::move(s));
  }
  std::vector<std::string> out;
  for (const auto& r : renamed.rules) out.push_back(render(renamed, r));
  std::sort(out.begin(), out.end());
  return out;
}

bool structurally_equal(const LinearCfg& a, const LinearCfg& b) {
  return a.vars == b.vars && a.semiring == b.semiring &&
         canonical_form(a) == canonical_form(b);
}

namespace {

class GrammarEvaluator {
 public:
  GrammarEvaluator(const LinearCfg& lg, const ValueVector& b, std::size_t budget)
      : lg_(lg), sr_(lg.semiring), b_(b), budget_(budget) {
    if (b.size() != lg.vars.size()) {
      throw MissingBinding("evaluation point does not cover every variable");
    }
    bool stratified = true;
    for (const auto& r : lg.rules) {
      for (const auto& s : r.rhs) {
        const auto* nt = std::get_if<NonTerm>(&s);
        if (nt && nt->index > r.lhs.index) stratified = false;
      }
    }
    for (std::size_t i = 0; i < lg.rules.size(); ++i) {
      const std::uint64_t key = stratified ? lg.rules[i].lhs.index : 0;
      strata_[key].push_back(i);
    }
    if (!stratified) single_ = true;
  }

  /// Solves strata in increasing order; false once a stratum runs out.
  bool run(std::size_t& steps) {
    for (const auto& [index, rules] : strata_) {
      const bool ok = sr_.idempotent() ? solve_linear_stratum(index, rules, steps)
                                       : solve_word_stratum(index, rules, steps);
      if (!ok) return false;
    }
    return true;
  }

  Value value_of(const NonTerm& nt) const {
    const auto it = values_.find(nt);
    return it == values_.end() ? sr_.zero() : it->second;
  }

  std::optional<std::uint64_t> failed_at() const { return failed_at_; }

 private:
  bool in_stratum(const NonTerm& nt, std::uint64_t index) const {
    return single_ || nt.index == index;
  }

  bool solve_linear_stratum(std::uint64_t index,
                            const std::vector<std::size_t>& rules,
                            std::size_t& steps) {
    std::map<NonTerm, VarId> local;
    auto id_of = [&](const NonTerm& nt) {
      return local.emplace(nt, static_cast<VarId>(local.size())).first->second;
    };
    for (std::size_t r : rules) id_of(lg_.rules[r].lhs);
    std::vector<std::pair<VarId, Monomial>> monomials;
    for (std::size_t r : rules) {
      const LinearRule& rule = lg_.rules[r];
      std::vector<Value> coeffs;
      std::vector<VarId> vars;
      Value acc = sr_.one();
      for (const auto& s : rule.rhs) {
        if (const auto* t = std::get_if<TerminalSym>(&s)) {
          acc = sr_.mul(acc, t->value);
        } else if (const auto* v = std::get_if<VarTerminal>(&s)) {
          acc = sr_.mul(acc, b_[v->var]);
        } else {
          const auto& nt = std::get<NonTerm>(s);
          if (in_stratum(nt, index)) {
            coeffs.push_back(acc);
            vars.push_back(id_of(nt));
            acc = sr_.one();
          } else {
            acc = sr_.mul(acc, value_of(nt));
          }
        }
      }
      if (vars.size() > 1) {
        throw PreconditionError("rule '" + render(lg_, rule) +
                                "' is not linear within its index");
      }
      coeffs.push_back(acc);
      monomials.emplace_back(local.at(rule.lhs),
                             Monomial(std::move(coeffs), std::move(vars)));
    }
    LinearSystem lin{sr_, std::vector<Polynomial>(local.size()),
                     zero_vector(sr_, local.size())};
    for (auto& [lhs, m] : monomials) lin.rhs[lhs].add(sr_, std::move(m));
    const SolveOutcome out = solve_linear(lin, budget_);
    steps += out.steps_used;
    for (const auto& [nt, id] : local) values_[nt] = out.value[id];
    if (!out.stabilized()) failed_at_ = index;
    return out.stabilized();
  }

  // Distinct words of one stratum as monomials over symbol ids: variables
  // 0..|X|-1 are the terminals y, higher ids name lower nonterminals.
  using WordSet = std::set<Monomial>;

  bool solve_word_stratum(std::uint64_t index,
                          const std::vector<std::size_t>& rules,
                          std::size_t& steps) {
    std::map<NonTerm, std::vector<std::size_t>> by_lhs;
    for (std::size_t r : rules) by_lhs[lg_.rules[r].lhs].push_back(r);
    symbol_values_ = b_;
    symbol_ids_.clear();
    memo_.clear();
    active_.clear();
    words_ = 0;
    for (const auto& [nt, _] : by_lhs) {
      const WordSet* words = language(nt, index, by_lhs);
      if (!words) {
        failed_at_ = index;
        steps += words_;
        return false;
      }
    }
    steps += words_;
    for (const auto& [nt, words] : memo_) {
      Value sum = sr_.zero();
      for (const auto& w : words) sum = sr_.add(sum, eval(sr_, w, symbol_values_));
      values_[nt] = sum;
    }
    return true;
  }

  VarId symbol_for(const NonTerm& lower) {
    const auto [it, fresh] = symbol_ids_.emplace(
        lower, static_cast<VarId>(symbol_values_.size()));
    if (fresh) symbol_values_.push_back(value_of(lower));
    return it->second;
  }

  const WordSet* language(const NonTerm& nt, std::uint64_t index,
                          const std::map<NonTerm, std::vector<std::size_t>>& by_lhs) {
    if (const auto it = memo_.find(nt); it != memo_.end()) return &it->second;
    // A nonterminal reachable from itself derives infinitely many words.
    if (!active_.insert(nt).second) return nullptr;
    WordSet result;
    if (const auto it = by_lhs.find(nt); it != by_lhs.end()) {
      for (std::size_t r : it->second) {
        WordSet partial{Monomial(sr_.one())};
        for (const auto& s : lg_.rules[r].rhs) {
          WordSet next;
          if (const auto* t = std::get_if<TerminalSym>(&s)) {
            for (const auto& w : partial) next.insert(concat(sr_, w, Monomial(t->value)));
          } else if (const auto* v = std::get_if<VarTerminal>(&s)) {
            const Monomial sym = Monomial::variable(sr_, v->var);
            for (const auto& w : partial) next.insert(concat(sr_, w, sym));
          } else {
            const auto& inner_nt = std::get<NonTerm>(s);
            if (in_stratum(inner_nt, index)) {
              const WordSet* inner = language(inner_nt, index, by_lhs);
              if (!inner) return nullptr;
              for (const auto& w : partial) {
                for (const auto& u : *inner) next.insert(concat(sr_, w, u));
              }
            } else {
              const Monomial sym = Monomial::variable(sr_, symbol_for(inner_nt));
              for (const auto& w : partial) next.insert(concat(sr_, w, sym));
            }
          }
          if (next.size() > budget_) return nullptr;
          partial = std::move(next);
        }
        for (auto& w : partial) {
          if (!w.is_zero(sr_)) result.insert(w);
        }
      }
    }
    words_ += result.size();
    if (words_ > budget_) return nullptr;
    active_.erase(nt);
    return &memo_.emplace(nt, std::move(result)).first->second;
  }

  const LinearCfg& lg_;
  const Semiring& sr_;
  const ValueVector& b_;
  std::size_t budget_;
  bool single_ = false;
  std::map<std::uint64_t, std::vector<std::size_t>> strata_;
  std::map<NonTerm, Value> values_;
  std::optional<std::uint64_t> failed_at_;

  ValueVector symbol_values_;
  std::map<NonTerm, VarId> symbol_ids_;
  std::map<NonTerm, WordSet> memo_;
  std::set<NonTerm> active_;
  std::size_t words_ = 0;
};

}  // namespace

SolveOutcome evaluate_grammar(const LinearCfg& lg, const ValueVector& b,
                              std::size_t budget) {
  GrammarEvaluator ev(lg, b, budget);
  SolveOutcome out;
  const bool ok = ev.run(out.steps_used);
  out.status = ok ? SolveStatus::stabilized : SolveStatus::budget_exhausted;
  for (VarId x = 0; x < lg.vars.size(); ++x) out.value.push_back(ev.value_of(lg.start(x)));
  return out;
}

MunchausenOutcome munchausen_sequence(const EquationSystem& sys, std::size_t n,
                                      const ValueVector& b, std::size_t budget) {
  const LinearCfg lg = munchausen_grammar(sys, n);
  GrammarEvaluator ev(lg, b, budget);
  std::size_t steps = 0;
  const bool ok = ev.run(steps);
  MunchausenOutcome out;
  for (std::size_t k = 0; k <= n; ++k) {
    const std::uint64_t index = pow2(k);
    if (!ok && ev.failed_at() && *ev.failed_at() <= index) {
      out.status = SolveStatus::budget_exhausted;
      break;
    }
    ValueVector v;
    for (VarId x = 0; x < sys.size(); ++x) v.push_back(ev.value_of({x, index}));
    out.iterates.push_back(std::move(v));
  }
  return out;
}

namespace {

// Bounded leftmost derivations; `Item` is a sentential-form symbol and
// `expand` lists the successor forms of the leftmost nonterminal.
template <typename Item, typename IsTerminalWord, typename Expand, typename ToMonomial>
void derive(std::vector<Item> form, std::size_t steps_left,
            const IsTerminalWord& find_nonterminal, const Expand& expand,
            const ToMonomial& to_monomial, std::set<Monomial>& out) {
  const std::optional<std::size_t> pos = find_nonterminal(form);
  if (!pos) {
    out.insert(to_monomial(form));
    return;
  }
  for (auto& [next, cost] : expand(form, *pos)) {
    if (cost > steps_left) continue;
    derive(std::move(next), steps_left - cost, find_nonterminal, expand,
           to_monomial, out);
  }
}

Monomial word_monomial(const Semiring& sr, const std::vector<LinearSymbol>& form) {
  Monomial m(sr.one());
  for (const auto& s : form) {
    if (const auto* t = std::get_if<TerminalSym>(&s)) {
      m = concat(sr, m, Monomial(t->value));
    } else {
      m = concat(sr, m, Monomial::variable(sr, std::get<VarTerminal>(s).var));
    }
  }
  return m;
}

}  // namespace

std::set<Monomial> sentential_forms(const LinearCfg& lg, VarId x,
                                    std::size_t max_steps) {
  using Form = std::vector<LinearSymbol>;
  std::map<NonTerm, std::vector<const LinearRule*>> by_lhs;
  for (const auto& r : lg.rules) by_lhs[r.lhs].push_back(&r);
  auto find = [](const Form& f) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (std::holds_alternative<NonTerm>(f[i])) return i;
    }
    return std::nullopt;
  };
  auto expand = [&](const Form& f, std::size_t pos) {
    std::vector<std::pair<Form, std::size_t>> next;
    const auto it = by_lhs.find(std::get<NonTerm>(f[pos]));
    if (it == by_lhs.end()) return next;
    for (const LinearRule* r : it->second) {
      Form g(f.begin(), f.begin() + pos);
      g.insert(g.end(), r->rhs.begin(), r->rhs.end());
      g.insert(g.end(), f.begin() + pos + 1, f.end());
      next.emplace_back(std::move(g), 1);
    }
    return next;
  };
  std::set<Monomial> out;
  derive<LinearSymbol>(Form{lg.start(x)}, max_steps, find, expand,
                       [&](const Form& f) { return word_monomial(lg.semiring, f); },
                       out);
  std::set<Monomial> nonzero;
  for (const auto& m : out) {
    if (!m.is_zero(lg.semiring)) nonzero.insert(m);
  }
  return nonzero;
}

std::size_t IndexedGrammar::count(IndexedRuleKind kind) const {
  return static_cast<std::size_t>(std::count_if(
      rules.begin(), rules.end(), [&](const IndexedRule& r) { return r.kind == kind; }));
}

IndexedGrammar indexed_grammar_of(const EquationSystem& sys) {
  IndexedGrammar ig{sys.semiring(), sys.vars(), {}};
  auto append = [](std::vector<IndexedSymbol>& out, const Monomial& m) {
    for (std::size_t i = 0; i < m.coefficients().size(); ++i) {
      out.emplace_back(TerminalSym{m.coefficients()[i]});
      if (i < m.degree()) out.emplace_back(IndexedNonTerm{m.variables()[i], false});
    }
  };
  for (VarId y = 0; y < sys.size(); ++y) {
    for (const auto& m : sys.f(y).monomials()) {
      for (std::size_t o = 0; o < m.degree(); ++o) {
        const OccurrenceSplit split = split_at(m, o);
        IndexedRule r{IndexedRuleKind::recursion, y, {}};
        append(r.rhs, split.left);
        r.rhs.emplace_back(IndexedNonTerm{split.variable, true});
        append(r.rhs, split.right);
        ig.rules.push_back(std::move(r));
      }
    }
    ig.rules.push_back({IndexedRuleKind::pop, y, {IndexedNonTerm{y, false}}});
  }
  for (VarId y = 0; y < sys.size(); ++y) {
    ig.rules.push_back({IndexedRuleKind::terminal, y, {VarTerminal{y}}});
  }
  return ig;
}

LinearCfg expand_indexed(const IndexedGrammar& ig, std::size_t n) {
  LinearCfg lg{ig.semiring, ig.vars, {}, n};
  const std::uint64_t top = pow2(n);
  auto at_height = [](VarId v, std::uint64_t h) -> LinearSymbol {
    if (h == 0) return VarTerminal{v};
    return NonTerm{v, h};
  };
  for (std::uint64_t h = 1; h <= top; ++h) {
    for (const auto& r : ig.rules) {
      if (r.kind == IndexedRuleKind::terminal) continue;
      LinearRule out{{r.lhs, h}, {}};
      for (const auto& s : r.rhs) {
        if (const auto* nt = std::get_if<IndexedNonTerm>(&s)) {
          out.rhs.push_back(at_height(nt->var, nt->keeps_stack ? h : h - 1));
        } else if (const auto* t = std::get_if<TerminalSym>(&s)) {
          out.rhs.emplace_back(*t);
        } else {
          out.rhs.emplace_back(std::get<VarTerminal>(s));
        }
      }
      lg.rules.push_back(std::move(out));
    }
  }
  return lg;
}

std::set<Monomial> indexed_sentential_forms(const IndexedGrammar& ig, VarId x,
                                            std::size_t n, std::size_t max_steps) {
  // Stacked nonterminal: (variable, stack height).
  struct Stacked {
    VarId var;
    std::uint64_t height;
  };
  using Item = std::variant<TerminalSym, VarTerminal, Stacked>;
  using Form = std::vector<Item>;
  auto find = [](const Form& f) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (std::holds_alternative<Stacked>(f[i])) return i;
    }
    return std::nullopt;
  };
  auto expand = [&](const Form& f, std::size_t pos) {
    std::vector<std::pair<Form, std::size_t>> next;
    const Stacked cur = std::get<Stacked>(f[pos]);
    for (const auto& r : ig.rules) {
      if (r.lhs != cur.var) continue;
      if ((r.kind == IndexedRuleKind::terminal) != (cur.height == 0)) continue;
      Form g(f.begin(), f.begin() + pos);
      for (const auto& s : r.rhs) {
        if (const auto* nt = std::get_if<IndexedNonTerm>(&s)) {
          g.emplace_back(Stacked{nt->var, nt->keeps_stack ? cur.height : cur.height - 1});
        } else if (const auto* t = std::get_if<TerminalSym>(&s)) {
          g.emplace_back(*t);
        } else {
          g.emplace_back(std::get<VarTerminal>(s));
        }
      }
      g.insert(g.end(), f.begin() + pos + 1, f.end());
      next.emplace_back(std::move(g), r.kind == IndexedRuleKind::terminal ? 0 : 1);
    }
    return next;
  };
  auto to_monomial = [&](const Form& f) {
    Monomial m(ig.semiring.one());
    for (const auto& s : f) {
      if (const auto* t = std::get_if<TerminalSym>(&s)) {
        m = concat(ig.semiring, m, Monomial(t->value));
      } else {
        m = concat(ig.semiring, m,
                   Monomial::variable(ig.semiring, std::get<VarTerminal>(s).var));
      }
    }
    return m;
  };
  std::set<Monomial> out;
  derive<Item>(Form{Stacked{x, pow2(n)}}, max_steps, find, expand, to_monomial, out);
  std::set<Monomial> nonzero;
  for (const auto& m : out) {
    if (!m.is_zero(ig.semiring)) nonzero.insert(m);
  }
  return nonzero;
}

SolveOutcome completion_via_differential_star(const EquationSystem& sys,
                                              const ValueVector& v,
                                              std::size_t budget) {
  if (v.size() != sys.size()) {
    throw MissingBinding("evaluation point does not cover every variable");
  }
  const Semiring& sr = sys.semiring();
  return solve_linear({sr, differential_full(sr, sys.f(), v), v}, budget);
}

CompletionTables completion_function_table(const EquationSystem& sys,
                                           std::size_t budget) {
  const Semiring& base = sys.semiring();
  if (!base.finite()) {
    throw PreconditionError("function tables need a finite instance");
  }
  const FunctionSpace fs(base, sys.size());
  const Semiring& fsr = fs.semiring();
  LinearSystem lin{fsr, std::vector<Polynomial>(sys.size()),
                   zero_vector(fsr, sys.size())};
  auto table_of = [&](const Monomial& m) {
    return fs.tabulate([&](const ValueVector& point) { return eval(base, m, point); });
  };
  for (VarId y = 0; y < sys.size(); ++y) {
    for (const auto& m : sys.f(y).monomials()) {
      for (std::size_t o = 0; o < m.degree(); ++o) {
        const OccurrenceSplit split = split_at(m, o);
        lin.rhs[y].add(fsr, Monomial({table_of(split.left), table_of(split.right)},
                                     {split.variable}));
      }
    }
    lin.rhs[y].add(fsr, Monomial(fs.projection(y)));
  }
  CompletionTables out{fsr, {}, solve_linear(lin, budget)};
  out.tables = out.outcome.value;
  return out;
}

}  // namespace munch
