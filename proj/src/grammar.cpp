#include "munch/grammar.hpp"

#include <algorithm>
#include <functional>

#include "munch/error.hpp"

namespace munch {

std::vector<std::size_t> Cfg::rules_for(VarId x) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < rules.size(); ++i) {
    if (rules[i].lhs == x) out.push_back(i);
  }
  return out;
}

std::size_t Cfg::symbol_count() const {
  std::size_t n = 0;
  for (const auto& r : rules) n += r.rhs.size();
  return n;
}

std::vector<Symbol> word_of(const Monomial& m) {
  std::vector<Symbol> w;
  w.reserve(2 * m.degree() + 1);
  for (std::size_t i = 0; i < m.coefficients().size(); ++i) {
    w.emplace_back(Terminal{m.coefficients()[i]});
    if (i < m.degree()) w.emplace_back(Nonterminal{m.variables()[i]});
  }
  return w;
}

Monomial monomial_of(const Semiring& sr, const std::vector<Symbol>& word) {
  std::vector<Value> coeffs;
  std::vector<VarId> vars;
  Value acc = sr.one();
  for (const auto& s : word) {
    if (const auto* t = std::get_if<Terminal>(&s)) {
      acc = sr.mul(acc, t->value);
    } else {
      coeffs.push_back(acc);
      vars.push_back(std::get<Nonterminal>(s).var);
      acc = sr.one();
    }
  }
  coeffs.push_back(acc);
  return Monomial(std::move(coeffs), std::move(vars));
}

Cfg grammar_of(const EquationSystem& sys) {
  Cfg g{sys.semiring(), sys.vars(), {}};
  for (VarId x = 0; x < sys.size(); ++x) {
    for (const auto& m : sys.f(x).monomials()) g.rules.push_back({x, word_of(m)});
  }
  return g;
}

Cfg grammar_with_constants(const EquationSystem& sys) {
  Cfg g = grammar_of(sys);
  for (VarId x = 0; x < sys.size(); ++x) {
    g.rules.push_back({x, {Terminal{sys.a()[x]}}});
  }
  return g;
}

std::size_t dimension(const DerivationTree& t) {
  if (t.children.empty()) return 0;
  if (t.children.size() == 1) return dimension(t.children.front());
  std::size_t d1 = 0;
  std::size_t d2 = 0;
  for (const auto& c : t.children) {
    const std::size_t d = dimension(c);
    if (d > d1) {
      d2 = d1;
      d1 = d;
    } else if (d > d2) {
      d2 = d;
    }
  }
  return d1 == d2 ? d1 + 1 : d1;
}

std::size_t node_count(const DerivationTree& t) {
  std::size_t n = 1;
  for (const auto& c : t.children) n += node_count(c);
  return n;
}

bool is_complete(const DerivationTree& t) {
  if (t.children.empty()) return std::holds_alternative<Terminal>(t.label);
  return std::all_of(t.children.begin(), t.children.end(),
                     [](const DerivationTree& c) { return is_complete(c); });
}

namespace {

void collect_yield(const DerivationTree& t, std::vector<Symbol>& out) {
  if (t.children.empty()) {
    out.push_back(t.label);
    return;
  }
  for (const auto& c : t.children) collect_yield(c, out);
}

}  // namespace

std::vector<Symbol> yield_word(const DerivationTree& t) {
  std::vector<Symbol> out;
  collect_yield(t, out);
  return out;
}

Monomial yield_monomial(const Semiring& sr, const DerivationTree& t) {
  return monomial_of(sr, yield_word(t));
}

bool well_formed(const Cfg& g, const DerivationTree& t) {
  if (!t.rule) return t.children.empty();
  const auto* nt = std::get_if<Nonterminal>(&t.label);
  if (!nt || *t.rule >= g.rules.size()) return false;
  const Rule& r = g.rules[*t.rule];
  if (r.lhs != nt->var || r.rhs.size() != t.children.size()) return false;
  for (std::size_t i = 0; i < r.rhs.size(); ++i) {
    if (t.children[i].label != r.rhs[i]) return false;
    if (!well_formed(g, t.children[i])) return false;
  }
  return true;
}

namespace {

class TreeEnumerator {
 public:
  TreeEnumerator(const Cfg& g, std::size_t max_dim, bool complete_only)
      : g_(g), max_dim_(max_dim), complete_only_(complete_only) {}

  // Every admissible tree from `s` with at most `budget` nodes.
  std::vector<DerivationTree> trees(const Symbol& s, std::size_t budget) {
    std::vector<DerivationTree> out;
    if (budget == 0) return out;
    if (std::holds_alternative<Terminal>(s)) {
      out.push_back(DerivationTree::leaf(s));
      return out;
    }
    if (!complete_only_) out.push_back(DerivationTree::leaf(s));
    const VarId x = std::get<Nonterminal>(s).var;
    for (std::size_t r : g_.rules_for(x)) {
      const auto& rhs = g_.rules[r].rhs;
      if (rhs.size() + 1 > budget) continue;
      DerivationTree node{s, r, {}};
      fill(node, rhs, 0, budget - 1, out);
    }
    return out;
  }

 private:
  void fill(DerivationTree& node, const std::vector<Symbol>& rhs, std::size_t i,
            std::size_t budget, std::vector<DerivationTree>& out) {
    if (i == rhs.size()) {
      if (dimension(node) <= max_dim_) out.push_back(node);
      return;
    }
    // Each remaining child needs at least one node.
    const std::size_t reserve = rhs.size() - i - 1;
    for (auto& child : trees(rhs[i], budget - reserve)) {
      const std::size_t used = node_count(child);
      if (dimension(child) > max_dim_) continue;
      node.children.push_back(std::move(child));
      fill(node, rhs, i + 1, budget - used, out);
      node.children.pop_back();
    }
  }

  const Cfg& g_;
  std::size_t max_dim_;
  bool complete_only_;
};

}  // namespace

std::vector<DerivationTree> enumerate_trees(const Cfg& g, VarId root,
                                            std::size_t max_nodes,
                                            std::size_t max_dim,
                                            bool complete_only) {
  if (root >= g.vars.size()) throw PreconditionError("unknown root variable");
  TreeEnumerator e(g, max_dim, complete_only);
  auto out = e.trees(Nonterminal{root}, max_nodes);
  std::stable_sort(out.begin(), out.end(),
                   [](const DerivationTree& a, const DerivationTree& b) {
                     return node_count(a) < node_count(b);
                   });
  return out;
}

namespace {

// Sums of yields of trees with exact size and exact dimension, grown one size
// at a time. Rule bodies are folded left to right with the state (size of the
// prefix, largest child dimension so far, whether that maximum is tied).
class TreeSumTable {
 public:
  TreeSumTable(const Cfg& g, std::size_t dim_bound, const TreeSumOptions& opts)
      : g_(g),
        sr_(g.semiring),
        dims_(std::min<std::size_t>(dim_bound, 48) + 1),
        complete_only_(opts.complete_only),
        leaf_values_(opts.leaf_values) {
    sums_.resize(g.vars.size());
    folds_.resize(g.rules.size());
    for (std::size_t r = 0; r < g.rules.size(); ++r) {
      folds_[r].resize(g.rules[r].rhs.size() + 1);
    }
    // Size 0 holds nothing.
    for (auto& s : sums_) s.emplace_back(dims_, sr_.zero());
    for (auto& f : folds_) {
      f[0].emplace_back(2 * dims_, sr_.zero());
      f[0][0][0] = sr_.one();
      for (std::size_t i = 1; i < f.size(); ++i) f[i].emplace_back(2 * dims_, sr_.zero());
    }
  }

  std::size_t size() const { return size_; }

  void grow() {
    const std::size_t n = ++size_;
    for (auto& f : folds_) {
      for (std::size_t i = 0; i < f.size(); ++i) f[i].emplace_back(2 * dims_, sr_.zero());
    }
    // Folds at prefix size n - 1 only read sums of sizes < n.
    for (std::size_t r = 0; r < g_.rules.size(); ++r) extend_fold(r, n - 1);
    for (VarId x = 0; x < g_.vars.size(); ++x) {
      std::vector<Value> row(dims_, sr_.zero());
      if (n == 1 && !complete_only_ && leaf_values_) row[0] = (*leaf_values_)[x];
      sums_[x].push_back(std::move(row));
    }
    for (std::size_t r = 0; r < g_.rules.size(); ++r) {
      const Rule& rule = g_.rules[r];
      const auto& last = folds_[r].back()[n - 1];
      auto& row = sums_[rule.lhs][n];
      for (std::size_t d = 0; d < dims_; ++d) {
        for (int tie = 0; tie < 2; ++tie) {
          const Value& v = last[2 * d + tie];
          if (sr_.is_zero(v)) continue;
          std::size_t dim = d;
          if (rule.rhs.size() >= 2 && tie) ++dim;
          if (dim >= dims_) continue;
          row[dim] = sr_.add(row[dim], v);
        }
      }
    }
  }

  /// Sum over all sizes <= size() and all dimensions.
  ValueVector totals() const {
    ValueVector out(g_.vars.size(), sr_.zero());
    for (VarId x = 0; x < g_.vars.size(); ++x) {
      for (const auto& row : sums_[x]) {
        for (const auto& v : row) out[x] = sr_.add(out[x], v);
      }
    }
    return out;
  }

 private:
  // Per-size, per-dimension sums for one child symbol.
  void child_rows(const Symbol& s, std::size_t size,
                  std::vector<Value>& row) const {
    std::fill(row.begin(), row.end(), sr_.zero());
    if (const auto* t = std::get_if<Terminal>(&s)) {
      if (size == 1) row[0] = t->value;
      return;
    }
    row = sums_[std::get<Nonterminal>(s).var][size];
  }

  void extend_fold(std::size_t r, std::size_t s) {
    const auto& rhs = g_.rules[r].rhs;
    auto& f = folds_[r];
    std::vector<Value> crow(dims_);
    for (std::size_t i = 1; i <= rhs.size(); ++i) {
      auto& out = f[i][s];
      std::fill(out.begin(), out.end(), sr_.zero());
      for (std::size_t cs = 1; cs <= s; ++cs) {
        const auto& prev = f[i - 1][s - cs];
        child_rows(rhs[i - 1], cs, crow);
        for (std::size_t pd = 0; pd < dims_; ++pd) {
          for (int pt = 0; pt < 2; ++pt) {
            const Value& pv = prev[2 * pd + pt];
            if (sr_.is_zero(pv)) continue;
            for (std::size_t cd = 0; cd < dims_; ++cd) {
              if (sr_.is_zero(crow[cd])) continue;
              std::size_t nd = pd;
              int nt = pt;
              if (i == 1) {
                nd = cd;
                nt = 0;
              } else if (cd > pd) {
                nd = cd;
                nt = 0;
              } else if (cd == pd) {
                nt = 1;
              }
              Value& slot = out[2 * nd + nt];
              slot = sr_.add(slot, sr_.mul(pv, crow[cd]));
            }
          }
        }
      }
    }
  }

  const Cfg& g_;
  const Semiring& sr_;
  std::size_t dims_;
  bool complete_only_;
  std::optional<ValueVector> leaf_values_;
  std::size_t size_ = 0;
  // sums_[x][size][dim]
  std::vector<std::vector<std::vector<Value>>> sums_;
  // folds_[rule][prefix length][size][2 * maxdim + tie]
  std::vector<std::vector<std::vector<std::vector<Value>>>> folds_;
};

}  // namespace

TreeSums tree_sums(const Cfg& g, std::size_t dim_bound,
                   const TreeSumOptions& opts) {
  if (!opts.complete_only && opts.leaf_values &&
      opts.leaf_values->size() != g.vars.size()) {
    throw MissingBinding("leaf valuation does not cover every variable");
  }
  TreeSumTable table(g, dim_bound, opts);
  std::size_t budget = opts.initial_budget;
  if (budget == 0) budget = std::max<std::size_t>(32, 4 * g.symbol_count());
  budget = std::min(budget, opts.node_budget);

  TreeSums out;
  std::size_t unchanged = 0;
  std::optional<ValueVector> previous;
  while (true) {
    while (table.size() < budget) table.grow();
    ValueVector now = table.totals();
    if (previous && now == *previous) {
      ++unchanged;
    } else {
      unchanged = 0;
    }
    previous = now;
    out.value = std::move(now);
    out.nodes = budget;
    if (unchanged >= opts.window) {
      out.stabilized = true;
      return out;
    }
    if (budget >= opts.node_budget) return out;
    budget = std::min(opts.node_budget, std::max(budget + 1, budget + budget / 4));
  }
}

TreeSum tree_sum(const Cfg& g, VarId root, std::size_t dim_bound,
                 const TreeSumOptions& opts) {
  if (root >= g.vars.size()) throw PreconditionError("unknown root variable");
  TreeSums all = tree_sums(g, dim_bound, opts);
  return {all.value[root], all.stabilized, all.nodes};
}

namespace {

void cut(const DerivationTree& t, std::size_t m, DerivationTree& outer,
         std::vector<DerivationTree>& parts) {
  outer.label = t.label;
  outer.rule = t.rule;
  outer.children.clear();
  for (const auto& c : t.children) {
    if (std::holds_alternative<Nonterminal>(c.label) && dimension(c) <= m) {
      parts.push_back(c);
      outer.children.push_back(DerivationTree::leaf(c.label));
    } else {
      DerivationTree sub;
      cut(c, m, sub, parts);
      outer.children.push_back(std::move(sub));
    }
  }
}

void fill_leaves(DerivationTree& t, const std::vector<DerivationTree>& parts,
                 std::size_t& next) {
  if (t.children.empty()) {
    if (std::holds_alternative<Terminal>(t.label)) return;
    if (next >= parts.size()) throw PreconditionError("too few parts to regraft");
    if (parts[next].label != t.label) {
      throw PreconditionError("part root does not match the leaf label");
    }
    t = parts[next++];
    return;
  }
  for (auto& c : t.children) fill_leaves(c, parts, next);
}

}  // namespace

Decomposition decompose(const DerivationTree& t, std::size_t m) {
  if (dimension(t) > 2 * m) {
    throw PreconditionError("decompose needs dimension(t) <= 2m");
  }
  Decomposition d;
  if (std::holds_alternative<Nonterminal>(t.label) && dimension(t) <= m) {
    d.outer = DerivationTree::leaf(t.label);
    d.parts.push_back(t);
    return d;
  }
  cut(t, m, d.outer, d.parts);
  return d;
}

DerivationTree regraft(const DerivationTree& outer,
                       const std::vector<DerivationTree>& parts) {
  DerivationTree t = outer;
  std::size_t next = 0;
  fill_leaves(t, parts, next);
  if (next != parts.size()) throw PreconditionError("unused parts after regraft");
  return t;
}

}  // namespace munch
