#pragma once

#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

#include "munch/polynomial.hpp"

namespace munch {

struct Terminal {
  Value value;
  friend bool operator==(const Terminal&, const Terminal&) = default;
  friend auto operator<=>(const Terminal&, const Terminal&) = default;
};

struct Nonterminal {
  VarId var = 0;
  friend bool operator==(const Nonterminal&, const Nonterminal&) = default;
  friend auto operator<=>(const Nonterminal&, const Nonterminal&) = default;
};

using Symbol = std::variant<Terminal, Nonterminal>;

struct Rule {
  VarId lhs = 0;
  std::vector<Symbol> rhs;
  friend bool operator==(const Rule&, const Rule&) = default;
};

/// Variables are the nonterminals, semiring values the terminals.
struct Cfg {
  Semiring semiring;
  VarSet vars;
  std::vector<Rule> rules;

  /// Indices of the rules for `x`, in declaration order.
  std::vector<std::size_t> rules_for(VarId x) const;
  std::size_t symbol_count() const;
};

/// c0 v1 c1 ... vl cl as a word; units stay explicit.
std::vector<Symbol> word_of(const Monomial& m);
/// <w>: adjacent terminals are merged by multiplication, units inserted
/// between adjacent nonterminals.
Monomial monomial_of(const Semiring& sr, const std::vector<Symbol>& word);

/// One rule x -> w(m) per monomial m of f_x.
Cfg grammar_of(const EquationSystem& sys);
/// grammar_of plus x -> a_x for every x (appended after all other rules).
Cfg grammar_with_constants(const EquationSystem& sys);

struct DerivationTree {
  Symbol label;
  /// Set on expanded nonterminal nodes; children then spell the rule's rhs.
  std::optional<std::size_t> rule;
  std::vector<DerivationTree> children;

  static DerivationTree leaf(Symbol s) { return {std::move(s), std::nullopt, {}}; }

  friend bool operator==(const DerivationTree&, const DerivationTree&) = default;
};

std::size_t dimension(const DerivationTree& t);
std::size_t node_count(const DerivationTree& t);
/// No unexpanded nonterminal leaves.
bool is_complete(const DerivationTree& t);
std::vector<Symbol> yield_word(const DerivationTree& t);
Monomial yield_monomial(const Semiring& sr, const DerivationTree& t);
/// Checks every expanded node against its rule.
bool well_formed(const Cfg& g, const DerivationTree& t);

/// All trees from `root` with at most `max_nodes` nodes and dimension at most
/// `max_dim`, ordered by node count (rules in declaration order within a
/// size).
std::vector<DerivationTree> enumerate_trees(const Cfg& g, VarId root,
                                            std::size_t max_nodes,
                                            std::size_t max_dim,
                                            bool complete_only);

struct TreeSumOptions {
  bool complete_only = true;
  /// Upper limit on tree size; exceeding it ends the search unstabilized.
  std::size_t node_budget = 5000;
  /// Unchanged budget increments needed before the sum counts as stable.
  std::size_t window = 3;
  /// Value of an unexpanded leaf x (ignored for complete trees). When empty,
  /// incomplete trees are not counted.
  std::optional<ValueVector> leaf_values;
  /// First budget tried; 0 picks max(32, 4 * symbols in g).
  std::size_t initial_budget = 0;
};

struct TreeSums {
  ValueVector value;
  bool stabilized = false;
  /// The node budget at which the search stopped.
  std::size_t nodes = 0;
};

/// Sum of <yield(t)> over the trees of dimension <= dim_bound from every
/// nonterminal, by size-indexed dynamic programming. The node budget grows
/// by 25% per increment.
TreeSums tree_sums(const Cfg& g, std::size_t dim_bound,
                   const TreeSumOptions& opts = {});

struct TreeSum {
  Value value;
  bool stabilized = false;
  std::size_t nodes = 0;
};

TreeSum tree_sum(const Cfg& g, VarId root, std::size_t dim_bound,
                 const TreeSumOptions& opts = {});

struct Decomposition {
  DerivationTree outer;
  std::vector<DerivationTree> parts;
};

/// Cuts t at its maximal nonterminal-rooted subtrees of dimension <= m; each
/// is replaced in `outer` by an unexpanded leaf. Needs dimension(t) <= 2m.
Decomposition decompose(const DerivationTree& t, std::size_t m);
/// Fills the unexpanded nonterminal leaves of `outer` left to right.
DerivationTree regraft(const DerivationTree& outer,
                       const std::vector<DerivationTree>& parts);

}  // namespace munch
