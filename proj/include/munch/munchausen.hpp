#pragma once

#include <cstddef>
#include <cstdint>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "munch/polynomial.hpp"
#include "munch/solver.hpp"

namespace munch {

struct TerminalSym {
  Value value;
  friend bool operator==(const TerminalSym&, const TerminalSym&) = default;
};

/// A variable y used as a terminal symbol.
struct VarTerminal {
  VarId var = 0;
  friend bool operator==(const VarTerminal&, const VarTerminal&) = default;
};

/// y^(index), index >= 1.
struct NonTerm {
  VarId var = 0;
  std::uint64_t index = 1;
  friend bool operator==(const NonTerm&, const NonTerm&) = default;
  friend auto operator<=>(const NonTerm&, const NonTerm&) = default;
};

using LinearSymbol = std::variant<TerminalSym, VarTerminal, NonTerm>;

struct LinearRule {
  NonTerm lhs;
  std::vector<LinearSymbol> rhs;
  friend bool operator==(const LinearRule&, const LinearRule&) = default;
};

struct LinearCfg {
  Semiring semiring;
  VarSet vars;
  std::vector<LinearRule> rules;
  std::size_t level = 0;

  /// x^(2^level)
  NonTerm start(VarId x) const;
  std::uint64_t max_index() const;
  std::uint64_t min_index() const;
};

/// Rules y^(1) -> w(m_l) z^(1) w(m_r), one per occurrence z in a monomial
/// of f_y (other variables stay terminals), then y^(1) -> y.
LinearCfg linear_completion_grammar(const EquationSystem& sys);
/// y^(1) -> z^(1) w(m^z) for every monomial m of f_y and every distinct
/// variable z of m, where m = z * m^z. Needs a commutative instance.
LinearCfg left_linear_completion_grammar(const EquationSystem& sys);

/// Raises every index by k and turns every terminal y into y^(k).
LinearCfg index_shift(const LinearCfg& lg, std::uint64_t k);
/// LG^0 = linear_completion_grammar, LG^(n+1) = LG^n + (LG^n shifted by 2^n).
LinearCfg munchausen_grammar(const EquationSystem& sys, std::size_t n);

/// Every rule has at most one nonterminal of its own index and all others
/// of a strictly lower index.
bool is_linear_per_index(const LinearCfg& lg);

std::string render(const LinearCfg& lg, const LinearSymbol& s);
std::string render(const LinearCfg& lg, const LinearRule& r);
/// Sorted rendered rules after renumbering the used indices densely from 1.
std::vector<std::string> canonical_form(const LinearCfg& lg);
bool structurally_equal(const LinearCfg& a, const LinearCfg& b);

/// Value of every start symbol x^(2^level) once terminals y are read as b_y.
/// Indices are solved lowest first, each as a linear system whose lower
/// nonterminals are constants. On non-idempotent instances every index
/// contributes the sum over its distinct words instead, which stays finite
/// only for acyclic grammars; `budget` then caps the number of words.
SolveOutcome evaluate_grammar(const LinearCfg& lg, const ValueVector& b,
                              std::size_t budget);

/// M_b^(0) ... M_b^(n). Stops early when an evaluation runs out of budget.
struct MunchausenOutcome {
  std::vector<ValueVector> iterates;
  SolveStatus status = SolveStatus::stabilized;
};
MunchausenOutcome munchausen_sequence(const EquationSystem& sys, std::size_t n,
                                      const ValueVector& b, std::size_t budget);

/// Terminal words derivable from x^(2^level) with at most `max_steps` rule
/// applications, as canonical monomials over X.
std::set<Monomial> sentential_forms(const LinearCfg& lg, VarId x,
                                    std::size_t max_steps);

/// Nonterminal y^(1) of the indexed grammar, with stack 1.s (`push`) or s.
struct IndexedNonTerm {
  VarId var = 0;
  bool keeps_stack = false;
  friend bool operator==(const IndexedNonTerm&, const IndexedNonTerm&) = default;
};

using IndexedSymbol = std::variant<TerminalSym, VarTerminal, IndexedNonTerm>;

enum class IndexedRuleKind {
  /// y[1.s] -> w(m_l)[s] z[1.s] w(m_r)[s]
  recursion,
  /// y[1.s] -> y[s]
  pop,
  /// y[0] -> y
  terminal,
};

struct IndexedRule {
  IndexedRuleKind kind;
  VarId lhs = 0;
  std::vector<IndexedSymbol> rhs;
};

struct IndexedGrammar {
  Semiring semiring;
  VarSet vars;
  std::vector<IndexedRule> rules;

  std::size_t count(IndexedRuleKind kind) const;
};

IndexedGrammar indexed_grammar_of(const EquationSystem& sys);
/// The stack of height h becomes index h; height 0 resolves to terminals.
LinearCfg expand_indexed(const IndexedGrammar& ig, std::size_t n);
/// Terminal words derivable from x[1^(2^n) 0]; terminal-rule applications
/// are not counted against `max_steps`.
std::set<Monomial> indexed_sentential_forms(const IndexedGrammar& ig, VarId x,
                                            std::size_t n, std::size_t max_steps);

/// eval_v((Df|_v)^*) as the least solution of u = v + Df|_v(u).
SolveOutcome completion_via_differential_star(const EquationSystem& sys,
                                              const ValueVector& v,
                                              std::size_t budget);

/// C(f)_x as explicit tables S^X -> S, by Kleene iteration over the function
/// semiring on the LG^0 system. Needs a finite instance.
struct CompletionTables {
  Semiring functions;
  ValueVector tables;
  SolveOutcome outcome;
};
CompletionTables completion_function_table(const EquationSystem& sys,
                                           std::size_t budget = 1 << 16);

}  // namespace munch
