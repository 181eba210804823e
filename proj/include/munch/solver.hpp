#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "munch/polynomial.hpp"

namespace munch {

enum class SolveStatus { stabilized, budget_exhausted };

struct SolveOutcome {
  ValueVector value;
  SolveStatus status = SolveStatus::budget_exhausted;
  /// Map applications performed, including the one that confirmed stability.
  std::size_t steps_used = 0;

  bool stabilized() const { return status == SolveStatus::stabilized; }
};

/// u = seed + rhs(u) with every rhs monomial of degree <= 1.
struct LinearSystem {
  Semiring semiring;
  std::vector<Polynomial> rhs;
  ValueVector seed;
};

/// Iterates v -> f(v) + a from 0. `trace`, when given, receives every iterate
/// (starting with 0).
SolveOutcome kleene_solve(const EquationSystem& sys, std::size_t max_iters,
                          std::vector<ValueVector>* trace = nullptr);

/// Least solution of u = seed + rhs(u), iterated from the seed.
SolveOutcome solve_linear(const LinearSystem& lin, std::size_t max_iters);

/// 10 * (|X| + 1) * max(largest finite value in the system, 64).
std::size_t default_linear_budget(const EquationSystem& sys);

struct NewtonOutcome {
  /// nu^(0) ... nu^(k); shorter than requested if a linear solve ran out.
  std::vector<ValueVector> iterates;
  SolveStatus status = SolveStatus::stabilized;
  /// Set when the instance is not idempotent; the iterates then follow the
  /// idempotent definition only.
  bool non_idempotent = false;
};

NewtonOutcome newton_solve(const EquationSystem& sys, std::size_t n_steps,
                           std::size_t max_linear_iters);

/// One JSON object per line: {"step": i, "vector": [...]}.
void write_trace_jsonl(std::ostream& out, const Semiring& sr,
                       const std::vector<ValueVector>& iterates);

}  // namespace munch
