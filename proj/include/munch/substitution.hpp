#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "munch/polynomial.hpp"

namespace munch {

/// One link of a linear substitution chain: `variable` is replaced by monomial
/// `monomial` of f_variable and the chain continues at `occurrence` of that
/// monomial. The final link has no monomial ({variable -> variable}).
struct SubstitutionStep {
  VarId variable = 0;
  std::optional<std::size_t> monomial;
  std::size_t occurrence = 0;

  friend bool operator==(const SubstitutionStep&,
                         const SubstitutionStep&) = default;
};

using SubstitutionTrace = std::vector<SubstitutionStep>;

struct MonomialSubstitution {
  SubstitutionTrace trace;
  Monomial result;
};

/// All x.tau_x reachable with at most `max_steps` monomial insertions,
/// starting with the identity. A chain that stops right after inserting m is
/// recorded once, continuing at occurrence 0.
std::vector<MonomialSubstitution> enumerate_linear_monomial_substitutions(
    const EquationSystem& sys, VarId x, std::size_t max_steps);

/// All x.sigma_x with at most `max_steps` insertions of full polynomials f_y.
std::vector<Polynomial> enumerate_linear_polynomial_substitutions(
    const EquationSystem& sys, VarId x, std::size_t max_steps);

/// Sum of the monomial substitution results; duplicates are dropped on
/// idempotent instances.
Polynomial completion_by_monomials(const EquationSystem& sys, VarId x,
                                   std::size_t max_steps);
/// Sum of the polynomial substitution results, flattened.
Polynomial completion_by_polynomials(const EquationSystem& sys, VarId x,
                                     std::size_t max_steps);

}  // namespace munch
