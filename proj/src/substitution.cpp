#include "munch/substitution.hpp"

#include "munch/error.hpp"

namespace munch {

namespace {

Monomial replace_occurrence(const Semiring& sr, const Monomial& m,
                            std::size_t pos, const Monomial& inner) {
  const OccurrenceSplit split = split_at(m, pos);
  return concat(sr, concat(sr, split.left, inner), split.right);
}

std::vector<MonomialSubstitution> expand_monomial(const EquationSystem& sys,
                                                  VarId var,
                                                  std::size_t depth) {
  const Semiring& sr = sys.semiring();
  std::vector<MonomialSubstitution> out;
  out.push_back({{{var, std::nullopt, 0}}, Monomial::variable(sr, var)});
  if (depth == 0) return out;
  const auto& ms = sys.f(var).monomials();
  for (std::size_t i = 0; i < ms.size(); ++i) {
    const Monomial& m = ms[i];
    out.push_back({{{var, i, 0}, {m.variables().front(), std::nullopt, 0}}, m});
    for (std::size_t o = 0; o < m.degree(); ++o) {
      const auto inner = expand_monomial(sys, m.variables()[o], depth - 1);
      // inner[0] is the identity, already covered by the stop entry above.
      for (std::size_t k = 1; k < inner.size(); ++k) {
        SubstitutionTrace trace{{var, i, o}};
        trace.insert(trace.end(), inner[k].trace.begin(), inner[k].trace.end());
        out.push_back(
            {std::move(trace), replace_occurrence(sr, m, o, inner[k].result)});
      }
    }
  }
  return out;
}

std::vector<Polynomial> expand_polynomial(const EquationSystem& sys, VarId var,
                                          std::size_t depth) {
  const Semiring& sr = sys.semiring();
  std::vector<Polynomial> out{Polynomial::variable(sr, var)};
  const Polynomial& f = sys.f(var);
  if (depth == 0 || f.is_zero()) return out;
  out.push_back(f);
  const auto& ms = f.monomials();
  for (std::size_t i = 0; i < ms.size(); ++i) {
    for (std::size_t o = 0; o < ms[i].degree(); ++o) {
      const auto inner = expand_polynomial(sys, ms[i].variables()[o], depth - 1);
      for (std::size_t k = 1; k < inner.size(); ++k) {
        Polynomial g;
        for (std::size_t j = 0; j < ms.size(); ++j) {
          if (j != i) {
            g.add(sr, ms[j]);
            continue;
          }
          for (const auto& h : inner[k].monomials()) {
            g.add(sr, replace_occurrence(sr, ms[i], o, h));
          }
        }
        out.push_back(std::move(g));
      }
    }
  }
  return out;
}

void check_var(const EquationSystem& sys, VarId x) {
  if (x >= sys.size()) throw PreconditionError("unknown variable id");
}

}  // namespace

std::vector<MonomialSubstitution> enumerate_linear_monomial_substitutions(
    const EquationSystem& sys, VarId x, std::size_t max_steps) {
  check_var(sys, x);
  return expand_monomial(sys, x, max_steps);
}

std::vector<Polynomial> enumerate_linear_polynomial_substitutions(
    const EquationSystem& sys, VarId x, std::size_t max_steps) {
  check_var(sys, x);
  return expand_polynomial(sys, x, max_steps);
}

Polynomial completion_by_monomials(const EquationSystem& sys, VarId x,
                                   std::size_t max_steps) {
  const Semiring& sr = sys.semiring();
  Polynomial p;
  for (auto& s : enumerate_linear_monomial_substitutions(sys, x, max_steps)) {
    p.add(sr, std::move(s.result));
  }
  return canonicalize(sr, p);
}

Polynomial completion_by_polynomials(const EquationSystem& sys, VarId x,
                                     std::size_t max_steps) {
  const Semiring& sr = sys.semiring();
  Polynomial p;
  for (const auto& g : enumerate_linear_polynomial_substitutions(sys, x, max_steps)) {
    p = sum(sr, p, g);
  }
  return canonicalize(sr, p);
}

}  // namespace munch
