#include "munch/polynomial.hpp"

#include <algorithm>
#include <set>

#include "munch/error.hpp"

namespace munch {

VarSet::VarSet(std::vector<std::string> names) : names_(std::move(names)) {
  std::set<std::string> seen;
  for (const auto& n : names_) {
    if (n.empty()) throw PreconditionError("empty variable name");
    if (!seen.insert(n).second) {
      throw PreconditionError("duplicate variable '" + n + "'");
    }
  }
}

std::optional<VarId> VarSet::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return static_cast<VarId>(i);
  }
  return std::nullopt;
}

Monomial::Monomial(Value constant) : coefficients_{std::move(constant)} {}

Monomial::Monomial(std::vector<Value> coefficients, std::vector<VarId> variables)
    : coefficients_(std::move(coefficients)), variables_(std::move(variables)) {
  if (coefficients_.size() != variables_.size() + 1) {
    throw PreconditionError(
        "monomial needs exactly one more coefficient than variables");
  }
}

Monomial Monomial::variable(const Semiring& sr, VarId x) {
  return Monomial({sr.one(), sr.one()}, {x});
}

std::size_t Monomial::occurrences(VarId x) const {
  return static_cast<std::size_t>(
      std::count(variables_.begin(), variables_.end(), x));
}

bool Monomial::is_zero(const Semiring& sr) const {
  const Value z = sr.zero();
  return std::any_of(coefficients_.begin(), coefficients_.end(),
                     [&](const Value& c) { return c == z; });
}

Monomial concat(const Semiring& sr, const Monomial& lhs, const Monomial& rhs) {
  std::vector<Value> coeffs(lhs.coefficients().begin(),
                            lhs.coefficients().end() - 1);
  coeffs.push_back(sr.mul(lhs.coefficients().back(), rhs.coefficients().front()));
  coeffs.insert(coeffs.end(), rhs.coefficients().begin() + 1,
                rhs.coefficients().end());
  std::vector<VarId> vars = lhs.variables();
  vars.insert(vars.end(), rhs.variables().begin(), rhs.variables().end());
  return Monomial(std::move(coeffs), std::move(vars));
}

OccurrenceSplit split_at(const Monomial& m, std::size_t position) {
  if (position >= m.degree()) {
    throw PreconditionError("occurrence index out of range");
  }
  const auto& c = m.coefficients();
  const auto& v = m.variables();
  Monomial left(std::vector<Value>(c.begin(), c.begin() + position + 1),
                std::vector<VarId>(v.begin(), v.begin() + position));
  Monomial right(std::vector<Value>(c.begin() + position + 1, c.end()),
                 std::vector<VarId>(v.begin() + position + 1, v.end()));
  return {std::move(left), v[position], std::move(right)};
}

Polynomial::Polynomial(const Semiring& sr, std::vector<Monomial> monomials) {
  for (auto& m : monomials) add(sr, std::move(m));
}

Polynomial Polynomial::variable(const Semiring& sr, VarId x) {
  return Polynomial(sr, {Monomial::variable(sr, x)});
}

Polynomial Polynomial::constant(const Semiring& sr, const Value& c) {
  return Polynomial(sr, {Monomial(c)});
}

void Polynomial::add(const Semiring& sr, Monomial m) {
  for (const Value& c : m.coefficients()) {
    if (!sr.owns(c)) {
      throw InstanceMismatch("coefficient does not belong to '" + sr.name() +
                             "'");
    }
  }
  if (!m.is_zero(sr)) monomials_.push_back(std::move(m));
}

bool Polynomial::is_linear() const {
  return std::all_of(monomials_.begin(), monomials_.end(),
                     [](const Monomial& m) { return m.degree() <= 1; });
}

bool Polynomial::has_constant_monomial() const {
  return std::any_of(monomials_.begin(), monomials_.end(),
                     [](const Monomial& m) { return m.is_constant(); });
}

Polynomial sum(const Semiring& sr, const Polynomial& p, const Polynomial& q) {
  Polynomial r = p;
  for (const auto& m : q.monomials()) r.add(sr, m);
  return r;
}

Polynomial product(const Semiring& sr, const Polynomial& p,
                   const Polynomial& q) {
  Polynomial r;
  for (const auto& m : p.monomials()) {
    for (const auto& n : q.monomials()) r.add(sr, concat(sr, m, n));
  }
  return r;
}

Polynomial canonicalize(const Semiring& sr, const Polynomial& p) {
  if (!sr.idempotent()) return p;
  std::set<Monomial> seen;
  Polynomial r;
  for (const auto& m : p.monomials()) {
    if (seen.insert(m).second) r.add(sr, m);
  }
  return r;
}

namespace {

const Value& lookup(std::span<const Value> at, VarId x) {
  if (x >= at.size()) {
    throw MissingBinding("no value bound for variable #" + std::to_string(x));
  }
  return at[x];
}

}  // namespace

Value eval(const Semiring& sr, const Monomial& m, std::span<const Value> at) {
  Value acc = m.coefficients().front();
  for (std::size_t i = 0; i < m.degree(); ++i) {
    acc = sr.mul(acc, lookup(at, m.variables()[i]));
    acc = sr.mul(acc, m.coefficients()[i + 1]);
  }
  return acc;
}

Value eval(const Semiring& sr, const Polynomial& p, std::span<const Value> at) {
  Value acc = sr.zero();
  for (const auto& m : p.monomials()) acc = sr.add(acc, eval(sr, m, at));
  return acc;
}

std::vector<Value> eval(const Semiring& sr, std::span<const Polynomial> ps,
                        std::span<const Value> at) {
  std::vector<Value> out;
  out.reserve(ps.size());
  for (const auto& p : ps) out.push_back(eval(sr, p, at));
  return out;
}

Polynomial compose(const Semiring& sr, const Polynomial& p,
                   std::span<const Polynomial> w) {
  Polynomial result;
  for (const auto& m : p.monomials()) {
    Polynomial acc = Polynomial::constant(sr, m.coefficients().front());
    for (std::size_t i = 0; i < m.degree(); ++i) {
      const VarId x = m.variables()[i];
      if (x >= w.size()) {
        throw MissingBinding("no polynomial bound for variable #" +
                             std::to_string(x));
      }
      acc = product(sr, acc, w[x]);
      acc = product(sr, acc,
                    Polynomial::constant(sr, m.coefficients()[i + 1]));
    }
    result = sum(sr, result, acc);
  }
  return result;
}

std::vector<Polynomial> apply_substitution(const Semiring& sr,
                                           const Polynomial& f, VarId x,
                                           const Polynomial& g) {
  std::vector<Polynomial> out;
  const auto& ms = f.monomials();
  for (std::size_t i = 0; i < ms.size(); ++i) {
    for (std::size_t pos = 0; pos < ms[i].degree(); ++pos) {
      if (ms[i].variables()[pos] != x) continue;
      const OccurrenceSplit split = split_at(ms[i], pos);
      Polynomial replaced;
      for (std::size_t j = 0; j < ms.size(); ++j) {
        if (j != i) {
          replaced.add(sr, ms[j]);
          continue;
        }
        for (const auto& h : g.monomials()) {
          replaced.add(sr, concat(sr, concat(sr, split.left, h), split.right));
        }
      }
      out.push_back(std::move(replaced));
    }
  }
  return out;
}

Polynomial differential(const Semiring& sr, const Polynomial& p, VarId x,
                        std::span<const Value> at) {
  // Fully unfolding the product rule leaves one summand per occurrence of x:
  // every other symbol is evaluated at `at`.
  Polynomial d;
  for (const auto& m : p.monomials()) {
    for (std::size_t pos = 0; pos < m.degree(); ++pos) {
      if (m.variables()[pos] != x) continue;
      const OccurrenceSplit split = split_at(m, pos);
      d.add(sr, Monomial({eval(sr, split.left, at), eval(sr, split.right, at)},
                         {x}));
    }
  }
  return d;
}

std::vector<Polynomial> differential_full(const Semiring& sr,
                                          std::span<const Polynomial> ps,
                                          std::span<const Value> at) {
  std::vector<Polynomial> out;
  out.reserve(ps.size());
  for (const auto& p : ps) {
    Polynomial d;
    for (VarId y = 0; y < at.size(); ++y) d = sum(sr, d, differential(sr, p, y, at));
    // Occurrences of variables outside `at` cannot be evaluated.
    for (const auto& m : p.monomials()) {
      for (VarId v : m.variables()) lookup(at, v);
    }
    out.push_back(std::move(d));
  }
  return out;
}

std::string render(const Semiring& sr, const Monomial& m, const VarSet& vars,
                   bool show_units) {
  const Value one = sr.one();
  std::vector<std::string> parts;
  for (std::size_t i = 0; i < m.coefficients().size(); ++i) {
    const Value& c = m.coefficients()[i];
    if (show_units || c != one || m.is_constant()) parts.push_back(sr.render(c));
    if (i < m.degree()) parts.push_back(vars.name(m.variables()[i]));
  }
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) s += '*';
    s += parts[i];
  }
  return s;
}

std::string render(const Semiring& sr, const Polynomial& p, const VarSet& vars,
                   bool show_units) {
  if (p.is_zero()) return sr.render(sr.zero());
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += " + ";
    s += render(sr, p.monomials()[i], vars, show_units);
  }
  return s;
}

EquationSystem::EquationSystem(Semiring sr, VarSet vars,
                               std::vector<Polynomial> f, ValueVector a)
    : semiring_(std::move(sr)),
      vars_(std::move(vars)),
      f_(std::move(f)),
      a_(std::move(a)) {
  if (f_.size() != vars_.size() || a_.size() != vars_.size()) {
    throw PreconditionError("equation system needs one f_x and a_x per variable");
  }
  for (const auto& p : f_) {
    for (const auto& m : p.monomials()) {
      if (m.is_constant()) {
        throw PreconditionError("f must not contain constant monomials");
      }
      for (VarId v : m.variables()) {
        if (v >= vars_.size()) {
          throw PreconditionError("f refers to an undeclared variable");
        }
      }
      for (const auto& c : m.coefficients()) {
        if (!semiring_.owns(c)) {
          throw InstanceMismatch("coefficient outside '" + semiring_.name() +
                                 "'");
        }
      }
    }
  }
  for (const auto& c : a_) {
    if (!semiring_.owns(c)) {
      throw InstanceMismatch("constant outside '" + semiring_.name() + "'");
    }
  }
}

EquationSystem EquationSystem::from_right_hand_sides(Semiring sr, VarSet vars,
                                                     std::vector<Polynomial> p) {
  std::vector<Polynomial> f(p.size());
  ValueVector a(p.size(), sr.zero());
  for (std::size_t x = 0; x < p.size(); ++x) {
    for (const auto& m : p[x].monomials()) {
      if (m.is_constant()) {
        a[x] = sr.add(a[x], m.coefficients().front());
      } else {
        f[x].add(sr, m);
      }
    }
  }
  return EquationSystem(std::move(sr), std::move(vars), std::move(f),
                        std::move(a));
}

std::vector<Polynomial> EquationSystem::right_hand_sides() const {
  std::vector<Polynomial> p = f_;
  for (std::size_t x = 0; x < p.size(); ++x) {
    p[x].add(semiring_, Monomial(a_[x]));
  }
  return p;
}

ValueVector EquationSystem::apply(const ValueVector& v) const {
  ValueVector out = eval(semiring_, f_, v);
  for (std::size_t x = 0; x < out.size(); ++x) {
    out[x] = semiring_.add(out[x], a_[x]);
  }
  return out;
}

std::size_t EquationSystem::max_degree() const {
  std::size_t d = 0;
  for (const auto& p : f_) {
    for (const auto& m : p.monomials()) d = std::max(d, m.degree());
  }
  return d;
}

}  // namespace munch
