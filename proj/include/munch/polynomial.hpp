#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "munch/semiring.hpp"

namespace munch {

using VarId = std::uint32_t;

/// Ordered, duplicate-free set of variable names. A variable's id is its
/// position in declaration order.
class VarSet {
 public:
  VarSet() = default;
  explicit VarSet(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  const std::string& name(VarId x) const { return names_.at(x); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<VarId> find(std::string_view name) const;

  friend bool operator==(const VarSet&, const VarSet&) = default;

 private:
  std::vector<std::string> names_;
};

/// c0 * v1 * c1 * ... * vl * cl with coefficients and variables strictly
/// alternating. Unit coefficients are stored explicitly.
class Monomial {
 public:
  explicit Monomial(Value constant);
  /// Needs coefficients.size() == variables.size() + 1.
  Monomial(std::vector<Value> coefficients, std::vector<VarId> variables);

  /// 1 * x * 1
  static Monomial variable(const Semiring& sr, VarId x);

  std::size_t degree() const { return variables_.size(); }
  bool is_constant() const { return variables_.empty(); }
  const std::vector<Value>& coefficients() const { return coefficients_; }
  const std::vector<VarId>& variables() const { return variables_; }
  std::size_t occurrences(VarId x) const;
  bool is_zero(const Semiring& sr) const;

  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend auto operator<=>(const Monomial&, const Monomial&) = default;

 private:
  std::vector<Value> coefficients_;
  std::vector<VarId> variables_;
};

/// lhs * rhs; the two boundary coefficients are merged.
Monomial concat(const Semiring& sr, const Monomial& lhs, const Monomial& rhs);

/// m = left * variable * right around the variable at `position`
/// (0-based, left to right).
struct OccurrenceSplit {
  Monomial left;
  VarId variable;
  Monomial right;
};
OccurrenceSplit split_at(const Monomial& m, std::size_t position);

/// A finite sum of non-zero monomials. The empty sum is 0.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(const Semiring& sr, std::vector<Monomial> monomials);

  static Polynomial variable(const Semiring& sr, VarId x);
  static Polynomial constant(const Semiring& sr, const Value& c);

  /// Appends `m` unless it is the zero monomial.
  void add(const Semiring& sr, Monomial m);

  const std::vector<Monomial>& monomials() const { return monomials_; }
  std::size_t size() const { return monomials_.size(); }
  bool is_zero() const { return monomials_.empty(); }
  /// Every monomial has at most one variable occurrence.
  bool is_linear() const;
  bool has_constant_monomial() const;

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  std::vector<Monomial> monomials_;
};

Polynomial sum(const Semiring& sr, const Polynomial& p, const Polynomial& q);
Polynomial product(const Semiring& sr, const Polynomial& p,
                   const Polynomial& q);
/// Drops duplicate monomials (first occurrence wins) when the instance is
/// idempotent; identity otherwise.
Polynomial canonicalize(const Semiring& sr, const Polynomial& p);

Value eval(const Semiring& sr, const Monomial& m, std::span<const Value> at);
Value eval(const Semiring& sr, const Polynomial& p, std::span<const Value> at);
std::vector<Value> eval(const Semiring& sr, std::span<const Polynomial> ps,
                        std::span<const Value> at);

/// Substitutes w[x] for every occurrence of x and expands by distributivity.
Polynomial compose(const Semiring& sr, const Polynomial& p,
                   std::span<const Polynomial> w);

/// f{x -> g}: one polynomial per occurrence of x in f (ordered by monomial
/// index, then occurrence), each with exactly that occurrence replaced.
std::vector<Polynomial> apply_substitution(const Semiring& sr,
                                           const Polynomial& f, VarId x,
                                           const Polynomial& g);

/// D_x p at v: one monomial eval(left) * x * eval(right) per occurrence of x.
/// The result is linear in x, or zero.
Polynomial differential(const Semiring& sr, const Polynomial& p, VarId x,
                        std::span<const Value> at);
/// (D p|v)_x = sum over y of D_y p_x at v, componentwise.
std::vector<Polynomial> differential_full(const Semiring& sr,
                                          std::span<const Polynomial> ps,
                                          std::span<const Value> at);

std::string render(const Semiring& sr, const Monomial& m, const VarSet& vars,
                   bool show_units = false);
std::string render(const Semiring& sr, const Polynomial& p, const VarSet& vars,
                   bool show_units = false);

/// x = f(x) + a with f free of constant monomials.
class EquationSystem {
 public:
  EquationSystem(Semiring sr, VarSet vars, std::vector<Polynomial> f,
                 ValueVector a);

  /// Splits each right-hand side into its constant part a_x (the sum of its
  /// constant monomials) and the rest f_x.
  static EquationSystem from_right_hand_sides(Semiring sr, VarSet vars,
                                              std::vector<Polynomial> p);

  const Semiring& semiring() const { return semiring_; }
  const VarSet& vars() const { return vars_; }
  std::size_t size() const { return vars_.size(); }
  const std::vector<Polynomial>& f() const { return f_; }
  const Polynomial& f(VarId x) const { return f_.at(x); }
  const ValueVector& a() const { return a_; }

  /// p_x = f_x + a_x
  std::vector<Polynomial> right_hand_sides() const;
  /// f(v) + a, one Kleene step.
  ValueVector apply(const ValueVector& v) const;
  /// Largest number of variable occurrences in any monomial.
  std::size_t max_degree() const;

 private:
  Semiring semiring_;
  VarSet vars_;
  std::vector<Polynomial> f_;
  ValueVector a_;
};

}  // namespace munch
