#pragma once

#include <cstddef>
#include <vector>

#include "munch/munchausen.hpp"
#include "munch/polynomial.hpp"

namespace munch {

/// Transpose, tensor product and readout over a base instance.
struct AdmissibleOps {
  Semiring base;
  Semiring tensor;

  Value transpose(const Value& a) const;
  /// a (x) b in the tensor instance.
  Value tensor_product(const Value& a, const Value& b) const;
  Value readout(const Value& t) const;
};

/// Relations over Q = {0..q-1}. The tensor instance is relation(q*q) with
/// pairs (i1, i2) numbered i1*q + i2; readout(T)[i,j] = OR_k T[(k,k),(i,j)].
/// Needs 1 <= q <= 4.
AdmissibleOps relation_admissible(std::size_t q);

/// a * x_var * b
struct TwoSidedTerm {
  VarId var = 0;
  Value left;
  Value right;
  friend bool operator==(const TwoSidedTerm&, const TwoSidedTerm&) = default;
};

/// x_i = c_i + sum over terms of a_ij x_j b_ij
struct TwoSidedLinearSystem {
  Semiring semiring;
  VarSet vars;
  ValueVector constants;
  std::vector<std::vector<TwoSidedTerm>> terms;
};

/// Splits every monomial of p_i into a constant or a single term. Throws on
/// monomials of degree above one.
TwoSidedLinearSystem two_sided_of(const Semiring& sr, const VarSet& vars,
                                  const std::vector<Polynomial>& p);
/// The level-0 completion grammar read as a linear system at point v:
/// variable terminals take their value from v.
TwoSidedLinearSystem two_sided_of(const LinearCfg& lg0, const ValueVector& v);

/// y_var * coefficient; `source` is the index of the originating two-sided
/// term of the same equation.
struct TensorTerm {
  VarId var = 0;
  Value coefficient;
  std::size_t source = 0;
};

/// y_i = constants_i + sum over terms of y_j * coefficient
struct TensorLinearSystem {
  AdmissibleOps ops;
  VarSet vars;
  ValueVector constants;
  std::vector<std::vector<TensorTerm>> terms;
};

/// y_i = (1^t (x) c_i) + sum_j y_j (a_ij^t (x) b_ij)
TensorLinearSystem regularize(const AdmissibleOps& ops,
                              const TwoSidedLinearSystem& sys);

using Matrix = std::vector<std::vector<Value>>;

Matrix identity_matrix(const Semiring& sr, std::size_t k);
Matrix multiply(const Semiring& sr, const Matrix& a, const Matrix& b);
Matrix add(const Semiring& sr, const Matrix& a, const Matrix& b);
/// Closure by Gauss-Jordan (Lehmann) elimination.
Matrix matrix_star(const Semiring& sr, const Matrix& m);

/// M[j][i] collects the coefficients of y_j in the equation of y_i.
Matrix coefficient_matrix(const TensorLinearSystem& t);
/// Least solution c * M* as a row vector.
ValueVector solve_left_linear(const TensorLinearSystem& t);
ValueVector readout(const AdmissibleOps& ops, const ValueVector& ys);

struct TensorPipelineOutcome {
  /// Level k holds the value at x^(2^k), for k = 0..n.
  std::vector<ValueVector> iterates;
};

/// Solves the completion at b through the tensor instance, then feeds the
/// readout back in as the next evaluation point.
TensorPipelineOutcome tensor_pipeline(const EquationSystem& sys, std::size_t n,
                                      const ValueVector& b);

}  // namespace munch
