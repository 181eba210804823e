#include "munch/tensor.hpp"

#include "munch/error.hpp"

namespace munch {

namespace {

void require_relation(const Semiring& base, const Value& a) {
  if (!base.owns(a)) {
    throw InstanceMismatch("value does not belong to '" + base.name() + "'");
  }
}

}  // namespace

Value AdmissibleOps::transpose(const Value& a) const {
  require_relation(base, a);
  return base.from_matrix(a.as_matrix().transposed());
}

Value AdmissibleOps::tensor_product(const Value& a, const Value& b) const {
  require_relation(base, a);
  require_relation(base, b);
  const std::size_t q = base.relation_dim();
  const BoolMatrix& x = a.as_matrix();
  const BoolMatrix& y = b.as_matrix();
  BoolMatrix t(q * q);
  for (std::size_t i1 = 0; i1 < q; ++i1) {
    for (std::size_t j1 = 0; j1 < q; ++j1) {
      if (!x.get(i1, j1)) continue;
      for (std::size_t i2 = 0; i2 < q; ++i2) {
        for (std::size_t j2 = 0; j2 < q; ++j2) {
          if (y.get(i2, j2)) t.set(i1 * q + i2, j1 * q + j2, true);
        }
      }
    }
  }
  return tensor.from_matrix(t);
}

Value AdmissibleOps::readout(const Value& t) const {
  if (!tensor.owns(t)) {
    throw InstanceMismatch("value does not belong to '" + tensor.name() + "'");
  }
  const std::size_t q = base.relation_dim();
  const BoolMatrix& m = t.as_matrix();
  BoolMatrix r(q);
  for (std::size_t k = 0; k < q; ++k) {
    for (std::size_t i = 0; i < q; ++i) {
      for (std::size_t j = 0; j < q; ++j) {
        if (m.get(k * q + k, i * q + j)) r.set(i, j, true);
      }
    }
  }
  return base.from_matrix(r);
}

AdmissibleOps relation_admissible(std::size_t q) {
  if (q < 1 || q * q > BoolMatrix::kMaxDim) {
    throw PreconditionError("relation_admissible needs 1 <= q <= 4");
  }
  return {Semiring::relation(q), Semiring::relation(q * q)};
}

TwoSidedLinearSystem two_sided_of(const Semiring& sr, const VarSet& vars,
                                  const std::vector<Polynomial>& p) {
  if (p.size() != vars.size()) {
    throw PreconditionError("one polynomial per variable expected");
  }
  TwoSidedLinearSystem sys{sr, vars, zero_vector(sr, vars.size()),
                           std::vector<std::vector<TwoSidedTerm>>(vars.size())};
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (const auto& m : p[i].monomials()) {
      if (m.degree() > 1) throw PreconditionError("system is not linear");
      if (m.is_constant()) {
        sys.constants[i] = sr.add(sys.constants[i], m.coefficients()[0]);
      } else {
        if (m.variables()[0] >= vars.size()) {
          throw PreconditionError("term refers to an undeclared variable");
        }
        sys.terms[i].push_back(
            {m.variables()[0], m.coefficients()[0], m.coefficients()[1]});
      }
    }
  }
  return sys;
}

TwoSidedLinearSystem two_sided_of(const LinearCfg& lg0, const ValueVector& v) {
  const Semiring& sr = lg0.semiring;
  const std::size_t n = lg0.vars.size();
  if (v.size() < n) throw MissingBinding("evaluation point too short");
  TwoSidedLinearSystem sys{sr, lg0.vars, zero_vector(sr, n),
                           std::vector<std::vector<TwoSidedTerm>>(n)};
  for (const auto& rule : lg0.rules) {
    if (rule.lhs.index != 1) {
      throw PreconditionError("two_sided_of needs a level-0 grammar");
    }
    Value left = sr.one();
    Value right = sr.one();
    std::optional<VarId> hole;
    for (const auto& s : rule.rhs) {
      Value factor;
      if (const auto* t = std::get_if<TerminalSym>(&s)) {
        factor = t->value;
      } else if (const auto* y = std::get_if<VarTerminal>(&s)) {
        factor = v[y->var];
      } else {
        const auto& nt = std::get<NonTerm>(s);
        if (hole || nt.index != 1) {
          throw PreconditionError("rule is not linear at index 1");
        }
        hole = nt.var;
        continue;
      }
      if (hole) {
        right = sr.mul(right, factor);
      } else {
        left = sr.mul(left, factor);
      }
    }
    const VarId i = rule.lhs.var;
    if (hole) {
      sys.terms[i].push_back({*hole, left, right});
    } else {
      sys.constants[i] = sr.add(sys.constants[i], left);
    }
  }
  return sys;
}

TensorLinearSystem regularize(const AdmissibleOps& ops,
                              const TwoSidedLinearSystem& sys) {
  if (!(sys.semiring == ops.base)) {
    throw InstanceMismatch("system is not over the admissible base");
  }
  const Value one_t = ops.transpose(ops.base.one());
  TensorLinearSystem t{ops, sys.vars, {}, {}};
  t.terms.resize(sys.terms.size());
  for (std::size_t i = 0; i < sys.terms.size(); ++i) {
    t.constants.push_back(ops.tensor_product(one_t, sys.constants[i]));
    for (std::size_t k = 0; k < sys.terms[i].size(); ++k) {
      const auto& term = sys.terms[i][k];
      t.terms[i].push_back(
          {term.var, ops.tensor_product(ops.transpose(term.left), term.right), k});
    }
  }
  return t;
}

Matrix identity_matrix(const Semiring& sr, std::size_t k) {
  Matrix m(k, std::vector<Value>(k, sr.zero()));
  for (std::size_t i = 0; i < k; ++i) m[i][i] = sr.one();
  return m;
}

Matrix multiply(const Semiring& sr, const Matrix& a, const Matrix& b) {
  const std::size_t k = a.size();
  Matrix r(k, std::vector<Value>(k, sr.zero()));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t l = 0; l < k; ++l) {
      if (sr.is_zero(a[i][l])) continue;
      for (std::size_t j = 0; j < k; ++j) {
        r[i][j] = sr.add(r[i][j], sr.mul(a[i][l], b[l][j]));
      }
    }
  }
  return r;
}

Matrix add(const Semiring& sr, const Matrix& a, const Matrix& b) {
  Matrix r = a;
  for (std::size_t i = 0; i < r.size(); ++i) {
    for (std::size_t j = 0; j < r.size(); ++j) r[i][j] = sr.add(a[i][j], b[i][j]);
  }
  return r;
}

Matrix matrix_star(const Semiring& sr, const Matrix& m) {
  const std::size_t k = m.size();
  for (const auto& row : m) {
    if (row.size() != k) throw PreconditionError("matrix_star needs a square matrix");
  }
  // After round l, a[i][j] sums the non-empty paths i -> j whose inner
  // nodes are all below l + 1.
  Matrix a = m;
  for (std::size_t l = 0; l < k; ++l) {
    const Value s = sr.star(a[l][l]);
    Matrix next = a;
    for (std::size_t i = 0; i < k; ++i) {
      if (sr.is_zero(a[i][l])) continue;
      const Value left = sr.mul(a[i][l], s);
      for (std::size_t j = 0; j < k; ++j) {
        next[i][j] = sr.add(next[i][j], sr.mul(left, a[l][j]));
      }
    }
    a = std::move(next);
  }
  return add(sr, identity_matrix(sr, k), a);
}

Matrix coefficient_matrix(const TensorLinearSystem& t) {
  const Semiring& sr = t.ops.tensor;
  const std::size_t k = t.vars.size();
  Matrix m(k, std::vector<Value>(k, sr.zero()));
  for (std::size_t i = 0; i < k; ++i) {
    for (const auto& term : t.terms[i]) {
      m[term.var][i] = sr.add(m[term.var][i], term.coefficient);
    }
  }
  return m;
}

ValueVector solve_left_linear(const TensorLinearSystem& t) {
  const Semiring& sr = t.ops.tensor;
  const Matrix star = matrix_star(sr, coefficient_matrix(t));
  const std::size_t k = t.vars.size();
  ValueVector y(k, sr.zero());
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      y[i] = sr.add(y[i], sr.mul(t.constants[j], star[j][i]));
    }
  }
  return y;
}

ValueVector readout(const AdmissibleOps& ops, const ValueVector& ys) {
  ValueVector out;
  out.reserve(ys.size());
  for (const auto& y : ys) out.push_back(ops.readout(y));
  return out;
}

TensorPipelineOutcome tensor_pipeline(const EquationSystem& sys, std::size_t n,
                                      const ValueVector& b) {
  const Semiring& sr = sys.semiring();
  if (sr.kind() != SemiringKind::relation) {
    throw PreconditionError("tensor pipeline needs a relation instance");
  }
  if (b.size() != sys.size()) throw MissingBinding("evaluation point too short");
  if (n > 20) throw PreconditionError("tensor pipeline level too large");
  const AdmissibleOps ops = relation_admissible(sr.relation_dim());
  const LinearCfg lg0 = linear_completion_grammar(sys);
  auto complete_at = [&](const ValueVector& v) {
    return readout(ops, solve_left_linear(regularize(ops, two_sided_of(lg0, v))));
  };
  // Level k + 1 is level k evaluated at level k's own result, so level k is
  // the completion applied 2^k times.
  TensorPipelineOutcome out;
  ValueVector v = complete_at(b);
  out.iterates.push_back(v);
  for (std::size_t k = 1; k <= n; ++k) {
    for (std::uint64_t rep = 0; rep < (std::uint64_t{1} << (k - 1)); ++rep) {
      v = complete_at(v);
    }
    out.iterates.push_back(v);
  }
  return out;
}

}  // namespace munch
