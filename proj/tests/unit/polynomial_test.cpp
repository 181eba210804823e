#include <gtest/gtest.h>

#include <random>

#include "munch/equation_file.hpp"
#include "munch/error.hpp"
#include "munch/polynomial.hpp"
#include "support/random_system.hpp"

namespace munch {
namespace {

using testing::all_vectors;
using testing::random_vector;

EquationSystem square_chain() {
  return parse_equations("semiring counting; vars x y z; x = y*y; y = z; z = 2");
}

Polynomial var(const Semiring& sr, VarId x) { return Polynomial::variable(sr, x); }

TEST(Monomial, CanonicalFormNeedsAlternation) {
  const auto b = Semiring::boolean();
  EXPECT_THROW(Monomial({b.one()}, {0}), PreconditionError);
  const Monomial m = Monomial::variable(b, 3);
  EXPECT_EQ(m.coefficients().size(), 2u);
  EXPECT_EQ(m.variables(), std::vector<VarId>{3});
}

TEST(Monomial, ConcatMergesBoundaryCoefficients) {
  const auto mp = Semiring::min_plus();
  const Monomial l({mp.from_nat(1), mp.from_nat(2)}, {0});
  const Monomial r({mp.from_nat(3), mp.from_nat(4)}, {1});
  const Monomial m = concat(mp, l, r);
  ASSERT_EQ(m.coefficients().size(), 3u);
  EXPECT_EQ(m.coefficients()[1], mp.from_nat(5));
}

TEST(Monomial, SplitAtReassembles) {
  const auto mp = Semiring::min_plus();
  const Monomial m({mp.from_nat(1), mp.from_nat(2), mp.from_nat(3)}, {0, 1});
  const auto s = split_at(m, 1);
  EXPECT_EQ(s.variable, 1u);
  EXPECT_EQ(concat(mp, concat(mp, s.left, Monomial::variable(mp, 1)), s.right), m);
  EXPECT_THROW(split_at(m, 2), PreconditionError);
}

TEST(Polynomial, ZeroMonomialsAreDropped) {
  const auto cnt = Semiring::counting();
  Polynomial p;
  p.add(cnt, Monomial({cnt.from_nat(2), cnt.zero()}, {0}));
  p.add(cnt, Monomial(cnt.zero()));
  EXPECT_TRUE(p.is_zero());
}

TEST(Polynomial, RejectsForeignCoefficients) {
  Polynomial p;
  EXPECT_THROW(p.add(Semiring::boolean(), Monomial(Semiring::min_plus().one())),
               InstanceMismatch);
}

TEST(Eval, CompletionOfYAtSquareChainConstants) {
  const auto sys = square_chain();
  const auto& sr = sys.semiring();
  const Polynomial cy = sum(sr, var(sr, 1), var(sr, 2));
  EXPECT_EQ(eval(sr, cy, sys.a()), sr.from_nat(2));
}

TEST(Eval, ConstantMonomial) {
  const auto mp = Semiring::min_plus();
  std::mt19937_64 rng(1);
  for (int i = 0; i < 10; ++i) {
    const auto v = random_vector(mp, 3, rng);
    EXPECT_EQ(eval(mp, Polynomial::constant(mp, mp.from_nat(5)), v), mp.from_nat(5));
  }
}

TEST(Eval, FirstMunchausenApproximantAtSquareChainConstants) {
  const auto sys = square_chain();
  const auto& sr = sys.semiring();
  // C(f) written out, then composed with itself.
  const Polynomial yy = product(sr, var(sr, 1), var(sr, 1));
  const Polynomial zy = product(sr, var(sr, 2), var(sr, 1));
  const Polynomial yz = product(sr, var(sr, 1), var(sr, 2));
  const std::vector<Polynomial> c{
      sum(sr, sum(sr, sum(sr, var(sr, 0), yy), zy), yz),
      sum(sr, var(sr, 1), var(sr, 2)), var(sr, 2)};
  const Polynomial m1x = compose(sr, c[0], c);
  EXPECT_EQ(eval(sr, m1x, sys.a()), sr.from_nat(12));
}

TEST(Eval, MissingBinding) {
  const auto b = Semiring::boolean();
  const ValueVector v{b.one()};
  EXPECT_THROW(eval(b, var(b, 1), v), MissingBinding);
}

TEST(Compose, SquareChainSecondComponent) {
  const auto sys = square_chain();
  const auto& sr = sys.semiring();
  const std::vector<Polynomial> w{var(sr, 0), sum(sr, var(sr, 1), var(sr, 2)),
                                  var(sr, 2)};
  const Polynomial r = compose(sr, w[1], w);
  const Polynomial expected =
      sum(sr, sum(sr, var(sr, 1), var(sr, 2)), var(sr, 2));
  EXPECT_EQ(r, expected);
}

TEST(Compose, IdentityMap) {
  std::mt19937_64 rng(2);
  const auto mp = Semiring::min_plus();
  for (int i = 0; i < 20; ++i) {
    const auto sys = testing::random_system(mp, rng);
    std::vector<Polynomial> id;
    for (VarId x = 0; x < sys.size(); ++x) id.push_back(var(mp, x));
    for (const auto& p : sys.f()) EXPECT_EQ(compose(mp, p, id), p);
  }
}

TEST(Compose, BooleanSquareOfSumExhaustive) {
  const auto b = Semiring::boolean();
  // x*x with x -> a + b', where a, b' are variables 1 and 2.
  const Polynomial xx = product(b, var(b, 0), var(b, 0));
  const std::vector<Polynomial> w{sum(b, var(b, 1), var(b, 2)), var(b, 1), var(b, 2)};
  const Polynomial r = compose(b, xx, w);
  EXPECT_EQ(r.size(), 4u);
  for (const auto& v : all_vectors(b, 3)) {
    const ValueVector inner = eval(b, w, v);
    EXPECT_EQ(eval(b, r, v), eval(b, xx, inner));
  }
}

TEST(Compose, AgreesWithNestedEvaluationExhaustively) {
  std::mt19937_64 rng(3);
  const auto b = Semiring::boolean();
  testing::SystemShape shape;
  shape.max_vars = 2;
  for (int i = 0; i < 30; ++i) {
    const auto sys = testing::random_system(b, rng, shape);
    const auto outer = testing::random_system(b, rng, shape);
    if (outer.size() != sys.size()) continue;
    for (const auto& p : outer.f()) {
      const Polynomial c = compose(b, p, sys.f());
      for (const auto& v : all_vectors(b, sys.size())) {
        EXPECT_EQ(eval(b, c, v), eval(b, p, eval(b, sys.f(), v)));
      }
    }
  }
}

TEST(ApplySubstitution, AbsentVariableGivesEmptySet) {
  const auto b = Semiring::boolean();
  const Polynomial yy = product(b, var(b, 1), var(b, 1));
  EXPECT_TRUE(apply_substitution(b, yy, 0, var(b, 2)).empty());
}

TEST(ApplySubstitution, OnePolynomialPerOccurrence) {
  const auto cnt = Semiring::counting();
  const Polynomial yy = product(cnt, var(cnt, 1), var(cnt, 1));
  const auto r = apply_substitution(cnt, yy, 1, var(cnt, 2));
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(r[0], product(cnt, var(cnt, 2), var(cnt, 1)));
  EXPECT_EQ(r[1], product(cnt, var(cnt, 1), var(cnt, 2)));
}

TEST(ApplySubstitution, MergesCoefficients) {
  const auto mp = Semiring::min_plus();
  const Polynomial h = Polynomial(mp, {Monomial({mp.from_nat(2), mp.from_nat(3)}, {0})});
  const auto r = apply_substitution(mp, var(mp, 1), 1, h);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0], h);
}

TEST(Differential, BaseCases) {
  const auto cnt = Semiring::counting();
  const ValueVector v{cnt.from_nat(3)};
  EXPECT_TRUE(differential(cnt, Polynomial::constant(cnt, cnt.from_nat(4)), 0, v).is_zero());
  EXPECT_EQ(differential(cnt, var(cnt, 0), 0, v), var(cnt, 0));
}

TEST(Differential, ProductRuleOnSquare) {
  const auto cnt = Semiring::counting();
  const ValueVector v{cnt.zero(), cnt.from_nat(2)};
  const Polynomial yy = product(cnt, var(cnt, 1), var(cnt, 1));
  const Polynomial d = differential(cnt, yy, 1, v);
  // 2*y + y*2, each summand one unfolding of the product rule.
  const Polynomial expected(cnt, {Monomial({cnt.one(), cnt.from_nat(2)}, {1}),
                                  Monomial({cnt.from_nat(2), cnt.one()}, {1})});
  EXPECT_EQ(d, expected);
  EXPECT_EQ(eval(cnt, d, v), cnt.from_nat(8));
}

TEST(Differential, FullOnBooleanSquare) {
  const auto b = Semiring::boolean();
  const ValueVector v{b.one(), b.one()};
  const std::vector<Polynomial> p{product(b, var(b, 1), var(b, 1)), Polynomial()};
  const auto d = differential_full(b, p, v);
  ASSERT_EQ(d.size(), 2u);
  EXPECT_EQ(d[0], sum(b, var(b, 1), var(b, 1)));
  EXPECT_TRUE(d[1].is_zero());
}

TEST(Differential, ConstantOnlyIsZero) {
  const auto mp = Semiring::min_plus();
  const ValueVector v{mp.from_nat(1), mp.from_nat(2)};
  const std::vector<Polynomial> p{Polynomial::constant(mp, mp.from_nat(3)),
                                  Polynomial::constant(mp, mp.one())};
  for (const auto& d : differential_full(mp, p, v)) EXPECT_TRUE(d.is_zero());
}

TEST(Differential, OutputIsLinear) {
  std::mt19937_64 rng(5);
  for (const auto& sr : {Semiring::boolean(), Semiring::min_plus(), Semiring::relation(2)}) {
    for (int i = 0; i < 50; ++i) {
      const auto sys = testing::random_system(sr, rng);
      const auto v = random_vector(sr, sys.size(), rng);
      for (VarId x = 0; x < sys.size(); ++x) {
        for (const auto& p : sys.f()) {
          const Polynomial d = differential(sr, p, x, v);
          for (const auto& m : d.monomials()) {
            ASSERT_EQ(m.degree(), 1u);
            EXPECT_EQ(m.variables()[0], x);
          }
        }
      }
    }
  }
}

TEST(EvalProperties, DistributesOverSum) {
  std::mt19937_64 rng(6);
  for (const auto& sr : {Semiring::boolean(), Semiring::min_plus(), Semiring::counting(),
                         Semiring::relation(2)}) {
    for (int i = 0; i < 100; ++i) {
      const auto sys = testing::random_system(sr, rng);
      const auto v = random_vector(sr, sys.size(), rng);
      const auto& p = sys.f(0);
      const auto& q = sys.f(static_cast<VarId>(sys.size() - 1));
      EXPECT_EQ(eval(sr, sum(sr, p, q), v), sr.add(eval(sr, p, v), eval(sr, q, v)));
    }
  }
}

TEST(EvalProperties, MonotoneInTheArgument) {
  std::mt19937_64 rng(7);
  for (const auto& sr : {Semiring::boolean(), Semiring::min_plus(), Semiring::relation(2)}) {
    for (int i = 0; i < 100; ++i) {
      const auto sys = testing::random_system(sr, rng);
      const auto v = random_vector(sr, sys.size(), rng);
      const auto w = add(sr, v, random_vector(sr, sys.size(), rng));
      ASSERT_TRUE(leq(sr, v, w));
      for (const auto& p : sys.f()) EXPECT_TRUE(sr.leq(eval(sr, p, v), eval(sr, p, w)));
    }
  }
}

TEST(Canonicalize, DropsDuplicatesOnlyWhenIdempotent) {
  const auto b = Semiring::boolean();
  const auto cnt = Semiring::counting();
  const Polynomial pb = sum(b, var(b, 0), var(b, 0));
  const Polynomial pc = sum(cnt, var(cnt, 0), var(cnt, 0));
  EXPECT_EQ(canonicalize(b, pb).size(), 1u);
  EXPECT_EQ(canonicalize(cnt, pc).size(), 2u);
  for (const auto& v : all_vectors(b, 1)) {
    EXPECT_EQ(eval(b, canonicalize(b, pb), v), eval(b, pb, v));
  }
}

TEST(Render, SuppressesUnitsOnRequest) {
  const auto sys = square_chain();
  const auto& sr = sys.semiring();
  EXPECT_EQ(render(sr, sys.f(0), sys.vars()), "y*y");
  EXPECT_EQ(render(sr, sys.f(0), sys.vars(), true), "1*y*1*y*1");
  EXPECT_EQ(render(sr, Polynomial(), sys.vars()), "0");
}

TEST(EquationSystem, SplitsConstants) {
  const auto sys = square_chain();
  const auto& sr = sys.semiring();
  EXPECT_EQ(sys.a(), (ValueVector{sr.zero(), sr.zero(), sr.from_nat(2)}));
  EXPECT_TRUE(sys.f(2).is_zero());
  EXPECT_EQ(sys.max_degree(), 2u);
}

TEST(EquationSystem, RejectsConstantMonomialsInF) {
  const auto b = Semiring::boolean();
  std::vector<Polynomial> f{Polynomial::constant(b, b.one())};
  EXPECT_THROW(EquationSystem(b, VarSet({"x"}), f, {b.zero()}), PreconditionError);
}

}  // namespace
}  // namespace munch
