#include <gtest/gtest.h>

#include <random>

#include "munch/error.hpp"
#include "munch/semiring.hpp"
#include "support/random_system.hpp"

namespace munch {
namespace {

using testing::random_value;

// Checks the semiring axioms on one triple; returns the first violated law.
std::string violated_law(const Semiring& sr, const Value& a, const Value& b,
                         const Value& c) {
  const Value z = sr.zero();
  const Value e = sr.one();
  if (sr.add(sr.add(a, b), c) != sr.add(a, sr.add(b, c))) return "add assoc";
  if (sr.add(a, b) != sr.add(b, a)) return "add comm";
  if (sr.add(a, z) != a) return "add unit";
  if (sr.mul(sr.mul(a, b), c) != sr.mul(a, sr.mul(b, c))) return "mul assoc";
  if (sr.mul(a, e) != a || sr.mul(e, a) != a) return "mul unit";
  if (sr.mul(a, sr.add(b, c)) != sr.add(sr.mul(a, b), sr.mul(a, c))) return "left distrib";
  if (sr.mul(sr.add(a, b), c) != sr.add(sr.mul(a, c), sr.mul(b, c))) return "right distrib";
  if (sr.mul(a, z) != z || sr.mul(z, a) != z) return "absorption";
  if (sr.idempotent() && sr.add(a, a) != a) return "idempotence";
  if (sr.commutative() && sr.mul(a, b) != sr.mul(b, a)) return "mul comm";
  const Value s = sr.star(a);
  if (s != sr.add(e, sr.mul(a, s)) || s != sr.add(e, sr.mul(s, a))) return "star unfold";
  if (!sr.leq(a, sr.add(a, b))) return "a <= a + b";
  if (sr.idempotent() && sr.leq(a, b)) {
    if (!sr.leq(sr.add(a, c), sr.add(b, c))) return "monotone add";
    if (!sr.leq(sr.mul(a, c), sr.mul(b, c))) return "monotone mul right";
    if (!sr.leq(sr.mul(c, a), sr.mul(c, b))) return "monotone mul left";
  }
  return "";
}

void check_exhaustive(const Semiring& sr) {
  const auto elems = sr.elements();
  for (const auto& a : elems) {
    for (const auto& b : elems) {
      for (const auto& c : elems) {
        const std::string law = violated_law(sr, a, b, c);
        ASSERT_EQ(law, "") << sr.name() << ": " << sr.render(a) << ", "
                           << sr.render(b) << ", " << sr.render(c);
      }
    }
  }
}

void check_sampled(const Semiring& sr, ExtNat max_value, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (int i = 0; i < 2000; ++i) {
    const Value a = random_value(sr, rng, max_value);
    const Value b = random_value(sr, rng, max_value);
    const Value c = random_value(sr, rng, max_value);
    const std::string law = violated_law(sr, a, b, c);
    ASSERT_EQ(law, "") << sr.name() << ": " << sr.render(a) << ", "
                       << sr.render(b) << ", " << sr.render(c);
  }
}

TEST(SemiringLaws, BooleanExhaustive) { check_exhaustive(Semiring::boolean()); }
TEST(SemiringLaws, RelationDim2Exhaustive) { check_exhaustive(Semiring::relation(2)); }
TEST(SemiringLaws, FunctionTablesOverBooleanOneVar) {
  check_exhaustive(Semiring::function_table(Semiring::boolean(), 1));
}
TEST(SemiringLaws, FunctionTablesOverBooleanTwoVarsSampledTriples) {
  // 16 tables; 4096 triples.
  check_exhaustive(Semiring::function_table(Semiring::boolean(), 2));
}
TEST(SemiringLaws, MinPlusSampled) { check_sampled(Semiring::min_plus(), 20, 11); }
TEST(SemiringLaws, CountingSampled) { check_sampled(Semiring::counting(), 20, 12); }
TEST(SemiringLaws, RelationDim3Sampled) { check_sampled(Semiring::relation(3), 0, 13); }

TEST(Semiring, SpecExamples) {
  const auto mp = Semiring::min_plus();
  EXPECT_EQ(mp.add(mp.from_nat(3), mp.from_nat(7)), mp.from_nat(3));
  EXPECT_EQ(mp.mul(mp.from_nat(3), mp.from_nat(7)), mp.from_nat(10));
  EXPECT_TRUE(mp.leq(mp.from_nat(7), mp.from_nat(3)));
  EXPECT_EQ(mp.star(mp.from_nat(5)), mp.one());
  EXPECT_EQ(mp.one(), mp.from_nat(0));

  const auto cnt = Semiring::counting();
  EXPECT_EQ(cnt.add(cnt.from_nat(2), cnt.from_nat(2)), cnt.from_nat(4));
  EXPECT_EQ(cnt.mul(cnt.from_nat(kInfinity), cnt.zero()), cnt.zero());
  EXPECT_EQ(cnt.star(cnt.zero()), cnt.one());
  EXPECT_EQ(cnt.star(cnt.from_nat(1)), cnt.from_nat(kInfinity));
  EXPECT_EQ(cnt.star(cnt.from_nat(3)), cnt.from_nat(kInfinity));

  const auto b = Semiring::boolean();
  EXPECT_EQ(b.add(b.one(), b.one()), b.one());
  EXPECT_TRUE(b.leq(b.zero(), b.one()));
  EXPECT_EQ(b.star(b.zero()), b.one());
}

TEST(Semiring, CountingIsNotIdempotent) {
  const auto cnt = Semiring::counting();
  EXPECT_FALSE(cnt.idempotent());
  EXPECT_NE(cnt.add(cnt.one(), cnt.one()), cnt.one());
}

TEST(Semiring, CountingSaturatesAtCap) {
  const auto cnt = Semiring::counting(100);
  EXPECT_EQ(cnt.add(cnt.from_nat(60), cnt.from_nat(60)), cnt.from_nat(kInfinity));
  EXPECT_EQ(cnt.mul(cnt.from_nat(10), cnt.from_nat(10)), cnt.from_nat(100));
  EXPECT_EQ(cnt.from_nat(101), cnt.from_nat(kInfinity));
}

TEST(Semiring, IdempotenceFlagsMatchBehaviour) {
  for (const auto& sr : {Semiring::boolean(), Semiring::min_plus(), Semiring::relation(2)}) {
    EXPECT_TRUE(sr.idempotent()) << sr.name();
  }
  EXPECT_TRUE(Semiring::min_plus().commutative());
  EXPECT_FALSE(Semiring::relation(2).commutative());
  EXPECT_TRUE(Semiring::relation(1).commutative());
}

TEST(Semiring, RelationOrderIsInclusion) {
  const auto sr = Semiring::relation(2);
  for (std::uint64_t r = 0; r < 16; ++r) {
    for (std::uint64_t s = 0; s < 16; ++s) {
      const BoolMatrix a = BoolMatrix::from_bits(2, r);
      const BoolMatrix b = BoolMatrix::from_bits(2, s);
      EXPECT_EQ(sr.leq(sr.from_matrix(a), sr.from_matrix(b)), a.subset_of(b));
    }
  }
}

TEST(Semiring, RelationStarMatchesIteratedClosure) {
  const auto sr = Semiring::relation(2);
  for (std::uint64_t r = 0; r < 16; ++r) {
    const BoolMatrix a = BoolMatrix::from_bits(2, r);
    BoolMatrix m = BoolMatrix::identity(2);
    while (true) {
      const BoolMatrix next = BoolMatrix::identity(2) | (a * m);
      if (next == m) break;
      m = next;
    }
    EXPECT_EQ(sr.star(sr.from_matrix(a)).as_matrix(), m);
  }
}

TEST(Semiring, MulWithIdentityRelation) {
  const auto sr = Semiring::relation(2);
  const Value r = sr.parse_literal("[[0,1],[1,1]]");
  EXPECT_EQ(sr.mul(sr.one(), r), r);
  EXPECT_EQ(sr.render(r), "[[0,1],[1,1]]");
}

TEST(Semiring, InstancesDoNotMix) {
  const auto mp = Semiring::min_plus();
  const auto cnt = Semiring::counting();
  EXPECT_THROW(mp.add(mp.one(), cnt.one()), InstanceMismatch);
  EXPECT_THROW(Semiring::relation(2).mul(Semiring::relation(2).one(),
                                         Semiring::relation(3).one()),
               InstanceMismatch);
  EXPECT_THROW(mp.leq(mp.one(), Semiring::boolean().one()), InstanceMismatch);
}

TEST(Semiring, LiteralsRoundTrip) {
  const auto mp = Semiring::min_plus();
  EXPECT_EQ(mp.parse_literal("inf"), mp.zero());
  EXPECT_EQ(mp.render(mp.parse_literal("17")), "17");
  EXPECT_THROW(mp.parse_literal("-1"), Error);
  EXPECT_THROW(Semiring::boolean().parse_literal("2"), Error);
  EXPECT_THROW(Semiring::relation(2).parse_literal("[[0,1]]"), Error);
}

TEST(FunctionSemiring, BooleanOneVarHasFourTables) {
  const FunctionSpace fs(Semiring::boolean(), 1);
  EXPECT_EQ(fs.domain_size(), 2u);
  EXPECT_EQ(fs.semiring().elements().size(), 4u);
  EXPECT_TRUE(fs.semiring().idempotent());
  EXPECT_TRUE(fs.semiring().finite());
}

TEST(FunctionSemiring, ConstantTablesAddPointwise) {
  const auto b = Semiring::boolean();
  const FunctionSpace fs(b, 1);
  const auto& sr = fs.semiring();
  EXPECT_EQ(sr.add(fs.constant(b.zero()), fs.constant(b.one())), fs.constant(b.one()));
}

TEST(FunctionSemiring, ZeroTableAbsorbsAllSixteen) {
  const FunctionSpace fs(Semiring::boolean(), 2);
  const auto& sr = fs.semiring();
  const auto tables = sr.elements();
  ASSERT_EQ(tables.size(), 16u);
  for (const auto& t : tables) {
    EXPECT_EQ(sr.mul(t, sr.zero()), sr.zero());
    EXPECT_EQ(sr.mul(sr.zero(), t), sr.zero());
  }
}

TEST(FunctionSemiring, ProjectionAndApply) {
  const auto mp = Semiring::min_plus();
  EXPECT_THROW(FunctionSpace(mp, 1), PreconditionError);
  const auto r = Semiring::relation(1);
  const FunctionSpace fs(r, 2);
  for (std::size_t i = 0; i < fs.domain_size(); ++i) {
    const ValueVector p = fs.point(i);
    EXPECT_EQ(fs.index_of(p), i);
    EXPECT_EQ(fs.apply(fs.projection(1), p), p[1]);
  }
}

TEST(FunctionSemiring, InheritsCommutativity) {
  EXPECT_FALSE(Semiring::function_table(Semiring::relation(2), 1).commutative());
  EXPECT_TRUE(Semiring::function_table(Semiring::boolean(), 1).commutative());
}

TEST(ValueVectors, RenderAndCompare) {
  const auto cnt = Semiring::counting();
  const ValueVector v{cnt.from_nat(0), cnt.from_nat(2), cnt.from_nat(2)};
  EXPECT_EQ(render(cnt, v), "(0, 2, 2)");
  EXPECT_TRUE(leq(cnt, v, add(cnt, v, v)));
}

}  // namespace
}  // namespace munch
