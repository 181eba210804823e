#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "munch/equation_file.hpp"
#include "munch/error.hpp"
#include "munch/solver.hpp"
#include "support/random_system.hpp"

namespace munch {
namespace {

TEST(Kleene, SquareChainLeastFixedPoint) {
  const auto sys = parse_equations("semiring counting; vars x y z; x = y*y; y = z; z = 2");
  const auto out = kleene_solve(sys, 100);
  const auto& sr = sys.semiring();
  ASSERT_TRUE(out.stabilized());
  EXPECT_EQ(out.value, (ValueVector{sr.from_nat(4), sr.from_nat(2), sr.from_nat(2)}));
  EXPECT_LE(out.steps_used, 4u);
}

TEST(Kleene, IdentityEquation) {
  const auto sys = parse_equations("semiring boolean; vars x; x = x");
  const auto out = kleene_solve(sys, 10);
  ASSERT_TRUE(out.stabilized());
  EXPECT_EQ(out.steps_used, 1u);
  EXPECT_EQ(out.value, ValueVector{sys.semiring().zero()});
}

TEST(Kleene, BooleanSquarePlusOneIsLeastCandidate) {
  const auto sys = parse_equations("semiring boolean; vars x; x = x*x + 1");
  const auto& b = sys.semiring();
  const auto out = kleene_solve(sys, 10);
  ASSERT_TRUE(out.stabilized());
  // Fixed points among both booleans; the least one must be returned.
  std::vector<Value> fixed;
  for (const auto& c : b.elements()) {
    if (sys.apply({c}) == ValueVector{c}) fixed.push_back(c);
  }
  ASSERT_FALSE(fixed.empty());
  for (const auto& c : fixed) EXPECT_TRUE(b.leq(out.value[0], c));
  EXPECT_EQ(out.value[0], b.one());
}

TEST(Kleene, BudgetExhaustion) {
  const auto sys = parse_equations("semiring counting; vars x; x = 2*x + 1");
  const auto out = kleene_solve(sys, 5);
  EXPECT_FALSE(out.stabilized());
  EXPECT_EQ(out.steps_used, 5u);
}

TEST(Kleene, IteratesAscend) {
  std::mt19937_64 rng(31);
  for (const auto& sr : {Semiring::boolean(), Semiring::min_plus(), Semiring::relation(2)}) {
    for (int i = 0; i < 40; ++i) {
      const auto sys = testing::random_system(sr, rng);
      std::vector<ValueVector> trace;
      const auto out = kleene_solve(sys, 10000, &trace);
      ASSERT_TRUE(out.stabilized());
      for (std::size_t k = 1; k < trace.size(); ++k) {
        EXPECT_TRUE(leq(sr, trace[k - 1], trace[k]));
      }
    }
  }
}

TEST(SolveLinear, ZeroRightHandSide) {
  const auto b = Semiring::boolean();
  const LinearSystem lin{b, {Polynomial(), Polynomial()}, {b.one(), b.zero()}};
  const auto out = solve_linear(lin, 10);
  ASSERT_TRUE(out.stabilized());
  EXPECT_EQ(out.steps_used, 1u);
  EXPECT_EQ(out.value, lin.seed);
}

TEST(SolveLinear, MinPlusSeedDominates) {
  const auto mp = Semiring::min_plus();
  const LinearSystem lin{
      mp, {Polynomial(mp, {Monomial({mp.from_nat(2), mp.one()}, {0})})}, {mp.one()}};
  const auto out = solve_linear(lin, 10);
  ASSERT_TRUE(out.stabilized());
  EXPECT_EQ(out.value, ValueVector{mp.from_nat(0)});
}

TEST(SolveLinear, CountingDivergenceHitsBudget) {
  const auto cnt = Semiring::counting();
  const LinearSystem lin{
      cnt, {Polynomial(cnt, {Monomial({cnt.one(), cnt.from_nat(2)}, {0})})}, {cnt.one()}};
  const auto out = solve_linear(lin, 20);
  EXPECT_FALSE(out.stabilized());
}

TEST(SolveLinear, RejectsNonlinear) {
  const auto b = Semiring::boolean();
  const auto sq = Polynomial(b, {Monomial({b.one(), b.one(), b.one()}, {0, 0})});
  EXPECT_THROW(solve_linear({b, {sq}, {b.zero()}}, 10), PreconditionError);
}

TEST(SolveLinear, StabilizedOutputSolvesTheSystem) {
  std::mt19937_64 rng(32);
  testing::SystemShape shape;
  shape.max_occurrences = 1;
  for (const auto& sr : {Semiring::boolean(), Semiring::min_plus(), Semiring::relation(2)}) {
    for (int i = 0; i < 50; ++i) {
      const auto sys = testing::random_system(sr, rng, shape);
      const LinearSystem lin{sr, sys.f(), sys.a()};
      const auto out = solve_linear(lin, 10000);
      ASSERT_TRUE(out.stabilized());
      EXPECT_EQ(out.value, add(sr, lin.seed, eval(sr, lin.rhs, out.value)));
    }
  }
}

TEST(Newton, FirstIterateIsPAtZero) {
  std::mt19937_64 rng(33);
  for (int i = 0; i < 20; ++i) {
    const auto sys = testing::random_system(Semiring::min_plus(), rng);
    const auto nu = newton_solve(sys, 0, 100);
    ASSERT_EQ(nu.iterates.size(), 1u);
    EXPECT_EQ(nu.iterates[0], sys.apply(zero_vector(sys.semiring(), sys.size())));
  }
}

TEST(Newton, BooleanSquare) {
  const auto sys = parse_equations("semiring boolean; vars x; x = x*x + 1");
  const auto nu = newton_solve(sys, 1, 100);
  ASSERT_EQ(nu.iterates.size(), 2u);
  EXPECT_EQ(nu.iterates[1], ValueVector{sys.semiring().one()});
  EXPECT_FALSE(nu.non_idempotent);
}

TEST(Newton, MinPlusLinearReachesLfpInOneStep) {
  const auto sys = parse_equations("semiring min-plus; vars x; x = x*1 + 5");
  const auto lfp = kleene_solve(sys, 1000);
  ASSERT_TRUE(lfp.stabilized());
  EXPECT_EQ(lfp.value, ValueVector{sys.semiring().from_nat(5)});
  const auto nu = newton_solve(sys, 1, 1000);
  ASSERT_EQ(nu.iterates.size(), 2u);
  EXPECT_EQ(nu.iterates[1], lfp.value);
}

TEST(Newton, FlagsNonIdempotentUse) {
  const auto sys = parse_equations("semiring counting; vars x y z; x = y*y; y = z; z = 2");
  EXPECT_TRUE(newton_solve(sys, 1, 100).non_idempotent);
}

TEST(Newton, StopsWhenLinearSolveRunsOut) {
  const auto sys = parse_equations("semiring counting; vars x; x = 2*x + 1");
  const auto nu = newton_solve(sys, 3, 30);
  EXPECT_EQ(nu.status, SolveStatus::budget_exhausted);
  EXPECT_EQ(nu.iterates.size(), 1u);
}

TEST(Newton, DominatesKleeneAndAscends) {
  std::mt19937_64 rng(34);
  for (const auto& sr : {Semiring::boolean(), Semiring::min_plus(), Semiring::relation(2)}) {
    for (int i = 0; i < 40; ++i) {
      const auto sys = testing::random_system(sr, rng);
      const auto nu = newton_solve(sys, 5, default_linear_budget(sys));
      ASSERT_EQ(nu.iterates.size(), 6u);
      std::vector<ValueVector> trace;
      kleene_solve(sys, 6, &trace);
      ValueVector kleene = zero_vector(sr, sys.size());
      for (std::size_t k = 0; k <= 5; ++k) {
        kleene = sys.apply(kleene);
        EXPECT_TRUE(leq(sr, kleene, nu.iterates[k])) << "k=" << k;
        if (k > 0) EXPECT_TRUE(leq(sr, nu.iterates[k - 1], nu.iterates[k]));
      }
    }
  }
}

TEST(Newton, LinearSystemsConvergeInOneStep) {
  std::mt19937_64 rng(35);
  testing::SystemShape shape;
  shape.max_occurrences = 1;
  for (const auto& sr : {Semiring::boolean(), Semiring::min_plus(), Semiring::relation(2)}) {
    for (int i = 0; i < 40; ++i) {
      const auto sys = testing::random_system(sr, rng, shape);
      const auto lfp = kleene_solve(sys, 10000);
      ASSERT_TRUE(lfp.stabilized());
      const auto nu = newton_solve(sys, 1, default_linear_budget(sys));
      EXPECT_EQ(nu.iterates.back(), lfp.value);
    }
  }
}

TEST(Trace, JsonLines) {
  const auto sys = parse_equations("semiring counting; vars x y z; x = y*y; y = z; z = 2");
  std::vector<ValueVector> trace;
  kleene_solve(sys, 100, &trace);
  std::ostringstream out;
  write_trace_jsonl(out, sys.semiring(), trace);
  std::istringstream lines(out.str());
  std::string first;
  std::getline(lines, first);
  EXPECT_EQ(first, R"({"step":0,"vector":["0","0","0"]})");
}

TEST(Budget, DefaultFormula) {
  const auto sys = parse_equations("semiring min-plus; vars x y; x = 100*y; y = 3");
  EXPECT_EQ(default_linear_budget(sys), 10u * 3u * 100u);
  const auto b = parse_equations("semiring boolean; vars x; x = x");
  EXPECT_EQ(default_linear_budget(b), 10u * 2u * 64u);
}

}  // namespace
}  // namespace munch
