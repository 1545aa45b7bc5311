#include <gtest/gtest.h>

#include "support.hpp"

using namespace pktest;

namespace {

struct A5Fixture : ::testing::Test {
  FiniteGroup g = a5();
  CentralExtension ext = sl25();
  ConjClass C = resolve_class(g, "5c");
  ReducedMultiplier rm = reduced_multiplier(ext, C);
};

}  // namespace

TEST_F(A5Fixture, LetterAndInverseCancel) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 200; ++i) {
    auto t = random_tuple(g, C, 3, rng);
    for (int l = 1; l < 6; ++l) {
      auto u = t;
      apply_letter(g, u, l);
      apply_letter(g, u, -l);
      EXPECT_EQ(u, t);
    }
  }
}

TEST_F(A5Fixture, BraidRelationsOnStates) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 200; ++i) {
    auto t = random_tuple(g, C, 3, rng);
    for (int l = 1; l + 1 < 6; ++l) {
      BraidWord lhs{6, {l, l + 1, l}, {}}, rhs{6, {l + 1, l, l + 1}, {}};
      EXPECT_EQ(apply_braid(g, t, lhs), apply_braid(g, t, rhs));
    }
    BraidWord a{6, {1, 4}, {}}, b{6, {4, 1}, {}};
    EXPECT_EQ(apply_braid(g, t, a), apply_braid(g, t, b));
  }
}

TEST_F(A5Fixture, InvariantsPreserved) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 300; ++i) {
    auto t = random_rhat_tuple(g, C, 2, rng);
    auto w = random_braid(4, 12, rng);
    auto u = apply_braid(g, t, w);
    EXPECT_EQ(boundary_product(g, u), boundary_product(g, t));
    auto f = stratify(g, C, t), h = stratify(g, C, u);
    EXPECT_EQ(f.in_Rhat, h.in_Rhat);
    EXPECT_EQ(f.in_R, h.in_R);
    EXPECT_EQ(schur(rm, t), schur(rm, u));
  }
}

TEST_F(A5Fixture, SchurBasics) {
  EXPECT_EQ(schur(rm, zombie_tuple(g, C.representative, 3)), rm.quotient.cover.identity());
  auto t = parse_tuple(g, "[+1 -14 +19 -38]");
  EXPECT_EQ(format_tuple(t), "[+1 -14 +19 -38]");
  EXPECT_TRUE(stratify(g, C, t).in_R);
  EXPECT_THROW(schur(rm, parse_tuple(g, "[+1 -1]")), Error);
}

TEST_F(A5Fixture, PureBraidsArePure) {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 20; ++i) EXPECT_TRUE(is_pure(random_pure_braid(8, 3, rng, 2, 6)));
  EXPECT_TRUE(is_pure(planted_commutator(3, 1)));
  EXPECT_FALSE(is_pure(BraidWord{4, {1}, {}}));
}

TEST(Orbits, SmallCases) {
  auto g = a5();
  auto C = resolve_class(g, "5c");
  auto rm = reduced_multiplier(sl25(), C);
  auto r1 = enumerate_orbits(1, g, C, &rm, Stratum::Rhat, {});
  EXPECT_EQ(r1.stratum_size, 12u);
  EXPECT_EQ(r1.orbits.size(), 12u);
  auto r1c = enumerate_orbits(1, g, C, &rm, Stratum::Rhat, {.mod_conjugation = true});
  EXPECT_EQ(r1c.orbits.size(), 1u);
  auto r2 = enumerate_orbits(2, g, C, &rm, Stratum::RZero, {});
  EXPECT_EQ(r2.stratum_size, 600u);
  EXPECT_EQ(r2.orbits.size(), 1u);
  auto rh = enumerate_orbits(2, g, C, &rm, Stratum::Rhat, {});
  EXPECT_EQ(rh.stratum_size, 636u);
  EXPECT_TRUE(rh.sch_constant);
}

TEST(Orbits, BudgetIsEnforced) {
  auto g = a5();
  auto C = resolve_class(g, "5c");
  try {
    enumerate_orbits(3, g, C, nullptr, Stratum::Rhat, {.budget_states = 100});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BudgetExceeded);
  }
}

TEST(Density, MatchesEnumeration) {
  auto g = a5();
  auto C = resolve_class(g, "5c");
  auto rm = reduced_multiplier(sl25(), C);
  auto rows = density_scan(g, C, &rm, 2, 1'000'000);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].rhat, 12);
  EXPECT_EQ(rows[1].rhat, 636);
  EXPECT_EQ(rows[1].rhat, enumerate_rhat_slice(g, C, 2, 1'000'000).size());
  std::size_t zero = 0;
  for (const auto& t : enumerate_rhat_slice(g, C, 2, 1'000'000)) zero += schur(rm, t) == rm.quotient.cover.identity();
  EXPECT_EQ(rows[1].rhat0, zero);
}

TEST(Alphabet, Sizes) {
  auto g = a5();
  auto C = resolve_class(g, "5c");
  auto rm = reduced_multiplier(sl25(), C);
  auto A2 = build_alphabet(g, C, g.parse_element("5c"), 2, rm, 1'000'000);
  EXPECT_EQ(A2.size(), 11u);
  EXPECT_EQ(A2.count_I(), 1u);
  EXPECT_EQ(A2.count_F(), 11u);
  auto A3 = build_alphabet(g, C, g.parse_element("5c"), 3, rm, 1'000'000);
  EXPECT_EQ(A3.size(), 631u);
  EXPECT_EQ(A3.count_I(), 11u);
  EXPECT_EQ(A3.count_F(), 141u);
  EXPECT_EQ(A3.count_IF(), 1u);
  EXPECT_EQ(A3.U.order(), 5u);
  EXPECT_EQ(A3.symbols.front(), zombie_tuple(g, A3.c, 3));
}
