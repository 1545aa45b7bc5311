#include <gtest/gtest.h>

#include "support.hpp"

using namespace pktest;

namespace {

std::vector<std::size_t> class_sizes(const FiniteGroup& g) {
  std::vector<std::size_t> s;
  for (const auto& c : conjugacy_classes(g)) s.push_back(c.size());
  std::sort(s.begin(), s.end());
  return s;
}

}  // namespace

TEST(Group, OrdersAndClasses) {
  EXPECT_EQ(s3().order(), 6u);
  EXPECT_EQ(a4().order(), 12u);
  auto g = a5();
  EXPECT_EQ(g.order(), 60u);
  EXPECT_EQ(class_sizes(g), (std::vector<std::size_t>{1, 12, 12, 15, 20}));
  EXPECT_EQ(class_sizes(s3()), (std::vector<std::size_t>{1, 2, 3}));
}

TEST(Group, Perfection) {
  EXPECT_TRUE(is_perfect(a5()));
  EXPECT_TRUE(is_nonabelian_simple(a5()));
  EXPECT_FALSE(is_perfect(s3()));
  EXPECT_FALSE(is_perfect(a4()));
  EXPECT_TRUE(is_abelian(load_group_file(data("groups/z6.grp"))));
}

TEST(Group, LabelsAndParsing) {
  auto g = a5();
  const Elem x = g.parse_element("5c");
  EXPECT_EQ(g.element_order(x), 5u);
  EXPECT_EQ(g.parse_element("(1 2 3 4 5)"), x);
  EXPECT_EQ(g.parse_element(std::to_string(x)), x);
  EXPECT_EQ(resolve_class(g, "5c").size(), 12u);
  EXPECT_EQ(resolve_class(g, "2a").size(), 15u);
  EXPECT_THROW(g.parse_element("nope"), Error);
}

TEST(Group, Automorphisms) {
  auto g = a5();
  auto aut = automorphism_group(g);
  EXPECT_EQ(aut.order(), 120u);
  auto C = resolve_class(g, "5c");
  EXPECT_EQ(aut_class(g, aut, C).order(), 60u);
  EXPECT_EQ(aut_point(g, aut, C.representative).order(), 5u);
  EXPECT_EQ(automorphism_group(s3()).order(), 6u);
  auto id = aut.maps.front();
  for (Elem x = 0; x < g.order(); ++x) EXPECT_EQ(id[x], x);
}

TEST(Group, TableValidation) {
  try {
    FiniteGroup::from_table("bad", {{0, 1}, {0, 1}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonBijectiveRow);
  }
  try {
    load_group("group z3 order 4\ntable\n0 1 2\n1 2 0\n2 0 1\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_TRUE(e.code() == ErrorCode::OrderMismatch || e.code() == ErrorCode::MalformedInput);
  }
  // 0 is the identity but 1*1*2 is not associative
  try {
    FiniteGroup::from_table("nonassoc", {{0, 1, 2}, {1, 0, 0}, {2, 0, 1}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(e.code(), ErrorCode::InvalidArgument);
  }
}

TEST(Group, TableRoundTrip) {
  auto g = s3();
  auto h = load_group(serialize_table(g));
  ASSERT_EQ(h.order(), g.order());
  for (Elem a = 0; a < g.order(); ++a)
    for (Elem b = 0; b < g.order(); ++b) EXPECT_EQ(h.mul(a, b), g.mul(a, b));
}

TEST(Extension, Sl25) {
  auto ext = sl25();
  EXPECT_EQ(ext.cover.order(), 120u);
  EXPECT_EQ(ext.kernel.size(), 2u);
  for (Elem m : ext.kernel)
    for (Elem x = 0; x < ext.cover.order(); ++x) EXPECT_EQ(ext.cover.mul(m, x), ext.cover.mul(x, m));
}

TEST(Extension, ReducedMultiplierErrors) {
  auto ext = sl25();
  try {
    reduced_multiplier(ext, resolve_class(ext.base, "1a"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ClassDoesNotGenerate);
  }
  auto g = s3();
  try {
    reduced_multiplier(trivial_extension(g), resolve_class(g, "t"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BaseNotPerfect);
  }
}

TEST(Extension, LiftsAreUnique) {
  auto ext = sl25();
  for (const char* cls : {"3a", "5a", "5b"}) {
    auto C = resolve_class(ext.base, cls);
    auto rm = reduced_multiplier(ext, C);
    EXPECT_EQ(rm.multiplier_order(), 2u) << cls;
    EXPECT_EQ(rm.lifted_class.size(), C.size());
    for (Elem c : C.members) EXPECT_EQ(rm.quotient.proj[rm.lift(c)], c);
  }
  auto rm2 = reduced_multiplier(ext, resolve_class(ext.base, "2a"));
  EXPECT_EQ(rm2.multiplier_order(), 1u);
}

TEST(Rubik, IdentityIsMember) {
  auto ext = sl25();
  auto g = a5();
  auto C = resolve_class(g, "5c");
  auto A = build_alphabet(g, C, g.parse_element("5c"), 2, reduced_multiplier(ext, C), 1'000'000);
  auto act = A.pair_action();
  std::vector<std::uint32_t> id(act.size());
  std::iota(id.begin(), id.end(), 0u);
  auto v = is_rubik_member(act, id);
  EXPECT_TRUE(v.member);
  EXPECT_TRUE(v.equivariant);
}
