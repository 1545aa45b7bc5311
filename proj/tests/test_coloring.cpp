#include <gtest/gtest.h>

#include "oracles.hpp"
#include "support.hpp"

using namespace pktest;

TEST(Diagram, ParseAndSerialize) {
  auto d = knot("trefoil.pd");
  EXPECT_EQ(d.crossings.size(), 3u);
  EXPECT_EQ(d.arc_count(), 3u);
  EXPECT_EQ(component_count(d), 1u);
  auto e = parse_pd(serialize(d));
  EXPECT_EQ(e.crossings.size(), d.crossings.size());
  EXPECT_EQ(wirtinger(e).relations.size(), 3u);
}

TEST(Diagram, Errors) {
  auto code = [](const char* src) {
    try {
      parse_pd(src);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::InvalidArgument;
  };
  EXPECT_EQ(code("X+[1,2,3]"), ErrorCode::DanglingArc);
  EXPECT_EQ(code("X+[1,2"), ErrorCode::MalformedRecord);
  EXPECT_EQ(code("Y[1,2,3]"), ErrorCode::MalformedRecord);
  EXPECT_EQ(code("O[1] O[2]"), ErrorCode::DisconnectedDiagram);
}

TEST(Diagram, ClassicalPd) {
  auto t = knot("trefoil_classical.pd");
  EXPECT_EQ(t.crossings.size(), 3u);
  auto f = knot("figure8_classical.pd");
  EXPECT_EQ(f.crossings.size(), 4u);
  EXPECT_EQ(component_count(f), 1u);
}

TEST(Coloring, Fixtures) {
  auto g = s3();
  auto t = resolve_class(g, "t");
  EXPECT_EQ(count_colorings(knot("unknot.pd"), g, t), 3u);
  EXPECT_EQ(count_colorings(knot("trefoil.pd"), g, t), 9u);
  EXPECT_EQ(count_colorings(knot("trefoil_classical.pd"), g, t), 9u);
  EXPECT_EQ(count_colorings(knot("figure8_classical.pd"), g, t), 3u);
  auto h = a5();
  EXPECT_EQ(count_colorings(knot("trefoil.pd"), h, resolve_class(h, "5c")), 72u);
}

TEST(Coloring, MatchesBruteForce) {
  std::mt19937_64 rng(11);
  auto g = s3();
  auto C = resolve_class(g, "t");
  auto h = a4();
  auto D = resolve_class(h, "r");
  for (int i = 0; i < 30; ++i) {
    auto d = random_knot(7, rng);
    EXPECT_EQ(count_colorings(d, g, C), oracle::brute_colorings(d, g, C));
    if (d.arc_count() <= 5) EXPECT_EQ(count_colorings(d, h, D), oracle::brute_colorings(d, h, D));
    EXPECT_EQ(count_pinned(d, 0, g, C, C.representative), oracle::brute_colorings(d, g, C, {{0, C.representative}}));
  }
}

TEST(Coloring, ThreadsAgree) {
  std::mt19937_64 rng(5);
  auto g = a5();
  auto C = resolve_class(g, "5c");
  for (int i = 0; i < 10; ++i) {
    auto d = random_knot(10, rng);
    EXPECT_EQ(count_colorings(d, g, C, {1}), count_colorings(d, g, C, {4}));
  }
}

TEST(Coloring, ReidemeisterInvariance) {
  std::mt19937_64 rng(3);
  auto g = a5();
  auto C = resolve_class(g, "5c");
  auto s = s3();
  auto T = resolve_class(s, "t");
  for (int i = 0; i < 20; ++i) {
    auto [b, p] = random_plat(4, 6, rng);
    auto base = plat_closure(b, p).diagram;
    auto r2 = plat_closure(with_r2(b, 1 + i % 3, i % 7), p).diagram;
    auto r1 = plat_closure(with_r1_bottom(b, 1, i % 2 == 0), p).diagram;
    EXPECT_EQ(count_colorings(base, g, C), count_colorings(r2, g, C));
    EXPECT_EQ(count_colorings(base, g, C), count_colorings(r1, g, C));
    EXPECT_EQ(count_colorings(base, s, T), count_colorings(r1, s, T));
  }
}

TEST(Coloring, QAndBreakdown) {
  auto g = s3();
  auto C = resolve_class(g, "t");
  auto q = count_q(knot("trefoil.pd"), g, C);
  EXPECT_EQ(q.total, 9u);
  EXPECT_EQ(q.pinned, 3u);
  EXPECT_EQ(q.surjective, 6u);
  EXPECT_EQ(q.aut_class, 6u);
  EXPECT_EQ(q.q, 1u);
  auto b = image_breakdown(knot("trefoil.pd"), g, C);
  EXPECT_EQ(b.total, 9u);
  EXPECT_EQ(b.reconstructed, 9u);
  ASSERT_EQ(b.buckets.size(), 2u);
  EXPECT_TRUE(b.buckets[0].cyclic);
  EXPECT_EQ(b.buckets[0].total, 3u);
  EXPECT_TRUE(b.buckets[1].full);
  EXPECT_EQ(count_q(knot("unknot.pd"), g, C).q, 0u);
}

TEST(Coloring, BreakdownReconstructsOnRandomKnots) {
  std::mt19937_64 rng(21);
  auto g = a5();
  for (const char* cls : {"2a", "3a", "5c"}) {
    auto C = resolve_class(g, cls);
    for (int i = 0; i < 4; ++i) {
      auto d = random_knot(8, rng);
      auto b = image_breakdown(d, g, C);
      EXPECT_EQ(b.total, count_colorings(d, g, C));
      EXPECT_EQ(b.reconstructed, b.total);
    }
  }
}

TEST(Plat, TrefoilOnFourStrands) {
  auto b = parse_braid(text::read_file(data("braids/trefoil4.braid")));
  auto p = parse_pairing(text::read_file(data("braids/caps4.plat")));
  auto g = s3();
  auto C = resolve_class(g, "t");
  auto pd = plat_closure(b, p);
  EXPECT_EQ(component_count(pd.diagram), 1u);
  EXPECT_EQ(plat_transfer_count(b, p, g, C), 9u);
  EXPECT_EQ(count_colorings(pd.diagram, g, C), 9u);
}

TEST(Plat, TwoStrandClosureIsUnknot) {
  auto b = parse_braid(text::read_file(data("braids/trefoil.braid")));
  auto p = parse_pairing(text::read_file(data("braids/caps2.plat")));
  auto g = s3();
  EXPECT_EQ(plat_transfer_count(b, p, g, resolve_class(g, "t")), 3u);
}

TEST(Plat, Errors) {
  try {
    check_pairing(parse_pairing("bottom: (1 3) (2 4)\ntop: (1 2) (3 4)\n"), 4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::CrossingMatching);
  }
  BraidWord b{4, {1, 2}, {1, -1, 1, 1}};
  try {
    plat_transfer_count(b, {adjacent_caps(4), adjacent_caps(4)}, s3(), resolve_class(s3(), "t"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SignMismatch);
  }
}

TEST(Plat, PinnedTransferMatchesWirtinger) {
  std::mt19937_64 rng(8);
  auto g = a5();
  auto C = resolve_class(g, "3a");
  for (int i = 0; i < 40; ++i) {
    auto [b, p] = random_plat(4, 8, rng);
    auto pd = plat_closure(b, p);
    for (std::size_t pos : {0u, 3u})
      EXPECT_EQ(plat_transfer_count(b, p, g, C, std::make_pair(pos, C.representative)),
                count_pinned(pd.diagram, pd.bottom_arcs[pos], g, C, C.representative));
  }
}
