#include <gtest/gtest.h>

#include "support.hpp"

using namespace pktest;

namespace {

ZsatInstance instance(const std::string& name) {
  return resolve_instance(load_circuit_file(data("circuits/" + name)));
}

}  // namespace

TEST(Zsat, ParseCircuit) {
  auto z = load_circuit_file(data("circuits/planted.zsat"));
  EXPECT_EQ(z.width, 2u);
  EXPECT_EQ(z.k, 3u);
  ASSERT_EQ(z.gates.size(), 1u);
  EXPECT_EQ(z.gates[0].gadget, "planted");
  EXPECT_EQ(z.smaller.size(), 2u);
  EXPECT_THROW(parse_circuit("zsat width 2\n"), Error);
  EXPECT_THROW(parse_circuit("zsat width 2 k 3 group g class c pin c\ngate x at 2\n"), Error);
}

TEST(Zsat, GadgetRoundTrip) {
  auto reg = load_registry(data("gadgets"));
  ASSERT_TRUE(reg.count("planted"));
  auto g = reg.at("planted");
  auto h = parse_gadget(serialize_gadget(g));
  EXPECT_EQ(h.id, g.id);
  EXPECT_EQ(h.braid.letters, g.braid.letters);
  EXPECT_TRUE(is_pure(g.braid));
}

TEST(Zsat, IdentityCircuit) {
  auto inst = instance("identity.zsat");
  auto r = verify_reduction(inst, {});
  EXPECT_EQ(r.components, 1u);
  EXPECT_EQ(r.zsat.solutions, 1u);
  EXPECT_TRUE(r.three_way_equal);
  for (const auto& s : r.smaller) EXPECT_EQ(s.q, 0u) << s.label;
}

TEST(Zsat, UnknownGadget) {
  auto inst = instance("planted.zsat");
  try {
    compile(inst.circuit, inst.alphabet, {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnknownGadget);
  }
}

TEST(Zsat, CompiledKnotIsSingleComponent) {
  auto inst = instance("planted.zsat");
  auto K = compile(inst.circuit, inst.alphabet, load_registry(data("gadgets")));
  EXPECT_EQ(component_count(K.plat.diagram), 1u);
  EXPECT_EQ(K.braid.strands, 12u);
  auto again = load_diagram(serialize(K.plat.diagram));
  EXPECT_EQ(again.crossings.size(), K.plat.diagram.crossings.size());
}

TEST(Zsat, PlantedActionMatchesBraid) {
  auto inst = instance("planted.zsat");
  const auto& A = inst.alphabet;
  auto spec = load_registry(data("gadgets")).at("planted");
  auto act = action_on_pairs(spec.braid, A);
  ASSERT_TRUE(act.has_value());
  const auto n = A.size();
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<std::size_t> pick(0, n * n - 1);
  for (int i = 0; i < 200; ++i) {
    const auto p = pick(rng);
    auto img = apply_braid(A.group, concat(A.symbols[p / n], A.symbols[p % n]), spec.braid);
    EXPECT_EQ(img, concat(A.symbols[(*act)[p] / n], A.symbols[(*act)[p] % n]));
  }
  auto v = validate_gadget(spec, A, inst.smaller, {.exhaustive_states = 1000, .samples = 200, .seed = 1});
  EXPECT_TRUE(v.p1.passed);
  EXPECT_TRUE(v.p4.passed);
  ASSERT_TRUE(v.rubik.has_value());
  EXPECT_TRUE(v.rubik->member);
}

TEST(GadgetSearch, IdentityTargetGivesEmptyWord) {
  auto inst = instance("identity.zsat");
  const auto& A = inst.alphabet;
  SearchTarget t;
  for (std::uint32_t a = 0; a < A.size(); ++a)
    if (A.in_I[a]) {
      t.states.push_back(concat(A.symbols[a], A.symbols[0]));
      t.images.push_back(t.states.back());
    }
  auto r = gadget_search(A.group, &A.rm, 12, t, {.depth_cap = 2, .budget_states = 100000, .lo = 2, .hi = 5});
  ASSERT_EQ(r.outcome, SearchOutcome::Found);
  EXPECT_TRUE(r.word->letters.empty());
}

TEST(GadgetSearch, FindsPlantedWord) {
  auto inst = instance("identity.zsat");
  const auto& A = inst.alphabet;
  std::mt19937_64 rng(4);
  SearchTarget t;
  auto planted = random_pure_braid(12, 1, rng, 2, 5);
  std::vector<MonodromyTuple> probes;
  for (int i = 0; i < 30; ++i) probes.push_back(random_rhat_tuple(A.group, A.cls, 6, rng));
  for (const auto& s : probes) {
    t.states.push_back(s);
    t.images.push_back(apply_braid(A.group, s, planted));
  }
  auto r = gadget_search(A.group, &A.rm, 12, t, {.depth_cap = 2, .budget_states = 200000, .lo = 2, .hi = 5});
  ASSERT_EQ(r.outcome, SearchOutcome::Found);
  for (const auto& s : probes) EXPECT_EQ(apply_braid(A.group, s, *r.word), apply_braid(A.group, s, planted));
}

TEST(GadgetSearch, RejectsInvariantViolations) {
  auto inst = instance("identity.zsat");
  const auto& A = inst.alphabet;
  SearchTarget t;
  auto s = concat(A.symbols[1], A.symbols[0]);
  auto img = s;
  std::swap(img.signs[0], img.signs[1]);
  std::swap(img.elems[0], img.elems[1]);
  t.states.push_back(s);
  t.images.push_back(img);
  EXPECT_EQ(gadget_search(A.group, &A.rm, 12, t).outcome, SearchOutcome::Rejected);
}
