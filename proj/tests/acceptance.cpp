#include <chrono>
#include <cstdlib>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "support.hpp"

using namespace pktest;

namespace {

struct Check {
  bool ok = true;
  std::ostringstream note;

  void expect(bool cond, const std::string& what) {
    if (!cond && ok) note << "failed: " << what << "; ";
    ok = ok && cond;
  }
};

// |C| and Q = 0 on the unknot.
void unknot_law(Check& c) {
  auto d = knot("unknot.pd");
  auto s = s3();
  auto T = resolve_class(s, "t");
  c.expect(count_colorings(d, s, T) == 3, "S3 unknot count");
  c.expect(count_q(d, s, T).q == 0, "S3 unknot q");
  auto g = a5();
  auto aut = automorphism_group(g);
  for (const auto& C : conjugacy_classes(g)) {
    c.expect(count_colorings(d, g, C) == C.size(), "A5 unknot count");
    c.expect(count_q(d, g, C, aut).q == 0, "A5 unknot q");
  }
}

void trefoil_fox(Check& c) {
  auto s = s3();
  auto T = resolve_class(s, "t");
  for (const char* f : {"trefoil.pd", "trefoil_classical.pd"}) {
    auto d = knot(f);
    auto q = count_q(d, s, T);
    c.expect(count_colorings(d, s, T) == 9, "trefoil count 9");
    c.expect(q.q == 1, "q = 1");
    c.expect(q.aut_class == 6, "|Aut(S3,C)| = 6");
    c.expect(q.total == T.size() + q.aut_class * q.q, "9 = 3 + 6*1");
    c.expect(oracle::brute_colorings(d, s, T) == 9, "brute-force oracle");
  }
  const std::string cmd = "python3 " + std::string(PLATKNOT_SCRIPTS_DIR) + "/trefoil_fox_oracle.py " +
                          data("knots/trefoil_classical.pd") + " --expect 9 > /dev/null";
  c.expect(std::system(cmd.c_str()) == 0, "3^3 brute-force script");
}

void pinning(Check& c) {
  std::mt19937_64 rng(2024);
  auto s = s3();
  auto g = a5();
  std::vector<std::pair<const FiniteGroup*, ConjClass>> pairs = {{&s, resolve_class(s, "t")},
                                                                 {&g, resolve_class(g, "5c")}};
  std::size_t diagrams = 0, checks = 0;
  for (int i = 0; i < 24; ++i) {
    auto d = random_knot(10, rng);
    ++diagrams;
    for (const auto& [G, C] : pairs) {
      const auto total = count_colorings(d, *G, C);
      for (ArcId a = 0; a < d.arc_count(); ++a) {
        c.expect(total == C.size() * count_pinned(d, a, *G, C, C.representative), "total = |C| pinned");
        ++checks;
      }
    }
  }
  c.note << diagrams << " diagrams, " << checks << " arc checks; ";
}

void cross_algorithm(Check& c) {
  std::mt19937_64 rng(77);
  auto s = s3();
  auto g = a5();
  std::vector<std::pair<const FiniteGroup*, ConjClass>> pairs = {
      {&s, resolve_class(s, "t")}, {&g, resolve_class(g, "5c")}, {&g, resolve_class(g, "3a")}};
  std::uniform_int_distribution<std::size_t> len(0, 8), half(1, 2);
  std::size_t n = 0;
  for (int i = 0; i < 60; ++i) {
    auto [b, p] = random_plat(2 * half(rng), len(rng), rng);
    auto pd = plat_closure(b, p);
    for (const auto& [G, C] : pairs) c.expect(plat_transfer_count(b, p, *G, C) == count_colorings(pd.diagram, *G, C), "transfer = Wirtinger");
    ++n;
  }
  c.note << n << " plats; ";
}

void hurwitz_invariants(Check& c) {
  std::mt19937_64 rng(5);
  auto g = a5();
  auto ext = sl25();
  std::vector<ConjClass> classes;
  for (const char* l : {"5c", "3a", "2a"}) classes.push_back(resolve_class(g, l));
  std::vector<ReducedMultiplier> rms;
  for (const auto& C : classes) rms.push_back(reduced_multiplier(ext, C));
  std::uniform_int_distribution<std::size_t> kk(1, 3), which(0, 2), len(0, 20);
  std::bernoulli_distribution rhat(0.5);
  for (int i = 0; i < 1000; ++i) {
    const auto w = which(rng);
    const auto& C = classes[w];
    const auto k = kk(rng);
    auto t = rhat(rng) ? random_rhat_tuple(g, C, k, rng) : random_tuple(g, C, k, rng);
    auto b = random_braid(2 * k, len(rng), rng);
    auto u = apply_braid(g, t, b);
    c.expect(boundary_product(g, t) == boundary_product(g, u), "boundary product");
    auto f = stratify(g, C, t), h = stratify(g, C, u);
    c.expect(f.in_T == h.in_T && f.in_Rhat == h.in_Rhat && f.in_R == h.in_R, "stratum flags");
    if (f.in_Rhat) c.expect(schur(rms[w], t) == schur(rms[w], u), "sch");
    c.expect(apply_braid(g, u, inverse(b)) == t, "inverse braid");
    if (k >= 2) {
      const int l = 1 + static_cast<int>(i % (2 * k - 2));
      BraidWord x{2 * k, {l, l + 1, l}, {}}, y{2 * k, {l + 1, l, l + 1}, {}};
      c.expect(apply_braid(g, t, x) == apply_braid(g, t, y), "braid relation");
    }
    if (k == 3) {
      BraidWord x{6, {1, -4}, {}}, y{6, {-4, 1}, {}};
      c.expect(apply_braid(g, t, x) == apply_braid(g, t, y), "far commutation");
    }
  }
  c.note << "1000 pairs; ";
}

void schur_properties(Check& c) {
  auto g = a5();
  auto ext = sl25();
  std::mt19937_64 rng(6);
  std::size_t bottom = 0, pairs = 0;
  for (const char* l : {"5c", "3a"}) {
    auto C = resolve_class(g, l);
    auto rm = reduced_multiplier(ext, C);
    const auto& E = rm.quotient.cover;
    for (std::size_t k = 1; k <= 3; ++k) c.expect(schur(rm, zombie_tuple(g, C.representative, k)) == E.identity(), "sch(zombie)");
    // bottom-plat compatible: m_2i = m_2i-1^-1; all of them at k = 2
    for (Elem x : C.members)
      for (Elem y : C.members) {
        MonodromyTuple t{alternating_signs(2), {x, g.inv(x), y, g.inv(y)}};
        c.expect(schur(rm, t) == E.identity(), "sch on bottom-compatible tuple");
        ++bottom;
      }
    for (int i = 0; i < 50; ++i) {
      auto a = random_rhat_tuple(g, C, 1 + i % 3, rng);
      auto b = random_rhat_tuple(g, C, 1 + (i / 3) % 3, rng);
      c.expect(schur(rm, concat(a, b)) == E.mul(schur(rm, a), schur(rm, b)), "additivity");
      ++pairs;
    }
  }
  c.note << bottom << " bottom-compatible tuples, " << pairs << " additivity pairs; ";
}

void reduced_mult(Check& c) {
  auto ext = sl25();
  const auto& g = ext.base;
  for (const auto& C : conjugacy_classes(g)) {
    if (C.size() == 1) {
      bool raised = false;
      try {
        reduced_multiplier(ext, C);
      } catch (const Error& e) {
        raised = e.code() == ErrorCode::ClassDoesNotGenerate;
      }
      c.expect(raised, "identity class rejected");
      continue;
    }
    auto rm = reduced_multiplier(ext, C);
    const auto expected = oracle::multiplier_by_conjugation(ext, C.representative);
    c.expect(rm.multiplier_order() == expected, "M(G,C) matches oracle");
    c.note << g.element_order(C.representative) << ":" << rm.multiplier_order() << " ";
  }
  c.note << "; ";
}

void density(Check& c) {
  auto g = a5();
  auto C = resolve_class(g, "2a");
  auto rm = reduced_multiplier(sl25(), C);
  auto rows = density_scan(g, C, &rm, 8, 100'000'000);
  const double target0 = 1.0 / (60.0 * static_cast<double>(rm.multiplier_order()));
  c.expect(std::abs(rows[7].ratio - 1.0 / 60) <= 0.01 / 60, "k=8 within 1% of 1/60");
  c.expect(std::abs(rows[7].ratio0 - target0) <= 0.01 * target0, "R-hat0 k=8 within 1%");
  for (std::size_t k = 2; k < rows.size(); ++k) {
    c.expect(rows[k].deviation <= rows[k - 1].deviation, "deviation non-increasing");
    c.expect(rows[k].deviation0 <= rows[k - 1].deviation0, "R-hat0 deviation non-increasing");
  }
  auto C5 = resolve_class(g, "5c");
  auto rm5 = reduced_multiplier(sl25(), C5);
  auto rows5 = density_scan(g, C5, &rm5, 8, 100'000'000);
  for (std::size_t k = 2; k < rows5.size(); ++k) c.expect(rows5[k].deviation0 <= rows5[k - 1].deviation0, "5c R-hat0 trend");
  c.note << "k=8 ratio*60 = " << rows[7].ratio * 60 << ", 5c ratio0*120 = " << rows5[7].ratio0 * 120 << "; ";
}

void orbit_stratification(Check& c) {
  auto g = a5();
  auto C = resolve_class(g, "5c");
  auto rm = reduced_multiplier(sl25(), C);
  for (auto st : {Stratum::Rhat, Stratum::R}) {
    auto base = enumerate_orbits(2, g, C, &rm, st, {});
    c.expect(base.sch_constant, "sch constant");
    for (const auto& o : base.orbits) c.expect(o.sch_constant, "sch constant per orbit");
    for (std::uint64_t seed : {17u, 29u, 43u}) {
      auto r = enumerate_orbits(2, g, C, &rm, st, {.seed = seed, .threads = 4});
      c.expect(r.partition() == base.partition(), "schedule-independent partition");
    }
    c.note << stratum_name(st) << " " << base.stratum_size << " states/" << base.orbits.size() << " orbits; ";
  }
}

void reduction(Check& c) {
  auto reg = load_registry(data("gadgets"));
  for (const char* name : {"identity.zsat", "planted.zsat"}) {
    auto inst = resolve_instance(load_circuit_file(data(std::string("circuits/") + name)));
    auto r = verify_reduction(inst, reg, {4});
    c.expect(r.components == 1, "single component");
    c.expect(r.three_way_equal, "three-way equality");
    if (std::string(name) == "identity.zsat") {
      auto n = inst.circuit.width;
      std::uint64_t expect = 1;
      for (std::size_t i = 0; i < n; ++i) expect *= inst.alphabet.count_IF();
      c.expect(r.zsat.solutions == expect, "identity count |I and F|^n");
    }
    c.expect(!r.smaller.empty(), "smaller pairs supplied");
    for (const auto& s : r.smaller) c.expect(s.q == 0, "Q(K(Z);J,E) = 0 for " + s.label);
    c.note << name << ": " << r.zsat.solutions << "/" << r.pinned_wirtinger << "/" << r.transfer << "; ";
  }
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria = {
      {"unknot law", unknot_law},
      {"trefoil Fox count", trefoil_fox},
      {"pinning identity", pinning},
      {"transfer count equals Wirtinger count", cross_algorithm},
      {"Hurwitz invariants", hurwitz_invariants},
      {"Schur invariant properties", schur_properties},
      {"reduced multiplier", reduced_mult},
      {"density limits", density},
      {"orbit stratification", orbit_stratification},
      {"reduction pipeline", reduction},
  };
  int only = 0;
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--criterion") only = std::stoi(argv[i + 1]);
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (only && static_cast<int>(i + 1) != only) continue;
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[i].second(c);
    } catch (const std::exception& e) {
      c.ok = false;
      c.note << "exception: " << e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %zu %s: %s (%.2fs) %s\n", i + 1, c.ok ? "PASS" : "FAIL", criteria[i].first.c_str(), secs,
                c.note.str().c_str());
    all = all && c.ok;
  }
  return all ? 0 : 1;
}
