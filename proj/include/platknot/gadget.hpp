#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <filesystem>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "platknot/alphabet.hpp"
#include "platknot/braid.hpp"
#include "platknot/hurwitz.hpp"
#include "platknot/orbits.hpp"
#include "platknot/rubik.hpp"

namespace platknot {

/// A gadget as supplied: a braid on 4k strands and optionally its action on
/// A^2 as rows `a b c d`, meaning (a,b) -> (c,d) in alphabet indices.
struct GadgetSpec {
  std::string id;
  BraidWord braid;
  std::optional<std::vector<std::uint32_t>> action;  // indexed a*|A|+b
  std::vector<std::array<std::uint32_t, 4>> action_rows;
};

inline GadgetSpec parse_gadget(std::string_view src) {
  GadgetSpec g;
  auto lines = text::content_lines(src);
  bool in_action = false;
  std::string braid_text;
  for (const auto& line : lines) {
    if (text::starts_with(line, "gadget")) {
      auto w = text::words(line);
      if (w.size() != 2) fail(ErrorCode::MalformedInput, "expected 'gadget <id>', got: " + line);
      g.id = w[1];
    } else if (text::starts_with(line, "braid")) {
      braid_text = line;
    } else if (line == "action") {
      in_action = true;
    } else if (in_action) {
      auto w = text::words(line);
      if (w.size() != 4) fail(ErrorCode::MalformedInput, "action rows have four indices: " + line);
      std::array<std::uint32_t, 4> r{};
      for (int i = 0; i < 4; ++i) {
        auto v = text::require_int(w[i], "action row");
        if (v < 0) fail(ErrorCode::MalformedInput, "negative alphabet index");
        r[i] = static_cast<std::uint32_t>(v);
      }
      g.action_rows.push_back(r);
    } else {
      fail(ErrorCode::MalformedInput, "unexpected line in gadget file: " + line);
    }
  }
  if (g.id.empty()) fail(ErrorCode::MalformedInput, "gadget file lacks 'gadget <id>'");
  if (braid_text.empty()) fail(ErrorCode::MalformedInput, "gadget file lacks a braid line");
  g.braid = parse_braid(braid_text);
  return g;
}

inline std::string serialize_gadget(const GadgetSpec& g, std::size_t alphabet_size = 0) {
  std::string s = "gadget " + g.id + "\n" + format_braid(g.braid);
  if (g.action && alphabet_size) {
    s += "action\n";
    const auto n = alphabet_size;
    for (std::size_t i = 0; i < g.action->size(); ++i) {
      const auto j = (*g.action)[i];
      s += std::to_string(i / n) + " " + std::to_string(i % n) + " " + std::to_string(j / n) + " " +
           std::to_string(j % n) + "\n";
    }
  }
  return s;
}

using GadgetRegistry = std::map<std::string, GadgetSpec>;

/// Loads one gadget file, or every *.gad file in a directory.
inline GadgetRegistry load_registry(const std::string& path) {
  namespace fs = std::filesystem;
  GadgetRegistry reg;
  std::vector<fs::path> files;
  if (fs::is_directory(path)) {
    for (const auto& e : fs::directory_iterator(path))
      if (e.path().extension() == ".gad") files.push_back(e.path());
    std::sort(files.begin(), files.end());
  } else {
    files.emplace_back(path);
  }
  for (const auto& f : files) {
    auto g = parse_gadget(text::read_file(f.string()));
    if (reg.count(g.id)) fail(ErrorCode::MalformedInput, "duplicate gadget id " + g.id);
    reg.emplace(g.id, std::move(g));
  }
  return reg;
}

/// Applies a braid on 4k strands to every pair in A^2. Returns the induced
/// map, or nullopt when some image leaves A^2.
inline std::optional<std::vector<std::uint32_t>> action_on_pairs(const BraidWord& w, const ZsatAlphabet& A) {
  const auto n = A.size();
  if (w.strands != 4 * A.k)
    fail(ErrorCode::StrandMismatch, "gadget braid has " + std::to_string(w.strands) + " strands, expected " +
                                        std::to_string(4 * A.k));
  std::vector<std::uint32_t> out(n * n);
  const auto half = 2 * A.k;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      auto t = apply_braid(A.group, concat(A.symbols[a], A.symbols[b]), w);
      std::vector<Elem> left(t.elems.begin(), t.elems.begin() + half), right(t.elems.begin() + half, t.elems.end());
      if (t.signs != concat(A.symbols[a], A.symbols[b]).signs) return std::nullopt;
      auto x = A.find(left), y = A.find(right);
      if (!x || !y) return std::nullopt;
      out[a * n + b] = static_cast<std::uint32_t>(*x * n + *y);
    }
  return out;
}

struct SmallerPair {
  std::string label;
  FiniteGroup group;
  ConjClass cls;
};

enum class Regime { Exhaustive, Sampled, Skipped };

inline std::string regime_name(Regime r) {
  switch (r) {
    case Regime::Exhaustive: return "exhaustive";
    case Regime::Sampled: return "sampled";
    case Regime::Skipped: return "skipped";
  }
  return "?";
}

struct PropertyCheck {
  bool passed = true;
  Regime regime = Regime::Skipped;
  std::size_t checked = 0;
  std::size_t failures = 0;
  std::string note;
};

struct ValidationBudget {
  std::size_t exhaustive_states = 1'000'000;
  std::size_t samples = 2000;
  std::uint64_t seed = 1;
};

struct GateGadget {
  std::string id;
  BraidWord braid;
  std::vector<std::uint32_t> action;  // on A^2; empty when property 1 fails
  std::optional<RubikVerdict> rubik;
  PropertyCheck p1, p2, p4;
  std::vector<PropertyCheck> p3;      // one per smaller pair

  bool valid() const {
    bool ok = p1.passed && p2.passed && p4.passed;
    for (const auto& p : p3) ok = ok && p.passed;
    return ok;
  }
};

namespace detail {

// Whether some class-preserving automorphism carries t into A^2.
inline bool in_saturation(const ZsatAlphabet& A, const AutGroup& autC, const MonodromyTuple& t) {
  const auto half = 2 * A.k;
  for (const auto& phi : autC.maps) {
    if (phi[t.elems[0]] != A.c) continue;
    std::vector<Elem> left, right;
    for (std::size_t i = 0; i < t.size(); ++i) (i < half ? left : right).push_back(phi[t.elems[i]]);
    if (A.find(left) && A.find(right)) return true;
  }
  return false;
}

template <class Visit>
void for_each_class_tuple(const FiniteGroup& g, const ConjClass& E, std::size_t n, Visit&& visit) {
  MonodromyTuple t;
  t.signs = alternating_signs(n / 2);
  t.elems.assign(n, g.identity());
  std::vector<std::size_t> idx(n, 0);
  for (;;) {
    for (std::size_t i = 0; i < n; ++i) {
      const Elem x = E.members[idx[i]];
      t.elems[i] = t.signs[i] > 0 ? x : g.inv(x);
    }
    visit(t);
    std::size_t i = 0;
    while (i < n && ++idx[i] == E.size()) idx[i++] = 0;
    if (i == n) return;
  }
}

}  // namespace detail

/// Checks the four gadget properties. Property 2 (trivial action on the
/// zero-Schur surjective states outside Aut(G,C).A^2) and property 3 (trivial
/// action on E^{4k} for each smaller pair) are exhaustive within budget and
/// sampled otherwise.
inline GateGadget validate_gadget(const GadgetSpec& spec, const ZsatAlphabet& A, const std::vector<SmallerPair>& smaller,
                                  const ValidationBudget& budget = {}) {
  GateGadget out;
  out.id = spec.id;
  out.braid = spec.braid;
  const auto n = A.size();
  const auto strands = 4 * A.k;
  check_braid(spec.braid);
  if (spec.braid.strands != strands)
    fail(ErrorCode::StrandMismatch, "gadget " + spec.id + " has " + std::to_string(spec.braid.strands) +
                                        " strands, expected " + std::to_string(strands));

  out.p4.regime = Regime::Exhaustive;
  out.p4.checked = 1;
  out.p4.passed = is_pure(spec.braid);
  if (!out.p4.passed) {
    out.p4.failures = 1;
    out.p4.note = "strand permutation is not trivial";
  }

  out.p1.regime = Regime::Exhaustive;
  out.p1.checked = n * n;
  if (auto act = action_on_pairs(spec.braid, A)) {
    out.action = *act;
    std::vector<bool> hit(n * n, false);
    bool bijective = true;
    for (auto v : out.action) {
      if (hit[v]) bijective = false;
      hit[v] = true;
    }
    if (!spec.action_rows.empty()) {
      if (spec.action_rows.size() != n * n)
        fail(ErrorCode::ActionMismatch, "gadget " + spec.id + " lists " + std::to_string(spec.action_rows.size()) +
                                            " action rows, expected " + std::to_string(n * n));
      for (const auto& r : spec.action_rows) {
        if (r[0] >= n || r[1] >= n || r[2] >= n || r[3] >= n)
          fail(ErrorCode::ActionMismatch, "action row index out of range");
        if (out.action[r[0] * n + r[1]] != r[2] * n + r[3])
          fail(ErrorCode::ActionMismatch, "gadget " + spec.id + " action row disagrees with its braid");
      }
    }
    if (bijective) {
      out.rubik = is_rubik_member(A.pair_action(), out.action);
      out.p1.passed = out.rubik->member;
      if (!out.p1.passed) out.p1.note = "induced permutation is not in the Rubik group";
    } else {
      out.p1.passed = false;
      out.p1.note = "induced map on A^2 is not bijective";
    }
  } else {
    out.p1.passed = false;
    out.p1.note = "braid does not preserve A^2";
  }
  if (!out.p1.passed) out.p1.failures = 1;

  // property 2
  const auto& g = A.group;
  const auto autC = aut_class(g, A.aut, A.cls);
  std::mt19937_64 rng(budget.seed);
  {
    auto& p = out.p2;
    double space = 1;
    for (std::size_t i = 0; i + 1 < strands; ++i) space *= static_cast<double>(A.cls.size());
    auto check = [&](const MonodromyTuple& t) {
      if (!generates(g, t.elems)) return;
      if (schur(A.rm, t) != A.rm.quotient.cover.identity()) return;
      if (detail::in_saturation(A, autC, t)) return;
      ++p.checked;
      if (apply_braid(g, t, spec.braid) != t) ++p.failures;
    };
    if (space <= static_cast<double>(budget.exhaustive_states)) {
      p.regime = Regime::Exhaustive;
      for (const auto& t : enumerate_rhat_slice(g, A.cls, 2 * A.k, budget.exhaustive_states)) check(t);
    } else {
      p.regime = Regime::Sampled;
      for (std::size_t s = 0; s < budget.samples; ++s) check(random_rhat_tuple(g, A.cls, 2 * A.k, rng));
    }
    p.passed = p.failures == 0;
    p.note = std::to_string(p.checked) + " states checked, " + std::to_string(p.failures) + " moved";
  }
  // property 3
  for (const auto& sp : smaller) {
    PropertyCheck p;
    double space = std::pow(static_cast<double>(sp.cls.size()), static_cast<double>(strands));
    auto check = [&](const MonodromyTuple& t) {
      ++p.checked;
      if (apply_braid(sp.group, t, spec.braid) != t) ++p.failures;
    };
    if (space <= static_cast<double>(budget.exhaustive_states)) {
      p.regime = Regime::Exhaustive;
      detail::for_each_class_tuple(sp.group, sp.cls, strands, check);
    } else {
      p.regime = Regime::Sampled;
      for (std::size_t s = 0; s < budget.samples; ++s) check(random_tuple(sp.group, sp.cls, 2 * A.k, rng));
    }
    p.passed = p.failures == 0;
    p.note = sp.label + ": " + std::to_string(p.checked) + " states checked, " + std::to_string(p.failures) + " moved";
    out.p3.push_back(std::move(p));
  }
  return out;
}

}  // namespace platknot
