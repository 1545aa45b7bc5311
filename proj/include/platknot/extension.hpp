#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "platknot/group.hpp"

namespace platknot {

/// A central extension kernel -> cover -> base.
struct CentralExtension {
  std::string name;
  FiniteGroup cover;
  FiniteGroup base;
  std::vector<Elem> proj;    // cover element -> base element
  std::vector<Elem> kernel;  // sorted; proj^-1(identity)

  bool in_kernel(Elem x) const { return proj[x] == base.identity(); }
  std::vector<Elem> preimages(Elem b) const {
    std::vector<Elem> out;
    for (Elem x = 0; x < cover.order(); ++x)
      if (proj[x] == b) out.push_back(x);
    return out;
  }
};

inline CentralExtension make_extension(std::string name, FiniteGroup cover, FiniteGroup base, std::vector<Elem> proj) {
  if (proj.size() != cover.order())
    fail(ErrorCode::MalformedInput, "projection has " + std::to_string(proj.size()) + " entries, cover has order " +
                                        std::to_string(cover.order()));
  for (auto p : proj)
    if (!base.valid(p)) fail(ErrorCode::UnknownElement, "projection image out of range");
  for (Elem a = 0; a < cover.order(); ++a)
    for (Elem b = 0; b < cover.order(); ++b)
      if (proj[cover.mul(a, b)] != base.mul(proj[a], proj[b]))
        fail(ErrorCode::NotHomomorphism,
             "proj(" + std::to_string(a) + "*" + std::to_string(b) + ") != proj(" + std::to_string(a) + ")*proj(" +
                 std::to_string(b) + ")");
  std::vector<bool> hit(base.order(), false);
  for (auto p : proj) hit[p] = true;
  if (!std::all_of(hit.begin(), hit.end(), [](bool b) { return b; }))
    fail(ErrorCode::NotSurjective, "projection misses part of the base group");
  CentralExtension e;
  e.name = std::move(name);
  for (Elem x = 0; x < cover.order(); ++x)
    if (proj[x] == base.identity()) e.kernel.push_back(x);
  for (auto m : e.kernel)
    for (Elem x = 0; x < cover.order(); ++x)
      if (cover.mul(m, x) != cover.mul(x, m))
        fail(ErrorCode::NonCentralKernel, "kernel element " + std::to_string(m) + " is not central");
  e.cover = std::move(cover);
  e.base = std::move(base);
  e.proj = std::move(proj);
  return e;
}

/// Extension file:
///   extension <name>
///   cover
///   <group block>
///   base
///   <group block>
///   proj                 followed by one base element per cover element, or
///   proj generators      followed by the images of the cover's generators.
inline CentralExtension load_extension(std::string_view src) {
  auto lines = text::content_lines(src);
  if (lines.empty()) fail(ErrorCode::MalformedInput, "empty extension file");
  auto head = text::words(lines[0]);
  if (head.size() != 2 || head[0] != "extension")
    fail(ErrorCode::MalformedInput, "expected 'extension <name>', got: " + lines[0]);
  auto find = [&](const std::string& key, std::size_t from) {
    for (std::size_t i = from; i < lines.size(); ++i)
      if (lines[i] == key || text::starts_with(lines[i], key + " ")) return i;
    fail(ErrorCode::MalformedInput, "extension file lacks a '" + key + "' section");
  };
  const auto ci = find("cover", 1);
  const auto bi = find("base", ci + 1);
  const auto pi = find("proj", bi + 1);
  auto cover = parse_group_lines({lines.begin() + ci + 1, lines.begin() + bi});
  auto base = parse_group_lines({lines.begin() + bi + 1, lines.begin() + pi});
  auto mode = text::words(lines[pi]);
  std::vector<Elem> proj;
  if (mode.size() == 1) {
    for (std::size_t i = pi + 1; i < lines.size(); ++i)
      for (const auto& w : text::words(lines[i])) proj.push_back(base.parse_element(w));
  } else if (mode.size() == 2 && mode[1] == "generators") {
    const auto& gens = cover.supplied_generators();
    std::vector<Elem> images;
    for (std::size_t i = pi + 1; i < lines.size(); ++i) images.push_back(base.parse_element(lines[i]));
    if (gens.empty()) fail(ErrorCode::MalformedInput, "'proj generators' needs a permutation-generated cover");
    if (images.size() != gens.size())
      fail(ErrorCode::MalformedInput, "expected " + std::to_string(gens.size()) + " generator images, got " +
                                          std::to_string(images.size()));
    constexpr Elem kUnset = static_cast<Elem>(-1);
    proj.assign(cover.order(), kUnset);
    proj[cover.identity()] = base.identity();
    std::vector<Elem> queue{cover.identity()};
    for (std::size_t q = 0; q < queue.size(); ++q)
      for (std::size_t j = 0; j < gens.size(); ++j) {
        const Elem y = cover.mul(queue[q], gens[j]);
        const Elem img = base.mul(proj[queue[q]], images[j]);
        if (proj[y] == kUnset) {
          proj[y] = img;
          queue.push_back(y);
        } else if (proj[y] != img) {
          fail(ErrorCode::NotHomomorphism, "generator images do not extend to a homomorphism");
        }
      }
  } else {
    fail(ErrorCode::MalformedInput, "bad proj line: " + lines[pi]);
  }
  return make_extension(head[1], std::move(cover), std::move(base), std::move(proj));
}

inline CentralExtension load_extension_file(const std::string& path) { return load_extension(text::read_file(path)); }

/// The identity extension base -> base.
inline CentralExtension trivial_extension(const FiniteGroup& g) {
  std::vector<Elem> proj(g.order());
  std::iota(proj.begin(), proj.end(), 0u);
  return make_extension(g.name() + "-trivial", g, g, std::move(proj));
}

/// M(G,C) realised as the quotient extension cover/K.
struct ReducedMultiplier {
  CentralExtension parent;
  ConjClass base_class;
  std::vector<Elem> collapse;   // K, sorted, in the parent cover
  CentralExtension quotient;    // cover/K -> base
  ConjClass lifted_class;       // C' in the quotient cover
  std::vector<Elem> coset_of;   // parent cover element -> quotient cover element
  std::vector<Elem> lift_table; // base element in C -> its unique lift in C'; unset otherwise

  std::size_t multiplier_order() const { return quotient.kernel.size(); }

  Elem lift(Elem c) const {
    if (!base_class.contains(c)) fail(ErrorCode::InvalidArgument, "element is not in the class");
    return lift_table[c];
  }
};

inline ReducedMultiplier reduced_multiplier(const CentralExtension& ext, const ConjClass& C) {
  const auto& cover = ext.cover;
  const auto& base = ext.base;
  if (!is_perfect(base)) fail(ErrorCode::BaseNotPerfect, "base group " + base.name() + " is not perfect");
  if (!generates(base, C.members)) fail(ErrorCode::ClassDoesNotGenerate, "class does not generate the base group");

  auto collapse_for = [&](Elem hat) {
    auto cls = conjugacy_class(cover, hat);
    std::vector<Elem> k;
    for (auto m : ext.kernel)
      if (cls.contains(cover.mul(m, hat))) k.push_back(m);
    return k;
  };
  const auto hat = ext.preimages(C.representative).front();
  auto K = collapse_for(hat);
  if (generated_subgroup(cover, K) != K) fail(ErrorCode::InconsistentMultiplier, "collapse set K is not a subgroup");
  for (auto c : C.members)
    for (auto h : ext.preimages(c))
      if (collapse_for(h) != K)
        fail(ErrorCode::InconsistentMultiplier, "collapse subgroup depends on the chosen lift");

  ReducedMultiplier rm;
  rm.parent = ext;
  rm.base_class = C;
  rm.collapse = K;

  FiniteGroup qcover;
  std::vector<Elem> qproj;
  rm.coset_of.assign(cover.order(), 0);
  if (K.size() == 1) {
    qcover = cover;
    qproj = ext.proj;
    std::iota(rm.coset_of.begin(), rm.coset_of.end(), 0u);
  } else {
    constexpr Elem kUnset = static_cast<Elem>(-1);
    std::fill(rm.coset_of.begin(), rm.coset_of.end(), kUnset);
    std::vector<Elem> reps;
    // identity coset first
    std::vector<Elem> order{cover.identity()};
    for (Elem x = 0; x < cover.order(); ++x)
      if (x != cover.identity()) order.push_back(x);
    for (auto x : order) {
      if (rm.coset_of[x] != kUnset) continue;
      const auto id = static_cast<Elem>(reps.size());
      reps.push_back(x);
      for (auto m : K) rm.coset_of[cover.mul(x, m)] = id;
    }
    const auto n = reps.size();
    std::vector<std::vector<Elem>> rows(n, std::vector<Elem>(n));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) rows[a][b] = rm.coset_of[cover.mul(reps[a], reps[b])];
    qcover = FiniteGroup::from_table(cover.name() + "/K", rows);
    for (auto r : reps) qproj.push_back(ext.proj[r]);
  }
  rm.quotient = make_extension(ext.name + "/K", std::move(qcover), base, std::move(qproj));
  rm.lifted_class = conjugacy_class(rm.quotient.cover, rm.coset_of[hat]);
  rm.lift_table.assign(base.order(), static_cast<Elem>(-1));
  for (auto c : C.members) {
    std::vector<Elem> lifts;
    for (auto x : rm.quotient.preimages(c))
      if (rm.lifted_class.contains(x)) lifts.push_back(x);
    if (lifts.size() != 1)
      fail(ErrorCode::LiftAmbiguity, "element " + std::to_string(c) + " has " + std::to_string(lifts.size()) +
                                         " lifts in the lifted class");
    rm.lift_table[c] = lifts.front();
  }
  return rm;
}

}  // namespace platknot
