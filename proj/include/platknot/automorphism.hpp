#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "platknot/group.hpp"

namespace platknot {

/// A set of automorphisms, each a bijection on element indices.
/// Composition follows the permutation convention: (a*b)(x) = b(a(x)).
struct AutGroup {
  std::vector<std::vector<Elem>> maps;  // maps[0] is the identity map

  std::size_t order() const { return maps.size(); }
  Elem apply(std::size_t a, Elem x) const { return maps[a][x]; }

  /// The automorphisms as an abstract group; element i corresponds to maps[i].
  FiniteGroup as_group(const std::string& name = "Aut") const {
    std::map<std::vector<Elem>, Elem> index;
    for (std::size_t i = 0; i < maps.size(); ++i) index.emplace(maps[i], static_cast<Elem>(i));
    const auto n = maps.size();
    std::vector<std::vector<Elem>> rows(n, std::vector<Elem>(n));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        std::vector<Elem> comp(maps[a].size());
        for (std::size_t x = 0; x < comp.size(); ++x) comp[x] = maps[b][maps[a][x]];
        auto it = index.find(comp);
        if (it == index.end()) fail(ErrorCode::InvalidArgument, "automorphism set is not closed under composition");
        rows[a][b] = it->second;
      }
    return FiniteGroup::from_table(name, rows);
  }
};

/// Greedy generating set: repeatedly adjoin an element of largest order
/// outside the current subgroup.
inline std::vector<Elem> small_generating_set(const FiniteGroup& g) {
  std::vector<Elem> by_order(g.order());
  std::iota(by_order.begin(), by_order.end(), 0u);
  std::vector<std::size_t> ord(g.order());
  for (Elem x = 0; x < g.order(); ++x) ord[x] = g.element_order(x);
  std::stable_sort(by_order.begin(), by_order.end(), [&](Elem a, Elem b) { return ord[a] > ord[b]; });
  std::vector<Elem> gens;
  auto mask = subgroup_mask(g, gens);
  for (auto x : by_order) {
    if (mask[x]) continue;
    gens.push_back(x);
    mask = subgroup_mask(g, gens);
    if (std::all_of(mask.begin(), mask.end(), [](bool b) { return b; })) break;
  }
  return gens;
}

namespace detail {

// Extends generator images along a BFS of the Cayley graph. Returns the full
// map, or an empty vector if the images do not define a homomorphism on the
// generated subgroup.
inline std::vector<Elem> extend_images(const FiniteGroup& g, const std::vector<Elem>& gens,
                                       const std::vector<Elem>& images, const FiniteGroup& target) {
  constexpr Elem kUnset = static_cast<Elem>(-1);
  std::vector<Elem> map(g.order(), kUnset);
  map[g.identity()] = target.identity();
  std::vector<Elem> queue{g.identity()};
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const Elem x = queue[i];
    for (std::size_t j = 0; j < gens.size(); ++j) {
      const Elem y = g.mul(x, gens[j]);
      const Elem img = target.mul(map[x], images[j]);
      if (map[y] == kUnset) {
        map[y] = img;
        queue.push_back(y);
      } else if (map[y] != img) {
        return {};
      }
    }
  }
  return map;
}

}  // namespace detail

inline AutGroup automorphism_group(const FiniteGroup& g, std::size_t cap = 360) {
  if (g.order() > cap)
    fail(ErrorCode::CapExceeded, "automorphism search limited to order " + std::to_string(cap));
  const auto gens = small_generating_set(g);
  std::vector<std::size_t> ord(g.order()), csize(g.order());
  for (const auto& c : conjugacy_classes(g))
    for (auto m : c.members) csize[m] = c.size();
  for (Elem x = 0; x < g.order(); ++x) ord[x] = g.element_order(x);

  std::vector<std::vector<Elem>> candidates(gens.size());
  for (std::size_t j = 0; j < gens.size(); ++j)
    for (Elem y = 0; y < g.order(); ++y)
      if (ord[y] == ord[gens[j]] && csize[y] == csize[gens[j]]) candidates[j].push_back(y);

  AutGroup out;
  std::vector<Elem> images;
  std::vector<Elem> prefix;
  auto rec = [&](auto&& self, std::size_t j) -> void {
    if (j == gens.size()) {
      auto map = detail::extend_images(g, gens, images, g);
      if (map.empty()) return;
      std::vector<bool> hit(g.order(), false);
      for (auto v : map) {
        if (hit[v]) return;
        hit[v] = true;
      }
      out.maps.push_back(std::move(map));
      return;
    }
    for (auto y : candidates[j]) {
      images.push_back(y);
      prefix.push_back(gens[j]);
      if (!detail::extend_images(g, prefix, images, g).empty()) self(self, j + 1);
      prefix.pop_back();
      images.pop_back();
    }
  };
  rec(rec, 0);
  std::sort(out.maps.begin(), out.maps.end());  // identity map first
  return out;
}

inline AutGroup aut_class(const FiniteGroup&, const AutGroup& aut, const ConjClass& c) {
  AutGroup out;
  for (const auto& m : aut.maps)
    if (std::all_of(c.members.begin(), c.members.end(), [&](Elem x) { return c.contains(m[x]); }))
      out.maps.push_back(m);
  return out;
}

inline AutGroup aut_point(const FiniteGroup&, const AutGroup& aut, Elem c) {
  AutGroup out;
  for (const auto& m : aut.maps)
    if (m[c] == c) out.maps.push_back(m);
  return out;
}

}  // namespace platknot
