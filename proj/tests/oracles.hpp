#pragma once

#include <cstdint>
#include <set>
#include <vector>

#include "platknot/group.hpp"
#include "platknot/diagram.hpp"
#include "platknot/extension.hpp"

// Independent reference computations, deliberately naive.
namespace oracle {

using namespace platknot;

/// Tries every assignment of class elements to arcs.
inline std::uint64_t brute_colorings(const KnotDiagram& d, const FiniteGroup& g, const ConjClass& C,
                                     std::optional<std::pair<ArcId, Elem>> pin = {}) {
  const auto n = d.arc_count();
  std::vector<std::size_t> idx(n, 0);
  std::vector<Elem> col(n);
  std::uint64_t count = 0;
  for (;;) {
    for (std::size_t a = 0; a < n; ++a) col[a] = C.members[idx[a]];
    bool ok = !pin || col[pin->first] == pin->second;
    for (const auto& x : d.crossings) {
      if (!ok) break;
      const Elem o = col[x.over];
      const Elem expect = x.sign > 0 ? g.mul(g.mul(g.inv(o), col[x.under_in]), o)
                                     : g.mul(g.mul(o, col[x.under_in]), g.inv(o));
      ok = expect == col[x.under_out];
    }
    count += ok;
    std::size_t i = 0;
    while (i < n && ++idx[i] == C.size()) idx[i++] = 0;
    if (i == n) break;
  }
  return count;
}

/// Order of M(G,C) by direct conjugation in the cover: the kernel elements m
/// with m*c~ conjugate to c~ form the collapse subgroup.
inline std::size_t multiplier_by_conjugation(const CentralExtension& ext, Elem c) {
  const auto& E = ext.cover;
  std::vector<Elem> kernel;
  Elem lift = 0;
  bool have = false;
  for (Elem x = 0; x < E.order(); ++x) {
    if (ext.base.identity() == ext.proj[x]) kernel.push_back(x);
    if (!have && ext.proj[x] == c) lift = x, have = true;
  }
  std::set<Elem> orbit;
  for (Elem h = 0; h < E.order(); ++h) orbit.insert(E.mul(E.mul(h, lift), E.inv(h)));
  std::size_t collapse = 0;
  for (Elem m : kernel) collapse += orbit.count(E.mul(m, lift));
  return kernel.size() / collapse;
}

}  // namespace oracle
