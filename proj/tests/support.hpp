#pragma once

#include <random>
#include <string>

#include "platknot/platknot.hpp"

namespace pktest {

using namespace platknot;

inline std::string data(const std::string& rel) { return std::string(PLATKNOT_DATA_DIR) + "/" + rel; }

inline FiniteGroup s3() { return load_group_file(data("groups/s3.grp")); }
inline FiniteGroup a4() { return load_group_file(data("groups/a4.grp")); }
inline FiniteGroup a5() { return load_group_file(data("groups/a5.grp")); }
inline CentralExtension sl25() { return load_extension_file(data("groups/sl25_a5.ext")); }
inline KnotDiagram knot(const std::string& name) { return load_diagram_file(data("knots/" + name)); }

/// R2 rewrite: insert sigma_i sigma_i^-1 at position `at`.
inline BraidWord with_r2(BraidWord b, int i, std::size_t at) {
  at = std::min(at, b.letters.size());
  b.letters.insert(b.letters.begin() + static_cast<long>(at), {i, -i});
  return b;
}

/// R1 rewrite on a plat: a twist sigma_i^{+-1} between a bottom cap (i i+1)
/// and the braid.
inline BraidWord with_r1_bottom(BraidWord b, int i, bool positive) {
  b.letters.insert(b.letters.begin(), positive ? i : -i);
  return b;
}

/// Random plat with adjacent caps top and bottom.
template <class Rng>
std::pair<BraidWord, PlatPairing> random_plat(std::size_t strands, std::size_t length, Rng& rng) {
  PlatPairing p{adjacent_caps(strands), adjacent_caps(strands)};
  return {random_braid(strands, length, rng), p};
}

/// Random knot diagram: plat closures are drawn until one has one component.
template <class Rng>
KnotDiagram random_knot(std::size_t max_crossings, Rng& rng) {
  std::uniform_int_distribution<std::size_t> strands_pick(1, 2);
  for (;;) {
    const auto strands = 2 * strands_pick(rng);
    std::uniform_int_distribution<std::size_t> len(0, max_crossings);
    auto [b, p] = random_plat(strands, len(rng), rng);
    auto pd = plat_closure(b, p);
    if (component_count(pd.diagram) == 1) return pd.diagram;
  }
}

}  // namespace pktest
