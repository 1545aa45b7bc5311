#pragma once

#include <string>
#include <vector>

#include "platknot/coloring.hpp"
#include "platknot/zsat.hpp"

namespace platknot {

struct CompiledKnot {
  BraidWord braid;       // b(Z) on 2kn strands
  PlatPairing pairing;
  PlatDiagram plat;
  ArcId meridian = 0;    // gamma_0, the arc at the bottom-left puncture
};

/// Plat caps for width n: bottom (2i-1 2i) everywhere; top (2i 2i+1) inside
/// and across symbols plus the long cap (1 2kn).
inline PlatPairing reduction_pairing(std::size_t k, std::size_t n) {
  const auto s = 2 * k * n;
  PlatPairing p;
  p.bottom = adjacent_caps(s);
  p.top.emplace_back(0, s - 1);
  for (std::size_t i = 1; i + 1 < s; i += 2) p.top.emplace_back(i, i + 1);
  return p;
}

inline CompiledKnot compile(const ZsatCircuit& z, const ZsatAlphabet& A, const GadgetRegistry& reg) {
  const auto k = A.k;
  if (z.k != k) fail(ErrorCode::InvalidArgument, "circuit k differs from the alphabet");
  CompiledKnot out;
  out.braid.strands = 2 * k * z.width;
  for (const auto& g : z.gates) {
    auto it = reg.find(g.gadget);
    if (it == reg.end()) fail(ErrorCode::UnknownGadget, "no gadget '" + g.gadget + "' in the registry");
    const auto& b = it->second.braid;
    if (b.strands != 4 * k)
      fail(ErrorCode::StrandMismatch, "gadget '" + g.gadget + "' has " + std::to_string(b.strands) + " strands");
    const int shift = static_cast<int>(2 * k * (g.at - 1));
    for (int l : b.letters) out.braid.letters.push_back(l > 0 ? l + shift : l - shift);
  }
  out.braid.signs = alternating_signs(k * z.width);
  out.pairing = reduction_pairing(k, z.width);
  out.plat = plat_closure(out.braid, out.pairing);
  out.meridian = out.plat.bottom_arcs.front();
  return out;
}

struct SmallerQ {
  std::string label;
  std::uint64_t q = 0;
  std::uint64_t surjective_pinned = 0;
};

struct ReductionReport {
  std::size_t components = 0;
  std::size_t crossings = 0;
  std::size_t strands = 0;
  ZsatCount zsat;
  std::uint64_t pinned_wirtinger = 0;
  std::uint64_t transfer = 0;
  bool three_way_equal = false;
  std::vector<SmallerQ> smaller;
};

inline ReductionReport verify_reduction(const ZsatInstance& inst, const GadgetRegistry& reg, const CountOptions& opt = {}) {
  const auto& A = inst.alphabet;
  auto K = compile(inst.circuit, A, reg);
  ReductionReport r;
  r.components = component_count(K.plat.diagram);
  r.crossings = K.plat.diagram.crossings.size();
  r.strands = K.braid.strands;
  r.zsat = count_zsat(inst.circuit, A, reg);
  r.pinned_wirtinger = count_pinned(K.plat.diagram, K.meridian, A.group, A.cls, A.c, opt);
  r.transfer = plat_transfer_count(K.braid, K.pairing, A.group, A.cls, std::make_pair(std::size_t{0}, A.c));
  r.three_way_equal = r.zsat.solutions == r.pinned_wirtinger && r.pinned_wirtinger == r.transfer;
  for (const auto& sp : inst.smaller) {
    auto q = count_q(K.plat.diagram, sp.group, sp.cls);
    r.smaller.push_back({sp.label, q.q, q.surjective_pinned});
  }
  return r;
}

}  // namespace platknot
