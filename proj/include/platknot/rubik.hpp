#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "platknot/group.hpp"

namespace platknot {

/// A right action of a finite group U on points 0..size-1:
/// act[u][x] = x.u, with act[u*v] = act[v] after act[u].
struct GroupAction {
  FiniteGroup group;
  std::vector<std::vector<std::uint32_t>> act;

  std::size_t size() const { return act.empty() ? 0 : act.front().size(); }
  std::uint32_t apply(Elem u, std::uint32_t x) const { return act[u][x]; }
};

struct RubikVerdict {
  bool member = false;
  bool equivariant = false;
  bool fixes_fixed_point = false;
  bool even_on_orbits = false;
  bool wreath_in_commutator = false;
  std::optional<bool> exact;  // set when the exact closure check ran
};

struct OrbitStructure {
  std::uint32_t fixed_point = 0;
  std::vector<std::uint32_t> reps;     // minimal point of each free orbit
  std::vector<std::uint32_t> orbit_of; // point -> orbit index (fixed point: npos)
  std::vector<Elem> coord;             // point -> u with point = rep.u
  static constexpr std::uint32_t npos = static_cast<std::uint32_t>(-1);
};

inline OrbitStructure analyse_orbits(const GroupAction& a) {
  const auto n = a.size();
  const auto& U = a.group;
  OrbitStructure s;
  s.orbit_of.assign(n, OrbitStructure::npos);
  s.coord.assign(n, 0);
  std::optional<std::uint32_t> fixed;
  std::vector<bool> seen(n, false);
  for (std::uint32_t x = 0; x < n; ++x) {
    if (seen[x]) continue;
    std::vector<std::uint32_t> orbit;
    for (Elem u = 0; u < U.order(); ++u) {
      auto y = a.apply(u, x);
      if (!seen[y]) {
        seen[y] = true;
        orbit.push_back(y);
      }
    }
    if (orbit.size() == 1) {
      if (fixed) fail(ErrorCode::BadOrbitStructure, "more than one U-fixed point");
      fixed = x;
      continue;
    }
    if (orbit.size() != U.order()) fail(ErrorCode::BadOrbitStructure, "orbit of size " + std::to_string(orbit.size()) + " is neither fixed nor free");
    const auto idx = static_cast<std::uint32_t>(s.reps.size());
    s.reps.push_back(x);
    for (Elem u = 0; u < U.order(); ++u) {
      auto y = a.apply(u, x);
      s.orbit_of[y] = idx;
      s.coord[y] = u;
    }
  }
  if (!fixed) fail(ErrorCode::BadOrbitStructure, "no U-fixed point");
  s.fixed_point = *fixed;
  return s;
}

inline bool is_equivariant(const GroupAction& a, const std::vector<std::uint32_t>& pi) {
  for (Elem u = 0; u < a.group.order(); ++u)
    for (std::uint32_t x = 0; x < a.size(); ++x)
      if (pi[a.apply(u, x)] != a.apply(u, pi[x])) return false;
  return true;
}

namespace detail {

inline bool even_permutation(const std::vector<std::uint32_t>& p) {
  std::vector<bool> seen(p.size(), false);
  std::size_t transpositions = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = p[j]) {
      seen[j] = true;
      ++len;
    }
    transpositions += len - 1;
  }
  return transpositions % 2 == 0;
}

// Exact membership in the commutator subgroup of Sym_U(X), by closure.
inline bool exact_rubik_check(const GroupAction& a, const OrbitStructure& s, const std::vector<std::uint32_t>& pi) {
  const auto n = a.size();
  const auto r = s.reps.size();
  const auto& U = a.group;
  // equivariant map sending rep_i -> rep_{dest[i]}.u[i]
  auto build = [&](const std::vector<std::uint32_t>& dest, const std::vector<Elem>& u) {
    Perm p(n);
    p[s.fixed_point] = s.fixed_point;
    for (std::uint32_t x = 0; x < n; ++x) {
      if (x == s.fixed_point) continue;
      const auto o = s.orbit_of[x];
      p[x] = a.apply(U.mul(u[o], s.coord[x]), s.reps[dest[o]]);
    }
    return p;
  };
  std::vector<std::uint32_t> id_dest(r);
  std::iota(id_dest.begin(), id_dest.end(), 0u);
  std::vector<Elem> id_u(r, U.identity());
  std::vector<Perm> gens;
  for (std::size_t i = 0; i + 1 < r; ++i) {
    auto d = id_dest;
    std::swap(d[i], d[i + 1]);
    gens.push_back(build(d, id_u));
  }
  for (Elem v = 0; v < U.order(); ++v) {
    auto u = id_u;
    u[0] = v;
    gens.push_back(build(id_dest, u));
  }
  auto W = FiniteGroup::from_generators("SymU", n, gens);
  std::vector<Elem> wg;
  for (const auto& g : gens) wg.push_back(*W.find_permutation(g));
  std::vector<Elem> normal;
  for (auto x : wg)
    for (auto y : wg) normal.push_back(W.commutator(x, y));
  auto mask = subgroup_mask(W, normal);
  for (bool grew = true; grew;) {
    grew = false;
    for (std::size_t i = 0; i < normal.size(); ++i)
      for (auto g : wg) {
        auto c = W.conj(g, normal[i]);
        if (!mask[c]) {
          normal.push_back(c);
          mask = subgroup_mask(W, normal);
          grew = true;
        }
      }
  }
  auto e = W.find_permutation(Perm(pi.begin(), pi.end()));
  return e && mask[*e];
}

}  // namespace detail

/// Membership of pi in the Rubik group Rub_U(X) = [Sym_U(X), Sym_U(X)].
/// The exact closure check runs when |U|^r * r! <= exact_budget.
inline RubikVerdict is_rubik_member(const GroupAction& a, const std::vector<std::uint32_t>& pi,
                                    std::size_t exact_budget = 200'000) {
  const auto n = a.size();
  if (pi.size() != n) fail(ErrorCode::InvalidArgument, "permutation size does not match the action");
  {
    std::vector<bool> hit(n, false);
    for (auto v : pi) {
      if (v >= n || hit[v]) fail(ErrorCode::InvalidArgument, "map is not a bijection");
      hit[v] = true;
    }
  }
  const auto s = analyse_orbits(a);
  const auto& U = a.group;
  RubikVerdict v;
  v.equivariant = is_equivariant(a, pi);
  v.fixes_fixed_point = pi[s.fixed_point] == s.fixed_point;
  if (v.equivariant && v.fixes_fixed_point) {
    const auto r = s.reps.size();
    std::vector<std::uint32_t> induced(r);
    Elem prod = U.identity();
    for (std::size_t o = 0; o < r; ++o) {
      const auto img = pi[s.reps[o]];
      induced[o] = s.orbit_of[img];
      prod = U.mul(prod, s.coord[img]);
    }
    v.even_on_orbits = detail::even_permutation(induced);
    auto comm = commutator_subgroup(U);
    v.wreath_in_commutator = std::binary_search(comm.begin(), comm.end(), prod);
    double size = 1;
    for (std::size_t i = 1; i <= r; ++i) size *= static_cast<double>(U.order()) * static_cast<double>(i);
    if (size <= static_cast<double>(exact_budget)) v.exact = detail::exact_rubik_check(a, s, pi);
  }
  v.member = v.equivariant && v.fixes_fixed_point && v.even_on_orbits && v.wreath_in_commutator;
  if (v.exact && *v.exact != v.member)
    fail(ErrorCode::InvalidArgument, "Rubik criterion disagrees with the exact closure check");
  return v;
}

}  // namespace platknot
