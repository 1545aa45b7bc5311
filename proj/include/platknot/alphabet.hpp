#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "platknot/automorphism.hpp"
#include "platknot/extension.hpp"
#include "platknot/hurwitz.hpp"
#include "platknot/rubik.hpp"

namespace platknot {

/// The ZSAT alphabet: the zombie z plus the surjective, zero-Schur slice
/// tuples with m_1 = c and m_2k = c^-1. Symbol 0 is always z.
struct ZsatAlphabet {
  std::size_t k = 0;
  FiniteGroup group;
  ConjClass cls;
  Elem c = 0;
  ReducedMultiplier rm;
  AutGroup aut;            // Aut(G)
  AutGroup U;              // Aut(G,c)
  std::vector<MonodromyTuple> symbols;
  std::vector<bool> in_I;
  std::vector<bool> in_F;
  std::vector<std::vector<std::uint32_t>> u_action;  // u_action[u][a]
  std::vector<std::string> warnings;
  std::map<std::vector<Elem>, std::uint32_t> index;

  std::size_t size() const { return symbols.size(); }
  std::size_t count_I() const { return static_cast<std::size_t>(std::count(in_I.begin(), in_I.end(), true)); }
  std::size_t count_F() const { return static_cast<std::size_t>(std::count(in_F.begin(), in_F.end(), true)); }
  std::size_t count_IF() const {
    std::size_t n = 0;
    for (std::size_t a = 0; a < size(); ++a) n += in_I[a] && in_F[a];
    return n;
  }
  std::optional<std::uint32_t> find(const std::vector<Elem>& elems) const {
    auto it = index.find(elems);
    if (it == index.end()) return std::nullopt;
    return it->second;
  }

  /// Diagonal action of U on A^2, pair (a,b) indexed a*|A|+b.
  GroupAction pair_action() const {
    GroupAction ga;
    ga.group = U.as_group("U");
    const auto n = size();
    for (const auto& ua : u_action) {
      std::vector<std::uint32_t> p(n * n);
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) p[a * n + b] = static_cast<std::uint32_t>(ua[a] * n + ua[b]);
      ga.act.push_back(std::move(p));
    }
    return ga;
  }
};

inline bool initial_condition(const FiniteGroup& g, const MonodromyTuple& t) {
  for (std::size_t i = 0; i + 1 < t.size(); i += 2)
    if (t.elems[i + 1] != g.inv(t.elems[i])) return false;
  return true;
}

inline bool final_condition(const FiniteGroup& g, const MonodromyTuple& t) {
  for (std::size_t i = 1; i + 1 < t.size(); i += 2)
    if (t.elems[i + 1] != g.inv(t.elems[i])) return false;
  return true;
}

inline ZsatAlphabet build_alphabet(const FiniteGroup& g, const ConjClass& C, Elem c, std::size_t k,
                                   const ReducedMultiplier& rm, std::size_t budget = 100'000'000) {
  if (!is_nonabelian_simple(g)) fail(ErrorCode::NotSimpleGroup, "alphabet needs a nonabelian simple group");
  if (!C.contains(c)) fail(ErrorCode::InvalidArgument, "pinned element is not in the class");
  if (k == 0) fail(ErrorCode::InvalidArgument, "k must be positive");
  double space = 1;
  for (std::size_t i = 0; i + 3 < 2 * k; ++i) space *= static_cast<double>(C.size());
  if (space > static_cast<double>(budget)) fail(ErrorCode::BudgetExceeded, "alphabet enumeration exceeds budget");

  ZsatAlphabet A;
  A.k = k;
  A.group = g;
  A.cls = C;
  A.c = c;
  A.rm = rm;
  const auto n = 2 * k;
  const auto z = zombie_tuple(g, c, k);
  std::vector<MonodromyTuple> found;
  if (k >= 2) {
    MonodromyTuple t = z;
    // inner positions 2..2k-1 must multiply to the identity
    auto rec = [&](auto&& self, std::size_t pos, Elem prefix) -> void {
      if (pos == n - 2) {
        const Elem last = g.inv(prefix);  // position 2k-1 carries a + sign
        if (!C.contains(last)) return;
        t.elems[pos] = last;
        if (t == z) return;
        if (!generates(g, t.elems)) return;
        if (schur(rm, t) != rm.quotient.cover.identity()) return;
        found.push_back(t);
        return;
      }
      for (auto x : C.members) {
        const Elem m = t.signs[pos] > 0 ? x : g.inv(x);
        t.elems[pos] = m;
        self(self, pos + 1, g.mul(prefix, m));
      }
    };
    rec(rec, 1, g.identity());
  }
  std::sort(found.begin(), found.end(), [](const MonodromyTuple& a, const MonodromyTuple& b) { return a.elems < b.elems; });
  A.symbols.push_back(z);
  A.symbols.insert(A.symbols.end(), found.begin(), found.end());
  for (std::uint32_t i = 0; i < A.symbols.size(); ++i) A.index.emplace(A.symbols[i].elems, i);
  for (const auto& t : A.symbols) {
    A.in_I.push_back(initial_condition(g, t));
    A.in_F.push_back(final_condition(g, t));
  }
  if (A.size() == 1) A.warnings.push_back("alphabet is degenerate (A = {z}); increase k");

  A.aut = automorphism_group(g);
  A.U = aut_point(g, A.aut, c);
  for (const auto& phi : A.U.maps) {
    std::vector<std::uint32_t> perm;
    for (std::uint32_t a = 0; a < A.size(); ++a) {
      std::vector<Elem> img;
      for (auto m : A.symbols[a].elems) img.push_back(phi[m]);
      auto b = A.find(img);
      if (!b) fail(ErrorCode::AlphabetNotInvariant, "Aut(G,c) does not preserve the alphabet");
      if (A.in_I[a] != A.in_I[*b] || A.in_F[a] != A.in_F[*b])
        fail(ErrorCode::AlphabetNotInvariant, "Aut(G,c) does not preserve I or F");
      perm.push_back(*b);
    }
    A.u_action.push_back(std::move(perm));
  }
  return A;
}

}  // namespace platknot
