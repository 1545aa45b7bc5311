#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "platknot/extension.hpp"
#include "platknot/gadget.hpp"
#include "platknot/hurwitz.hpp"

namespace platknot {

/// The braid must send states[i] to images[i] in `group`, and fix every
/// constraint state in its own group.
struct SearchTarget {
  std::vector<MonodromyTuple> states;
  std::vector<MonodromyTuple> images;
  struct Fixed {
    const FiniteGroup* group;
    std::vector<MonodromyTuple> states;
  };
  std::vector<Fixed> fixed;
};

struct SearchOptions {
  std::size_t depth_cap = 4;          // total pure generators, split between both directions
  std::size_t budget_states = 2'000'000;
  int lo = 1;                         // generators A_ij with lo <= i < j <= hi
  int hi = -1;
};

enum class SearchOutcome { Found, NotFound, Rejected };

struct SearchResult {
  SearchOutcome outcome = SearchOutcome::NotFound;
  std::optional<BraidWord> word;
  std::string reason;
  std::size_t explored = 0;
};

/// Target built from a permutation of A^2 (pair index a*|A|+b).
inline SearchTarget pair_target(const ZsatAlphabet& A, const std::vector<std::uint32_t>& delta) {
  SearchTarget t;
  const auto n = A.size();
  if (delta.size() != n * n) fail(ErrorCode::InvalidArgument, "target must permute A^2");
  for (std::size_t i = 0; i < n * n; ++i) {
    t.states.push_back(concat(A.symbols[i / n], A.symbols[i % n]));
    t.images.push_back(concat(A.symbols[delta[i] / n], A.symbols[delta[i] % n]));
  }
  return t;
}

/// Meet-in-the-middle search over words in the pure generators A_ij^{+-1}.
inline SearchResult gadget_search(const FiniteGroup& g, const ReducedMultiplier* rm, std::size_t strands,
                                  const SearchTarget& target, const SearchOptions& opt = {}) {
  SearchResult res;
  if (target.states.size() != target.images.size()) fail(ErrorCode::InvalidArgument, "target states and images differ in number");
  // invariants every braid preserves
  for (std::size_t i = 0; i < target.states.size(); ++i) {
    const auto& s = target.states[i];
    const auto& t = target.images[i];
    if (s.size() != strands || t.size() != strands) fail(ErrorCode::StrandMismatch, "target tuple length differs from strand count");
    if (s.signs != t.signs) {
      res.outcome = SearchOutcome::Rejected;
      res.reason = "target changes a sign pattern; no pure braid does that";
      return res;
    }
    if (boundary_product(g, s) != boundary_product(g, t)) {
      res.outcome = SearchOutcome::Rejected;
      res.reason = "target changes a boundary product";
      return res;
    }
    if (generated_subgroup(g, s.elems) != generated_subgroup(g, t.elems)) {
      res.outcome = SearchOutcome::Rejected;
      res.reason = "target changes an image subgroup";
      return res;
    }
    if (rm && boundary_product(g, s) == g.identity() && schur(*rm, s) != schur(*rm, t)) {
      res.outcome = SearchOutcome::Rejected;
      res.reason = "target changes a Schur invariant";
      return res;
    }
  }
  const int hi = opt.hi < 0 ? static_cast<int>(strands) : opt.hi;
  std::vector<std::vector<int>> moves;
  for (int i = opt.lo; i < hi; ++i)
    for (int j = i + 1; j <= hi; ++j) {
      auto w = pure_generator(i, j);
      moves.push_back(w);
      std::reverse(w.begin(), w.end());
      for (auto& l : w) l = -l;
      moves.push_back(w);
    }

  using Sig = std::vector<Elem>;
  auto signature = [&](const std::vector<MonodromyTuple>& main, const std::vector<std::vector<MonodromyTuple>>& fixed) {
    Sig s;
    for (const auto& t : main) s.insert(s.end(), t.elems.begin(), t.elems.end());
    for (const auto& f : fixed)
      for (const auto& t : f) s.insert(s.end(), t.elems.begin(), t.elems.end());
    return s;
  };
  struct Node {
    std::vector<MonodromyTuple> main;
    std::vector<std::vector<MonodromyTuple>> fixed;
    std::vector<int> word;  // move indices
  };
  auto advance = [&](const Node& n, std::size_t m) {
    Node r{n.main, n.fixed, n.word};
    for (auto& t : r.main)
      for (int l : moves[m]) apply_letter(g, t, l);
    for (std::size_t f = 0; f < r.fixed.size(); ++f)
      for (auto& t : r.fixed[f])
        for (int l : moves[m]) apply_letter(*target.fixed[f].group, t, l);
    r.word.push_back(static_cast<int>(m));
    return r;
  };
  Node fwd0{target.states, {}, {}};
  Node bwd0{target.images, {}, {}};
  for (const auto& f : target.fixed) {
    fwd0.fixed.push_back(f.states);
    bwd0.fixed.push_back(f.states);
  }
  std::unordered_map<Sig, std::vector<int>, detail::VectorHash> seen_f, seen_b;
  std::vector<Node> front_f{fwd0}, front_b{bwd0};
  seen_f.emplace(signature(fwd0.main, fwd0.fixed), std::vector<int>{});
  seen_b.emplace(signature(bwd0.main, bwd0.fixed), std::vector<int>{});

  auto finish = [&](const std::vector<int>& u, const std::vector<int>& v) {
    // apply(u, s) = apply(v, delta(s))  =>  u v^-1 realises delta
    BraidWord w;
    w.strands = strands;
    for (int m : u) w.letters.insert(w.letters.end(), moves[m].begin(), moves[m].end());
    for (auto it = v.rbegin(); it != v.rend(); ++it)
      for (auto l = moves[*it].rbegin(); l != moves[*it].rend(); ++l) w.letters.push_back(-*l);
    res.outcome = SearchOutcome::Found;
    res.word = w;
    res.explored = seen_f.size() + seen_b.size();
    return res;
  };
  if (auto it = seen_b.find(signature(fwd0.main, fwd0.fixed)); it != seen_b.end()) return finish({}, it->second);

  std::size_t depth_f = 0, depth_b = 0;
  while (depth_f + depth_b < opt.depth_cap) {
    const bool forward = depth_f <= depth_b;
    auto& front = forward ? front_f : front_b;
    auto& seen = forward ? seen_f : seen_b;
    auto& other = forward ? seen_b : seen_f;
    std::vector<Node> next;
    for (const auto& node : front)
      for (std::size_t m = 0; m < moves.size(); ++m) {
        auto r = advance(node, m);
        auto sig = signature(r.main, r.fixed);
        if (!seen.emplace(sig, r.word).second) continue;
        if (auto it = other.find(sig); it != other.end())
          return forward ? finish(r.word, it->second) : finish(it->second, r.word);
        if (seen_f.size() + seen_b.size() > opt.budget_states) {
          res.reason = "state budget exhausted";
          res.explored = seen_f.size() + seen_b.size();
          return res;
        }
        next.push_back(std::move(r));
      }
    front = std::move(next);
    (forward ? depth_f : depth_b)++;
  }
  res.reason = "no word within depth " + std::to_string(opt.depth_cap);
  res.explored = seen_f.size() + seen_b.size();
  return res;
}

}  // namespace platknot

namespace platknot {

/// A planted gate: the commutator [w1, w2] of two random pure braids on 4k
/// strands, each supported on the inner strands 2..2k-1 of both symbols.
/// Its action on A^2 is a commutator of U-equivariant permutations.
inline BraidWord planted_commutator(std::size_t k, std::uint64_t seed, std::size_t length = 2) {
  std::mt19937_64 rng(seed);
  const auto s = 4 * k;
  auto part = [&] {
    BraidWord w;
    w.strands = s;
    const int lo1 = 2, hi1 = static_cast<int>(2 * k) - 1;
    const int lo2 = static_cast<int>(2 * k) + 2, hi2 = static_cast<int>(4 * k) - 1;
    auto a = random_pure_braid(s, length, rng, lo1, hi1);
    auto b = random_pure_braid(s, length, rng, lo2, hi2);
    w.letters = a.letters;
    w.letters.insert(w.letters.end(), b.letters.begin(), b.letters.end());
    return w;
  };
  auto w1 = part();
  auto w2 = part();
  return concat(concat(w1, w2), concat(inverse(w1), inverse(w2)));
}

}  // namespace platknot
