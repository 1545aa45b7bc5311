#pragma once

#include <algorithm>
#include <future>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "platknot/automorphism.hpp"
#include "platknot/extension.hpp"
#include "platknot/hurwitz.hpp"

namespace platknot {

enum class Stratum { RhatZero, RZero, Rhat, R };

inline Stratum parse_stratum(std::string_view s) {
  if (s == "Rhat0" || s == "rhat0" || s == "R^0hat") return Stratum::RhatZero;
  if (s == "R0" || s == "r0") return Stratum::RZero;
  if (s == "Rhat" || s == "rhat") return Stratum::Rhat;
  if (s == "R" || s == "r") return Stratum::R;
  fail(ErrorCode::InvalidArgument, "unknown stratum '" + std::string(s) + "' (use Rhat0, R0, Rhat, R)");
}

inline std::string stratum_name(Stratum s) {
  switch (s) {
    case Stratum::RhatZero: return "Rhat0";
    case Stratum::RZero: return "R0";
    case Stratum::Rhat: return "Rhat";
    case Stratum::R: return "R";
  }
  return "?";
}

struct OrbitOptions {
  bool mod_conjugation = false;          // also identify tuples related by simultaneous conjugation
  std::size_t budget_states = 100'000'000;
  std::uint64_t seed = 0;                // 0 keeps the natural generator order
  unsigned threads = 1;
};

struct OrbitInfo {
  std::size_t slice_size = 0;            // canonical-slice states in the orbit
  std::size_t full_size = 0;             // states over all sign patterns
  std::optional<std::size_t> sch;        // kernel index of the Schur invariant
  bool sch_constant = true;
  MonodromyTuple sample;                 // least slice state
};

struct OrbitReport {
  std::size_t k = 0;
  Stratum stratum = Stratum::Rhat;
  std::size_t stratum_size = 0;          // slice states in the stratum
  std::vector<OrbitInfo> orbits;         // ordered by least slice state
  std::vector<std::uint32_t> slice_orbit;// stratum slice state (enumeration order) -> orbit
  bool sch_constant = true;
  std::size_t full_states = 0;

  /// Canonical partition of the stratum slice, for comparing runs.
  std::vector<std::vector<std::uint32_t>> partition() const {
    std::vector<std::vector<std::uint32_t>> p(orbits.size());
    for (std::uint32_t i = 0; i < slice_orbit.size(); ++i) p[slice_orbit[i]].push_back(i);
    return p;
  }
};

namespace detail {

// States pack, per position, a sign bit and the class index of the entry
// (of m for + and of m^-1 for -).
class StateCodec {
 public:
  StateCodec(const FiniteGroup& g, const ConjClass& C, std::size_t n) : g_(g), C_(C), n_(n) {
    bits_ = 1;
    while ((std::size_t{1} << bits_) < C.size()) ++bits_;
    if (n * (bits_ + 1) > 64) fail(ErrorCode::BudgetExceeded, "tuple too long for the 64-bit state encoding");
    index_.assign(g.order(), 0);
    for (std::size_t i = 0; i < C.size(); ++i) index_[C.members[i]] = static_cast<std::uint32_t>(i);
  }

  std::uint64_t encode(const MonodromyTuple& t) const {
    std::uint64_t key = 0;
    for (std::size_t i = 0; i < n_; ++i) {
      const Elem probe = t.signs[i] > 0 ? t.elems[i] : g_.inv(t.elems[i]);
      key = (key << (bits_ + 1)) | (std::uint64_t{t.signs[i] < 0} << bits_) | index_[probe];
    }
    return key;
  }

  MonodromyTuple decode(std::uint64_t key) const {
    MonodromyTuple t;
    t.signs.resize(n_);
    t.elems.resize(n_);
    const std::uint64_t mask = (std::uint64_t{1} << bits_) - 1;
    for (std::size_t i = n_; i-- > 0;) {
      const Elem x = C_.members[key & mask];
      const bool neg = (key >> bits_) & 1;
      t.signs[i] = neg ? -1 : 1;
      t.elems[i] = neg ? g_.inv(x) : x;
      key >>= bits_ + 1;
    }
    return t;
  }

 private:
  const FiniteGroup& g_;
  const ConjClass& C_;
  std::size_t n_;
  unsigned bits_;
  std::vector<std::uint32_t> index_;
};

}  // namespace detail

/// All slice states (alternating signs) with trivial boundary product, in
/// lexicographic order of class indices.
inline std::vector<MonodromyTuple> enumerate_rhat_slice(const FiniteGroup& g, const ConjClass& C, std::size_t k,
                                                        std::size_t budget) {
  double space = 1;
  for (std::size_t i = 0; i + 1 < 2 * k; ++i) space *= static_cast<double>(C.size());
  if (space > static_cast<double>(budget))
    fail(ErrorCode::BudgetExceeded, "slice enumeration of " + std::to_string(static_cast<long double>(space)) +
                                        " states exceeds budget");
  std::vector<MonodromyTuple> out;
  MonodromyTuple t;
  t.signs = alternating_signs(k);
  t.elems.assign(2 * k, g.identity());
  const auto n = 2 * k;
  auto rec = [&](auto&& self, std::size_t pos, Elem prefix) -> void {
    if (pos + 1 == n) {
      const Elem last = g.inv(prefix);  // sign of the last position is -
      if (C.contains(g.inv(last))) {
        t.elems[pos] = last;
        out.push_back(t);
      }
      return;
    }
    for (auto x : C.members) {
      const Elem m = t.signs[pos] > 0 ? x : g.inv(x);
      t.elems[pos] = m;
      self(self, pos + 1, g.mul(prefix, m));
    }
  };
  if (n == 0) return out;
  rec(rec, 0, g.identity());
  std::sort(out.begin(), out.end(), [&](const MonodromyTuple& a, const MonodromyTuple& b) {
    for (std::size_t i = 0; i < n; ++i) {
      const auto ka = a.signs[i] > 0 ? a.elems[i] : g.inv(a.elems[i]);
      const auto kb = b.signs[i] > 0 ? b.elems[i] : g.inv(b.elems[i]);
      const auto ia = std::lower_bound(C.members.begin(), C.members.end(), ka) - C.members.begin();
      const auto ib = std::lower_bound(C.members.begin(), C.members.end(), kb) - C.members.begin();
      if (ia != ib) return ia < ib;
    }
    return false;
  });
  return out;
}

inline bool in_stratum(const FiniteGroup& g, const ReducedMultiplier* rm, Stratum s, const MonodromyTuple& t) {
  if (s == Stratum::R || s == Stratum::RZero)
    if (!generates(g, t.elems)) return false;
  if (s == Stratum::RZero || s == Stratum::RhatZero) {
    if (!rm) fail(ErrorCode::InvalidArgument, "zero-Schur strata need a reduced multiplier");
    if (schur(*rm, t) != rm->quotient.cover.identity()) return false;
  }
  return true;
}

/// B_{k,k}-orbits on a stratum of the canonical sign slice, found as full
/// braid-group orbits with sign tracking intersected with the slice.
inline OrbitReport enumerate_orbits(std::size_t k, const FiniteGroup& g, const ConjClass& C,
                                    const ReducedMultiplier* rm, Stratum stratum, const OrbitOptions& opt = {}) {
  if (k == 0) fail(ErrorCode::InvalidArgument, "k must be positive");
  const auto n = 2 * k;
  detail::StateCodec codec(g, C, n);
  OrbitReport rep;
  rep.k = k;
  rep.stratum = stratum;

  std::vector<MonodromyTuple> slice;
  for (auto& t : enumerate_rhat_slice(g, C, k, opt.budget_states))
    if (in_stratum(g, rm, stratum, t)) slice.push_back(std::move(t));
  rep.stratum_size = slice.size();
  std::unordered_map<std::uint64_t, std::uint32_t> slice_index;
  for (std::uint32_t i = 0; i < slice.size(); ++i) slice_index.emplace(codec.encode(slice[i]), i);

  // moves: braid letters, then optional conjugations
  std::vector<int> letters;
  for (int i = 1; i < static_cast<int>(n); ++i) letters.insert(letters.end(), {i, -i});
  std::vector<Elem> conjugators;
  if (opt.mod_conjugation) conjugators = small_generating_set(g);
  std::vector<std::pair<int, Elem>> moves;  // (letter, 0) or (0, conjugator)
  for (int l : letters) moves.emplace_back(l, 0);
  for (auto h : conjugators) moves.emplace_back(0, h);
  if (opt.seed) {
    std::mt19937_64 rng(opt.seed);
    std::shuffle(moves.begin(), moves.end(), rng);
  }
  auto step = [&](const MonodromyTuple& t, const std::pair<int, Elem>& mv) {
    MonodromyTuple u = t;
    if (mv.first) {
      apply_letter(g, u, mv.first);
    } else {
      for (auto& m : u.elems) m = g.conj(mv.second, m);
    }
    return u;
  };

  constexpr auto kNone = static_cast<std::uint32_t>(-1);
  rep.slice_orbit.assign(slice.size(), kNone);
  std::unordered_map<std::uint64_t, std::uint32_t> visited;
  const unsigned threads = std::max(1u, opt.threads);
  for (std::uint32_t start = 0; start < slice.size(); ++start) {
    if (rep.slice_orbit[start] != kNone) continue;
    const auto orbit = static_cast<std::uint32_t>(rep.orbits.size());
    OrbitInfo info;
    info.sample = slice[start];
    std::vector<std::uint64_t> frontier{codec.encode(slice[start])};
    visited.emplace(frontier.front(), orbit);
    std::optional<Elem> sch_value;
    auto record = [&](std::uint64_t key) {
      ++info.full_size;
      if (visited.size() > opt.budget_states) fail(ErrorCode::BudgetExceeded, "orbit search exceeds state budget");
      if (auto it = slice_index.find(key); it != slice_index.end()) {
        rep.slice_orbit[it->second] = orbit;
        ++info.slice_size;
      }
      if (rm) {
        const Elem s = schur(*rm, codec.decode(key));
        if (!sch_value) sch_value = s;
        else if (*sch_value != s) info.sch_constant = false;
      }
    };
    record(frontier.front());
    while (!frontier.empty()) {
      // expand the frontier (optionally in parallel), then insert serially
      std::vector<std::vector<std::uint64_t>> found(threads);
      auto expand = [&](unsigned w) {
        for (std::size_t i = w; i < frontier.size(); i += threads) {
          const auto t = codec.decode(frontier[i]);
          for (const auto& mv : moves) found[w].push_back(codec.encode(step(t, mv)));
        }
      };
      if (threads == 1) {
        expand(0);
      } else {
        std::vector<std::future<void>> jobs;
        for (unsigned w = 0; w < threads; ++w) jobs.push_back(std::async(std::launch::async, expand, w));
        for (auto& j : jobs) j.get();
      }
      std::vector<std::uint64_t> next;
      for (const auto& part : found)
        for (auto key : part)
          if (visited.emplace(key, orbit).second) {
            record(key);
            next.push_back(key);
          }
      frontier = std::move(next);
    }
    if (rm) info.sch = kernel_index(*rm, *sch_value);
    rep.sch_constant = rep.sch_constant && info.sch_constant;
    rep.orbits.push_back(std::move(info));
  }
  rep.full_states = visited.size();
  return rep;
}

}  // namespace platknot
