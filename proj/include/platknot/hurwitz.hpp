#pragma once

#include <random>
#include <string>
#include <vector>

#include "platknot/braid.hpp"
#include "platknot/extension.hpp"
#include "platknot/group.hpp"

namespace platknot {

/// Monodromies around 2k punctures, all loops counterclockwise from a base
/// point below the disk. A + puncture carries an element of C, a - puncture an
/// element of C^-1. The boundary loop is the ordered product m_1 m_2 ... m_2k.
struct MonodromyTuple {
  std::vector<int> signs;
  std::vector<Elem> elems;

  std::size_t size() const { return elems.size(); }
  bool operator==(const MonodromyTuple&) const = default;
};

/// sigma_i: (m_i, m_i+1) -> (m_i m_i+1 m_i^-1, m_i); sigma_i^-1 is its inverse.
inline void apply_letter(const FiniteGroup& g, MonodromyTuple& t, int letter) {
  const auto i = static_cast<std::size_t>(std::abs(letter)) - 1;
  auto& a = t.elems[i];
  auto& b = t.elems[i + 1];
  if (letter > 0) {
    const Elem na = g.conj(a, b);
    b = a;
    a = na;
  } else {
    const Elem nb = g.mul(g.mul(g.inv(b), a), b);
    a = b;
    b = nb;
  }
  std::swap(t.signs[i], t.signs[i + 1]);
}

inline MonodromyTuple apply_braid(const FiniteGroup& g, MonodromyTuple t, const BraidWord& w) {
  if (w.strands != t.size())
    fail(ErrorCode::StrandMismatch, "braid has " + std::to_string(w.strands) + " strands, tuple has " +
                                        std::to_string(t.size()) + " entries");
  for (int l : w.letters) apply_letter(g, t, l);
  return t;
}

inline Elem boundary_product(const FiniteGroup& g, const MonodromyTuple& t) {
  Elem p = g.identity();
  for (auto m : t.elems) p = g.mul(p, m);
  return p;
}

/// Alternating-orientation view: g_i = m_i on + punctures
/// and g_i = m_i^-1 on - punctures.
inline std::vector<Elem> to_alternating(const FiniteGroup& g, const MonodromyTuple& t) {
  std::vector<Elem> out(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) out[i] = t.signs[i] > 0 ? t.elems[i] : g.inv(t.elems[i]);
  return out;
}

struct StratumFlags {
  bool in_T = false;     // entries match their signs' classes
  bool in_Rhat = false;  // and trivial boundary product
  bool in_R = false;     // and the entries generate G
};

inline bool entries_in_class(const FiniteGroup& g, const ConjClass& C, const MonodromyTuple& t) {
  if (t.signs.size() != t.elems.size()) return false;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!g.valid(t.elems[i])) return false;
    const Elem probe = t.signs[i] > 0 ? t.elems[i] : g.inv(t.elems[i]);
    if (!C.contains(probe)) return false;
  }
  return true;
}

inline StratumFlags stratify(const FiniteGroup& g, const ConjClass& C, const MonodromyTuple& t) {
  StratumFlags f;
  f.in_T = entries_in_class(g, C, t);
  if (!f.in_T) return f;
  f.in_Rhat = boundary_product(g, t) == g.identity();
  if (f.in_Rhat) f.in_R = generates(g, t.elems);
  return f;
}

inline MonodromyTuple zombie_tuple(const FiniteGroup& g, Elem c, std::size_t k) {
  MonodromyTuple t;
  for (std::size_t i = 0; i < k; ++i) {
    t.signs.insert(t.signs.end(), {1, -1});
    t.elems.insert(t.elems.end(), {c, g.inv(c)});
  }
  return t;
}

inline std::vector<int> alternating_signs(std::size_t k) {
  std::vector<int> s;
  for (std::size_t i = 0; i < k; ++i) s.insert(s.end(), {1, -1});
  return s;
}

inline MonodromyTuple concat(const MonodromyTuple& a, const MonodromyTuple& b) {
  MonodromyTuple t = a;
  t.signs.insert(t.signs.end(), b.signs.begin(), b.signs.end());
  t.elems.insert(t.elems.end(), b.elems.begin(), b.elems.end());
  return t;
}

/// Schur invariant, as an element of the quotient cover lying in its kernel.
inline Elem schur(const ReducedMultiplier& rm, const MonodromyTuple& t) {
  const auto& base = rm.quotient.base;
  const auto& cover = rm.quotient.cover;
  if (!entries_in_class(base, rm.base_class, t)) fail(ErrorCode::InvalidArgument, "tuple entries are not in C / C^-1");
  Elem p = cover.identity();
  for (std::size_t i = 0; i < t.size(); ++i) {
    const Elem lift = t.signs[i] > 0 ? rm.lift(t.elems[i]) : cover.inv(rm.lift(base.inv(t.elems[i])));
    p = cover.mul(p, lift);
  }
  if (!rm.quotient.in_kernel(p)) fail(ErrorCode::InvalidArgument, "tuple has nontrivial boundary product");
  return p;
}

/// Position of a kernel element in the sorted kernel list of the quotient.
inline std::size_t kernel_index(const ReducedMultiplier& rm, Elem m) {
  const auto& k = rm.quotient.kernel;
  auto it = std::lower_bound(k.begin(), k.end(), m);
  if (it == k.end() || *it != m) fail(ErrorCode::InvalidArgument, "element is not in the multiplier kernel");
  return static_cast<std::size_t>(it - k.begin());
}

/// Parses `[+3 -7 ...]`; each entry is a sign followed by an element token.
inline MonodromyTuple parse_tuple(const FiniteGroup& g, std::string_view s) {
  s = text::trim(s);
  if (s.size() < 2 || s.front() != '[' || s.back() != ']') fail(ErrorCode::MalformedInput, "tuple literal must be bracketed");
  MonodromyTuple t;
  for (const auto& w : text::words(s.substr(1, s.size() - 2))) {
    if (w.size() < 2 || (w[0] != '+' && w[0] != '-')) fail(ErrorCode::MalformedInput, "tuple entry needs a sign: " + w);
    t.signs.push_back(w[0] == '+' ? 1 : -1);
    t.elems.push_back(g.parse_element(w.substr(1)));
  }
  return t;
}

inline std::string format_tuple(const MonodromyTuple& t) {
  std::string s = "[";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) s += ' ';
    s += t.signs[i] > 0 ? '+' : '-';
    s += std::to_string(t.elems[i]);
  }
  return s + "]";
}

/// Uniform random tuple on the alternating sign pattern.
template <class Rng>
MonodromyTuple random_tuple(const FiniteGroup& g, const ConjClass& C, std::size_t k, Rng& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, C.size() - 1);
  MonodromyTuple t;
  t.signs = alternating_signs(k);
  for (auto s : t.signs) {
    const Elem x = C.members[pick(rng)];
    t.elems.push_back(s > 0 ? x : g.inv(x));
  }
  return t;
}

/// Uniform random tuple in R-hat on the alternating pattern, by fixing the
/// last entry and rejecting when it falls outside C^-1.
template <class Rng>
MonodromyTuple random_rhat_tuple(const FiniteGroup& g, const ConjClass& C, std::size_t k, Rng& rng) {
  for (;;) {
    auto t = random_tuple(g, C, k, rng);
    Elem p = g.identity();
    for (std::size_t i = 0; i + 1 < t.size(); ++i) p = g.mul(p, t.elems[i]);
    const Elem last = g.inv(p);
    if (C.contains(g.inv(last))) {
      t.elems.back() = last;
      return t;
    }
  }
}

template <class Rng>
BraidWord random_braid(std::size_t strands, std::size_t length, Rng& rng) {
  BraidWord b;
  b.strands = strands;
  std::uniform_int_distribution<int> gen(1, static_cast<int>(strands) - 1);
  std::bernoulli_distribution inv(0.5);
  for (std::size_t i = 0; i < length; ++i) b.letters.push_back(inv(rng) ? -gen(rng) : gen(rng));
  return b;
}

/// Pure braid generator A_ij (1 <= i < j <= s):
/// sigma_{j-1} ... sigma_{i+1} sigma_i^2 sigma_{i+1}^-1 ... sigma_{j-1}^-1.
inline std::vector<int> pure_generator(int i, int j) {
  std::vector<int> w;
  for (int t = j - 1; t > i; --t) w.push_back(t);
  w.push_back(i);
  w.push_back(i);
  for (int t = i + 1; t <= j - 1; ++t) w.push_back(-t);
  return w;
}

/// Random pure braid of `length` generators A_ij^{+-1} with lo <= i < j <= hi.
template <class Rng>
BraidWord random_pure_braid(std::size_t strands, std::size_t length, Rng& rng, int lo = 1, int hi = -1) {
  if (hi < 0) hi = static_cast<int>(strands);
  BraidWord b;
  b.strands = strands;
  std::uniform_int_distribution<int> pi(lo, hi - 1);
  std::bernoulli_distribution inv(0.5);
  for (std::size_t n = 0; n < length; ++n) {
    const int i = pi(rng);
    std::uniform_int_distribution<int> pj(i + 1, hi);
    const int j = pj(rng);
    auto w = pure_generator(i, j);
    if (inv(rng)) {
      std::reverse(w.begin(), w.end());
      for (auto& l : w) l = -l;
    }
    b.letters.insert(b.letters.end(), w.begin(), w.end());
  }
  return b;
}

}  // namespace platknot
