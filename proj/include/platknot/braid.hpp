#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "platknot/diagram.hpp"

namespace platknot {

/// A braid word on `strands` strands; letter +i is sigma_i, -i its inverse.
/// Letters act bottom to top.
struct BraidWord {
  std::size_t strands = 0;
  std::vector<int> letters;
  std::vector<int> signs;  // optional strand orientation at the bottom, +1 = up

  std::size_t length() const { return letters.size(); }
};

inline void check_braid(const BraidWord& b) {
  if (b.strands == 0) fail(ErrorCode::MalformedInput, "braid needs at least one strand");
  for (int l : b.letters)
    if (l == 0 || static_cast<std::size_t>(std::abs(l)) >= b.strands)
      fail(ErrorCode::MalformedInput, "braid letter " + std::to_string(l) + " out of range for " +
                                          std::to_string(b.strands) + " strands");
  if (!b.signs.empty() && b.signs.size() != b.strands)
    fail(ErrorCode::StrandMismatch, "sign list length differs from strand count");
}

inline BraidWord inverse(const BraidWord& b) {
  BraidWord r = b;
  std::reverse(r.letters.begin(), r.letters.end());
  for (auto& l : r.letters) l = -l;
  r.signs.clear();
  return r;
}

inline BraidWord concat(const BraidWord& a, const BraidWord& b) {
  if (a.strands != b.strands) fail(ErrorCode::StrandMismatch, "cannot concatenate braids on different strand counts");
  BraidWord r = a;
  r.letters.insert(r.letters.end(), b.letters.begin(), b.letters.end());
  return r;
}

/// Strand permutation: perm[p] = final position of the strand starting at p.
inline std::vector<std::size_t> strand_permutation(const BraidWord& b) {
  std::vector<std::size_t> at(b.strands);  // at[position] = starting position of the strand there
  std::iota(at.begin(), at.end(), 0);
  for (int l : b.letters) {
    auto i = static_cast<std::size_t>(std::abs(l)) - 1;
    std::swap(at[i], at[i + 1]);
  }
  std::vector<std::size_t> perm(b.strands);
  for (std::size_t p = 0; p < b.strands; ++p) perm[at[p]] = p;
  return perm;
}

inline bool is_pure(const BraidWord& b) {
  auto p = strand_permutation(b);
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] != i) return false;
  return true;
}

inline int parse_sign_token(const std::string& w) {
  if (w == "+" || w == "+1" || w == "1") return 1;
  if (w == "-" || w == "-1") return -1;
  fail(ErrorCode::MalformedInput, "bad sign '" + w + "'");
}

/// Parses `braid <s>: 1 -2 1 ...` and an optional `signs: + - ...` line.
inline BraidWord parse_braid(std::string_view src) {
  BraidWord b;
  bool seen = false;
  for (const auto& line : text::content_lines(src)) {
    if (text::starts_with(line, "braid")) {
      auto colon = line.find(':');
      if (colon == std::string::npos) fail(ErrorCode::MalformedInput, "expected 'braid <s>: ...', got: " + line);
      auto head = text::words(line.substr(0, colon));
      if (head.size() != 2) fail(ErrorCode::MalformedInput, "expected 'braid <s>: ...', got: " + line);
      auto s = text::require_int(head[1], "strand count");
      if (s <= 0) fail(ErrorCode::MalformedInput, "strand count must be positive");
      b.strands = static_cast<std::size_t>(s);
      for (const auto& w : text::words(line.substr(colon + 1)))
        b.letters.push_back(static_cast<int>(text::require_int(w, "braid letter")));
      seen = true;
    } else if (text::starts_with(line, "signs:")) {
      for (const auto& w : text::words(line.substr(6))) b.signs.push_back(parse_sign_token(w));
    }
  }
  if (!seen) fail(ErrorCode::MalformedInput, "no 'braid' line");
  check_braid(b);
  return b;
}

inline std::string format_braid(const BraidWord& b) {
  std::string s = "braid " + std::to_string(b.strands) + ":";
  for (int l : b.letters) s += " " + std::to_string(l);
  s += "\n";
  if (!b.signs.empty()) {
    s += "signs:";
    for (int x : b.signs) s += x > 0 ? " +" : " -";
    s += "\n";
  }
  return s;
}

/// Non-crossing perfect matchings on positions 0..s-1, capping the braid
/// below (`bottom`) and above (`top`).
struct PlatPairing {
  std::vector<std::pair<std::size_t, std::size_t>> bottom;
  std::vector<std::pair<std::size_t, std::size_t>> top;
};

inline std::vector<std::size_t> partner_table(const std::vector<std::pair<std::size_t, std::size_t>>& m, std::size_t s) {
  constexpr auto kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> partner(s, kUnset);
  for (auto [a, b] : m) {
    if (a >= s || b >= s || a == b) fail(ErrorCode::StrandMismatch, "cap endpoint out of range");
    if (partner[a] != kUnset || partner[b] != kUnset) fail(ErrorCode::StrandMismatch, "position capped twice");
    partner[a] = b;
    partner[b] = a;
  }
  for (auto p : partner)
    if (p == kUnset) fail(ErrorCode::StrandMismatch, "matching is not perfect on " + std::to_string(s) + " positions");
  return partner;
}

inline void check_noncrossing(const std::vector<std::pair<std::size_t, std::size_t>>& m) {
  for (auto [a, b] : m)
    for (auto [c, d] : m) {
      auto [lo1, hi1] = std::minmax(a, b);
      auto [lo2, hi2] = std::minmax(c, d);
      if (lo1 < lo2 && lo2 < hi1 && hi1 < hi2)
        fail(ErrorCode::CrossingMatching, "caps (" + std::to_string(lo1 + 1) + " " + std::to_string(hi1 + 1) + ") and (" +
                                              std::to_string(lo2 + 1) + " " + std::to_string(hi2 + 1) + ") cross");
    }
}

inline void check_pairing(const PlatPairing& p, std::size_t s) {
  if (s % 2) fail(ErrorCode::StrandMismatch, "plat closure needs an even strand count");
  partner_table(p.bottom, s);
  partner_table(p.top, s);
  check_noncrossing(p.bottom);
  check_noncrossing(p.top);
}

inline std::vector<std::pair<std::size_t, std::size_t>> parse_matching(std::string_view s) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  std::size_t i = 0;
  while ((i = s.find('(', i)) != std::string_view::npos) {
    auto close = s.find(')', i);
    if (close == std::string_view::npos) fail(ErrorCode::MalformedInput, "unterminated cap");
    std::string inner(s.substr(i + 1, close - i - 1));
    std::replace(inner.begin(), inner.end(), ',', ' ');
    auto w = text::words(inner);
    if (w.size() != 2) fail(ErrorCode::MalformedInput, "cap must pair two positions");
    auto a = text::require_int(w[0], "cap"), b = text::require_int(w[1], "cap");
    if (a < 1 || b < 1) fail(ErrorCode::StrandMismatch, "cap positions are 1-based");
    out.emplace_back(static_cast<std::size_t>(a - 1), static_cast<std::size_t>(b - 1));
    i = close + 1;
  }
  return out;
}

inline std::string format_matching(const std::vector<std::pair<std::size_t, std::size_t>>& m) {
  std::string s;
  for (auto [a, b] : m) s += "(" + std::to_string(a + 1) + " " + std::to_string(b + 1) + ")";
  return s;
}

/// Parses `bottom: (1 2)(3 4)` and `top: ...` lines.
inline PlatPairing parse_pairing(std::string_view src) {
  PlatPairing p;
  bool b = false, t = false;
  for (const auto& line : text::content_lines(src)) {
    if (text::starts_with(line, "bottom:")) {
      p.bottom = parse_matching(std::string_view(line).substr(7));
      b = true;
    } else if (text::starts_with(line, "top:")) {
      p.top = parse_matching(std::string_view(line).substr(4));
      t = true;
    }
  }
  if (!b || !t) fail(ErrorCode::MalformedInput, "pairing needs 'bottom:' and 'top:' lines");
  return p;
}

/// Caps (1 2)(3 4)... on 2m positions.
inline std::vector<std::pair<std::size_t, std::size_t>> adjacent_caps(std::size_t s) {
  std::vector<std::pair<std::size_t, std::size_t>> m;
  for (std::size_t i = 0; i + 1 < s; i += 2) m.emplace_back(i, i + 1);
  return m;
}

/// Default orientation: in each component the strand at the smallest bottom
/// position runs upward; caps then force the rest.
inline std::vector<int> default_orientation(const BraidWord& b, const PlatPairing& p) {
  const auto s = b.strands;
  const auto bp = partner_table(p.bottom, s);
  const auto tp = partner_table(p.top, s);
  const auto perm = strand_permutation(b);
  std::vector<std::size_t> start_at(s);  // top position -> starting bottom position
  for (std::size_t i = 0; i < s; ++i) start_at[perm[i]] = i;
  std::vector<int> sign(s, 0);
  for (std::size_t first = 0; first < s; ++first) {
    if (sign[first]) continue;
    // walk the component: up strand from `pos`, across the top cap, down, across the bottom cap
    std::size_t pos = first;
    while (!sign[pos]) {
      sign[pos] = 1;
      const auto down = start_at[tp[perm[pos]]];
      sign[down] = -1;
      pos = bp[down];
    }
  }
  return sign;
}

/// Checks that strand signs alternate across every bottom and top cap.
inline void check_signs(const BraidWord& b, const PlatPairing& p, const std::vector<int>& signs) {
  const auto s = b.strands;
  if (signs.size() != s) fail(ErrorCode::StrandMismatch, "sign list length differs from strand count");
  for (auto [x, y] : p.bottom)
    if (signs[x] == signs[y]) fail(ErrorCode::SignMismatch, "bottom cap joins strands of equal sign");
  const auto perm = strand_permutation(b);
  std::vector<int> top(s);
  for (std::size_t i = 0; i < s; ++i) top[perm[i]] = signs[i];
  for (auto [x, y] : p.top)
    if (top[x] == top[y]) fail(ErrorCode::SignMismatch, "top cap joins strands of equal sign");
}

struct PlatDiagram {
  KnotDiagram diagram;
  std::vector<ArcId> bottom_arcs;  // arc at each bottom position
  std::vector<int> signs;          // orientation used, per bottom position
};

/// Caps the braid above and below. sigma_i^e crosses positions i, i+1 with the
/// over strand coming from position i when e = +1 and from i+1 when e = -1;
/// the crossing sign is -e * s_over * s_under for strand orientations s.
inline PlatDiagram plat_closure(const BraidWord& b, const PlatPairing& p, bool allow_split = true) {
  check_braid(b);
  check_pairing(p, b.strands);
  const auto s = b.strands;
  PlatDiagram out;
  out.signs = b.signs.empty() ? default_orientation(b, p) : b.signs;
  check_signs(b, p, out.signs);

  std::vector<std::uint32_t> seg(s);  // current segment on each position
  std::vector<int> orient(s);         // orientation of the strand at each position
  std::iota(seg.begin(), seg.end(), 0u);
  for (std::size_t i = 0; i < s; ++i) orient[i] = out.signs[i];
  std::uint32_t segments = static_cast<std::uint32_t>(s);
  struct Raw {
    int sign;
    std::uint32_t over, in, out;
  };
  std::vector<Raw> raw;
  for (int l : b.letters) {
    const auto i = static_cast<std::size_t>(std::abs(l)) - 1;
    const int e = l > 0 ? 1 : -1;
    const auto o = e > 0 ? i : i + 1;
    const auto u = e > 0 ? i + 1 : i;
    const auto fresh = segments++;
    const int sign = -e * orient[o] * orient[u];
    if (orient[u] > 0)
      raw.push_back({sign, seg[o], seg[u], fresh});
    else
      raw.push_back({sign, seg[o], fresh, seg[u]});
    seg[u] = fresh;
    std::swap(seg[i], seg[i + 1]);
    std::swap(orient[i], orient[i + 1]);
  }
  detail::UnionFind uf(segments);
  for (auto [x, y] : p.bottom) uf.unite(x, y);
  for (auto [x, y] : p.top) uf.unite(seg[x], seg[y]);

  auto& d = out.diagram;
  std::map<std::uint32_t, ArcId> arc_of;
  auto arc = [&](std::uint32_t sgm) {
    auto [it, added] = arc_of.emplace(uf.find(sgm), static_cast<ArcId>(d.labels.size()));
    if (added) d.labels.push_back(static_cast<long long>(d.labels.size()) + 1);
    return it->second;
  };
  for (std::size_t i = 0; i < s; ++i) out.bottom_arcs.push_back(arc(static_cast<std::uint32_t>(i)));
  for (const auto& r : raw) d.crossings.push_back({r.sign, arc(r.over), arc(r.in), arc(r.out)});
  std::vector<bool> is_under(d.arc_count(), false);
  for (const auto& c : d.crossings) is_under[c.under_in] = true;
  for (ArcId a = 0; a < d.arc_count(); ++a)
    if (!is_under[a]) d.circles.push_back(a);
  d.meridian = out.bottom_arcs.front();
  validate(d, {.allow_split = allow_split});
  return out;
}

}  // namespace platknot
