#pragma once

#include <algorithm>
#include <atomic>
#include <deque>
#include <functional>
#include <future>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "platknot/automorphism.hpp"
#include "platknot/braid.hpp"
#include "platknot/diagram.hpp"
#include "platknot/group.hpp"
#include "platknot/hurwitz.hpp"

namespace platknot {

struct CountOptions {
  unsigned threads = 1;
};

inline std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_add_overflow(a, b, &r)) fail(ErrorCode::CountOverflow, "coloring count exceeds 64 bits");
  return r;
}

inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r)) fail(ErrorCode::CountOverflow, "coloring count exceeds 64 bits");
  return r;
}

namespace detail {

/// Backtracking search over arc colours with propagation: a crossing whose
/// over arc and one under arc are known determines the other under arc.
class ColoringSearch {
 public:
  static constexpr Elem kUnset = static_cast<Elem>(-1);

  ColoringSearch(const KnotDiagram& d, const FiniteGroup& g, const ConjClass& C)
      : d_(d), g_(g), C_(C), colour_(d.arc_count(), kUnset), incident_(d.arc_count()) {
    for (std::size_t x = 0; x < d.crossings.size(); ++x) {
      const auto& c = d.crossings[x];
      incident_[c.over].push_back(x);
      incident_[c.under_in].push_back(x);
      if (c.under_out != c.under_in) incident_[c.under_out].push_back(x);
    }
  }

  void set_order_root(ArcId root) {
    // breadth-first arc order through shared crossings
    order_.clear();
    std::vector<bool> seen(d_.arc_count(), false);
    for (ArcId start : std::vector<ArcId>{root}) {
      std::deque<ArcId> q{start};
      seen[start] = true;
      while (!q.empty()) {
        auto a = q.front();
        q.pop_front();
        order_.push_back(a);
        for (auto x : incident_[a]) {
          const auto& c = d_.crossings[x];
          for (ArcId b : {c.over, c.under_in, c.under_out})
            if (!seen[b]) {
              seen[b] = true;
              q.push_back(b);
            }
        }
      }
    }
    for (ArcId a = 0; a < d_.arc_count(); ++a)
      if (!seen[a]) order_.push_back(a);
  }

  /// Assigns and propagates; returns false on contradiction (state is then
  /// partially assigned and must be rolled back with undo_to).
  bool assign(ArcId a, Elem v) {
    if (!C_.contains(v)) return false;
    if (colour_[a] != kUnset) return colour_[a] == v;
    colour_[a] = v;
    trail_.push_back(a);
    std::vector<ArcId> work{a};
    while (!work.empty()) {
      const ArcId arc = work.back();
      work.pop_back();
      for (auto x : incident_[arc]) {
        const auto& c = d_.crossings[x];
        const Elem o = colour_[c.over];
        if (o == kUnset) continue;
        const Elem in = colour_[c.under_in];
        const Elem out = colour_[c.under_out];
        const Elem oi = g_.inv(o);
        if (in != kUnset) {
          const Elem want = c.sign > 0 ? g_.mul(g_.mul(oi, in), o) : g_.mul(g_.mul(o, in), oi);
          if (out == kUnset) {
            if (!C_.contains(want)) return false;
            colour_[c.under_out] = want;
            trail_.push_back(c.under_out);
            work.push_back(c.under_out);
          } else if (out != want) {
            return false;
          }
        } else if (out != kUnset) {
          const Elem want = c.sign > 0 ? g_.mul(g_.mul(o, out), oi) : g_.mul(g_.mul(oi, out), o);
          if (!C_.contains(want)) return false;
          colour_[c.under_in] = want;
          trail_.push_back(c.under_in);
          work.push_back(c.under_in);
        }
      }
    }
    return true;
  }

  std::size_t mark() const { return trail_.size(); }
  void undo_to(std::size_t m) {
    while (trail_.size() > m) {
      colour_[trail_.back()] = kUnset;
      trail_.pop_back();
    }
  }

  /// Next arc to branch on, or nullopt when all arcs are coloured.
  std::optional<ArcId> choose() const {
    for (const auto& c : d_.crossings)
      if (colour_[c.over] == kUnset && (colour_[c.under_in] != kUnset || colour_[c.under_out] != kUnset))
        return c.over;
    for (auto a : order_)
      if (colour_[a] == kUnset) return a;
    return std::nullopt;
  }

  std::uint64_t count() {
    auto a = choose();
    if (!a) return 1;
    std::uint64_t total = 0;
    for (auto v : C_.members) {
      const auto m = mark();
      if (assign(*a, v)) total = checked_add(total, count());
      undo_to(m);
    }
    return total;
  }

  void enumerate(const std::function<void(const std::vector<Elem>&)>& visit) {
    auto a = choose();
    if (!a) {
      visit(colour_);
      return;
    }
    for (auto v : C_.members) {
      const auto m = mark();
      if (assign(*a, v)) enumerate(visit);
      undo_to(m);
    }
  }

 private:
  const KnotDiagram& d_;
  const FiniteGroup& g_;
  const ConjClass& C_;
  std::vector<Elem> colour_;
  std::vector<std::vector<std::size_t>> incident_;
  std::vector<ArcId> order_;
  std::vector<ArcId> trail_;
};

inline std::uint64_t run_count(const KnotDiagram& d, const FiniteGroup& g, const ConjClass& C, ArcId root,
                               std::optional<Elem> pin, const CountOptions& opt) {
  ColoringSearch s(d, g, C);
  s.set_order_root(root);
  if (pin && !s.assign(root, *pin)) return 0;
  auto first = s.choose();
  if (!first) return 1;
  if (opt.threads <= 1) return s.count();
  // split the first branch across workers; each worker owns a search copy
  const auto& values = C.members;
  std::vector<std::uint64_t> partial(values.size(), 0);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    ColoringSearch local(d, g, C);
    local.set_order_root(root);
    if (pin) local.assign(root, *pin);
    for (std::size_t i; (i = next++) < values.size();) {
      const auto m = local.mark();
      if (local.assign(*first, values[i])) partial[i] = local.count();
      local.undo_to(m);
    }
  };
  std::vector<std::future<void>> jobs;
  for (unsigned t = 0; t < opt.threads; ++t) jobs.push_back(std::async(std::launch::async, work));
  for (auto& j : jobs) j.get();
  std::uint64_t total = 0;
  for (auto p : partial) total = checked_add(total, p);
  return total;
}

}  // namespace detail

/// #H(K;G,C): colourings of the arcs by elements of C satisfying every
/// crossing relation.
inline std::uint64_t count_colorings(const KnotDiagram& d, const FiniteGroup& g, const ConjClass& C,
                                     const CountOptions& opt = {}) {
  return detail::run_count(d, g, C, d.meridian.value_or(0), std::nullopt, opt);
}

/// #H(K,a;G,c): colourings with arc `a` fixed to c.
inline std::uint64_t count_pinned(const KnotDiagram& d, ArcId a, const FiniteGroup& g, const ConjClass& C, Elem c,
                                  const CountOptions& opt = {}) {
  if (a >= d.arc_count()) fail(ErrorCode::InvalidArgument, "arc index out of range");
  if (!C.contains(c)) fail(ErrorCode::InvalidArgument, "pinned element is not in the class");
  return detail::run_count(d, g, C, a, c, opt);
}

inline void for_each_pinned_coloring(const KnotDiagram& d, ArcId a, const FiniteGroup& g, const ConjClass& C, Elem c,
                                     const std::function<void(const std::vector<Elem>&)>& visit) {
  if (a >= d.arc_count()) fail(ErrorCode::InvalidArgument, "arc index out of range");
  detail::ColoringSearch s(d, g, C);
  s.set_order_root(a);
  if (!s.assign(a, c)) return;
  s.enumerate(visit);
}

inline ArcId pin_arc(const KnotDiagram& d) { return d.meridian.value_or(0); }

struct QCount {
  std::uint64_t total = 0;               // #H(K;G,C)
  std::uint64_t pinned = 0;              // #H(K,a;G,c)
  std::uint64_t surjective_pinned = 0;   // pinned colourings whose image is G
  std::uint64_t surjective = 0;          // |C| * surjective_pinned
  std::size_t aut_point = 0;             // |Aut(G,c)|
  std::size_t aut_class = 0;             // |Aut(G,C)|
  std::uint64_t q = 0;                   // #Q(K;G,C)
};

inline bool image_generates(const FiniteGroup& g, const std::vector<Elem>& colours) {
  std::vector<Elem> v(colours);
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return generates(g, v);
}

inline QCount count_q(const KnotDiagram& d, const FiniteGroup& g, const ConjClass& C, const AutGroup& aut) {
  QCount r;
  const Elem c = C.representative;
  const ArcId a = pin_arc(d);
  std::map<std::vector<Elem>, bool> cache;
  for_each_pinned_coloring(d, a, g, C, c, [&](const std::vector<Elem>& col) {
    r.pinned = checked_add(r.pinned, 1);
    std::vector<Elem> v(col);
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    auto it = cache.find(v);
    if (it == cache.end()) it = cache.emplace(v, generates(g, v)).first;
    if (it->second) r.surjective_pinned = checked_add(r.surjective_pinned, 1);
  });
  r.total = checked_mul(C.size(), r.pinned);
  r.surjective = checked_mul(C.size(), r.surjective_pinned);
  r.aut_point = aut_point(g, aut, c).order();
  r.aut_class = aut_class(g, aut, C).order();
  if (r.surjective_pinned % r.aut_point != 0)
    fail(ErrorCode::DivisibilityViolation, "surjective pinned count " + std::to_string(r.surjective_pinned) +
                                               " is not divisible by |Aut(G,c)| = " + std::to_string(r.aut_point));
  r.q = r.surjective_pinned / r.aut_point;
  return r;
}

inline QCount count_q(const KnotDiagram& d, const FiniteGroup& g, const ConjClass& C) {
  return count_q(d, g, C, automorphism_group(g));
}

/// One summand of the image decomposition: colourings whose image subgroup is
/// G-conjugate to J, with E = C n J.
struct ImageBucket {
  std::vector<Elem> subgroup;       // representative J containing c, sorted
  std::size_t order = 0;
  bool cyclic = false;
  bool full = false;
  std::uint64_t pinned = 0;         // pinned colourings with image conjugate to J
  std::uint64_t total = 0;          // |C| * pinned
  std::size_t conjugates = 0;       // m_J, number of G-conjugates of J
  std::size_t aut_JE = 0;           // |Aut(J,E)|
  std::uint64_t q = 0;              // #Q(K;J,E)

  std::string descriptor() const {
    if (full) return "G";
    if (cyclic) return "cyclic" + std::to_string(order);
    return "order" + std::to_string(order);
  }
};

struct ImageBreakdown {
  std::vector<ImageBucket> buckets;  // sorted by subgroup order, then representative
  std::uint64_t total = 0;
  std::uint64_t reconstructed = 0;   // sum of m_J * |Aut(J,E)| * q_J
};

inline std::vector<Elem> conjugate_set(const FiniteGroup& g, Elem h, const std::vector<Elem>& s) {
  std::vector<Elem> out;
  for (auto x : s) out.push_back(g.conj(h, x));
  std::sort(out.begin(), out.end());
  return out;
}

inline ImageBreakdown image_breakdown(const KnotDiagram& d, const FiniteGroup& g, const ConjClass& C,
                                      std::size_t desk_cap = 360) {
  if (g.order() > desk_cap) fail(ErrorCode::CapExceeded, "image breakdown limited to order " + std::to_string(desk_cap));
  const Elem c = C.representative;
  std::map<std::vector<Elem>, std::vector<Elem>> image_of_values;  // distinct values -> generated subgroup
  std::map<std::vector<Elem>, std::uint64_t> by_image;
  for_each_pinned_coloring(d, pin_arc(d), g, C, c, [&](const std::vector<Elem>& col) {
    std::vector<Elem> v(col);
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    auto it = image_of_values.find(v);
    if (it == image_of_values.end()) it = image_of_values.emplace(v, generated_subgroup(g, v)).first;
    auto& n = by_image[it->second];
    n = checked_add(n, 1);
  });
  // group exact images by G-conjugacy class, keyed by the least conjugate
  std::map<std::vector<Elem>, ImageBucket> classes;
  for (const auto& [J, n] : by_image) {
    std::vector<Elem> key = J;
    for (Elem h = 0; h < g.order(); ++h) key = std::min(key, conjugate_set(g, h, J));
    auto [it, added] = classes.emplace(key, ImageBucket{});
    auto& b = it->second;
    if (added) b.subgroup = J;
    b.pinned = checked_add(b.pinned, n);
  }
  ImageBreakdown out;
  for (auto& [key, b] : classes) {
    b.order = b.subgroup.size();
    b.full = b.order == g.order();
    std::vector<std::vector<Elem>> conj;
    for (Elem h = 0; h < g.order(); ++h) conj.push_back(conjugate_set(g, h, b.subgroup));
    std::sort(conj.begin(), conj.end());
    conj.erase(std::unique(conj.begin(), conj.end()), conj.end());
    b.conjugates = conj.size();
    auto sub = extract_subgroup(g, b.subgroup, "J");
    std::vector<Elem> E;
    for (auto x : b.subgroup)
      if (C.contains(x)) E.push_back(sub.to_local(x));
    b.cyclic = std::any_of(b.subgroup.begin(), b.subgroup.end(),
                           [&](Elem x) { return g.element_order(x) == b.order; });
    auto autJ = automorphism_group(sub.group, desk_cap);
    auto Eclass = make_class(sub.group, E);
    b.aut_JE = aut_class(sub.group, autJ, Eclass).order();
    b.total = checked_mul(C.size(), b.pinned);
    const auto denom = static_cast<std::uint64_t>(b.conjugates) * b.aut_JE;
    if (b.total % denom != 0)
      fail(ErrorCode::DivisibilityViolation, "bucket count " + std::to_string(b.total) + " not divisible by m_J*|Aut(J,E)| = " +
                                                 std::to_string(denom));
    b.q = b.total / denom;
    out.total = checked_add(out.total, b.total);
    out.reconstructed = checked_add(out.reconstructed, checked_mul(denom, b.q));
    out.buckets.push_back(b);
  }
  std::sort(out.buckets.begin(), out.buckets.end(), [](const ImageBucket& a, const ImageBucket& b) {
    return a.order != b.order ? a.order < b.order : a.subgroup < b.subgroup;
  });
  return out;
}

/// Counts bottom-cap-compatible monodromy tuples whose image under the
/// Hurwitz action of b is top-cap compatible. A cap (x y) is compatible when
/// m_y = m_x^-1. With `pin`, the arc at that bottom position is fixed.
inline std::uint64_t plat_transfer_count(const BraidWord& b, const PlatPairing& p, const FiniteGroup& g,
                                         const ConjClass& C, std::optional<std::pair<std::size_t, Elem>> pin = {}) {
  check_braid(b);
  check_pairing(p, b.strands);
  const auto signs = b.signs.empty() ? default_orientation(b, p) : b.signs;
  check_signs(b, p, signs);
  const auto& caps = p.bottom;
  std::vector<std::vector<Elem>> choices(caps.size(), C.members);
  if (pin) {
    if (pin->first >= b.strands) fail(ErrorCode::InvalidArgument, "pin position out of range");
    if (!C.contains(pin->second)) fail(ErrorCode::InvalidArgument, "pinned element is not in the class");
    for (std::size_t i = 0; i < caps.size(); ++i)
      if (caps[i].first == pin->first || caps[i].second == pin->first) choices[i] = {pin->second};
  }
  MonodromyTuple t;
  t.signs = signs;
  t.elems.assign(b.strands, g.identity());
  std::vector<std::size_t> idx(caps.size(), 0);
  std::uint64_t total = 0;
  for (;;) {
    for (std::size_t i = 0; i < caps.size(); ++i) {
      const Elem x = choices[i][idx[i]];
      for (auto pos : {caps[i].first, caps[i].second}) t.elems[pos] = signs[pos] > 0 ? x : g.inv(x);
    }
    MonodromyTuple u = t;
    for (int l : b.letters) apply_letter(g, u, l);
    bool ok = true;
    for (auto [x, y] : p.top)
      if (u.elems[y] != g.inv(u.elems[x])) {
        ok = false;
        break;
      }
    if (ok) total = checked_add(total, 1);
    std::size_t i = 0;
    while (i < caps.size() && ++idx[i] == choices[i].size()) idx[i++] = 0;
    if (i == caps.size()) break;
  }
  return total;
}

}  // namespace platknot
