#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "platknot/error.hpp"
#include "platknot/text.hpp"

namespace platknot {

using Elem = std::uint32_t;

/// Zero-based image table of a permutation.
using Perm = std::vector<std::uint32_t>;

namespace detail {

struct VectorHash {
  std::size_t operator()(const std::vector<std::uint32_t>& v) const noexcept {
    std::uint64_t h = 1469598103934665603ULL;
    for (auto x : v) {
      h ^= x;
      h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

// (a*b)(x) = b(a(x)): apply a first.
inline Perm compose(const Perm& a, const Perm& b) {
  Perm r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = b[a[i]];
  return r;
}

inline Perm inverse(const Perm& a) {
  Perm r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[a[i]] = static_cast<std::uint32_t>(i);
  return r;
}

}  // namespace detail

/// Parses cycle notation on points 1..degree, e.g. "(1 2 3)(4 5)" or "()".
inline Perm parse_cycles(std::string_view s, std::size_t degree) {
  Perm p(degree);
  std::iota(p.begin(), p.end(), 0u);
  std::vector<bool> used(degree, false);
  std::size_t i = 0;
  s = text::trim(s);
  if (s.empty()) fail(ErrorCode::MalformedInput, "empty permutation");
  while (i < s.size()) {
    if (std::isspace(static_cast<unsigned char>(s[i]))) { ++i; continue; }
    if (s[i] != '(') fail(ErrorCode::MalformedInput, "bad cycle notation: " + std::string(s));
    auto close = s.find(')', i);
    if (close == std::string_view::npos) fail(ErrorCode::MalformedInput, "unterminated cycle: " + std::string(s));
    std::string inner(s.substr(i + 1, close - i - 1));
    std::replace(inner.begin(), inner.end(), ',', ' ');
    std::vector<std::uint32_t> cyc;
    for (const auto& w : text::words(inner)) {
      auto v = text::require_int(w, "cycle point");
      if (v < 1 || static_cast<std::size_t>(v) > degree)
        fail(ErrorCode::MalformedInput, "cycle point out of range: " + w);
      auto pt = static_cast<std::uint32_t>(v - 1);
      if (used[pt]) fail(ErrorCode::MalformedInput, "point repeated in cycles: " + w);
      used[pt] = true;
      cyc.push_back(pt);
    }
    for (std::size_t j = 0; j < cyc.size(); ++j) p[cyc[j]] = cyc[(j + 1) % cyc.size()];
    i = close + 1;
  }
  return p;
}

inline std::string format_cycles(const Perm& p) {
  std::string out;
  std::vector<bool> seen(p.size(), false);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i] || p[i] == i) continue;
    out += '(';
    std::size_t j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = true;
      if (!first) out += ' ';
      out += std::to_string(j + 1);
      first = false;
      j = p[j];
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

/// A finite group with elements 0..order-1.
///
/// Groups up to kTableCap elements carry a full multiplication table. Larger
/// permutation groups keep their element list and multiply on demand.
class FiniteGroup {
 public:
  static constexpr std::size_t kTableCap = 512;
  static constexpr std::size_t kDefaultOrderCap = 1'000'000;

  FiniteGroup() = default;

  /// Validates and wraps a Cayley table; rows[a][b] = a*b.
  static FiniteGroup from_table(std::string name, const std::vector<std::vector<Elem>>& rows) {
    const std::size_t n = rows.size();
    if (n == 0) fail(ErrorCode::MalformedInput, "empty multiplication table");
    FiniteGroup g;
    g.name_ = std::move(name);
    g.order_ = n;
    g.table_.resize(n * n);
    for (std::size_t a = 0; a < n; ++a) {
      if (rows[a].size() != n)
        fail(ErrorCode::MalformedInput, "table row " + std::to_string(a) + " has wrong length");
      std::vector<bool> seen(n, false);
      for (std::size_t b = 0; b < n; ++b) {
        Elem v = rows[a][b];
        if (v >= n) fail(ErrorCode::MalformedInput, "table entry out of range in row " + std::to_string(a));
        if (seen[v]) fail(ErrorCode::NonBijectiveRow, "row " + std::to_string(a) + " repeats element " + std::to_string(v));
        seen[v] = true;
        g.table_[a * n + b] = v;
      }
    }
    for (std::size_t b = 0; b < n; ++b) {
      std::vector<bool> seen(n, false);
      for (std::size_t a = 0; a < n; ++a) {
        Elem v = g.table_[a * n + b];
        if (seen[v]) fail(ErrorCode::NonBijectiveRow, "column " + std::to_string(b) + " repeats element " + std::to_string(v));
        seen[v] = true;
      }
    }
    std::optional<Elem> id;
    for (Elem e = 0; e < n && !id; ++e) {
      bool ok = true;
      for (Elem x = 0; x < n && ok; ++x) ok = g.table_[e * n + x] == x && g.table_[x * n + e] == x;
      if (ok) id = e;
    }
    if (!id) fail(ErrorCode::MissingIdentity, "table has no two-sided identity");
    g.identity_ = *id;
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b) {
        const Elem ab = g.table_[a * n + b];
        for (Elem c = 0; c < n; ++c)
          if (g.table_[ab * n + c] != g.table_[a * n + g.table_[b * n + c]])
            fail(ErrorCode::NonAssociative, "(" + std::to_string(a) + "*" + std::to_string(b) + ")*" +
                                                std::to_string(c) + " differs from the other bracketing");
      }
    g.build_inverses();
    return g;
  }

  /// Closes permutation generators on `degree` points. Element 0 is the
  /// identity; the rest follow breadth-first discovery order.
  static FiniteGroup from_generators(std::string name, std::size_t degree, const std::vector<Perm>& gens,
                                     std::size_t order_cap = kDefaultOrderCap) {
    FiniteGroup g;
    g.name_ = std::move(name);
    g.degree_ = degree;
    Perm id(degree);
    std::iota(id.begin(), id.end(), 0u);
    g.perms_.push_back(id);
    g.index_.emplace(id, 0);
    for (const auto& p : gens)
      if (p.size() != degree) fail(ErrorCode::MalformedInput, "generator degree mismatch");
    for (std::size_t i = 0; i < g.perms_.size(); ++i) {
      for (const auto& s : gens) {
        Perm q = detail::compose(g.perms_[i], s);
        if (g.index_.find(q) == g.index_.end()) {
          if (g.perms_.size() >= order_cap)
            fail(ErrorCode::OrderCapExceeded, "generator closure exceeds order cap " + std::to_string(order_cap));
          g.index_.emplace(q, static_cast<Elem>(g.perms_.size()));
          g.perms_.push_back(std::move(q));
        }
      }
    }
    g.order_ = g.perms_.size();
    g.identity_ = 0;
    for (const auto& s : gens) g.generator_elems_.push_back(g.index_.at(s));
    if (g.order_ <= kTableCap) {
      const auto n = g.order_;
      g.table_.resize(n * n);
      for (Elem a = 0; a < n; ++a)
        for (Elem b = 0; b < n; ++b) g.table_[a * n + b] = g.index_.at(detail::compose(g.perms_[a], g.perms_[b]));
    }
    g.build_inverses();
    return g;
  }

  const std::string& name() const { return name_; }
  std::size_t order() const { return order_; }
  Elem identity() const { return identity_; }
  bool valid(Elem a) const { return a < order_; }

  Elem mul(Elem a, Elem b) const {
    if (!table_.empty()) return table_[static_cast<std::size_t>(a) * order_ + b];
    return index_.at(detail::compose(perms_[a], perms_[b]));
  }
  Elem inv(Elem a) const { return inverse_[a]; }
  /// g x g^-1
  Elem conj(Elem g, Elem x) const { return mul(mul(g, x), inverse_[g]); }
  Elem commutator(Elem a, Elem b) const { return mul(mul(a, b), mul(inverse_[a], inverse_[b])); }

  Elem pow(Elem a, long long e) const {
    if (e < 0) {
      a = inv(a);
      e = -e;
    }
    Elem r = identity_;
    for (long long i = 0; i < e; ++i) r = mul(r, a);
    return r;
  }

  std::size_t element_order(Elem a) const {
    std::size_t k = 1;
    for (Elem x = a; x != identity_; x = mul(x, a)) ++k;
    return k;
  }

  bool is_permutation_group() const { return !perms_.empty(); }
  std::size_t degree() const { return degree_; }
  const Perm& permutation(Elem a) const { return perms_.at(a); }
  std::optional<Elem> find_permutation(const Perm& p) const {
    auto it = index_.find(p);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  /// Generators as supplied (permutation groups only; empty for tables).
  const std::vector<Elem>& supplied_generators() const { return generator_elems_; }

  void add_label(const std::string& label, Elem e) {
    if (!valid(e)) fail(ErrorCode::UnknownElement, "label '" + label + "' names an invalid element");
    labels_[label] = e;
  }
  const std::map<std::string, Elem>& labels() const { return labels_; }

  /// Element by label, index, or (permutation groups) cycle notation.
  Elem parse_element(std::string_view token) const {
    token = text::trim(token);
    if (auto it = labels_.find(std::string(token)); it != labels_.end()) return it->second;
    if (auto v = text::to_int(token)) {
      if (*v < 0 || static_cast<std::size_t>(*v) >= order_)
        fail(ErrorCode::UnknownElement, "element index out of range: " + std::string(token));
      return static_cast<Elem>(*v);
    }
    if (!token.empty() && token.front() == '(' && is_permutation_group()) {
      auto p = parse_cycles(token, degree_);
      auto e = find_permutation(p);
      if (!e) fail(ErrorCode::UnknownElement, "permutation not in group: " + std::string(token));
      return *e;
    }
    fail(ErrorCode::UnknownElement, "unknown element '" + std::string(token) + "' in group " + name_);
  }

  std::string format_element(Elem a) const {
    if (is_permutation_group()) return std::to_string(a) + " " + format_cycles(perms_[a]);
    return std::to_string(a);
  }

 private:
  void build_inverses() {
    inverse_.assign(order_, 0);
    if (is_permutation_group()) {
      for (Elem a = 0; a < order_; ++a) inverse_[a] = index_.at(detail::inverse(perms_[a]));
      return;
    }
    for (Elem a = 0; a < order_; ++a)
      for (Elem b = 0; b < order_; ++b)
        if (mul(a, b) == identity_) {
          inverse_[a] = b;
          break;
        }
  }

  std::string name_;
  std::size_t order_ = 0;
  Elem identity_ = 0;
  std::vector<Elem> table_;
  std::vector<Elem> inverse_;
  std::size_t degree_ = 0;
  std::vector<Perm> perms_;
  std::unordered_map<Perm, Elem, detail::VectorHash> index_;
  std::vector<Elem> generator_elems_;
  std::map<std::string, Elem> labels_;
};

/// Parses a group block: header `group <name> order <n>`, then `table` with n
/// rows or `perm <m>` with one cycle-notation generator per line. Optional
/// `class <label> <element>` lines name elements.
inline FiniteGroup parse_group_lines(const std::vector<std::string>& lines,
                                     std::size_t order_cap = FiniteGroup::kDefaultOrderCap) {
  if (lines.empty()) fail(ErrorCode::MalformedInput, "empty group description");
  auto head = text::words(lines[0]);
  if (head.size() != 4 || head[0] != "group" || head[2] != "order")
    fail(ErrorCode::MalformedInput, "expected 'group <name> order <n>', got: " + lines[0]);
  const std::string name = head[1];
  const auto declared = text::require_int(head[3], "group order");
  if (declared <= 0) fail(ErrorCode::MalformedInput, "group order must be positive");
  if (lines.size() < 2) fail(ErrorCode::MalformedInput, "group body missing");

  std::vector<std::pair<std::string, std::string>> label_lines;
  std::vector<std::string> body;
  for (std::size_t i = 2; i < lines.size(); ++i) {
    if (text::starts_with(lines[i], "class ")) {
      auto rest = text::trim(std::string_view(lines[i]).substr(6));
      auto sp = rest.find_first_of(" \t");
      if (sp == std::string_view::npos) fail(ErrorCode::MalformedInput, "bad class line: " + lines[i]);
      label_lines.emplace_back(std::string(rest.substr(0, sp)), std::string(text::trim(rest.substr(sp))));
    } else {
      body.push_back(lines[i]);
    }
  }

  FiniteGroup g;
  auto kind = text::words(lines[1]);
  if (kind.size() == 1 && kind[0] == "table") {
    std::vector<std::vector<Elem>> rows;
    for (const auto& l : body) {
      std::vector<Elem> row;
      for (const auto& w : text::words(l)) {
        auto v = text::require_int(w, "table entry");
        if (v < 0) fail(ErrorCode::MalformedInput, "negative table entry");
        row.push_back(static_cast<Elem>(v));
      }
      rows.push_back(std::move(row));
    }
    if (rows.size() != static_cast<std::size_t>(declared))
      fail(ErrorCode::OrderMismatch, "table has " + std::to_string(rows.size()) + " rows, header says " + head[3]);
    g = FiniteGroup::from_table(name, rows);
  } else if (kind.size() == 2 && kind[0] == "perm") {
    const auto degree = text::require_int(kind[1], "permutation degree");
    if (degree <= 0) fail(ErrorCode::MalformedInput, "permutation degree must be positive");
    std::vector<Perm> gens;
    for (const auto& l : body) gens.push_back(parse_cycles(l, static_cast<std::size_t>(degree)));
    g = FiniteGroup::from_generators(name, static_cast<std::size_t>(degree), gens, order_cap);
    if (g.order() != static_cast<std::size_t>(declared))
      fail(ErrorCode::OrderMismatch, "generators close to order " + std::to_string(g.order()) + ", header says " + head[3]);
  } else {
    fail(ErrorCode::MalformedInput, "expected 'table' or 'perm <m>', got: " + lines[1]);
  }
  for (const auto& [label, expr] : label_lines) g.add_label(label, g.parse_element(expr));
  return g;
}

inline FiniteGroup load_group(std::string_view spec, std::size_t order_cap = FiniteGroup::kDefaultOrderCap) {
  return parse_group_lines(text::content_lines(spec), order_cap);
}

inline FiniteGroup load_group_file(const std::string& path, std::size_t order_cap = FiniteGroup::kDefaultOrderCap) {
  return load_group(text::read_file(path), order_cap);
}

inline std::string serialize_table(const FiniteGroup& g) {
  std::string out = "group " + g.name() + " order " + std::to_string(g.order()) + "\ntable\n";
  for (Elem a = 0; a < g.order(); ++a) {
    for (Elem b = 0; b < g.order(); ++b) {
      if (b) out += ' ';
      out += std::to_string(g.mul(a, b));
    }
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Element sets, conjugacy classes, subgroups

/// A conjugation-closed element set: a single class or a union of classes.
struct ConjClass {
  std::vector<Elem> members;  // sorted
  Elem representative = 0;    // minimal index
  std::vector<bool> mask;

  std::size_t size() const { return members.size(); }
  bool contains(Elem e) const { return e < mask.size() && mask[e]; }
};

inline ConjClass make_class(const FiniteGroup& g, std::vector<Elem> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  if (members.empty()) fail(ErrorCode::InvalidArgument, "empty class");
  ConjClass c;
  c.mask.assign(g.order(), false);
  for (auto m : members) c.mask[m] = true;
  c.representative = members.front();
  c.members = std::move(members);
  return c;
}

inline ConjClass conjugacy_class(const FiniteGroup& g, Elem x) {
  if (!g.valid(x)) fail(ErrorCode::UnknownElement, "element index out of range");
  std::vector<Elem> members;
  std::vector<bool> seen(g.order(), false);
  for (Elem h = 0; h < g.order(); ++h) {
    Elem y = g.conj(h, x);
    if (!seen[y]) {
      seen[y] = true;
      members.push_back(y);
    }
  }
  return make_class(g, std::move(members));
}

/// All conjugacy classes, ordered by representative.
inline std::vector<ConjClass> conjugacy_classes(const FiniteGroup& g) {
  std::vector<ConjClass> out;
  std::vector<bool> done(g.order(), false);
  for (Elem x = 0; x < g.order(); ++x) {
    if (done[x]) continue;
    auto c = conjugacy_class(g, x);
    for (auto m : c.members) done[m] = true;
    out.push_back(std::move(c));
  }
  return out;
}

inline ConjClass class_union(const FiniteGroup& g, std::span<const Elem> reps) {
  std::vector<Elem> all;
  for (auto r : reps) {
    auto c = conjugacy_class(g, r);
    all.insert(all.end(), c.members.begin(), c.members.end());
  }
  return make_class(g, std::move(all));
}

inline ConjClass inverse_class(const FiniteGroup& g, const ConjClass& c) {
  std::vector<Elem> inv;
  for (auto m : c.members) inv.push_back(g.inv(m));
  return make_class(g, std::move(inv));
}

/// Class labels `<element order><letter>`; within one element order, classes
/// are lettered by increasing size, then by representative.
inline std::map<std::string, Elem> automatic_class_labels(const FiniteGroup& g) {
  auto classes = conjugacy_classes(g);
  std::map<std::size_t, std::vector<const ConjClass*>> by_order;
  for (const auto& c : classes) by_order[g.element_order(c.representative)].push_back(&c);
  std::map<std::string, Elem> out;
  for (auto& [ord, list] : by_order) {
    std::sort(list.begin(), list.end(), [](const ConjClass* a, const ConjClass* b) {
      return a->size() != b->size() ? a->size() < b->size() : a->representative < b->representative;
    });
    for (std::size_t i = 0; i < list.size(); ++i) {
      std::string label = std::to_string(ord);
      std::size_t j = i;
      std::string suffix;
      do {
        suffix.insert(suffix.begin(), static_cast<char>('a' + j % 26));
        j /= 26;
      } while (j-- > 0);
      out[label + suffix] = list[i]->representative;
    }
  }
  return out;
}

/// Resolves a class argument: explicit label, automatic label, index, or cycle.
inline ConjClass resolve_class(const FiniteGroup& g, std::string_view token) {
  std::string t(text::trim(token));
  if (g.labels().count(t)) return conjugacy_class(g, g.labels().at(t));
  auto autos = automatic_class_labels(g);
  if (auto it = autos.find(t); it != autos.end()) return conjugacy_class(g, it->second);
  return conjugacy_class(g, g.parse_element(t));
}

/// Subgroup generated by `gens`, as a membership mask.
inline std::vector<bool> subgroup_mask(const FiniteGroup& g, std::span<const Elem> gens) {
  std::vector<bool> in(g.order(), false);
  std::vector<Elem> queue{g.identity()};
  in[g.identity()] = true;
  std::vector<Elem> distinct(gens.begin(), gens.end());
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (auto s : distinct) {
      Elem y = g.mul(queue[i], s);
      if (!in[y]) {
        in[y] = true;
        queue.push_back(y);
      }
    }
  return in;
}

inline std::vector<Elem> generated_subgroup(const FiniteGroup& g, std::span<const Elem> gens) {
  auto mask = subgroup_mask(g, gens);
  std::vector<Elem> out;
  for (Elem x = 0; x < g.order(); ++x)
    if (mask[x]) out.push_back(x);
  return out;
}

inline bool generates(const FiniteGroup& g, std::span<const Elem> gens) {
  if (gens.empty()) return g.order() == 1;
  auto mask = subgroup_mask(g, gens);
  return std::all_of(mask.begin(), mask.end(), [](bool b) { return b; });
}

inline bool is_abelian(const FiniteGroup& g) {
  for (Elem a = 0; a < g.order(); ++a)
    for (Elem b = a + 1; b < g.order(); ++b)
      if (g.mul(a, b) != g.mul(b, a)) return false;
  return true;
}

inline std::vector<Elem> commutator_subgroup(const FiniteGroup& g) {
  std::vector<Elem> comms;
  std::vector<bool> seen(g.order(), false);
  for (Elem a = 0; a < g.order(); ++a)
    for (Elem b = 0; b < g.order(); ++b) {
      Elem c = g.commutator(a, b);
      if (!seen[c]) {
        seen[c] = true;
        comms.push_back(c);
      }
    }
  return generated_subgroup(g, comms);
}

inline bool is_perfect(const FiniteGroup& g) { return commutator_subgroup(g).size() == g.order(); }

/// Nonabelian and every nontrivial class generates (its normal closure is G).
inline bool is_nonabelian_simple(const FiniteGroup& g) {
  if (g.order() < 2 || is_abelian(g)) return false;
  for (const auto& c : conjugacy_classes(g)) {
    if (c.representative == g.identity() && c.size() == 1) continue;
    if (!generates(g, c.members)) return false;
  }
  return true;
}

/// A subgroup re-indexed as a standalone group; `embedding[i]` is the element
/// of the parent corresponding to local index i (local 0 is the identity).
struct Subgroup {
  FiniteGroup group;
  std::vector<Elem> embedding;
  std::vector<std::optional<Elem>> local;  // parent -> local index

  Elem to_local(Elem parent) const { return local.at(parent).value(); }
};

inline Subgroup extract_subgroup(const FiniteGroup& g, std::span<const Elem> elements, std::string name) {
  Subgroup s;
  s.embedding.push_back(g.identity());
  for (auto e : elements)
    if (e != g.identity()) s.embedding.push_back(e);
  std::sort(s.embedding.begin() + 1, s.embedding.end());
  s.embedding.erase(std::unique(s.embedding.begin(), s.embedding.end()), s.embedding.end());
  s.local.assign(g.order(), std::nullopt);
  for (std::size_t i = 0; i < s.embedding.size(); ++i) s.local[s.embedding[i]] = static_cast<Elem>(i);
  const auto n = s.embedding.size();
  std::vector<std::vector<Elem>> rows(n, std::vector<Elem>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      auto prod = s.local[g.mul(s.embedding[i], s.embedding[j])];
      if (!prod) fail(ErrorCode::InvalidArgument, "element set is not closed under multiplication");
      rows[i][j] = *prod;
    }
  s.group = FiniteGroup::from_table(std::move(name), rows);
  return s;
}

}  // namespace platknot
