#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <optional>
#include <regex>
#include <string>
#include <vector>

#include "platknot/error.hpp"
#include "platknot/text.hpp"

namespace platknot {

using ArcId = std::uint32_t;

/// Sign convention (Wirtinger relation on arc colours):
///   X+[o,ui,uo]:  uo = o^-1 * ui * o
///   X-[o,ui,uo]:  uo = o * ui * o^-1
struct Crossing {
  int sign = 1;
  ArcId over = 0;
  ArcId under_in = 0;
  ArcId under_out = 0;
};

struct KnotDiagram {
  std::vector<long long> labels;  // external arc ids; internal arc i has label labels[i]
  std::vector<Crossing> crossings;
  std::vector<ArcId> circles;     // crossing-free components, declared as O[a]
  std::optional<ArcId> meridian;

  std::size_t arc_count() const { return labels.size(); }

  ArcId arc(long long label) const {
    auto it = std::find(labels.begin(), labels.end(), label);
    if (it == labels.end()) fail(ErrorCode::InvalidArgument, "no arc with id " + std::to_string(label));
    return static_cast<ArcId>(it - labels.begin());
  }
};

namespace detail {

struct UnionFind {
  std::vector<std::uint32_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
  std::uint32_t find(std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::uint32_t a, std::uint32_t b) { parent[find(a)] = find(b); }
  std::size_t classes() {
    std::size_t n = 0;
    for (std::uint32_t i = 0; i < parent.size(); ++i) n += find(i) == i;
    return n;
  }
};

}  // namespace detail

struct ValidateOptions {
  bool allow_split = false;  // accept diagrams whose arc graph is disconnected
};

/// Checks arc well-formedness: every arc is entered and left exactly once at
/// undercrossings, or is a declared crossing-free circle.
inline void validate(const KnotDiagram& d, ValidateOptions opt = {}) {
  const auto n = d.arc_count();
  if (n == 0) fail(ErrorCode::MalformedRecord, "diagram has no arcs");
  std::vector<int> in(n, 0), out(n, 0), over(n, 0), circle(n, 0);
  for (const auto& c : d.crossings) {
    if (c.sign != 1 && c.sign != -1) fail(ErrorCode::MalformedRecord, "crossing sign must be +1 or -1");
    if (c.over >= n || c.under_in >= n || c.under_out >= n) fail(ErrorCode::MalformedRecord, "arc index out of range");
    ++in[c.under_in];
    ++out[c.under_out];
    ++over[c.over];
  }
  for (auto a : d.circles) {
    if (a >= n) fail(ErrorCode::MalformedRecord, "arc index out of range");
    ++circle[a];
  }
  for (std::size_t a = 0; a < n; ++a) {
    const auto label = std::to_string(d.labels[a]);
    if (circle[a] > 1) fail(ErrorCode::MalformedRecord, "circle " + label + " declared twice");
    if (circle[a]) {
      if (in[a] || out[a]) fail(ErrorCode::MalformedRecord, "circle " + label + " also ends at an undercrossing");
      continue;
    }
    if (in[a] != 1 || out[a] != 1)
      fail(ErrorCode::DanglingArc, "arc " + label + " starts " + std::to_string(out[a]) + " and ends " +
                                       std::to_string(in[a]) + " times at undercrossings");
  }
  if (d.meridian && *d.meridian >= n) fail(ErrorCode::MalformedRecord, "meridian arc out of range");
  if (!opt.allow_split) {
    detail::UnionFind uf(n);
    for (const auto& c : d.crossings) {
      uf.unite(c.over, c.under_in);
      uf.unite(c.under_in, c.under_out);
    }
    if (uf.classes() != 1) fail(ErrorCode::DisconnectedDiagram, "diagram is not connected");
  }
}

/// Parses `X+[o,ui,uo]`, `X-[o,ui,uo]`, `O[a]` records and an optional
/// `meridian <a>` line. Arc ids are arbitrary integers.
inline KnotDiagram parse_pd(std::string_view src, ValidateOptions opt = {}) {
  KnotDiagram d;
  std::map<long long, ArcId> index;
  auto intern = [&](long long label) {
    auto [it, added] = index.emplace(label, static_cast<ArcId>(d.labels.size()));
    if (added) d.labels.push_back(label);
    return it->second;
  };
  std::optional<long long> meridian;
  for (const auto& line : text::content_lines(src)) {
    if (text::starts_with(line, "meridian")) {
      auto w = text::words(line);
      if (w.size() != 2) fail(ErrorCode::MalformedRecord, "bad meridian line: " + line);
      meridian = text::to_int(w[1]);
      if (!meridian) fail(ErrorCode::MalformedRecord, "bad meridian arc: " + w[1]);
      continue;
    }
    std::size_t i = 0;
    while (i < line.size()) {
      if (std::isspace(static_cast<unsigned char>(line[i])) || line[i] == ',' || line[i] == ';') {
        ++i;
        continue;
      }
      auto open = line.find('[', i);
      auto close = line.find(']', i);
      if (open == std::string::npos || close == std::string::npos || close < open)
        fail(ErrorCode::MalformedRecord, "malformed record near: " + line.substr(i));
      const std::string head = std::string(text::trim(std::string_view(line).substr(i, open - i)));
      std::string body = line.substr(open + 1, close - open - 1);
      std::replace(body.begin(), body.end(), ',', ' ');
      auto args = text::words(body);
      std::vector<long long> v;
      for (const auto& a : args) {
        auto x = text::to_int(a);
        if (!x) fail(ErrorCode::MalformedRecord, "non-integer arc id '" + a + "' in " + head + "[...]");
        v.push_back(*x);
      }
      if (head == "X+" || head == "X-") {
        if (v.size() != 3) fail(ErrorCode::MalformedRecord, head + " record needs three arcs");
        d.crossings.push_back({head == "X+" ? 1 : -1, intern(v[0]), intern(v[1]), intern(v[2])});
      } else if (head == "O") {
        if (v.size() != 1) fail(ErrorCode::MalformedRecord, "O record needs one arc");
        d.circles.push_back(intern(v[0]));
      } else {
        fail(ErrorCode::MalformedRecord, "unknown record type '" + head + "'");
      }
      i = close + 1;
    }
  }
  if (meridian) {
    auto it = index.find(*meridian);
    if (it == index.end()) fail(ErrorCode::DanglingArc, "meridian arc " + std::to_string(*meridian) + " is not used");
    d.meridian = it->second;
  }
  validate(d, opt);
  return d;
}


inline std::string serialize(const KnotDiagram& d) {
  std::string out;
  for (const auto& c : d.crossings) {
    out += c.sign > 0 ? "X+[" : "X-[";
    out += std::to_string(d.labels[c.over]) + "," + std::to_string(d.labels[c.under_in]) + "," +
           std::to_string(d.labels[c.under_out]) + "]\n";
  }
  for (auto a : d.circles) out += "O[" + std::to_string(d.labels[a]) + "]\n";
  if (d.meridian) out += "meridian " + std::to_string(d.labels[*d.meridian]) + "\n";
  return out;
}

/// Converts classical 4-tuple PD codes `X[i,j,k,l]` (under strand i -> k,
/// edges numbered consecutively along each component) to signed records.
/// The over strand runs l -> j on positive crossings and j -> l on negative ones.
inline KnotDiagram from_classical_pd(std::string_view src) {
  std::vector<std::array<long long, 4>> xs;
  static const std::regex rx(R"(X\s*\[\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*\])");
  std::string s(src);
  for (auto it = std::sregex_iterator(s.begin(), s.end(), rx); it != std::sregex_iterator(); ++it)
    xs.push_back({std::stoll((*it)[1]), std::stoll((*it)[2]), std::stoll((*it)[3]), std::stoll((*it)[4])});
  if (xs.empty()) fail(ErrorCode::MalformedRecord, "no X[i,j,k,l] records found");

  std::map<long long, std::uint32_t> eidx;
  std::vector<long long> edges;
  for (const auto& x : xs)
    for (auto e : x)
      if (eidx.emplace(e, static_cast<std::uint32_t>(edges.size())).second) edges.push_back(e);
  detail::UnionFind comp(edges.size());
  for (const auto& x : xs) {
    comp.unite(eidx[x[0]], eidx[x[2]]);
    comp.unite(eidx[x[1]], eidx[x[3]]);
  }
  std::map<std::uint32_t, std::pair<long long, long long>> range;
  for (std::uint32_t e = 0; e < edges.size(); ++e) {
    auto r = comp.find(e);
    auto [it, added] = range.emplace(r, std::make_pair(edges[e], edges[e]));
    it->second.first = std::min(it->second.first, edges[e]);
    it->second.second = std::max(it->second.second, edges[e]);
  }
  auto next = [&](long long e) {
    const auto [lo, hi] = range.at(comp.find(eidx.at(e)));
    return e < hi ? e + 1 : lo;
  };
  for (const auto& x : xs) {
    if (next(x[0]) != x[2]) fail(ErrorCode::OrientationInference, "under strand edges are not consecutive");
  }
  detail::UnionFind arcs(edges.size());
  for (const auto& x : xs) arcs.unite(eidx[x[1]], eidx[x[3]]);

  KnotDiagram d;
  std::map<std::uint32_t, ArcId> arc_of_root;
  auto arc = [&](long long e) {
    auto r = arcs.find(eidx.at(e));
    auto [it, added] = arc_of_root.emplace(r, static_cast<ArcId>(d.labels.size()));
    if (added) d.labels.push_back(static_cast<long long>(d.labels.size()) + 1);
    return it->second;
  };
  for (const auto& x : xs) {
    const bool l_to_j = next(x[3]) == x[1];
    const bool j_to_l = next(x[1]) == x[3];
    if (l_to_j == j_to_l) fail(ErrorCode::OrientationInference, "cannot infer over-strand direction");
    d.crossings.push_back({l_to_j ? 1 : -1, arc(x[1]), arc(x[0]), arc(x[2])});
  }
  validate(d);
  return d;
}

/// Reads a diagram file in either record format.
inline KnotDiagram load_diagram(std::string_view src, ValidateOptions opt = {}) {
  static const std::regex classical(R"(X\s*\[)");
  std::string s(src);
  if (std::regex_search(s, classical)) return from_classical_pd(src);
  return parse_pd(src, opt);
}

inline KnotDiagram load_diagram_file(const std::string& path, ValidateOptions opt = {}) {
  return load_diagram(text::read_file(path), opt);
}

struct WirtingerRelation {
  ArcId out;
  ArcId over;
  ArcId in;
  int sign;
};

struct Presentation {
  std::size_t generators = 0;
  std::vector<WirtingerRelation> relations;

  std::string to_string(const KnotDiagram& d) const {
    std::string s;
    for (const auto& r : relations) {
      auto x = [&](ArcId a) { return "x" + std::to_string(d.labels[a]); };
      if (r.sign > 0)
        s += x(r.out) + " = " + x(r.over) + "^-1 " + x(r.in) + " " + x(r.over) + "\n";
      else
        s += x(r.out) + " = " + x(r.over) + " " + x(r.in) + " " + x(r.over) + "^-1\n";
    }
    return s;
  }
};

inline Presentation wirtinger(const KnotDiagram& d) {
  Presentation p;
  p.generators = d.arc_count();
  for (const auto& c : d.crossings) p.relations.push_back({c.under_out, c.over, c.under_in, c.sign});
  return p;
}

/// Link components, by following under_in -> under_out at each crossing.
inline std::size_t component_count(const KnotDiagram& d) {
  detail::UnionFind uf(d.arc_count());
  for (const auto& c : d.crossings) uf.unite(c.under_in, c.under_out);
  return uf.classes();
}

/// Component index for each arc, numbered by first appearance.
inline std::vector<std::uint32_t> component_of_arcs(const KnotDiagram& d) {
  detail::UnionFind uf(d.arc_count());
  for (const auto& c : d.crossings) uf.unite(c.under_in, c.under_out);
  std::map<std::uint32_t, std::uint32_t> ids;
  std::vector<std::uint32_t> out(d.arc_count());
  for (ArcId a = 0; a < d.arc_count(); ++a)
    out[a] = ids.emplace(uf.find(a), static_cast<std::uint32_t>(ids.size())).first->second;
  return out;
}

}  // namespace platknot
