#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "platknot/alphabet.hpp"
#include "platknot/coloring.hpp"
#include "platknot/gadget.hpp"

namespace platknot {

struct Gate {
  std::string gadget;
  std::size_t at = 1;  // acts on wires (at, at+1), 1-based
};

struct ZsatCircuit {
  std::size_t width = 1;
  std::size_t k = 1;
  std::string group_file;
  std::string class_label;
  std::string pin_label;
  std::string extension_file;                             // optional; trivial extension when empty
  std::vector<std::pair<std::string, std::string>> smaller;  // (group file, class) pairs
  std::vector<Gate> gates;
  std::string base_dir = ".";
};

/// Header `zsat width <n> k <k> group <file> class <rep> pin <c>`, then
/// `gate <id> at <i>` lines. Optional `extension <file>` and
/// `smaller <group-file> <class>` lines.
inline ZsatCircuit parse_circuit(std::string_view src, const std::string& base_dir = ".") {
  ZsatCircuit z;
  z.base_dir = base_dir;
  auto lines = text::content_lines(src);
  if (lines.empty()) fail(ErrorCode::MalformedInput, "empty circuit file");
  auto h = text::words(lines[0]);
  if (h.size() != 11 || h[0] != "zsat" || h[1] != "width" || h[3] != "k" || h[5] != "group" || h[7] != "class" ||
      h[9] != "pin")
    fail(ErrorCode::MalformedInput, "expected 'zsat width <n> k <k> group <file> class <rep> pin <c>', got: " + lines[0]);
  auto width = text::require_int(h[2], "width"), k = text::require_int(h[4], "k");
  if (width < 1 || k < 1) fail(ErrorCode::MalformedInput, "width and k must be positive");
  z.width = static_cast<std::size_t>(width);
  z.k = static_cast<std::size_t>(k);
  z.group_file = h[6];
  z.class_label = h[8];
  z.pin_label = h[10];
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto w = text::words(lines[i]);
    if (w[0] == "gate") {
      if (w.size() != 4 || w[2] != "at") fail(ErrorCode::MalformedInput, "expected 'gate <id> at <i>', got: " + lines[i]);
      auto at = text::require_int(w[3], "gate position");
      if (at < 1 || static_cast<std::size_t>(at) + 1 > z.width)
        fail(ErrorCode::MalformedInput, "gate position " + w[3] + " out of range for width " + std::to_string(z.width));
      z.gates.push_back({w[1], static_cast<std::size_t>(at)});
    } else if (w[0] == "extension" && w.size() == 2) {
      z.extension_file = w[1];
    } else if (w[0] == "smaller" && w.size() == 3) {
      z.smaller.emplace_back(w[1], w[2]);
    } else {
      fail(ErrorCode::MalformedInput, "unexpected circuit line: " + lines[i]);
    }
  }
  return z;
}

inline ZsatCircuit load_circuit_file(const std::string& path) {
  return parse_circuit(text::read_file(path), text::parent_dir(path));
}

/// A circuit with its group data and alphabet resolved.
struct ZsatInstance {
  ZsatCircuit circuit;
  ZsatAlphabet alphabet;
  std::vector<SmallerPair> smaller;
};

inline ZsatInstance resolve_instance(const ZsatCircuit& z, std::size_t budget = 100'000'000) {
  ZsatInstance inst;
  inst.circuit = z;
  auto g = load_group_file(text::join_path(z.base_dir, z.group_file));
  CentralExtension ext = z.extension_file.empty() ? trivial_extension(g)
                                                  : load_extension_file(text::join_path(z.base_dir, z.extension_file));
  if (ext.base.order() != g.order()) fail(ErrorCode::InvalidArgument, "extension base differs from the circuit group");
  // class labels and pin resolve in the extension's base so that indices agree
  const auto& base = ext.base;
  auto C = resolve_class(base, z.class_label);
  auto c = base.parse_element(z.pin_label);
  auto rm = reduced_multiplier(ext, C);
  inst.alphabet = build_alphabet(base, C, c, z.k, rm, budget);
  for (const auto& [file, cls] : z.smaller) {
    auto J = load_group_file(text::join_path(z.base_dir, file));
    auto E = resolve_class(J, cls);
    inst.smaller.push_back({J.name() + ":" + cls, std::move(J), std::move(E)});
  }
  return inst;
}

inline std::vector<std::uint32_t> gate_action(const GadgetRegistry& reg, const std::string& id, const ZsatAlphabet& A) {
  auto it = reg.find(id);
  if (it == reg.end()) fail(ErrorCode::UnknownGadget, "no gadget '" + id + "' in the registry");
  auto act = action_on_pairs(it->second.braid, A);
  if (!act) fail(ErrorCode::ActionMismatch, "gadget '" + id + "' does not map A^2 to itself");
  const auto n = A.size();
  for (const auto& r : it->second.action_rows)
    if (r[0] >= n || r[1] >= n || r[2] >= n || r[3] >= n || (*act)[r[0] * n + r[1]] != r[2] * n + r[3])
      fail(ErrorCode::ActionMismatch, "gadget '" + id + "' action rows disagree with its braid");
  return *act;
}

struct ZsatCount {
  std::uint64_t solutions = 0;
  std::uint64_t nontrivial = 0;      // solutions other than all-zombie
  std::size_t U_order = 0;
  bool free = true;                  // every nontrivial solution has a free U-orbit
  std::optional<std::uint64_t> orbits;  // nontrivial / |U| when free
};

/// Counts x in I^n with Z(x) in F^n by running the gates on every input.
inline ZsatCount count_zsat(const ZsatCircuit& z, const ZsatAlphabet& A, const GadgetRegistry& reg) {
  std::map<std::string, std::vector<std::uint32_t>> actions;
  for (const auto& g : z.gates)
    if (!actions.count(g.gadget)) actions.emplace(g.gadget, gate_action(reg, g.gadget, A));
  std::vector<std::uint32_t> I;
  for (std::uint32_t a = 0; a < A.size(); ++a)
    if (A.in_I[a]) I.push_back(a);
  const auto n = z.width;
  const auto m = A.size();
  ZsatCount r;
  r.U_order = A.U.order();
  std::vector<std::size_t> idx(n, 0);
  std::vector<std::uint32_t> x(n);
  std::vector<std::uint32_t> nontrivial_solutions;
  for (;;) {
    for (std::size_t i = 0; i < n; ++i) x[i] = I[idx[i]];
    auto y = x;
    for (const auto& g : z.gates) {
      const auto w = g.at - 1;
      const auto img = actions.at(g.gadget)[y[w] * m + y[w + 1]];
      y[w] = static_cast<std::uint32_t>(img / m);
      y[w + 1] = static_cast<std::uint32_t>(img % m);
    }
    bool ok = true;
    for (auto v : y) ok = ok && A.in_F[v];
    if (ok) {
      r.solutions = checked_add(r.solutions, 1);
      const bool zombie = std::all_of(x.begin(), x.end(), [](std::uint32_t v) { return v == 0; });
      if (!zombie) {
        r.nontrivial = checked_add(r.nontrivial, 1);
        // U acts freely on A \ {z}, so any non-zombie coordinate makes the orbit free
        bool moved_by_all = true;
        for (std::size_t u = 1; u < A.U.order(); ++u) {
          bool fixed = true;
          for (auto v : x) fixed = fixed && A.u_action[u][v] == v;
          if (fixed) moved_by_all = false;
        }
        r.free = r.free && moved_by_all;
      }
    }
    std::size_t i = 0;
    while (i < n && ++idx[i] == I.size()) idx[i++] = 0;
    if (i == n) break;
  }
  if (r.free && r.nontrivial % r.U_order == 0) r.orbits = r.nontrivial / r.U_order;
  return r;
}

}  // namespace platknot
