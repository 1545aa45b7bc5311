#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "platknot/platknot.hpp"

using namespace platknot;

namespace {

struct RunConfig {
  std::size_t budget_states = 100'000'000;
  std::size_t budget_depth = 4;
  unsigned threads = 1;
  std::uint64_t seed = 1;
  std::string format = "text";
};

RunConfig cfg;

// rows are printed space-separated in text mode and tab-separated otherwise
void emit(const std::vector<std::string>& row) {
  const char* sep = cfg.format == "tsv" ? "\t" : " ";
  for (std::size_t i = 0; i < row.size(); ++i) std::cout << (i ? sep : "") << row[i];
  std::cout << '\n';
}

template <class T>
std::string str(const T& v) {
  std::ostringstream ss;
  ss << v;
  return ss.str();
}

struct GroupInput {
  std::string group_file;
  std::string extension_file;

  void add(CLI::App* app, bool need_extension = false) {
    auto* g = app->add_option("--group", group_file, "group file")->check(CLI::ExistingFile);
    auto* e = app->add_option("--extension", extension_file, "central extension file (its base is the group)")
                  ->check(CLI::ExistingFile);
    if (need_extension) e->required();
    g->excludes(e);
  }

  bool has_extension() const { return !extension_file.empty(); }

  FiniteGroup group() const {
    if (has_extension()) return load_extension_file(extension_file).base;
    if (group_file.empty()) throw CLI::ValidationError("--group or --extension is required");
    return load_group_file(group_file);
  }

  CentralExtension extension() const { return load_extension_file(extension_file); }
};

void add_common(CLI::App& app) {
  app.add_option("--budget-states", cfg.budget_states, "state budget for enumerations")
      ->envname("PLATKNOT_BUDGET_STATES")
      ->check(CLI::PositiveNumber);
  app.add_option("--budget-depth", cfg.budget_depth, "depth cap for gadget search")
      ->envname("PLATKNOT_BUDGET_DEPTH")
      ->check(CLI::PositiveNumber);
  app.add_option("--threads", cfg.threads, "worker threads")->envname("PLATKNOT_THREADS")->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "seed for all randomness")->envname("PLATKNOT_SEED");
  app.add_option("--format", cfg.format, "output format")
      ->envname("PLATKNOT_FORMAT")
      ->check(CLI::IsMember({"text", "tsv"}));
}

void print_breakdown(const ImageBreakdown& b) {
  emit({"image", "order", "pinned", "total", "conjugates", "aut_JE", "q"});
  for (const auto& x : b.buckets)
    emit({x.descriptor(), str(x.order), str(x.pinned), str(x.total), str(x.conjugates), str(x.aut_JE), str(x.q)});
  emit({"sum", "-", "-", str(b.total), "-", "-", str(b.reconstructed)});
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Conjugacy-class coloring invariants of knots, Hurwitz actions and the ZSAT reduction"};
  app.require_subcommand(1);
  app.fallthrough();
  add_common(app);
  std::function<void()> run;

  // count / pinned / q / breakdown
  std::string knot, cls, element, arc_label;
  GroupInput gi;
  bool breakdown = false;
  {
    auto* c = app.add_subcommand("count", "number of C-colourings #H(K;G,C)");
    c->add_option("--knot", knot, "diagram file")->required()->check(CLI::ExistingFile);
    gi.add(c);
    c->add_option("--class", cls, "class label, element index or cycle")->required();
    c->add_flag("--breakdown", breakdown, "also print the image-subgroup decomposition");
    c->callback([&] {
      run = [&] {
        auto d = load_diagram_file(knot, {.allow_split = true});
        auto g = gi.group();
        auto C = resolve_class(g, cls);
        emit({str(count_colorings(d, g, C, {cfg.threads}))});
        if (breakdown) print_breakdown(image_breakdown(d, g, C));
      };
    });
  }
  {
    auto* c = app.add_subcommand("pinned", "colourings with one arc fixed to c");
    c->add_option("--knot", knot, "diagram file")->required()->check(CLI::ExistingFile);
    gi.add(c);
    c->add_option("--class", cls, "class")->required();
    c->add_option("--element", element, "pinned element (default: class representative)");
    c->add_option("--arc", arc_label, "arc id (default: the meridian line, else the first arc)");
    c->callback([&] {
      run = [&] {
        auto d = load_diagram_file(knot, {.allow_split = true});
        auto g = gi.group();
        auto C = resolve_class(g, cls);
        const Elem e = element.empty() ? C.representative : g.parse_element(element);
        const ArcId a = arc_label.empty() ? pin_arc(d) : d.arc(text::require_int(arc_label, "arc"));
        emit({str(count_pinned(d, a, g, C, e, {cfg.threads}))});
      };
    });
  }
  {
    auto* c = app.add_subcommand("q", "surjective counts and #Q(K;G,C)");
    c->add_option("--knot", knot, "diagram file")->required()->check(CLI::ExistingFile);
    gi.add(c);
    c->add_option("--class", cls, "class")->required();
    c->callback([&] {
      run = [&] {
        auto d = load_diagram_file(knot, {.allow_split = true});
        auto g = gi.group();
        auto C = resolve_class(g, cls);
        auto q = count_q(d, g, C);
        emit({"total", str(q.total)});
        emit({"pinned", str(q.pinned)});
        emit({"surjective", str(q.surjective)});
        emit({"surjective_pinned", str(q.surjective_pinned)});
        emit({"aut_point", str(q.aut_point)});
        emit({"aut_class", str(q.aut_class)});
        emit({"q", str(q.q)});
      };
    });
  }
  {
    auto* c = app.add_subcommand("breakdown", "colourings by conjugacy class of the image subgroup");
    c->add_option("--knot", knot, "diagram file")->required()->check(CLI::ExistingFile);
    gi.add(c);
    c->add_option("--class", cls, "class")->required();
    c->callback([&] {
      run = [&] {
        auto d = load_diagram_file(knot, {.allow_split = true});
        auto g = gi.group();
        print_breakdown(image_breakdown(d, g, resolve_class(g, cls)));
      };
    });
  }

  // plat-count
  std::string braid_file, plat_file;
  std::optional<std::size_t> pin_pos;
  bool with_wirtinger = false;
  {
    auto* c = app.add_subcommand("plat-count", "transfer count through the Hurwitz action on a plat");
    c->add_option("--braid", braid_file, "braid file")->required()->check(CLI::ExistingFile);
    c->add_option("--plat", plat_file, "pairing file")->required()->check(CLI::ExistingFile);
    gi.add(c);
    c->add_option("--class", cls, "class")->required();
    c->add_option("--pin", pin_pos, "pin the arc at this 1-based bottom position to the class representative");
    c->add_flag("--wirtinger", with_wirtinger, "also count the plat closure by the Wirtinger engine");
    c->callback([&] {
      run = [&] {
        auto b = parse_braid(text::read_file(braid_file));
        auto p = parse_pairing(text::read_file(plat_file));
        auto g = gi.group();
        auto C = resolve_class(g, cls);
        std::optional<std::pair<std::size_t, Elem>> pin;
        if (pin_pos) {
          if (*pin_pos < 1) throw CLI::ValidationError("--pin is 1-based");
          pin = std::make_pair(*pin_pos - 1, C.representative);
        }
        const auto transfer = plat_transfer_count(b, p, g, C, pin);
        emit({"transfer", str(transfer)});
        if (with_wirtinger) {
          auto pd = plat_closure(b, p);
          const auto w = pin ? count_pinned(pd.diagram, pd.bottom_arcs[pin->first], g, C, pin->second, {cfg.threads})
                             : count_colorings(pd.diagram, g, C, {cfg.threads});
          emit({"wirtinger", str(w)});
          emit({"components", str(component_count(pd.diagram))});
        }
      };
    });
  }

  // orbits
  std::size_t k = 2;
  std::string stratum = "R0";
  bool mod_conj = false;
  {
    auto* c = app.add_subcommand("orbits", "braid orbits on a stratum of the canonical sign slice");
    gi.add(c);
    c->add_option("--class", cls, "class")->required();
    c->add_option("--k", k, "half the number of punctures")->check(CLI::PositiveNumber);
    c->add_option("--stratum", stratum, "Rhat0, R0, Rhat or R")->check(CLI::IsMember({"Rhat0", "R0", "Rhat", "R"}));
    c->add_flag("--mod-conjugation", mod_conj, "also identify tuples under simultaneous conjugation");
    c->callback([&] {
      run = [&] {
        auto g = gi.group();
        auto C = resolve_class(g, cls);
        std::optional<ReducedMultiplier> rm;
        if (gi.has_extension()) rm = reduced_multiplier(gi.extension(), C);
        auto rep = enumerate_orbits(k, g, C, rm ? &*rm : nullptr, parse_stratum(stratum),
                                    {mod_conj, cfg.budget_states, cfg.seed, cfg.threads});
        emit({"stratum", stratum_name(rep.stratum), "k", str(rep.k), "states", str(rep.stratum_size), "orbits",
              str(rep.orbits.size()), "sch_constant", rep.sch_constant ? "yes" : "no"});
        emit({"orbit", "slice_size", "full_size", "sch", "sample"});
        for (std::size_t i = 0; i < rep.orbits.size(); ++i) {
          const auto& o = rep.orbits[i];
          emit({str(i), str(o.slice_size), str(o.full_size), o.sch ? str(*o.sch) : "-", format_tuple(o.sample)});
        }
      };
    });
  }

  // schur
  std::string tuple_text;
  {
    auto* c = app.add_subcommand("schur", "stratum flags and Schur invariant of a tuple");
    gi.add(c, true);
    c->add_option("--class", cls, "class")->required();
    c->add_option("--tuple", tuple_text, "tuple literal, e.g. \"[+3 -7]\"")->required();
    c->callback([&] {
      run = [&] {
        auto ext = gi.extension();
        auto C = resolve_class(ext.base, cls);
        auto rm = reduced_multiplier(ext, C);
        auto t = parse_tuple(ext.base, tuple_text);
        auto f = stratify(ext.base, C, t);
        emit({"product", str(boundary_product(ext.base, t))});
        emit({"T", f.in_T ? "yes" : "no"});
        emit({"Rhat", f.in_Rhat ? "yes" : "no"});
        emit({"R", f.in_R ? "yes" : "no"});
        emit({"multiplier_order", str(rm.multiplier_order())});
        emit({"sch", f.in_Rhat ? str(kernel_index(rm, schur(rm, t))) : "-"});
      };
    });
  }

  // density
  std::size_t kmax = 8;
  {
    auto* c = app.add_subcommand("density", "exact |Rhat_k|/|C|^2k and |Rhat0_k|/|C|^2k");
    gi.add(c);
    c->add_option("--class", cls, "class")->required();
    c->add_option("--kmax", kmax, "largest k")->check(CLI::PositiveNumber);
    c->callback([&] {
      run = [&] {
        auto g = gi.group();
        auto C = resolve_class(g, cls);
        std::optional<ReducedMultiplier> rm;
        if (gi.has_extension()) rm = reduced_multiplier(gi.extension(), C);
        auto rows = density_scan(g, C, rm ? &*rm : nullptr, kmax, cfg.budget_states);
        emit({"k", "rhat", "rhat0", "ratio", "ratio0", "deviation", "deviation0"});
        for (const auto& r : rows) {
          std::ostringstream a, b, d0, d1;
          a.precision(12);
          b.precision(12);
          d0.precision(6);
          d1.precision(6);
          a << r.ratio;
          b << r.ratio0;
          d0 << r.deviation;
          d1 << r.deviation0;
          emit({str(r.k), r.rhat.str(), rm ? r.rhat0.str() : "-", a.str(), rm ? b.str() : "-", d0.str(),
                rm ? d1.str() : "-"});
        }
      };
    });
  }

  // alphabet
  std::string pin_label;
  {
    auto* c = app.add_subcommand("alphabet", "the ZSAT alphabet A with its subalphabets I and F");
    gi.add(c, true);
    c->add_option("--class", cls, "class")->required();
    c->add_option("--pin", pin_label, "the element c (default: class representative)");
    c->add_option("--k", k, "half the number of punctures per symbol")->check(CLI::PositiveNumber);
    c->callback([&] {
      run = [&] {
        auto ext = gi.extension();
        auto C = resolve_class(ext.base, cls);
        const Elem c0 = pin_label.empty() ? C.representative : ext.base.parse_element(pin_label);
        auto A = build_alphabet(ext.base, C, c0, k, reduced_multiplier(ext, C), cfg.budget_states);
        emit({"k", str(A.k)});
        emit({"A", str(A.size())});
        emit({"I", str(A.count_I())});
        emit({"F", str(A.count_F())});
        emit({"I_and_F", str(A.count_IF())});
        emit({"U", str(A.U.order())});
        for (const auto& w : A.warnings) std::cerr << "warning: " << w << '\n';
      };
    });
  }

  // zsat-count / compile / verify
  std::string circuit_file, registry_path, out_file;
  auto load_reg = [&] { return registry_path.empty() ? GadgetRegistry{} : load_registry(registry_path); };
  {
    auto* c = app.add_subcommand("zsat-count", "solutions of a ZSAT circuit");
    c->add_option("--circuit", circuit_file, "circuit file")->required()->check(CLI::ExistingFile);
    c->add_option("--registry", registry_path, "gadget file or directory")->check(CLI::ExistingPath);
    c->callback([&] {
      run = [&] {
        auto inst = resolve_instance(load_circuit_file(circuit_file), cfg.budget_states);
        auto r = count_zsat(inst.circuit, inst.alphabet, load_reg());
        emit({"solutions", str(r.solutions)});
        emit({"nontrivial", str(r.nontrivial)});
        emit({"U", str(r.U_order)});
        emit({"free_orbits", r.orbits ? str(*r.orbits) : "-"});
      };
    });
  }
  {
    auto* c = app.add_subcommand("compile", "compile a circuit to a plat-closed knot diagram");
    c->add_option("--circuit", circuit_file, "circuit file")->required()->check(CLI::ExistingFile);
    c->add_option("--registry", registry_path, "gadget file or directory")->check(CLI::ExistingPath);
    c->add_option("-o,--output", out_file, "write the diagram here instead of stdout");
    c->callback([&] {
      run = [&] {
        auto inst = resolve_instance(load_circuit_file(circuit_file), cfg.budget_states);
        auto K = compile(inst.circuit, inst.alphabet, load_reg());
        const auto pd = serialize(K.plat.diagram);
        if (out_file.empty()) {
          std::cout << pd;
        } else {
          std::ofstream(out_file) << pd;
          emit({"strands", str(K.braid.strands)});
          emit({"crossings", str(K.plat.diagram.crossings.size())});
          emit({"components", str(component_count(K.plat.diagram))});
        }
      };
    });
  }
  {
    auto* c = app.add_subcommand("verify", "check #Z = pinned Wirtinger count = transfer count on K(Z)");
    c->add_option("--circuit", circuit_file, "circuit file")->required()->check(CLI::ExistingFile);
    c->add_option("--registry", registry_path, "gadget file or directory")->check(CLI::ExistingPath);
    c->callback([&] {
      run = [&] {
        auto inst = resolve_instance(load_circuit_file(circuit_file), cfg.budget_states);
        auto r = verify_reduction(inst, load_reg(), {cfg.threads});
        emit({"components", str(r.components)});
        emit({"crossings", str(r.crossings)});
        emit({"zsat", str(r.zsat.solutions)});
        emit({"pinned_wirtinger", str(r.pinned_wirtinger)});
        emit({"transfer", str(r.transfer)});
        emit({"three_way_equal", r.three_way_equal ? "yes" : "no"});
        for (const auto& s : r.smaller) emit({"q_smaller", s.label, str(s.q)});
      };
    });
  }

  // gadget-search
  std::size_t plant_length = 1;
  int lo = 2, hi = 5;
  bool identity_target = false, validate = false;
  {
    auto* c = app.add_subcommand("gadget-search", "search pure braid words realising a target action on I x I");
    c->add_option("--circuit", circuit_file, "circuit file (supplies the alphabet)")->required()->check(CLI::ExistingFile);
    c->add_option("--plant-length", plant_length, "target = action of a random pure word of this many generators");
    c->add_flag("--identity", identity_target, "use the identity target");
    c->add_option("--lo", lo, "least strand of the generators A_ij");
    c->add_option("--hi", hi, "greatest strand of the generators A_ij");
    c->add_flag("--validate", validate, "run the gadget validator on a found word");
    c->callback([&] {
      run = [&] {
        auto inst = resolve_instance(load_circuit_file(circuit_file), cfg.budget_states);
        const auto& A = inst.alphabet;
        const auto strands = 4 * A.k;
        std::mt19937_64 rng(cfg.seed);
        auto planted = identity_target ? BraidWord{strands, {}, {}} : random_pure_braid(strands, plant_length, rng, lo, hi);
        SearchTarget target;
        for (std::uint32_t a = 0; a < A.size(); ++a)
          for (std::uint32_t b = 0; b < A.size(); ++b)
            if (A.in_I[a] && A.in_I[b]) {
              auto t = concat(A.symbols[a], A.symbols[b]);
              target.states.push_back(t);
              target.images.push_back(apply_braid(A.group, t, planted));
            }
        auto res = gadget_search(A.group, &A.rm, strands, target, {cfg.budget_depth, cfg.budget_states, lo, hi});
        emit({"planted", str(planted.length())});
        emit({"outcome", res.outcome == SearchOutcome::Found ? "found" : res.outcome == SearchOutcome::Rejected ? "rejected" : "not_found"});
        emit({"explored", str(res.explored)});
        if (!res.reason.empty()) emit({"reason", res.reason});
        if (res.word) {
          std::cout << format_braid(*res.word);
          if (validate) {
            GadgetSpec spec{"found", *res.word, std::nullopt, {}};
            auto v = validate_gadget(spec, A, inst.smaller, {.seed = cfg.seed});
            emit({"property1", v.p1.passed ? "pass" : "fail", v.p1.note});
            emit({"property2", v.p2.passed ? "pass" : "fail", regime_name(v.p2.regime), v.p2.note});
            for (const auto& p : v.p3) emit({"property3", p.passed ? "pass" : "fail", regime_name(p.regime), p.note});
            emit({"property4", v.p4.passed ? "pass" : "fail"});
          }
        }
      };
    });
  }

  // group-info
  {
    auto* c = app.add_subcommand("group-info", "order, classes, automorphisms and multiplier data");
    gi.add(c);
    c->add_option("--class", cls, "also report data for this class");
    c->callback([&] {
      run = [&] {
        auto g = gi.group();
        emit({"name", g.name()});
        emit({"order", str(g.order())});
        emit({"perfect", is_perfect(g) ? "yes" : "no"});
        emit({"simple", is_nonabelian_simple(g) ? "yes" : "no"});
        std::optional<AutGroup> aut;
        if (g.order() <= 360) {
          aut = automorphism_group(g);
          emit({"aut", str(aut->order())});
        }
        for (const auto& [label, rep] : automatic_class_labels(g))
          emit({"class", label, "size", str(conjugacy_class(g, rep).size()), "rep", g.format_element(rep)});
        if (!cls.empty()) {
          auto C = resolve_class(g, cls);
          emit({"class_size", str(C.size())});
          emit({"generates", generates(g, C.members) ? "yes" : "no"});
          if (aut) {
            emit({"aut_class", str(aut_class(g, *aut, C).order())});
            emit({"aut_point", str(aut_point(g, *aut, C.representative).order())});
          }
          if (gi.has_extension()) {
            auto rm = reduced_multiplier(gi.extension(), C);
            emit({"kernel", str(rm.parent.kernel.size())});
            emit({"collapse", str(rm.collapse.size())});
            emit({"multiplier", str(rm.multiplier_order())});
          }
        }
      };
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }
  try {
    run();
  } catch (const platknot::Error& e) {
    std::cerr << "error[" << error_name(e.code()) << "]: " << e.what() << '\n';
    return 1;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
