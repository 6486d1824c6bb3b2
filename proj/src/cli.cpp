#include "amorse/cli.hpp"

#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "amorse/complex.hpp"
#include "amorse/errors.hpp"
#include "amorse/homology.hpp"
#include "amorse/io.hpp"
#include "amorse/matching.hpp"
#include "amorse/morse.hpp"
#include "amorse/simplicial.hpp"

namespace amorse::cli {

namespace {

using nlohmann::json;

struct UsageError {
  std::string message;
};

struct Options {
  bool json = false;
  std::string complex_path;
  std::string matching_path;
  bool greedy = false;
  std::string facets_path;
  std::string ring = "Z";
  std::string output_path;
  std::string method = "elimination";
  std::size_t path_budget = kDefaultPathBudget;
  bool compare_with_morse = false;
};

BasedComplex load_complex(const std::string& path) { return complex_from_json(read_json_file(path)); }

/// Matching from --matching or --greedy; `fallback_greedy` picks greedy when neither is given.
Matching load_matching(const Options& o, const BasedComplex& c, bool fallback_greedy = false) {
  if (!o.matching_path.empty()) return matching_from_json(read_json_file(o.matching_path));
  if (o.greedy || fallback_greedy) return greedy_matching(c);
  throw UsageError{"one of --matching or --greedy is required"};
}

std::string format_chain(const BasedComplex& c, std::size_t cell) {
  std::string s;
  for (const auto& t : c.faces(cell)) {
    std::string coeff = t.coeff.to_string();
    bool negative = coeff.front() == '-';
    if (negative) coeff.erase(0, 1);
    if (s.empty()) {
      s += negative ? "-" : "";
    } else {
      s += negative ? " - " : " + ";
    }
    if (coeff != "1") s += coeff + "*";
    s += c.cell(t.cell).id;
  }
  return s.empty() ? "0" : s;
}

std::string format_homology(const std::vector<HomologyGroup>& h, const RingSpec& ring) {
  std::ostringstream os;
  const std::string base = ring.to_string();
  for (const auto& g : h) {
    os << "  H" << g.dim << " = ";
    std::vector<std::string> parts;
    if (g.betti == 1) parts.push_back(base);
    if (g.betti > 1) parts.push_back(base + "^" + std::to_string(g.betti));
    for (const auto& t : g.torsion) parts.push_back("Z/" + t.get_str());
    if (parts.empty()) parts.push_back("0");
    for (std::size_t i = 0; i < parts.size(); ++i) os << (i ? " + " : "") << parts[i];
    os << '\n';
  }
  return os.str();
}

void print_morse(std::ostream& out, const BasedComplex& m) {
  out << "critical cells: " << m.size() << '\n';
  for (std::size_t i = 0; i < m.size(); ++i) {
    out << "  d(" << m.cell(i).id << ") = " << format_chain(m, i) << "   [dim " << m.cell(i).dim << "]\n";
  }
}

int cmd_validate(const Options& o, std::ostream& out) {
  BasedComplex c = load_complex(o.complex_path);
  validate_complex(c);
  json counts = json::array();
  for (int n = 0; n <= c.top_dim(); ++n) counts.push_back(c.count_of_dim(n));
  if (o.json) {
    out << json{{"valid", true}, {"ring", c.ring().to_string()}, {"cells", c.size()}, {"cells_per_dim", counts}}.dump(2)
        << '\n';
  } else {
    out << "valid complex over " << c.ring() << ": " << c.size() << " cells, per dimension " << counts.dump() << '\n';
  }
  return kExitOk;
}

int cmd_convert(const Options& o, std::ostream& out) {
  std::ifstream in(o.facets_path);
  BasedComplex c = simplicial_to_complex(parse_facets(in), RingSpec::parse(o.ring));
  const std::string doc = complex_to_json(c).dump(2) + "\n";
  if (o.output_path.empty()) {
    out << doc;
  } else {
    std::ofstream file(o.output_path);
    if (!file) throw UsageError{"--output: cannot write '" + o.output_path + "'"};
    file << doc;
  }
  return kExitOk;
}

int cmd_match(const Options& o, std::ostream& out) {
  BasedComplex c = load_complex(o.complex_path);
  validate_complex(c);
  Matching m = load_matching(o, c);
  ElementClass classes = validate_matching(c, m);
  AcyclicityResult acyclic = is_acyclic(c, m);
  if (o.json) {
    json report = matching_to_json(m);
    report["acyclic"] = acyclic.acyclic;
    report["witness"] = acyclic.witness;
    report["up"] = classes.of_class(CellClass::Up);
    report["down"] = classes.of_class(CellClass::Down);
    report["critical"] = classes.of_class(CellClass::Critical);
    out << report.dump(2) << '\n';
  } else {
    out << "matching: " << m.size() << " pairs, " << (acyclic ? "acyclic" : "NOT acyclic") << '\n';
    if (!acyclic) {
      out << "cycle through up cells:";
      for (const auto& b : acyclic.witness) out << ' ' << b;
      out << '\n';
    }
    for (CellClass k : {CellClass::Up, CellClass::Down, CellClass::Critical}) {
      auto ids = classes.of_class(k);
      out << to_string(k) << " (" << ids.size() << "):";
      for (const auto& id : ids) out << ' ' << id;
      out << '\n';
    }
  }
  return acyclic ? kExitOk : kExitValidation;
}

int cmd_reduce(const Options& o, std::ostream& out) {
  BasedComplex c = load_complex(o.complex_path);
  validate_complex(c);
  Matching m = load_matching(o, c);
  validate_matching(c, m);

  std::optional<MorseComplex> by_paths;
  std::optional<Decomposition> by_elimination;
  if (o.method != "elimination") by_paths = morse_boundary(c, m, o.path_budget);
  if (o.method != "paths") {
    by_elimination = reduce_by_elimination(c, m);
    verify_decomposition(c, *by_elimination);
  }
  const bool agree = !(by_paths && by_elimination) || by_paths->complex == by_elimination->morse.complex;
  const BasedComplex& morse = by_elimination ? by_elimination->morse.complex : by_paths->complex;

  if (o.json) {
    json report;
    report["method"] = o.method;
    report["matching"] = matching_to_json(m);
    if (by_elimination) {
      json d = decomposition_to_json(*by_elimination);
      report["morse"] = d["morse"];
      report["atoms"] = d["atoms"];
      report["change_of_basis"] = d["change_of_basis"];
      report["verified"] = true;
    } else {
      report["morse"] = complex_to_json(morse);
    }
    if (by_paths && by_elimination) {
      report["agree"] = agree;
      if (!agree) report["morse_by_paths"] = complex_to_json(by_paths->complex);
    }
    out << report.dump(2) << '\n';
  } else {
    out << "matching: " << m.size() << " pairs\n";
    print_morse(out, morse);
    if (by_elimination) {
      out << "atoms: " << by_elimination->atoms.size() << '\n';
      for (const auto& a : by_elimination->atoms) {
        out << "  " << a.top << " -> " << a.bottom << "   [dim " << a.dim << "]\n";
      }
      out << "decomposition: verified\n";
    }
    if (by_paths && by_elimination) {
      out << (agree ? "path sums and elimination agree\n" : "path sums and elimination DISAGREE\n");
      if (!agree) print_morse(out, by_paths->complex);
    }
  }
  return agree ? kExitOk : kExitValidation;
}

int cmd_homology(const Options& o, std::ostream& out) {
  BasedComplex c = load_complex(o.complex_path);
  validate_complex(c);
  auto h = homology(c);
  std::optional<std::vector<HomologyGroup>> hm;
  std::size_t critical = 0;
  if (o.compare_with_morse) {
    Matching m = load_matching(o, c, true);
    auto morse = reduce_by_elimination(c, m).morse.complex;
    critical = morse.size();
    hm = homology(morse);
    // The Morse complex may stop below the top dimension; pad with zeros.
    for (int n = static_cast<int>(hm->size()); n < static_cast<int>(h.size()); ++n) hm->push_back(HomologyGroup{n, 0, {}});
  }
  const bool equal = !hm || *hm == h;
  if (o.json) {
    json report{{"ring", c.ring().to_string()}, {"homology", homology_to_json(h)}};
    if (hm) {
      report["morse_homology"] = homology_to_json(*hm);
      report["critical_cells"] = critical;
      report["equal"] = equal;
    }
    out << report.dump(2) << '\n';
  } else {
    out << "homology over " << c.ring() << ":\n" << format_homology(h, c.ring());
    if (hm) {
      out << "Morse complex (" << critical << " critical of " << c.size() << " cells):\n"
          << format_homology(*hm, c.ring()) << (equal ? "equal\n" : "DIFFERENT\n");
    }
  }
  return equal ? kExitOk : kExitValidation;
}

int cmd_extension(const Options& o, std::ostream& out) {
  BasedComplex c = load_complex(o.complex_path);
  validate_complex(c);
  Matching m = load_matching(o, c);
  LinearExtension l = linear_extension(c, m);
  if (o.json) {
    out << json{{"order", l.order}}.dump(2) << '\n';
  } else {
    for (const auto& id : l.order) out << id << '\n';
  }
  return kExitOk;
}

json error_json(const Error& e) {
  json j{{"ok", false}, {"message", e.what()}};
  if (auto* ce = dynamic_cast<const ComplexError*>(&e); ce && !ce->cell().empty()) j["cell"] = ce->cell();
  if (auto* me = dynamic_cast<const MatchingError*>(&e)) j["pair"] = {me->down(), me->up()};
  if (auto* mo = dynamic_cast<const MorseError*>(&e); mo && !mo->witness().empty()) j["witness"] = mo->witness();
  return j;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Algebraic discrete Morse reduction of free chain complexes", "amorse"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--json", o.json, "Machine-readable JSON report");

  auto add_complex = [&](CLI::App* sub) {
    sub->add_option("complex", o.complex_path, "Chain complex JSON file")->required()->check(CLI::ExistingFile);
  };
  auto add_matching = [&](CLI::App* sub) {
    auto* file = sub->add_option("--matching", o.matching_path, "Matching JSON file")->check(CLI::ExistingFile);
    auto* greedy = sub->add_flag("--greedy", o.greedy, "Use the deterministic greedy matching");
    file->excludes(greedy);
  };

  auto* validate = app.add_subcommand("validate", "Check a chain complex file");
  add_complex(validate);

  auto* convert = app.add_subcommand("convert", "Build a chain complex from simplicial facets");
  convert->add_option("--from-simplicial", o.facets_path, "Facet file")->required()->check(CLI::ExistingFile);
  convert->add_option("--ring", o.ring, "Coefficient ring: Z, Q or Z/<p>")->capture_default_str();
  convert->add_option("-o,--output", o.output_path, "Write the complex here instead of standard output");

  auto* match = app.add_subcommand("match", "Validate a matching and classify cells");
  add_complex(match);
  add_matching(match);

  auto* reduce = app.add_subcommand("reduce", "Compute the Morse complex and the atom splitting");
  add_complex(reduce);
  add_matching(reduce);
  reduce->add_option("--method", o.method, "paths, elimination or both")
      ->check(CLI::IsMember({"paths", "elimination", "both"}))
      ->capture_default_str();
  reduce->add_option("--path-budget", o.path_budget, "Maximum number of alternating paths")->capture_default_str();

  auto* hom = app.add_subcommand("homology", "Homology by Smith normal form");
  add_complex(hom);
  hom->add_flag("--compare-with-morse", o.compare_with_morse, "Also compute homology of the Morse complex");
  add_matching(hom);

  auto* extension = app.add_subcommand("extension", "Print a linear extension keeping matched pairs adjacent");
  add_complex(extension);
  add_matching(extension);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (validate->parsed()) return cmd_validate(o, out);
    if (convert->parsed()) return cmd_convert(o, out);
    if (match->parsed()) return cmd_match(o, out);
    if (reduce->parsed()) return cmd_reduce(o, out);
    if (hom->parsed()) return cmd_homology(o, out);
    if (extension->parsed()) return cmd_extension(o, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.message << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    if (o.json) {
      out << error_json(e).dump(2) << '\n';
    }
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return kExitUsage;
}

}  // namespace amorse::cli
