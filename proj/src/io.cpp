#include "amorse/io.hpp"

#include <fstream>
#include <set>

#include "amorse/errors.hpp"

namespace amorse {

using nlohmann::json;

namespace {

[[noreturn]] void malformed(const std::string& what) {
  throw ComplexError(ComplexError::Kind::Parse, "", "malformed complex document: " + what);
}

std::string coeff_text(const json& v, const char* where) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return v.dump();
  malformed(std::string("coefficient in ") + where + " must be a string");
}

json chain_terms(const Chain& chain) {
  json terms = json::array();
  for (const auto& [id, coeff] : chain.terms()) terms.push_back({id, coeff.to_string()});
  return terms;
}

}  // namespace

json complex_to_json(const BasedComplex& c) {
  json cells = json::array();
  json boundary = json::array();
  for (std::size_t i = 0; i < c.size(); ++i) {
    cells.push_back({{"id", c.cell(i).id}, {"dim", c.cell(i).dim}});
    if (c.faces(i).empty()) continue;
    json coeffs = json::array();
    for (const auto& t : c.faces(i)) coeffs.push_back({c.cell(t.cell).id, t.coeff.to_string()});
    boundary.push_back({{"of", c.cell(i).id}, {"coeffs", std::move(coeffs)}});
  }
  return {{"ring", c.ring().to_string()}, {"cells", std::move(cells)}, {"boundary", std::move(boundary)}};
}

BasedComplex complex_from_json(const json& j) {
  if (!j.is_object()) malformed("expected an object");
  if (!j.contains("ring") || !j["ring"].is_string()) malformed("missing \"ring\"");
  if (!j.contains("cells") || !j["cells"].is_array()) malformed("missing \"cells\" array");
  BasedComplex c(RingSpec::parse(j["ring"].get<std::string>()));
  for (const auto& cell : j["cells"]) {
    if (!cell.is_object() || !cell.contains("id") || !cell["id"].is_string() || !cell.contains("dim") ||
        !cell["dim"].is_number_integer()) {
      malformed("each cell needs a string \"id\" and an integer \"dim\"");
    }
    c.add_cell(cell["id"].get<std::string>(), cell["dim"].get<int>());
  }
  if (!j.contains("boundary")) return c;
  if (!j["boundary"].is_array()) malformed("\"boundary\" must be an array");
  std::set<std::string> seen;
  for (const auto& entry : j["boundary"]) {
    if (!entry.is_object() || !entry.contains("of") || !entry["of"].is_string()) malformed("boundary entry without \"of\"");
    const std::string of = entry["of"].get<std::string>();
    if (!seen.insert(of).second) malformed("two boundary entries for '" + of + "'");
    std::size_t i = c.index_of(of);
    std::vector<BasedComplex::Term> terms;
    if (entry.contains("coeffs")) {
      if (!entry["coeffs"].is_array()) malformed("\"coeffs\" of '" + of + "' must be an array");
      for (const auto& pair : entry["coeffs"]) {
        if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string()) {
          malformed("coefficients of '" + of + "' must be [id, value] pairs");
        }
        terms.push_back({c.index_of(pair[0].get<std::string>()),
                         RingElement::parse(c.ring(), coeff_text(pair[1], of.c_str()))});
      }
    }
    c.set_boundary(i, std::move(terms));
  }
  return c;
}

json matching_to_json(const Matching& m) {
  json pairs = json::array();
  for (const auto& p : m.pairs) pairs.push_back({{"down", p.down}, {"up", p.up}});
  return {{"pairs", std::move(pairs)}};
}

Matching matching_from_json(const json& j) {
  auto bad = [](const std::string& what) {
    return MatchingError(MatchingError::Kind::Parse, "", "", "malformed matching document: " + what);
  };
  if (!j.is_object() || !j.contains("pairs") || !j["pairs"].is_array()) throw bad("missing \"pairs\" array");
  Matching m;
  for (const auto& p : j["pairs"]) {
    if (!p.is_object() || !p.contains("down") || !p.contains("up") || !p["down"].is_string() || !p["up"].is_string()) {
      throw bad("each pair needs string \"down\" and \"up\"");
    }
    m.pairs.push_back(MatchedPair{p["down"].get<std::string>(), p["up"].get<std::string>()});
  }
  return m;
}

json decomposition_to_json(const Decomposition& d) {
  json atoms = json::array();
  for (const auto& a : d.atoms) atoms.push_back({{"top", a.top}, {"bottom", a.bottom}, {"dim", a.dim}});
  json basis = json::array();
  for (const auto& [id, chain] : d.final_basis) basis.push_back({{"new", id}, {"in_old_basis", chain_terms(chain)}});
  return {{"morse", complex_to_json(d.morse.complex)}, {"atoms", std::move(atoms)}, {"change_of_basis", std::move(basis)}};
}

json homology_to_json(const std::vector<HomologyGroup>& h) {
  json out = json::array();
  for (const auto& g : h) {
    json torsion = json::array();
    for (const auto& t : g.torsion) {
      if (t.fits_slong_p()) {
        torsion.push_back(t.get_si());
      } else {
        torsion.push_back(t.get_str());
      }
    }
    out.push_back({{"dim", g.dim}, {"betti", g.betti}, {"torsion", std::move(torsion)}});
  }
  return out;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError("'" + path.string() + "' is not valid JSON: " + e.what());
  }
}

}  // namespace amorse
