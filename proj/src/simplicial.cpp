#include "amorse/simplicial.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "amorse/errors.hpp"

namespace amorse {

namespace {

constexpr std::size_t kMaxFacetSize = 24;

std::string face_id(const std::vector<std::string>& vertices) {
  std::string id;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (i) id += '|';
    id += vertices[i];
  }
  return id;
}

}  // namespace

SimplicialInput parse_facets(std::istream& in) {
  SimplicialInput out;
  std::string line;
  while (std::getline(in, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream words(line);
    std::vector<std::string> facet;
    for (std::string v; words >> v;) facet.push_back(v);
    out.facets.push_back(std::move(facet));
  }
  return out;
}

BasedComplex simplicial_to_complex(const SimplicialInput& s, const RingSpec& ring) {
  if (s.facets.empty()) throw InputError("empty facet list");
  std::set<std::vector<std::string>> faces;
  for (const auto& facet : s.facets) {
    std::set<std::string> vertex_set(facet.begin(), facet.end());
    if (vertex_set.empty()) throw InputError("empty facet");
    if (vertex_set.size() > kMaxFacetSize) throw InputError("facet with more than " + std::to_string(kMaxFacetSize) + " vertices");
    std::vector<std::string> vertices(vertex_set.begin(), vertex_set.end());
    for (const auto& v : vertices) {
      if (v.find('|') != std::string::npos) throw InputError("vertex id '" + v + "' contains '|'");
    }
    const std::size_t k = vertices.size();
    for (std::size_t mask = 1; mask < (std::size_t{1} << k); ++mask) {
      std::vector<std::string> face;
      for (std::size_t i = 0; i < k; ++i) {
        if (mask & (std::size_t{1} << i)) face.push_back(vertices[i]);
      }
      faces.insert(std::move(face));
    }
  }

  std::vector<std::vector<std::string>> ordered(faces.begin(), faces.end());
  std::vector<std::string> ids;
  ids.reserve(ordered.size());
  for (const auto& f : ordered) ids.push_back(face_id(f));
  std::vector<std::size_t> perm(ordered.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  std::sort(perm.begin(), perm.end(), [&](std::size_t x, std::size_t y) {
    if (ordered[x].size() != ordered[y].size()) return ordered[x].size() < ordered[y].size();
    return ids[x] < ids[y];
  });

  BasedComplex c(ring);
  for (std::size_t i : perm) c.add_cell(ids[i], static_cast<int>(ordered[i].size()) - 1);
  for (std::size_t i : perm) {
    const auto& f = ordered[i];
    if (f.size() < 2) continue;
    std::vector<BasedComplex::Term> terms;
    for (std::size_t drop = 0; drop < f.size(); ++drop) {
      std::vector<std::string> facet = f;
      facet.erase(facet.begin() + static_cast<std::ptrdiff_t>(drop));
      terms.push_back({c.index_of(face_id(facet)), RingElement(ring, drop % 2 == 0 ? 1L : -1L)});
    }
    c.set_boundary(c.index_of(ids[i]), std::move(terms));
  }
  return c;
}

}  // namespace amorse
