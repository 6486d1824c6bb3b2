#pragma once

#include <filesystem>
#include <fstream>
#include <string>

#include "amorse/io.hpp"
#include "amorse/simplicial.hpp"

namespace amorse::testing {

inline std::filesystem::path fixture_path(const std::string& name) {
  return std::filesystem::path(AMORSE_FIXTURE_DIR) / name;
}

inline BasedComplex load_complex_fixture(const std::string& name) {
  return complex_from_json(read_json_file(fixture_path(name)));
}

inline Matching load_matching_fixture(const std::string& name) {
  return matching_from_json(read_json_file(fixture_path(name)));
}

inline BasedComplex projective_plane(const RingSpec& ring = RingSpec::integers()) {
  std::ifstream in(fixture_path("rp2.facets"));
  return simplicial_to_complex(parse_facets(in), ring);
}

inline BasedComplex point() {
  BasedComplex c(RingSpec::integers());
  c.add_cell("v", 0);
  return c;
}

/// Builds a complex from facets given inline.
inline BasedComplex from_facets(std::vector<std::vector<std::string>> facets,
                                const RingSpec& ring = RingSpec::integers()) {
  return simplicial_to_complex(SimplicialInput{std::move(facets)}, ring);
}

}  // namespace amorse::testing
