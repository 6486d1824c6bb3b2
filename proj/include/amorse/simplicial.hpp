#pragma once

// Simplicial complexes given by their facets, as based chain complexes.

#include <istream>
#include <string>
#include <vector>

#include "amorse/complex.hpp"

namespace amorse {

struct SimplicialInput {
  std::vector<std::vector<std::string>> facets;
};

/// One facet per line, whitespace-separated vertex ids; blank lines and
/// lines starting with '#' are skipped.
SimplicialInput parse_facets(std::istream& in);

/// All nonempty faces of all facets. A face is named by its sorted vertex ids
/// joined with '|', and d[v0..vn] = sum_i (-1)^i [v0..^vi..vn] in sorted order.
/// Cells are ordered by dimension, then id. Throws InputError for an empty
/// facet list, an empty facet or a vertex id containing '|'.
BasedComplex simplicial_to_complex(const SimplicialInput& s, const RingSpec& ring);

}  // namespace amorse
