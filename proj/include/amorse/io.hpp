#pragma once

// JSON documents for complexes, matchings, decompositions and homology.

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "amorse/complex.hpp"
#include "amorse/homology.hpp"
#include "amorse/matching.hpp"
#include "amorse/morse.hpp"

namespace amorse {

/// {"ring": "Z", "cells": [{"id", "dim"}...], "boundary": [{"of", "coeffs": [[id, "c"]...]}...]}
nlohmann::json complex_to_json(const BasedComplex& c);
/// Throws ComplexError(Parse) for malformed documents, RingError for bad coefficients.
BasedComplex complex_from_json(const nlohmann::json& j);

/// {"pairs": [{"down": a, "up": b}...]}
nlohmann::json matching_to_json(const Matching& m);
Matching matching_from_json(const nlohmann::json& j);

/// {"morse": <complex>, "atoms": [{"top", "bottom", "dim"}...],
///  "change_of_basis": [{"new": id, "in_old_basis": [[id, "c"]...]}...]}
nlohmann::json decomposition_to_json(const Decomposition& d);

/// [{"dim": 0, "betti": 1, "torsion": []}...]; torsion factors as integers
/// when they fit, decimal strings otherwise.
nlohmann::json homology_to_json(const std::vector<HomologyGroup>& h);

/// Throws InputError when the file cannot be read or is not JSON.
nlohmann::json read_json_file(const std::filesystem::path& path);

}  // namespace amorse
