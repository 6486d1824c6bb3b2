#pragma once

// The Morse complex of an acyclic matching, computed two ways: by summing
// weights of alternating paths, and by eliminating matched pairs one at a
// time through changes of basis. The elimination also produces the direct
// sum splitting C = C^M + (atoms) together with the new basis.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "amorse/complex.hpp"
#include "amorse/matching.hpp"

namespace amorse {

inline constexpr std::size_t kDefaultPathBudget = 1'000'000;

/// s > d(b1) < b1 > d(b2) < b2 > ... > d(bn) < bn > t
struct AlternatingPath {
  std::string source;
  std::vector<MatchedPair> steps;
  std::string target;

  friend bool operator==(const AlternatingPath&, const AlternatingPath&) = default;
};

enum class PathTargets {
  Critical,  ///< paths ending in critical cells (the Morse boundary)
  All,       ///< paths ending anywhere one dimension down
};

struct PathOptions {
  PathTargets targets = PathTargets::Critical;
  std::size_t budget = kDefaultPathBudget;
};

/// All alternating paths leaving `source`. Throws MorseError(NotAcyclic) or
/// (PathBudgetExceeded).
std::vector<AlternatingPath> enumerate_paths(const BasedComplex& c, const Matching& m, const std::string& source,
                                             const PathOptions& options = {});

/// (-1)^n * w(s > d(b1)) w(b1 > d(b2)) ... w(bn > t) / (w(b1 > d(b1)) ... w(bn > d(bn))).
/// Throws RingError(NotInvertible) if a matched weight is not a unit and
/// MorseError(InvariantViolated) if a step has zero covering weight.
RingElement path_weight(const BasedComplex& c, const AlternatingPath& p);

/// Rescales every down cell a to w(u(a) > a) * a, so every matched weight
/// becomes 1. Cell ids are kept.
BasedComplex normalize_basis(const BasedComplex& c, const Matching& m);

struct MorseComplex {
  /// Basis: the critical cells, in the order they appear in the input.
  BasedComplex complex;
};

/// Boundary of every critical cell as the sum of w(p) * target(p) over all
/// alternating paths p to critical targets.
MorseComplex morse_boundary(const BasedComplex& c, const Matching& m, std::size_t path_budget = kDefaultPathBudget);

struct AtomSummand {
  std::string top;
  std::string bottom;
  int dim = 0;  ///< dimension of top

  friend bool operator==(const AtomSummand&, const AtomSummand&) = default;
};

struct Decomposition {
  MorseComplex morse;
  /// One per eliminated pair, in elimination order.
  std::vector<AtomSummand> atoms;
  /// Every element of the final basis written in the original basis. Final
  /// elements reuse the id of the original cell they were derived from.
  std::map<std::string, Chain> final_basis;
};

struct EliminationOptions {
  /// Re-derive the square-zero consequences at each step and check that every
  /// changed weight w(x > y) satisfies b_k <= y in the linear extension.
  bool check_invariants = false;
  /// Stop after this many pairs; `morse` then holds the intermediate
  /// subcomplex spanned by the cells of the unprocessed pairs and the critical cells.
  std::optional<std::size_t> max_steps;
};

/// Eliminates the matched pairs in the order their up cells appear in `l`.
/// Throws MorseError(OrderViolation) if `l` is not a valid extension for `m`,
/// (NotNormalized) if a matched weight is not 1 when its pair is reached.
Decomposition reduce_by_elimination(const BasedComplex& c, const Matching& m, const LinearExtension& l,
                                    const EliminationOptions& options = {});

/// Uses linear_extension(c, m).
Decomposition reduce_by_elimination(const BasedComplex& c, const Matching& m);

/// Checks that final_basis is a basis, that the boundary written in it is
/// block diagonal with a unit 1x1 block per atom, and that the remaining block
/// equals d.morse. Throws DecompositionError.
void verify_decomposition(const BasedComplex& c, const Decomposition& d);

}  // namespace amorse
