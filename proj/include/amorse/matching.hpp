#pragma once

// Partial matchings on the covering graph of a based complex, their
// acyclicity, and linear extensions that keep matched pairs adjacent.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "amorse/complex.hpp"

namespace amorse {

/// A matched pair (a, b) with b = u(a) and a = d(b); dim up = dim down + 1.
struct MatchedPair {
  std::string down;
  std::string up;

  friend bool operator==(const MatchedPair&, const MatchedPair&) = default;
};

struct Matching {
  std::vector<MatchedPair> pairs;

  std::size_t size() const noexcept { return pairs.size(); }
  friend bool operator==(const Matching&, const Matching&) = default;
};

enum class CellClass { Up, Down, Critical };

const char* to_string(CellClass c) noexcept;

struct ElementClass {
  std::map<std::string, CellClass> classes;

  std::vector<std::string> of_class(CellClass c) const;
};

/// Index form of a validated matching over a fixed complex.
class MatchingView {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  explicit MatchingView(std::size_t cells) : partner_(cells, npos), cls_(cells, CellClass::Critical) {}

  /// Records (down, up) without any checks.
  void match(std::size_t down, std::size_t up);
  void unmatch(std::size_t down, std::size_t up);

  CellClass class_of(std::size_t i) const { return cls_.at(i); }
  bool is_critical(std::size_t i) const { return cls_.at(i) == CellClass::Critical; }
  /// u(a) for a down element, npos otherwise.
  std::size_t up_of(std::size_t a) const { return cls_.at(a) == CellClass::Down ? partner_[a] : npos; }
  /// d(b) for an up element, npos otherwise.
  std::size_t down_of(std::size_t b) const { return cls_.at(b) == CellClass::Up ? partner_[b] : npos; }
  std::size_t cells() const noexcept { return partner_.size(); }

 private:
  std::vector<std::size_t> partner_;
  std::vector<CellClass> cls_;
};

/// Checks M against C and returns its index form. Throws MatchingError.
MatchingView index_matching(const BasedComplex& c, const Matching& m);

/// Classification of every cell into Up / Down / Critical. Throws MatchingError.
ElementClass validate_matching(const BasedComplex& c, const Matching& m);

struct AcyclicityResult {
  bool acyclic = true;
  /// Up elements b1, ..., bn of one cycle d(b1) < b1 > d(b2) < ... > d(b1).
  std::vector<std::string> witness;

  explicit operator bool() const noexcept { return acyclic; }
};

/// Adjacency of the digraph on up elements: b -> b' iff w(b > d(b')) != 0, b != b'.
std::vector<std::vector<std::size_t>> up_digraph(const BasedComplex& c, const MatchingView& m);

AcyclicityResult is_acyclic(const BasedComplex& c, const MatchingView& m);
AcyclicityResult is_acyclic(const BasedComplex& c, const Matching& m);

struct LinearExtension {
  std::vector<std::string> order;

  friend bool operator==(const LinearExtension&, const LinearExtension&) = default;
};

/// Builds the extension rank by rank: critical cells first, then matched pairs
/// (a, u(a)) whose other faces are already placed, ties by id.
/// Throws MorseError(NotAcyclic) when no pair can be placed.
LinearExtension linear_extension(const BasedComplex& c, const Matching& m);

/// Describes the first violated extension property, or nullopt if L refines the
/// poset, keeps each matched pair adjacent and is rank-monotone on D and C.
std::optional<std::string> check_linear_extension(const BasedComplex& c, const Matching& m, const LinearExtension& l);

/// Deterministic greedy acyclic matching: cells in (dim, id) order, each free
/// cell takes the smallest free cofacet by id with an invertible weight that
/// keeps the matching acyclic.
Matching greedy_matching(const BasedComplex& c);

}  // namespace amorse
