#pragma once

// Free chain complexes with a chosen basis. Basis elements ("cells") are
// identified by unique string ids; the boundary of every cell is stored as a
// sparse list of nonzero coefficients on cells one dimension lower.

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "amorse/ring.hpp"

namespace amorse {

struct Cell {
  std::string id;
  int dim = 0;

  friend bool operator==(const Cell&, const Cell&) = default;
};

/// A homogeneous chain: nonzero coefficients on cells of a single dimension.
class Chain {
 public:
  Chain(RingSpec ring, int dim) : ring_(ring), dim_(dim) {}

  const RingSpec& ring() const noexcept { return ring_; }
  int dim() const noexcept { return dim_; }
  const std::map<std::string, RingElement>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  /// Adds coeff * id; zero results are erased.
  void add(const std::string& id, const RingElement& coeff);
  /// Adds factor * other.
  void add_scaled(const Chain& other, const RingElement& factor);

  friend bool operator==(const Chain&, const Chain&) = default;

 private:
  RingSpec ring_;
  int dim_;
  std::map<std::string, RingElement> terms_;
};

/// Coefficient of b in c; zero when b is absent or the dimensions differ.
RingElement coefficient(const Chain& c, const Cell& b);

class BasedComplex {
 public:
  struct Term {
    std::size_t cell;
    RingElement coeff;

    friend bool operator==(const Term&, const Term&) = default;
  };

  explicit BasedComplex(RingSpec ring) : ring_(ring) {}

  const RingSpec& ring() const noexcept { return ring_; }

  /// Throws ComplexError(DuplicateId) or (DimensionMismatch) for dim < 0.
  std::size_t add_cell(std::string id, int dim);

  /// Replaces the boundary of `id`. Throws ComplexError(UnknownCell) for
  /// unknown ids and (DimensionMismatch) unless every term has dim(id) - 1.
  void set_boundary(std::string_view id, const Chain& boundary);
  /// Index-based form; terms may repeat a face and are summed.
  void set_boundary(std::size_t cell, std::vector<Term> terms);

  std::size_t size() const noexcept { return cells_.size(); }
  /// Highest dimension present, -1 for the empty complex.
  int top_dim() const noexcept;

  const Cell& cell(std::size_t i) const { return cells_.at(i); }
  const std::vector<Cell>& cells() const noexcept { return cells_; }
  std::optional<std::size_t> find(std::string_view id) const;
  /// Throws ComplexError(UnknownCell).
  std::size_t index_of(std::string_view id) const;

  /// Boundary terms sorted by face index; never contains zero coefficients.
  std::span<const Term> faces(std::size_t i) const { return boundary_.at(i); }
  Chain boundary(std::string_view id) const;

  std::vector<std::size_t> cells_of_dim(int n) const;
  std::size_t count_of_dim(int n) const;

  /// Structural equality independent of cell insertion order.
  friend bool operator==(const BasedComplex& lhs, const BasedComplex& rhs);

 private:
  RingSpec ring_;
  std::vector<Cell> cells_;
  std::vector<std::vector<Term>> boundary_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Coboundary adjacency: for each cell, the indices of cells whose boundary
/// contains it, ascending.
std::vector<std::vector<std::size_t>> cofaces(const BasedComplex& c);

/// Throws ComplexError unless every boundary term has the right dimension
/// and the boundary squares to zero.
void validate_complex(const BasedComplex& c);

/// w(b > a), the coefficient of a in the boundary of b (possibly zero).
/// Throws ComplexError(DimensionMismatch) unless dim b = dim a + 1.
RingElement covering_weight(const BasedComplex& c, std::string_view b, std::string_view a);

struct CoveringRelation {
  std::string upper;
  std::string lower;
  RingElement weight;

  friend bool operator==(const CoveringRelation&, const CoveringRelation&) = default;
};

/// All covering relations with nonzero weight, ordered by upper then lower index.
std::vector<CoveringRelation> poset_view(const BasedComplex& c);

}  // namespace amorse
