#include "amorse/complex.hpp"

#include <algorithm>
#include <set>

#include "amorse/errors.hpp"

namespace amorse {

void Chain::add(const std::string& id, const RingElement& coeff) {
  if (coeff.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(id, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void Chain::add_scaled(const Chain& other, const RingElement& factor) {
  if (factor.is_zero()) return;
  for (const auto& [id, coeff] : other.terms()) add(id, coeff * factor);
}

RingElement coefficient(const Chain& c, const Cell& b) {
  if (c.dim() != b.dim) return RingElement::zero(c.ring());
  auto it = c.terms().find(b.id);
  return it == c.terms().end() ? RingElement::zero(c.ring()) : it->second;
}

std::size_t BasedComplex::add_cell(std::string id, int dim) {
  if (dim < 0) throw ComplexError(ComplexError::Kind::DimensionMismatch, id, "cell '" + id + "' has negative dimension");
  if (index_.contains(id)) throw ComplexError(ComplexError::Kind::DuplicateId, id, "duplicate cell id '" + id + "'");
  std::size_t i = cells_.size();
  index_.emplace(id, i);
  cells_.push_back(Cell{std::move(id), dim});
  boundary_.emplace_back();
  return i;
}

void BasedComplex::set_boundary(std::string_view id, const Chain& boundary) {
  std::size_t i = index_of(id);
  if (!boundary.is_zero() && boundary.dim() != cells_[i].dim - 1) {
    throw ComplexError(ComplexError::Kind::DimensionMismatch, std::string(id),
                       "boundary of '" + std::string(id) + "' has the wrong dimension");
  }
  std::vector<Term> terms;
  for (const auto& [face, coeff] : boundary.terms()) {
    if (!(coeff.ring() == ring_)) {
      throw RingError(RingError::Kind::MixedRings, "coefficient ring " + coeff.ring().to_string() +
                                                       " differs from complex ring " + ring_.to_string());
    }
    terms.push_back(Term{index_of(face), coeff});
  }
  set_boundary(i, std::move(terms));
}

void BasedComplex::set_boundary(std::size_t cell, std::vector<Term> terms) {
  const Cell& c = cells_.at(cell);
  std::sort(terms.begin(), terms.end(), [](const Term& x, const Term& y) { return x.cell < y.cell; });
  std::vector<Term> merged;
  for (auto& t : terms) {
    const Cell& face = cells_.at(t.cell);
    if (face.dim != c.dim - 1) {
      throw ComplexError(ComplexError::Kind::DimensionMismatch, c.id,
                         "boundary of '" + c.id + "' contains '" + face.id + "' of dimension " +
                             std::to_string(face.dim));
    }
    if (!merged.empty() && merged.back().cell == t.cell) {
      merged.back().coeff += t.coeff;
      if (merged.back().coeff.is_zero()) merged.pop_back();
    } else if (!t.coeff.is_zero()) {
      merged.push_back(std::move(t));
    }
  }
  boundary_[cell] = std::move(merged);
}

int BasedComplex::top_dim() const noexcept {
  int top = -1;
  for (const auto& c : cells_) top = std::max(top, c.dim);
  return top;
}

std::optional<std::size_t> BasedComplex::find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t BasedComplex::index_of(std::string_view id) const {
  auto i = find(id);
  if (!i) throw ComplexError(ComplexError::Kind::UnknownCell, std::string(id), "unknown cell '" + std::string(id) + "'");
  return *i;
}

Chain BasedComplex::boundary(std::string_view id) const {
  std::size_t i = index_of(id);
  Chain chain(ring_, cells_[i].dim - 1);
  for (const auto& t : boundary_[i]) chain.add(cells_[t.cell].id, t.coeff);
  return chain;
}

std::vector<std::size_t> BasedComplex::cells_of_dim(int n) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    if (cells_[i].dim == n) out.push_back(i);
  }
  return out;
}

std::size_t BasedComplex::count_of_dim(int n) const {
  return static_cast<std::size_t>(std::count_if(cells_.begin(), cells_.end(), [n](const Cell& c) { return c.dim == n; }));
}

bool operator==(const BasedComplex& lhs, const BasedComplex& rhs) {
  if (!(lhs.ring_ == rhs.ring_) || lhs.size() != rhs.size()) return false;
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    const Cell& c = lhs.cells_[i];
    auto j = rhs.find(c.id);
    if (!j || rhs.cells_[*j].dim != c.dim) return false;
    if (!(lhs.boundary(c.id) == rhs.boundary(c.id))) return false;
  }
  return true;
}

std::vector<std::vector<std::size_t>> cofaces(const BasedComplex& c) {
  std::vector<std::vector<std::size_t>> out(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    for (const auto& t : c.faces(i)) out[t.cell].push_back(i);
  }
  return out;
}

void validate_complex(const BasedComplex& c) {
  std::set<std::string_view> seen;
  for (const auto& cell : c.cells()) {
    if (!seen.insert(cell.id).second) {
      throw ComplexError(ComplexError::Kind::DuplicateId, cell.id, "duplicate cell id '" + cell.id + "'");
    }
    if (cell.dim < 0) {
      throw ComplexError(ComplexError::Kind::DimensionMismatch, cell.id, "cell '" + cell.id + "' has negative dimension");
    }
  }
  for (std::size_t i = 0; i < c.size(); ++i) {
    const Cell& cell = c.cell(i);
    for (const auto& t : c.faces(i)) {
      if (c.cell(t.cell).dim != cell.dim - 1 || t.coeff.is_zero()) {
        throw ComplexError(ComplexError::Kind::DimensionMismatch, cell.id, "malformed boundary of '" + cell.id + "'");
      }
    }
    // d(d(cell)) accumulated densely over the cells two dimensions down.
    std::map<std::size_t, RingElement> dd;
    for (const auto& t : c.faces(i)) {
      for (const auto& u : c.faces(t.cell)) {
        auto [it, inserted] = dd.try_emplace(u.cell, t.coeff * u.coeff);
        if (!inserted) it->second += t.coeff * u.coeff;
      }
    }
    for (const auto& [face, coeff] : dd) {
      if (!coeff.is_zero()) {
        throw ComplexError(ComplexError::Kind::NotSquareZero, cell.id,
                           "boundary of the boundary of '" + cell.id + "' has coefficient " + coeff.to_string() +
                               " on '" + c.cell(face).id + "'");
      }
    }
  }
}

RingElement covering_weight(const BasedComplex& c, std::string_view b, std::string_view a) {
  std::size_t bi = c.index_of(b);
  std::size_t ai = c.index_of(a);
  if (c.cell(bi).dim != c.cell(ai).dim + 1) {
    throw ComplexError(ComplexError::Kind::DimensionMismatch, std::string(b),
                       "covering weight needs dim '" + std::string(b) + "' = dim '" + std::string(a) + "' + 1");
  }
  auto faces = c.faces(bi);
  auto it = std::lower_bound(faces.begin(), faces.end(), ai,
                             [](const BasedComplex::Term& t, std::size_t x) { return t.cell < x; });
  if (it != faces.end() && it->cell == ai) return it->coeff;
  return RingElement::zero(c.ring());
}

std::vector<CoveringRelation> poset_view(const BasedComplex& c) {
  std::vector<CoveringRelation> out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    for (const auto& t : c.faces(i)) out.push_back(CoveringRelation{c.cell(i).id, c.cell(t.cell).id, t.coeff});
  }
  return out;
}

}  // namespace amorse
