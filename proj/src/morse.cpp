#include "amorse/morse.hpp"

#include <algorithm>
#include <set>

#include "amorse/errors.hpp"

namespace amorse {

namespace {

constexpr std::size_t npos = MatchingView::npos;

void require_acyclic(const BasedComplex& c, const MatchingView& view) {
  auto r = is_acyclic(c, view);
  if (!r) throw MorseError(MorseError::Kind::NotAcyclic, "the matching is not acyclic", r.witness);
}

/// Inverse of w(u(a) > a) for every down cell a.
std::vector<std::optional<RingElement>> matched_inverses(const BasedComplex& c, const MatchingView& view) {
  std::vector<std::optional<RingElement>> inv(c.size());
  for (std::size_t a = 0; a < c.size(); ++a) {
    std::size_t b = view.up_of(a);
    if (b == npos) continue;
    inv[a] = covering_weight(c, c.cell(b).id, c.cell(a).id).try_invert();
    if (!inv[a]) throw RingError(RingError::Kind::NotInvertible, "matched weight on '" + c.cell(a).id + "' is not a unit");
  }
  return inv;
}

// Depth-first walk over alternating paths. `emit(ups, target, weight)` sees
// the up cells b1..bn of the current path.
class PathWalker {
 public:
  PathWalker(const BasedComplex& c, const MatchingView& view, PathTargets targets, std::size_t budget)
      : c_(c), view_(view), inv_(matched_inverses(c, view)), targets_(targets), budget_(budget),
        on_path_(c.size(), false) {}

  template <class Emit>
  void walk(std::size_t x, const RingElement& factor, Emit& emit) {
    for (const auto& t : c_.faces(x)) {
      const std::size_t z = t.cell;
      if (targets_ == PathTargets::All || view_.is_critical(z)) {
        if (++emitted_ > budget_) {
          throw MorseError(MorseError::Kind::PathBudgetExceeded,
                           "more than " + std::to_string(budget_) + " alternating paths");
        }
        emit(ups_, z, factor * t.coeff);
      }
      const std::size_t b = view_.up_of(z);
      if (b == npos || on_path_[b]) continue;
      on_path_[b] = true;
      ups_.push_back(b);
      walk(b, -(factor * t.coeff * *inv_[z]), emit);
      ups_.pop_back();
      on_path_[b] = false;
    }
  }

  std::size_t emitted() const noexcept { return emitted_; }

 private:
  const BasedComplex& c_;
  const MatchingView& view_;
  std::vector<std::optional<RingElement>> inv_;
  PathTargets targets_;
  std::size_t budget_;
  std::size_t emitted_ = 0;
  std::vector<bool> on_path_;
  std::vector<std::size_t> ups_;
};

}  // namespace

std::vector<AlternatingPath> enumerate_paths(const BasedComplex& c, const Matching& m, const std::string& source,
                                             const PathOptions& options) {
  MatchingView view = index_matching(c, m);
  require_acyclic(c, view);
  std::size_t s = c.index_of(source);
  std::vector<AlternatingPath> out;
  PathWalker walker(c, view, options.targets, options.budget);
  auto emit = [&](const std::vector<std::size_t>& ups, std::size_t target, const RingElement&) {
    AlternatingPath p{source, {}, c.cell(target).id};
    for (std::size_t b : ups) p.steps.push_back(MatchedPair{c.cell(view.down_of(b)).id, c.cell(b).id});
    out.push_back(std::move(p));
  };
  walker.walk(s, RingElement::one(c.ring()), emit);
  return out;
}

RingElement path_weight(const BasedComplex& c, const AlternatingPath& p) {
  auto weight = [&](const std::string& upper, const std::string& lower) {
    RingElement w = covering_weight(c, upper, lower);
    if (w.is_zero()) {
      throw MorseError(MorseError::Kind::InvariantViolated, "'" + upper + "' does not cover '" + lower + "'");
    }
    return w;
  };
  RingElement numerator = RingElement::one(c.ring());
  RingElement denominator = RingElement::one(c.ring());
  std::string upper = p.source;
  for (const auto& step : p.steps) {
    numerator *= weight(upper, step.down);
    denominator *= weight(step.up, step.down);
    upper = step.up;
  }
  numerator *= weight(upper, p.target);
  RingElement w = divide(numerator, denominator);
  return p.steps.size() % 2 == 0 ? w : -w;
}

BasedComplex normalize_basis(const BasedComplex& c, const Matching& m) {
  MatchingView view = index_matching(c, m);
  auto inv = matched_inverses(c, view);
  std::vector<RingElement> scale(c.size(), RingElement::one(c.ring()));
  std::vector<RingElement> unscale(c.size(), RingElement::one(c.ring()));
  for (std::size_t a = 0; a < c.size(); ++a) {
    if (!inv[a]) continue;
    unscale[a] = *inv[a];
    scale[a] = *inv[a]->try_invert();
  }
  BasedComplex out(c.ring());
  for (const auto& cell : c.cells()) out.add_cell(cell.id, cell.dim);
  for (std::size_t x = 0; x < c.size(); ++x) {
    std::vector<BasedComplex::Term> terms;
    for (const auto& t : c.faces(x)) terms.push_back({t.cell, scale[x] * t.coeff * unscale[t.cell]});
    out.set_boundary(x, std::move(terms));
  }
  return out;
}

MorseComplex morse_boundary(const BasedComplex& c, const Matching& m, std::size_t path_budget) {
  MatchingView view = index_matching(c, m);
  require_acyclic(c, view);

  MorseComplex out{BasedComplex(c.ring())};
  std::vector<std::size_t> morse_index(c.size(), npos);
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (view.is_critical(i)) morse_index[i] = out.complex.add_cell(c.cell(i).id, c.cell(i).dim);
  }

  PathWalker walker(c, view, PathTargets::Critical, path_budget);
  for (std::size_t s = 0; s < c.size(); ++s) {
    if (!view.is_critical(s)) continue;
    std::vector<BasedComplex::Term> terms;
    auto emit = [&](const std::vector<std::size_t>&, std::size_t target, const RingElement& w) {
      terms.push_back({morse_index[target], w});
    };
    walker.walk(s, RingElement::one(c.ring()), emit);
    out.complex.set_boundary(morse_index[s], std::move(terms));
  }
  return out;
}

namespace {

using SparseRow = std::map<std::size_t, RingElement>;

// Boundary weights of the current basis, kept in both directions.
class WeightTable {
 public:
  explicit WeightTable(std::size_t n) : rows_(n), cols_(n) {}

  const SparseRow& row(std::size_t x) const { return rows_[x]; }
  const std::set<std::size_t>& col(std::size_t y) const { return cols_[y]; }

  RingElement get(std::size_t x, std::size_t y, const RingSpec& ring) const {
    auto it = rows_[x].find(y);
    return it == rows_[x].end() ? RingElement::zero(ring) : it->second;
  }

  void set(std::size_t x, std::size_t y, RingElement w) {
    if (w.is_zero()) {
      rows_[x].erase(y);
      cols_[y].erase(x);
    } else {
      rows_[x].insert_or_assign(y, std::move(w));
      cols_[y].insert(x);
    }
  }

 private:
  std::vector<SparseRow> rows_;
  std::vector<std::set<std::size_t>> cols_;
};

void accumulate(SparseRow& into, std::size_t k, const RingElement& term) {
  if (term.is_zero()) return;
  auto [it, inserted] = into.try_emplace(k, term);
  if (!inserted) {
    it->second += term;
    if (it->second.is_zero()) into.erase(it);
  }
}

void add_scaled(SparseRow& into, const SparseRow& from, const RingElement& factor) {
  for (const auto& [k, v] : from) accumulate(into, k, v * factor);
}

}  // namespace

Decomposition reduce_by_elimination(const BasedComplex& c, const Matching& m, const LinearExtension& l,
                                    const EliminationOptions& options) {
  using K = MorseError::Kind;
  MatchingView view = index_matching(c, m);
  if (auto bad = check_linear_extension(c, m, l)) throw MorseError(K::OrderViolation, "invalid linear extension: " + *bad);
  const RingSpec& ring = c.ring();
  const std::size_t n = c.size();

  std::vector<std::size_t> pos(n);
  for (std::size_t p = 0; p < l.order.size(); ++p) pos[c.index_of(l.order[p])] = p;

  // Normalized starting basis: a -> w(u(a) > a) * a for every down cell.
  BasedComplex normalized = normalize_basis(c, m);
  WeightTable w(n);
  std::vector<SparseRow> expr(n);
  for (std::size_t x = 0; x < n; ++x) {
    for (const auto& t : normalized.faces(x)) w.set(x, t.cell, t.coeff);
    std::size_t up = view.up_of(x);
    expr[x].emplace(x, up == npos ? RingElement::one(ring) : covering_weight(c, c.cell(up).id, c.cell(x).id));
  }

  std::vector<std::size_t> ups;
  for (std::size_t i = 0; i < n; ++i) {
    if (view.class_of(i) == CellClass::Up) ups.push_back(i);
  }
  std::sort(ups.begin(), ups.end(), [&](std::size_t x, std::size_t y) { return pos[x] < pos[y]; });
  const std::size_t steps = std::min(ups.size(), options.max_steps.value_or(ups.size()));

  Decomposition out{MorseComplex{BasedComplex(ring)}, {}, {}};
  std::vector<bool> eliminated(n, false);

  for (std::size_t k = 0; k < steps; ++k) {
    const std::size_t b = ups[k];
    const std::size_t a = view.down_of(b);
    if (!w.get(b, a, ring).is_one()) {
      throw MorseError(K::NotNormalized, "weight of ('" + c.cell(a).id + "', '" + c.cell(b).id + "') is " +
                                             w.get(b, a, ring).to_string() + ", expected 1");
    }
    auto changed = [&](std::size_t x, std::size_t y) {
      if (options.check_invariants && pos[y] > pos[b]) {
        throw MorseError(K::InvariantViolated, "step " + std::to_string(k + 1) + " changed w('" + c.cell(x).id +
                                                   "' > '" + c.cell(y).id + "') with '" + c.cell(y).id +
                                                   "' after '" + c.cell(b).id + "'");
      }
    };
    const SparseRow b_row = w.row(b);
    std::vector<std::size_t> a_cofaces;
    for (std::size_t x : w.col(a)) {
      if (x != b) a_cofaces.push_back(x);
    }

    if (options.check_invariants) {
      // d(d(b)) = 0 justifies a^k having zero boundary; d(d(z)) = 0 at a
      // justifies clearing the column of b.
      SparseRow dd;
      for (const auto& [y, wy] : b_row) add_scaled(dd, w.row(y), wy);
      for (std::size_t z : w.col(b)) {
        RingElement s = RingElement::zero(ring);
        for (const auto& [y, wzy] : w.row(z)) s += wzy * w.get(y, a, ring);
        if (!s.is_zero()) dd.emplace(z, s);
      }
      if (!dd.empty()) {
        throw MorseError(K::InvariantViolated, "boundary does not square to zero near '" + c.cell(b).id + "'");
      }
    }

    // a^k := d(b^{k-1}).
    SparseRow new_a;
    for (const auto& [y, wy] : b_row) add_scaled(new_a, expr[y], wy);

    // x^k := x^{k-1} - w(x > a) b for the other cofaces of a, with the
    // matching rank-one update of their boundary rows.
    for (std::size_t x : a_cofaces) {
      const RingElement wxa = w.get(x, a, ring);
      add_scaled(expr[x], expr[b], -wxa);
      for (const auto& [y, wby] : b_row) {
        if (y == a) continue;
        changed(x, y);
        w.set(x, y, w.get(x, y, ring) - wxa * wby);
      }
      changed(x, a);
      w.set(x, a, RingElement::zero(ring));
    }
    for (std::size_t z : std::vector<std::size_t>(w.col(b).begin(), w.col(b).end())) {
      changed(z, b);
      w.set(z, b, RingElement::zero(ring));
    }
    for (const auto& [y, wby] : b_row) {
      if (y == a) continue;
      changed(b, y);
      w.set(b, y, RingElement::zero(ring));
    }
    std::vector<std::size_t> a_faces;
    for (const auto& [y, wy] : w.row(a)) a_faces.push_back(y);
    for (std::size_t y : a_faces) {
      changed(a, y);
      w.set(a, y, RingElement::zero(ring));
    }
    expr[a] = std::move(new_a);

    eliminated[a] = eliminated[b] = true;
    out.atoms.push_back(AtomSummand{c.cell(b).id, c.cell(a).id, c.cell(b).dim});
  }

  std::vector<std::size_t> morse_index(n, npos);
  for (std::size_t i = 0; i < n; ++i) {
    if (!eliminated[i]) morse_index[i] = out.morse.complex.add_cell(c.cell(i).id, c.cell(i).dim);
  }
  for (std::size_t x = 0; x < n; ++x) {
    if (eliminated[x]) continue;
    std::vector<BasedComplex::Term> terms;
    for (const auto& [y, wy] : w.row(x)) {
      if (eliminated[y]) {
        throw MorseError(K::InvariantViolated, "'" + c.cell(x).id + "' still covers eliminated '" + c.cell(y).id + "'");
      }
      terms.push_back({morse_index[y], wy});
    }
    out.morse.complex.set_boundary(morse_index[x], std::move(terms));
  }
  for (std::size_t x = 0; x < n; ++x) {
    Chain chain(ring, c.cell(x).dim);
    for (const auto& [o, coeff] : expr[x]) chain.add(c.cell(o).id, coeff);
    out.final_basis.emplace(c.cell(x).id, std::move(chain));
  }
  return out;
}

Decomposition reduce_by_elimination(const BasedComplex& c, const Matching& m) {
  return reduce_by_elimination(c, m, linear_extension(c, m));
}

namespace {

using RationalRow = std::map<std::size_t, mpq_class>;

// Row echelon form of the final basis of one dimension, over the rationals of
// the lifted entries. Each pivot row remembers which combination of basis
// elements produced it, so vectors can be written in the basis.
class BasisSolver {
 public:
  /// `rows[i]` is basis element i in original coordinates.
  explicit BasisSolver(std::vector<RationalRow> rows) {
    det_ = 1;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      RationalRow combo{{i, mpq_class(1)}};
      RationalRow r = std::move(rows[i]);
      reduce(r, combo);
      if (r.empty()) {
        singular_ = true;
        return;
      }
      det_ *= r.begin()->second;
      std::size_t col = r.begin()->first;
      pivots_.emplace(col, Pivot{std::move(r), std::move(combo)});
    }
  }

  bool singular() const noexcept { return singular_; }
  /// Determinant up to sign.
  const mpq_class& det() const noexcept { return det_; }

  /// Coordinates of v in the basis; nullopt if v is outside the span.
  std::optional<RationalRow> coordinates(RationalRow v) const {
    RationalRow combo;
    reduce(v, combo);
    if (!v.empty()) return std::nullopt;
    for (auto& [k, x] : combo) x = -x;
    return combo;
  }

 private:
  struct Pivot {
    RationalRow row;
    RationalRow combo;
  };

  // Eliminates leading entries of r against the pivots; combo tracks r as
  // (original r) + sum of subtracted basis combinations, negated.
  void reduce(RationalRow& r, RationalRow& combo) const {
    auto it = r.begin();
    while (it != r.end()) {
      auto p = pivots_.find(it->first);
      if (p == pivots_.end()) {
        ++it;
        continue;
      }
      // A pivot row has no entries left of its pivot column.
      const std::size_t col = it->first;
      const mpq_class f = it->second / p->second.row.begin()->second;
      axpy(r, p->second.row, -f);
      axpy(combo, p->second.combo, -f);
      it = r.upper_bound(col);
    }
  }

  static void axpy(RationalRow& into, const RationalRow& from, const mpq_class& f) {
    for (const auto& [k, v] : from) {
      mpq_class& slot = into[k];
      slot += f * v;
      if (sgn(slot) == 0) into.erase(k);
    }
  }

  std::map<std::size_t, Pivot> pivots_;
  mpq_class det_;
  bool singular_ = false;
};

}  // namespace

void verify_decomposition(const BasedComplex& c, const Decomposition& d) {
  using K = DecompositionError::Kind;
  const RingSpec& ring = c.ring();
  const std::size_t n = c.size();
  const BasedComplex& morse = d.morse.complex;

  // Block membership of every final basis element.
  enum class Block { None, Morse, Top, Bottom };
  std::vector<Block> block(n, Block::None);
  std::vector<std::size_t> partner(n, npos);
  auto claim = [&](const std::string& id, int dim, Block kind) {
    auto i = c.find(id);
    if (!i || c.cell(*i).dim != dim || block[*i] != Block::None) {
      throw DecompositionError(K::NotABasis, id, "", "blocks do not partition the basis at '" + id + "'");
    }
    block[*i] = kind;
    return *i;
  };
  for (const auto& cell : morse.cells()) claim(cell.id, cell.dim, Block::Morse);
  for (const auto& atom : d.atoms) {
    std::size_t top = claim(atom.top, atom.dim, Block::Top);
    std::size_t bottom = claim(atom.bottom, atom.dim - 1, Block::Bottom);
    partner[top] = bottom;
    partner[bottom] = top;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (block[i] == Block::None) {
      throw DecompositionError(K::NotABasis, c.cell(i).id, "", "'" + c.cell(i).id + "' belongs to no block");
    }
  }
  if (d.final_basis.size() != n) {
    throw DecompositionError(K::NotABasis, "", "", "final basis has the wrong number of elements");
  }

  // Final basis elements as rational rows in original coordinates.
  std::vector<RationalRow> lifted(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto it = d.final_basis.find(c.cell(i).id);
    if (it == d.final_basis.end() || (!it->second.is_zero() && it->second.dim() != c.cell(i).dim)) {
      throw DecompositionError(K::NotABasis, c.cell(i).id, "", "no final basis element for '" + c.cell(i).id + "'");
    }
    for (const auto& [id, coeff] : it->second.terms()) {
      std::size_t o = c.index_of(id);
      if (c.cell(o).dim != c.cell(i).dim) {
        throw DecompositionError(K::NotABasis, c.cell(i).id, id, "final basis element mixes dimensions");
      }
      lifted[i].emplace(o, coeff.value());
    }
  }

  std::map<int, std::vector<std::size_t>> by_dim;
  for (std::size_t i = 0; i < n; ++i) by_dim[c.cell(i).dim].push_back(i);
  std::map<int, BasisSolver> solvers;
  for (const auto& [dim, members] : by_dim) {
    std::vector<RationalRow> rows;
    for (std::size_t i : members) rows.push_back(lifted[i]);
    BasisSolver solver(std::move(rows));
    bool unit = !solver.singular();
    if (unit && ring.kind() == RingKind::Integers) unit = abs(solver.det()) == 1;
    if (unit && ring.kind() == RingKind::IntegersMod) {
      // The determinant of an integer matrix is an integer.
      mpz_class det = solver.det().get_num();
      mpz_class g;
      mpz_class p(static_cast<unsigned long>(ring.modulus()));
      mpz_gcd(g.get_mpz_t(), det.get_mpz_t(), p.get_mpz_t());
      unit = g == 1;
    }
    if (!unit) {
      throw DecompositionError(K::NotABasis, c.cell(members.front()).id, "",
                               "final basis of dimension " + std::to_string(dim) + " is not invertible over " +
                                   ring.to_string());
    }
    solvers.emplace(dim, std::move(solver));
  }

  // Boundary of every final element, in original coordinates.
  auto boundary_of = [&](std::size_t x) {
    SparseRow out;
    for (const auto& [o, coeff] : lifted[x]) {
      RingElement r(ring, coeff);
      for (const auto& t : c.faces(o)) accumulate(out, t.cell, r * t.coeff);
    }
    return out;
  };
  auto expand = [&](const std::vector<std::pair<std::size_t, RingElement>>& combo) {
    SparseRow out;
    for (const auto& [y, coeff] : combo) {
      for (const auto& [o, v] : lifted[y]) accumulate(out, o, RingElement(ring, v) * coeff);
    }
    return out;
  };

  for (std::size_t x = 0; x < n; ++x) {
    const int dim = c.cell(x).dim;
    // Claimed row of x in the final basis.
    std::vector<std::pair<std::size_t, RingElement>> claimed;
    if (block[x] == Block::Top) {
      claimed.emplace_back(partner[x], RingElement::one(ring));
    } else if (block[x] == Block::Morse) {
      for (const auto& t : morse.faces(morse.index_of(c.cell(x).id))) {
        claimed.emplace_back(c.index_of(morse.cell(t.cell).id), t.coeff);
      }
    }
    SparseRow actual_old = boundary_of(x);
    if (actual_old == expand(claimed)) continue;

    // Slow path: the actual row of x in the final basis.
    std::map<std::size_t, RingElement> actual;
    if (!actual_old.empty()) {
      const auto& members = by_dim.at(dim - 1);
      RationalRow v;
      for (const auto& [o, coeff] : actual_old) v.emplace(o, coeff.value());
      auto coords = solvers.at(dim - 1).coordinates(std::move(v));
      if (!coords) throw DecompositionError(K::NotABasis, c.cell(x).id, "", "boundary leaves the span of the final basis");
      for (const auto& [k, q] : *coords) actual.emplace(members[k], RingElement(ring, q));
      for (auto it = actual.begin(); it != actual.end();) it = it->second.is_zero() ? actual.erase(it) : std::next(it);
    }
    const std::string& xid = c.cell(x).id;
    if (block[x] == Block::Top) {
      for (const auto& [y, coeff] : actual) {
        if (y != partner[x]) throw DecompositionError(K::CrossTermsRemain, xid, c.cell(y).id, "atom top '" + xid + "' covers '" + c.cell(y).id + "'");
      }
      auto it = actual.find(partner[x]);
      if (it == actual.end() || !it->second.try_invert()) {
        throw DecompositionError(K::AtomNotUnit, xid, c.cell(partner[x]).id, "atom '" + xid + "' has no unit boundary");
      }
      continue;
    }
    for (const auto& [y, coeff] : actual) {
      if (block[x] == Block::Bottom || block[y] != Block::Morse) {
        throw DecompositionError(K::CrossTermsRemain, xid, c.cell(y).id,
                                 "cross term w('" + xid + "' > '" + c.cell(y).id + "') = " + coeff.to_string());
      }
    }
    for (const auto& [y, coeff] : claimed) {
      auto it = actual.find(y);
      if (it == actual.end() || !(it->second == coeff)) {
        throw DecompositionError(K::MorseBlockMismatch, xid, c.cell(y).id, "Morse block differs at ('" + xid + "', '" + c.cell(y).id + "')");
      }
    }
    for (const auto& [y, coeff] : actual) {
      if (std::none_of(claimed.begin(), claimed.end(), [y](const auto& e) { return e.first == y; })) {
        throw DecompositionError(K::MorseBlockMismatch, xid, c.cell(y).id, "Morse block differs at ('" + xid + "', '" + c.cell(y).id + "')");
      }
    }
  }
}

}  // namespace amorse
