#include "amorse/homology.hpp"

#include <algorithm>

#include "amorse/errors.hpp"

namespace amorse {

void IntegerMatrix::set(std::size_t r, std::size_t c, const mpz_class& v) {
  if (r >= rows_ || c >= cols_) throw std::out_of_range("IntegerMatrix index out of range");
  if (v == 0) {
    entries_.erase({r, c});
  } else {
    entries_.insert_or_assign({r, c}, v);
  }
}

mpz_class IntegerMatrix::get(std::size_t r, std::size_t c) const {
  auto it = entries_.find({r, c});
  return it == entries_.end() ? mpz_class(0) : it->second;
}

namespace {

using IntRow = std::map<std::size_t, mpz_class>;

// into -= f * from
void subtract_multiple(IntRow& into, const IntRow& from, const mpz_class& f) {
  for (const auto& [k, v] : from) {
    mpz_class& slot = into[k];
    slot -= f * v;
    if (slot == 0) into.erase(k);
  }
}

// Turns a list of nonzero diagonal entries into invariant factors.
std::vector<mpz_class> invariant_factors(std::vector<mpz_class> diag) {
  for (auto& d : diag) d = abs(d);
  std::sort(diag.begin(), diag.end());
  // diag(a, b) is equivalent to diag(gcd, lcm); sweep until the chain divides.
  for (std::size_t i = 0; i < diag.size(); ++i) {
    for (std::size_t j = i + 1; j < diag.size(); ++j) {
      mpz_class g = gcd(diag[i], diag[j]);
      if (g != diag[i]) {
        mpz_class l = lcm(diag[i], diag[j]);
        diag[i] = g;
        diag[j] = l;
      }
    }
  }
  return diag;
}

}  // namespace

std::vector<mpz_class> smith_normal_form(const IntegerMatrix& a) {
  std::vector<IntRow> rows(a.rows());
  for (const auto& [rc, v] : a.entries()) rows[rc.first].emplace(rc.second, v);
  std::vector<bool> live(a.rows(), true);
  std::vector<mpz_class> diag;

  for (;;) {
    // Pivot: an entry of minimal absolute value among live rows.
    std::size_t pr = 0, pc = 0;
    const mpz_class* best = nullptr;
    for (std::size_t r = 0; r < rows.size() && !(best && abs(*best) == 1); ++r) {
      if (!live[r]) continue;
      for (const auto& [c, v] : rows[r]) {
        if (!best || abs(v) < abs(*best)) {
          best = &v;
          pr = r;
          pc = c;
          if (abs(v) == 1) break;
        }
      }
    }
    if (!best) break;

    // Clear the pivot column with row operations, then the pivot row with
    // column operations. A nonzero remainder becomes a smaller pivot.
    for (;;) {
      bool reduced = true;
      mpz_class p = rows[pr].at(pc);
      for (std::size_t r = 0; r < rows.size(); ++r) {
        if (r == pr || !live[r]) continue;
        auto it = rows[r].find(pc);
        if (it == rows[r].end()) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), it->second.get_mpz_t(), p.get_mpz_t());
        subtract_multiple(rows[r], rows[pr], q);
        if (rows[r].contains(pc)) {
          // The remainder is smaller than the pivot: swap roles.
          pr = r;
          reduced = false;
          break;
        }
      }
      if (!reduced) continue;
      // Column pc is now zero outside the pivot row, so column operations
      // only touch the pivot row.
      IntRow& prow = rows[pr];
      std::size_t remainder_col = pc;
      for (auto it = prow.begin(); it != prow.end();) {
        if (it->first == pc) {
          ++it;
          continue;
        }
        mpz_class r;
        mpz_fdiv_r(r.get_mpz_t(), it->second.get_mpz_t(), p.get_mpz_t());
        if (r == 0) {
          it = prow.erase(it);
        } else {
          it->second = r;
          remainder_col = it->first;
          ++it;
        }
      }
      if (remainder_col == pc) break;
      // Smaller entry in the pivot row: continue with it as the pivot.
      for (auto it = prow.begin(); it != prow.end(); ++it) {
        if (abs(it->second) < abs(prow.at(remainder_col))) remainder_col = it->first;
      }
      pc = remainder_col;
    }
    diag.push_back(rows[pr].at(pc));
    live[pr] = false;
    // Drop column pc from consideration: it is zero in every live row.
  }
  return invariant_factors(std::move(diag));
}

IntegerMatrix boundary_matrix(const BasedComplex& c, int n) {
  if (c.ring().kind() != RingKind::Integers) throw HomologyError("integer boundary matrix requested over " + c.ring().to_string());
  auto upper = c.cells_of_dim(n);
  auto lower = c.cells_of_dim(n - 1);
  std::vector<std::size_t> col_of(c.size(), 0);
  for (std::size_t j = 0; j < lower.size(); ++j) col_of[lower[j]] = j;
  IntegerMatrix m(upper.size(), lower.size());
  for (std::size_t i = 0; i < upper.size(); ++i) {
    for (const auto& t : c.faces(upper[i])) m.set(i, col_of[t.cell], t.coeff.value().get_num());
  }
  return m;
}

namespace {

// Rank of the n -> n-1 boundary over a field.
std::size_t field_rank(const BasedComplex& c, int n) {
  using Row = std::map<std::size_t, RingElement>;
  std::map<std::size_t, Row> pivots;
  std::size_t rank = 0;
  for (std::size_t x : c.cells_of_dim(n)) {
    Row r;
    for (const auto& t : c.faces(x)) r.emplace(t.cell, t.coeff);
    auto it = r.begin();
    while (it != r.end()) {
      auto p = pivots.find(it->first);
      if (p == pivots.end()) {
        ++it;
        continue;
      }
      const std::size_t col = it->first;
      RingElement f = divide(it->second, p->second.begin()->second);
      for (const auto& [k, v] : p->second) {
        auto [slot, inserted] = r.try_emplace(k, -(f * v));
        if (!inserted) {
          slot->second -= f * v;
          if (slot->second.is_zero()) r.erase(slot);
        }
      }
      it = r.upper_bound(col);
    }
    if (!r.empty()) {
      ++rank;
      std::size_t col = r.begin()->first;
      pivots.emplace(col, std::move(r));
    }
  }
  return rank;
}

}  // namespace

std::vector<HomologyGroup> homology(const BasedComplex& c) {
  const RingSpec& ring = c.ring();
  const bool integral = ring.kind() == RingKind::Integers;
  if (!integral && !ring.is_field()) {
    throw HomologyError("homology over " + ring.to_string() + " is not supported (composite modulus)");
  }
  const int top = c.top_dim();
  // rank[n] = rank of the boundary n -> n-1; factors[n] its invariant factors.
  std::vector<std::size_t> rank(static_cast<std::size_t>(top + 2), 0);
  std::vector<std::vector<mpz_class>> factors(static_cast<std::size_t>(top + 2));
  for (int n = 1; n <= top; ++n) {
    if (integral) {
      factors[n] = smith_normal_form(boundary_matrix(c, n));
      rank[n] = factors[n].size();
    } else {
      rank[n] = field_rank(c, n);
    }
  }
  std::vector<HomologyGroup> out;
  for (int n = 0; n <= top; ++n) {
    HomologyGroup h;
    h.dim = n;
    h.betti = c.count_of_dim(n) - rank[n] - rank[n + 1];
    for (const auto& d : factors[n + 1]) {
      if (d > 1) h.torsion.push_back(d);
    }
    out.push_back(std::move(h));
  }
  return out;
}

long euler_characteristic(const BasedComplex& c) {
  long chi = 0;
  for (const auto& cell : c.cells()) chi += (cell.dim % 2 == 0) ? 1 : -1;
  return chi;
}

}  // namespace amorse
