#pragma once

// Homology of a based complex: Smith normal form over Z, ranks over fields.

#include <cstddef>
#include <gmpxx.h>
#include <map>
#include <utility>
#include <vector>

#include "amorse/complex.hpp"

namespace amorse {

class IntegerMatrix {
 public:
  IntegerMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  /// Zero values erase the entry.
  void set(std::size_t r, std::size_t c, const mpz_class& v);
  mpz_class get(std::size_t r, std::size_t c) const;

  const std::map<std::pair<std::size_t, std::size_t>, mpz_class>& entries() const noexcept { return entries_; }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::map<std::pair<std::size_t, std::size_t>, mpz_class> entries_;
};

/// Invariant factors d1 | d2 | ... | dr (all positive), r = rank.
std::vector<mpz_class> smith_normal_form(const IntegerMatrix& a);

struct HomologyGroup {
  int dim = 0;
  std::size_t betti = 0;
  /// Invariant factors > 1, in divisibility order. Always empty over fields.
  std::vector<mpz_class> torsion;

  friend bool operator==(const HomologyGroup&, const HomologyGroup&) = default;
};

/// Matrix of the boundary from dimension n to n - 1: one row per n-cell, one
/// column per (n-1)-cell, both in insertion order. Requires a Z complex.
IntegerMatrix boundary_matrix(const BasedComplex& c, int n);

/// H_0 .. H_top. Over Z with torsion; over Q and Z/p (p prime) Betti numbers
/// only. Throws HomologyError for Z/p with composite p.
std::vector<HomologyGroup> homology(const BasedComplex& c);

long euler_characteristic(const BasedComplex& c);

}  // namespace amorse
