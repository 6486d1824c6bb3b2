#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace amorse {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class RingError : public Error {
 public:
  enum class Kind { MixedRings, NotInvertible, Parse, InvalidModulus };

  RingError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

class ComplexError : public Error {
 public:
  enum class Kind { NotSquareZero, DimensionMismatch, DuplicateId, UnknownCell, Parse };

  ComplexError(Kind kind, std::string cell, const std::string& what)
      : Error(what), kind_(kind), cell_(std::move(cell)) {}
  Kind kind() const noexcept { return kind_; }
  /// Offending cell id, empty when not applicable.
  const std::string& cell() const noexcept { return cell_; }

 private:
  Kind kind_;
  std::string cell_;
};

class MatchingError : public Error {
 public:
  enum class Kind { NotACoveringPair, ElementMatchedTwice, NonInvertibleWeight, UnknownCell, Parse };

  MatchingError(Kind kind, std::string down, std::string up, const std::string& what)
      : Error(what), kind_(kind), down_(std::move(down)), up_(std::move(up)) {}
  Kind kind() const noexcept { return kind_; }
  const std::string& down() const noexcept { return down_; }
  const std::string& up() const noexcept { return up_; }

 private:
  Kind kind_;
  std::string down_;
  std::string up_;
};

class MorseError : public Error {
 public:
  enum class Kind { NotAcyclic, PathBudgetExceeded, NotNormalized, OrderViolation, InvariantViolated };

  MorseError(Kind kind, const std::string& what, std::vector<std::string> witness = {})
      : Error(what), kind_(kind), witness_(std::move(witness)) {}
  Kind kind() const noexcept { return kind_; }
  /// Cycle of up elements for NotAcyclic, empty otherwise.
  const std::vector<std::string>& witness() const noexcept { return witness_; }

 private:
  Kind kind_;
  std::vector<std::string> witness_;
};

class DecompositionError : public Error {
 public:
  enum class Kind { NotABasis, CrossTermsRemain, AtomNotUnit, MorseBlockMismatch };

  DecompositionError(Kind kind, std::string row, std::string col, const std::string& what)
      : Error(what), kind_(kind), row_(std::move(row)), col_(std::move(col)) {}
  Kind kind() const noexcept { return kind_; }
  /// The boundary entry at fault is w(row > col) in the final basis.
  const std::string& row() const noexcept { return row_; }
  const std::string& col() const noexcept { return col_; }

 private:
  Kind kind_;
  std::string row_;
  std::string col_;
};

class HomologyError : public Error {
 public:
  using Error::Error;
};

class InputError : public Error {
 public:
  using Error::Error;
};

}  // namespace amorse
