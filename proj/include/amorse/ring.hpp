#pragma once

// Exact coefficient rings: the integers, the integers modulo p (any p >= 2)
// and the rationals. Elements carry their ring and are always stored in
// canonical form, so equality is structural.

#include <cstdint>
#include <gmpxx.h>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

namespace amorse {

enum class RingKind : std::uint8_t { Integers, IntegersMod, Rationals };

class RingSpec {
 public:
  static RingSpec integers() { return RingSpec(RingKind::Integers, 0); }
  static RingSpec rationals() { return RingSpec(RingKind::Rationals, 0); }
  /// Throws RingError(InvalidModulus) unless p >= 2.
  static RingSpec integers_mod(std::uint64_t p);

  /// Accepts "Z", "Q" and "Z/<p>".
  static RingSpec parse(std::string_view text);

  RingKind kind() const noexcept { return kind_; }
  /// Zero unless kind() == IntegersMod.
  std::uint64_t modulus() const noexcept { return modulus_; }

  /// True for Q and for Z/p with p prime.
  bool is_field() const;

  std::string to_string() const;

  friend bool operator==(const RingSpec&, const RingSpec&) = default;

 private:
  RingSpec(RingKind kind, std::uint64_t modulus) : kind_(kind), modulus_(modulus) {}

  RingKind kind_;
  std::uint64_t modulus_;
};

class RingElement {
 public:
  /// Zero of the integers.
  RingElement() : RingElement(RingSpec::integers(), 0) {}
  RingElement(const RingSpec& ring, long value);
  RingElement(const RingSpec& ring, const mpz_class& value);
  /// Rational value; reduced into the ring. Over Z the value must be integral,
  /// over Z/p its denominator must be a unit mod p.
  RingElement(const RingSpec& ring, const mpq_class& value);

  static RingElement zero(const RingSpec& ring) { return RingElement(ring, 0L); }
  static RingElement one(const RingSpec& ring) { return RingElement(ring, 1L); }

  /// Parses "-3", "4" or "-3/7" (fractions only over Q).
  static RingElement parse(const RingSpec& ring, std::string_view text);

  const RingSpec& ring() const noexcept { return ring_; }
  /// Canonical value: an integer for Z, a residue in [0, p) for Z/p,
  /// a reduced fraction with positive denominator for Q.
  const mpq_class& value() const noexcept { return value_; }

  bool is_zero() const { return sgn(value_) == 0; }
  bool is_one() const { return value_ == 1; }

  /// The inverse, or nullopt when the element is not a unit.
  std::optional<RingElement> try_invert() const;

  std::string to_string() const;

  RingElement operator-() const;
  RingElement& operator+=(const RingElement& rhs);
  RingElement& operator-=(const RingElement& rhs);
  RingElement& operator*=(const RingElement& rhs);

  friend RingElement operator+(RingElement lhs, const RingElement& rhs) { return lhs += rhs; }
  friend RingElement operator-(RingElement lhs, const RingElement& rhs) { return lhs -= rhs; }
  friend RingElement operator*(RingElement lhs, const RingElement& rhs) { return lhs *= rhs; }

  friend bool operator==(const RingElement& lhs, const RingElement& rhs) {
    return lhs.ring_ == rhs.ring_ && lhs.value_ == rhs.value_;
  }

 private:
  void canonicalize();
  void require_same_ring(const RingElement& rhs) const;

  RingSpec ring_;
  mpq_class value_;
};

/// Named forms of the ring operations; both throw RingError(MixedRings).
RingElement add(const RingElement& x, const RingElement& y);
RingElement mul(const RingElement& x, const RingElement& y);

/// x / y; throws RingError(NotInvertible) when y is not a unit.
RingElement divide(const RingElement& x, const RingElement& y);

std::ostream& operator<<(std::ostream& os, const RingElement& x);
std::ostream& operator<<(std::ostream& os, const RingSpec& r);

}  // namespace amorse
