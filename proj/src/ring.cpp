#include "amorse/ring.hpp"

#include <charconv>

#include "amorse/errors.hpp"

namespace amorse {

namespace {

static_assert(sizeof(unsigned long) >= sizeof(std::uint64_t), "moduli are passed to GMP as unsigned long");

mpz_class modulus_of(const RingSpec& ring) { return mpz_class(static_cast<unsigned long>(ring.modulus())); }

mpz_class residue(const mpz_class& x, const mpz_class& p) {
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t());
  return r;
}

mpz_class parse_integer(std::string_view text) {
  std::string s(text);
  if (!s.empty() && s.front() == '+') s.erase(0, 1);
  if (s.empty() || s == "-") throw RingError(RingError::Kind::Parse, "malformed integer '" + std::string(text) + "'");
  for (std::size_t i = (s.front() == '-') ? 1 : 0; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') {
      throw RingError(RingError::Kind::Parse, "malformed integer '" + std::string(text) + "'");
    }
  }
  return mpz_class(s, 10);
}

}  // namespace

RingSpec RingSpec::integers_mod(std::uint64_t p) {
  if (p < 2) throw RingError(RingError::Kind::InvalidModulus, "modulus must be at least 2, got " + std::to_string(p));
  return RingSpec(RingKind::IntegersMod, p);
}

RingSpec RingSpec::parse(std::string_view text) {
  if (text == "Z") return integers();
  if (text == "Q") return rationals();
  if (text.size() > 2 && text.substr(0, 2) == "Z/") {
    auto digits = text.substr(2);
    std::uint64_t p = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
    if (ec == std::errc() && ptr == digits.data() + digits.size()) return integers_mod(p);
  }
  throw RingError(RingError::Kind::Parse, "unknown ring '" + std::string(text) + "' (expected Z, Q or Z/<p>)");
}

bool RingSpec::is_field() const {
  switch (kind_) {
    case RingKind::Rationals:
      return true;
    case RingKind::Integers:
      return false;
    case RingKind::IntegersMod:
      return mpz_probab_prime_p(modulus_of(*this).get_mpz_t(), 40) > 0;
  }
  return false;
}

std::string RingSpec::to_string() const {
  switch (kind_) {
    case RingKind::Integers:
      return "Z";
    case RingKind::Rationals:
      return "Q";
    case RingKind::IntegersMod:
      return "Z/" + std::to_string(modulus_);
  }
  return "?";
}

RingElement::RingElement(const RingSpec& ring, long value) : ring_(ring), value_(value) { canonicalize(); }

RingElement::RingElement(const RingSpec& ring, const mpz_class& value) : ring_(ring), value_(value) {
  canonicalize();
}

RingElement::RingElement(const RingSpec& ring, const mpq_class& value) : ring_(ring), value_(value) {
  value_.canonicalize();
  if (value_.get_den() != 1) {
    switch (ring_.kind()) {
      case RingKind::Rationals:
        break;
      case RingKind::Integers:
        throw RingError(RingError::Kind::NotInvertible, "non-integral value " + value_.get_str() + " in Z");
      case RingKind::IntegersMod: {
        mpz_class p = modulus_of(ring_);
        mpz_class inv;
        if (mpz_invert(inv.get_mpz_t(), value_.get_den_mpz_t(), p.get_mpz_t()) == 0) {
          throw RingError(RingError::Kind::NotInvertible,
                          "denominator of " + value_.get_str() + " is not a unit in " + ring_.to_string());
        }
        value_ = mpq_class(residue(value_.get_num() * inv, p));
        break;
      }
    }
  }
  canonicalize();
}

RingElement RingElement::parse(const RingSpec& ring, std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return RingElement(ring, parse_integer(text));
  if (ring.kind() != RingKind::Rationals) {
    throw RingError(RingError::Kind::Parse, "fraction '" + std::string(text) + "' outside Q");
  }
  mpz_class num = parse_integer(text.substr(0, slash));
  mpz_class den = parse_integer(text.substr(slash + 1));
  if (den == 0) throw RingError(RingError::Kind::Parse, "zero denominator in '" + std::string(text) + "'");
  return RingElement(ring, mpq_class(num, den));
}

void RingElement::canonicalize() {
  if (ring_.kind() == RingKind::IntegersMod) {
    unsigned long r = mpz_fdiv_ui(value_.get_num_mpz_t(), static_cast<unsigned long>(ring_.modulus()));
    value_ = r;
  }
}

void RingElement::require_same_ring(const RingElement& rhs) const {
  if (!(ring_ == rhs.ring_)) {
    throw RingError(RingError::Kind::MixedRings,
                    "mixed rings " + ring_.to_string() + " and " + rhs.ring_.to_string());
  }
}

std::optional<RingElement> RingElement::try_invert() const {
  switch (ring_.kind()) {
    case RingKind::Integers:
      if (value_ == 1 || value_ == -1) return *this;
      return std::nullopt;
    case RingKind::Rationals:
      if (is_zero()) return std::nullopt;
      return RingElement(ring_, mpq_class(1) / value_);
    case RingKind::IntegersMod: {
      mpz_class inv;
      mpz_class p = modulus_of(ring_);
      if (mpz_invert(inv.get_mpz_t(), value_.get_num_mpz_t(), p.get_mpz_t()) == 0) return std::nullopt;
      // mpz_invert treats every element of Z/1 as invertible; p >= 2 here.
      return RingElement(ring_, inv);
    }
  }
  return std::nullopt;
}

std::string RingElement::to_string() const { return value_.get_str(); }

RingElement RingElement::operator-() const {
  RingElement r = *this;
  r.value_ = -r.value_;
  r.canonicalize();
  return r;
}

RingElement& RingElement::operator+=(const RingElement& rhs) {
  require_same_ring(rhs);
  value_ += rhs.value_;
  canonicalize();
  return *this;
}

RingElement& RingElement::operator-=(const RingElement& rhs) {
  require_same_ring(rhs);
  value_ -= rhs.value_;
  canonicalize();
  return *this;
}

RingElement& RingElement::operator*=(const RingElement& rhs) {
  require_same_ring(rhs);
  value_ *= rhs.value_;
  canonicalize();
  return *this;
}

RingElement add(const RingElement& x, const RingElement& y) { return x + y; }

RingElement mul(const RingElement& x, const RingElement& y) { return x * y; }

RingElement divide(const RingElement& x, const RingElement& y) {
  auto inv = y.try_invert();
  if (!inv) throw RingError(RingError::Kind::NotInvertible, y.to_string() + " is not a unit in " + y.ring().to_string());
  return x * *inv;
}

std::ostream& operator<<(std::ostream& os, const RingElement& x) { return os << x.to_string(); }

std::ostream& operator<<(std::ostream& os, const RingSpec& r) { return os << r.to_string(); }

}  // namespace amorse
