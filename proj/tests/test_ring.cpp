#include "doctest.h"

#include <random>

#include "amorse/errors.hpp"
#include "amorse/ring.hpp"

using namespace amorse;

namespace {

const RingSpec Z = RingSpec::integers();
const RingSpec Q = RingSpec::rationals();
const RingSpec Z6 = RingSpec::integers_mod(6);

RingElement q(long num, long den) { return RingElement(Q, mpq_class(num, den)); }

}  // namespace

TEST_SUITE("ring") {
  TEST_CASE("add") {
    CHECK((RingElement(Z, 2L) + RingElement(Z, -2L)).is_zero());
    CHECK(add(RingElement(Z6, 4L), RingElement(Z6, 5L)) == RingElement(Z6, 3L));
    CHECK(q(1, 2) + q(1, 3) == q(5, 6));
  }

  TEST_CASE("mul") {
    CHECK(mul(RingElement(Z, -1L), RingElement(Z, -1L)) == RingElement(Z, 1L));
    CHECK(mul(RingElement(Z6, 2L), RingElement(Z6, 3L)).is_zero());
    CHECK((q(2, 3) * q(3, 2)).is_one());
  }

  TEST_CASE("mixed rings are rejected") {
    auto mixed = [] { return add(RingElement(Z, 1L), RingElement(Q, 1L)); };
    CHECK_THROWS_AS(mixed(), RingError);
    try {
      mul(RingElement(Z6, 1L), RingElement(RingSpec::integers_mod(7), 1L));
      FAIL("expected MixedRings");
    } catch (const RingError& e) {
      CHECK(e.kind() == RingError::Kind::MixedRings);
    }
  }

  TEST_CASE("try_invert") {
    CHECK(RingElement(Z, -1L).try_invert() == RingElement(Z, -1L));
    CHECK_FALSE(RingElement(Z, 2L).try_invert());
    CHECK(RingElement(Z6, 5L).try_invert() == RingElement(Z6, 5L));
    CHECK(q(2, 3).try_invert() == q(3, 2));
    CHECK_FALSE(RingElement::zero(Q).try_invert());
    CHECK_FALSE(RingElement(Z6, 3L).try_invert());
  }

  TEST_CASE("units are exactly the expected sets") {
    for (long v = -20; v <= 20; ++v) {
      CHECK(RingElement(Z, v).try_invert().has_value() == (v == 1 || v == -1));
      CHECK(RingElement(Q, v).try_invert().has_value() == (v != 0));
    }
    for (std::uint64_t p : {2u, 6u, 12u, 13u, 30u}) {
      RingSpec r = RingSpec::integers_mod(p);
      for (long v = 0; v < static_cast<long>(p); ++v) {
        auto inv = RingElement(r, v).try_invert();
        CHECK(inv.has_value() == (std::gcd(v, static_cast<long>(p)) == 1));
        if (inv) CHECK((RingElement(r, v) * *inv).is_one());
      }
    }
  }

  TEST_CASE("canonical forms") {
    CHECK(RingElement(Z6, -1L).to_string() == "5");
    CHECK(RingElement(Z6, 13L) == RingElement(Z6, 1L));
    CHECK(q(-6, -4).to_string() == "3/2");
    CHECK(q(3, -7).to_string() == "-3/7");
    // Rational values enter Z/p through the inverse of their denominator.
    CHECK(RingElement(RingSpec::integers_mod(7), mpq_class(1, 2)) == RingElement(RingSpec::integers_mod(7), 4L));
    CHECK_THROWS_AS(RingElement(Z, mpq_class(1, 2)), RingError);
    CHECK_THROWS_AS(RingElement(Z6, mpq_class(1, 2)), RingError);
  }

  TEST_CASE("serialization") {
    CHECK(RingSpec::parse("Z") == Z);
    CHECK(RingSpec::parse("Q") == Q);
    CHECK(RingSpec::parse("Z/6") == Z6);
    CHECK(Z6.to_string() == "Z/6");
    CHECK_THROWS_AS(RingSpec::parse("Z/1"), RingError);
    CHECK_THROWS_AS(RingSpec::parse("Z/"), RingError);
    CHECK_THROWS_AS(RingSpec::parse("R"), RingError);
    CHECK(RingElement::parse(Z, "-3") == RingElement(Z, -3L));
    CHECK(RingElement::parse(Z6, "4") == RingElement(Z6, 4L));
    CHECK(RingElement::parse(Q, "-3/7") == q(-3, 7));
    CHECK(RingElement::parse(Q, "4/2") == RingElement(Q, 2L));
    CHECK_THROWS_AS(RingElement::parse(Z, "1/2"), RingError);
    CHECK_THROWS_AS(RingElement::parse(Q, "1/0"), RingError);
    CHECK_THROWS_AS(RingElement::parse(Z, "x"), RingError);
    CHECK_THROWS_AS(RingElement::parse(Z, ""), RingError);
  }

  TEST_CASE("field detection") {
    CHECK(Q.is_field());
    CHECK_FALSE(Z.is_field());
    CHECK(RingSpec::integers_mod(7).is_field());
    CHECK_FALSE(Z6.is_field());
  }

  TEST_CASE("ring axioms on random triples") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> big(-1'000'000'000'000L, 1'000'000'000'000L);
    std::uniform_int_distribution<long> small(1, 50);
    for (const RingSpec& r : {Z, Q, Z6, RingSpec::integers_mod(97)}) {
      for (int i = 0; i < 200; ++i) {
        auto draw = [&] {
          if (r == Q) return RingElement(r, mpq_class(big(rng), small(rng)));
          return RingElement(r, big(rng));
        };
        RingElement x = draw(), y = draw(), z = draw();
        CHECK((x + y) + z == x + (y + z));
        CHECK((x * y) * z == x * (y * z));
        CHECK(x + y == y + x);
        CHECK(x * y == y * x);
        CHECK(x * (y + z) == x * y + x * z);
        CHECK((x - x).is_zero());
        if (auto inv = x.try_invert()) CHECK((x * *inv).is_one());
      }
    }
  }

  TEST_CASE("integers do not overflow") {
    RingElement x(Z, mpz_class("123456789012345678901234567890"));
    CHECK((x * x).to_string() == "15241578753238836750495351562536198787501905199875019052100");
  }
}
