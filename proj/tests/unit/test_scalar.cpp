#include <doctest.h>

#include "oracles.hpp"
#include "weylforge/error.hpp"
#include "weylforge/scalar.hpp"

using namespace weylforge;

namespace {
const FieldCtx QQ = FieldCtx::rationals();
Scalar q(long num, long den) { return Scalar(QQ, mpq_class(num, den)); }
}  // namespace

TEST_CASE("field contexts") {
  CHECK(FieldCtx::prime_field(7).characteristic() == 7);
  CHECK(FieldCtx::rationals().is_rationals());
  CHECK_THROWS_AS(FieldCtx::prime_field(4), InvalidArgument);
  CHECK_THROWS_AS(FieldCtx::prime_field(1), InvalidArgument);
  CHECK_THROWS_AS(FieldCtx::prime_field(2147483659ULL), InvalidArgument);
  CHECK(FieldCtx::prime_field(2147483647ULL).characteristic() == 2147483647U);
  CHECK(FieldCtx::prime_field(5).name() == "GF(5)");
  CHECK(QQ.name() == "QQ");
}

TEST_CASE("canonical forms") {
  CHECK(q(2, 4) == q(1, 2));
  CHECK(q(2, -4).to_string() == "-1/2");
  CHECK(q(6, 3).to_string() == "2");
  const FieldCtx f7 = FieldCtx::prime_field(7);
  CHECK(Scalar(f7, -1L).residue() == 6);
  CHECK(Scalar(f7, 15L).residue() == 1);
  CHECK(Scalar(FieldCtx::prime_field(3), mpq_class(3, 6)).residue() == 2);
}

TEST_CASE("scalar_inv examples") {
  CHECK(scalar_inv(q(2, 3)) == q(3, 2));
  CHECK(scalar_inv(Scalar::one(QQ)).is_one());
  CHECK(scalar_inv(Scalar::one(FieldCtx::prime_field(11))).is_one());
  const FieldCtx f7 = FieldCtx::prime_field(7);
  CHECK(scalar_inv(Scalar(f7, 3L)).residue() == 5);
  CHECK_THROWS_AS(scalar_inv(Scalar::zero(QQ)), DivisionByZero);
  CHECK_THROWS_AS(scalar_inv(Scalar::zero(f7)), DivisionByZero);
}

TEST_CASE("reduce_mod_p examples") {
  CHECK(reduce_mod_p(q(1, 2), 5).residue() == 3);
  CHECK(reduce_mod_p(Scalar::zero(QQ), 13).is_zero());
  CHECK_THROWS_AS(reduce_mod_p(q(1, 2), 2), BadPrime);
  CHECK_THROWS_AS(reduce_mod_p(Scalar(FieldCtx::prime_field(5), 1L), 5), WrongCharacteristic);
}

TEST_CASE("mixing fields is rejected") {
  CHECK_THROWS_AS(Scalar(QQ, 1L) + Scalar(FieldCtx::prime_field(3), 1L), Mismatch);
}

TEST_CASE("field axioms on random triples") {
  oracle::Random rng(11);
  for (const FieldCtx ctx : {QQ, FieldCtx::prime_field(5), FieldCtx::prime_field(101)}) {
    for (int k = 0; k < 300; ++k) {
      const Scalar a = rng.scalar(ctx), b = rng.scalar(ctx), c = rng.scalar(ctx);
      CHECK((a + b) + c == a + (b + c));
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a + b == b + a);
      CHECK(a * b == b * a);
      CHECK((a - a).is_zero());
      if (!a.is_zero()) CHECK((a * a.inv()).is_one());
      if (!b.is_zero()) CHECK((a / b) * b == a);
    }
  }
}

TEST_CASE("reduction is a ring homomorphism") {
  oracle::Random rng(12);
  for (const std::uint32_t p : {2u, 3u, 7u, 31u}) {
    for (int k = 0; k < 300; ++k) {
      const Scalar a = rng.scalar(QQ), b = rng.scalar(QQ);
      try {
        const Scalar ra = reduce_mod_p(a, p), rb = reduce_mod_p(b, p);
        CHECK(reduce_mod_p(a + b, p) == ra + rb);
        CHECK(reduce_mod_p(a * b, p) == ra * rb);
      } catch (const BadPrime&) {
      }
    }
  }
}
