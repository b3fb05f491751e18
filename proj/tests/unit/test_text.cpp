#include <doctest.h>

#include "oracles.hpp"
#include "weylforge/error.hpp"
#include "weylforge/text.hpp"

using namespace weylforge;

namespace {
const FieldCtx QQ = FieldCtx::rationals();

std::size_t error_position(std::string_view text, std::size_t n) {
  try {
    parse_weyl(text, n, QQ);
  } catch (const ParseError& e) {
    return e.position();
  }
  return std::string::npos;
}
}  // namespace

TEST_CASE("parse_expr examples") {
  const WeylElement a = parse_weyl("d1*x1", 1, QQ);
  CHECK(to_string(a) == "x1*d1 + 1");
  CHECK(parse_weyl("0", 1, QQ).is_zero());
  const WeylElement b = parse_weyl("3*x1^2*d2 - 1/2", 2, QQ);
  CHECK(b.size() == 2);
  CHECK(to_string(b) == "3*x1^2*d2 - 1/2");
  CHECK(parse_weyl("2 x1 d1", 1, QQ) == parse_weyl("2*x1*d1", 1, QQ));
  CHECK_THROWS_AS(parse_weyl("-x1 + -2", 1, QQ), ParseError);
  CHECK(to_string(parse_weyl("4/6*d1", 1, QQ)) == "2/3*d1");
  CHECK(to_string(parse_weyl("4/6*d1", 1, FieldCtx::prime_field(5))) == "4*d1");
  const auto v = parse_expr("X1*Y1 + X1", RingDescriptor::center(1, FieldCtx::prime_field(3)));
  CHECK(std::holds_alternative<Poly>(v));
  CHECK(std::holds_alternative<WeylElement>(parse_expr("x1", RingDescriptor::weyl(1, QQ))));
}

TEST_CASE("parse errors carry positions") {
  CHECK(error_position("x1 + ", 1) == 5);
  CHECK(error_position("x1 ^ ", 1) == 5);
  CHECK(error_position("x1 $ d1", 1) == 3);
  CHECK(error_position("1/0", 1) == 2);
  CHECK_THROWS_AS(parse_weyl("x3", 2, QQ), ParseError);
  CHECK_THROWS_AS(parse_weyl("y1", 1, QQ), ParseError);
  CHECK_THROWS_AS(parse_poly("d1", RingDescriptor::poly(1, QQ)), ParseError);
  CHECK_THROWS_AS(parse_weyl("1/2", 1, FieldCtx::prime_field(2)), BadPrime);
  CHECK(max_variable_index("x1 + d12*X3") == 12);
}

TEST_CASE("print then parse is the identity") {
  oracle::Random rng(61);
  for (const FieldCtx ctx : {QQ, FieldCtx::prime_field(7)}) {
    for (int k = 0; k < 200; ++k) {
      const std::size_t n = 1 + rng.below(3);
      const WeylElement a = rng.weyl(n, ctx, 5, 5);
      CHECK(parse_weyl(to_string(a), n, ctx) == a);
      const Poly f = rng.poly(2 * n, ctx, 5, 5);
      const RingDescriptor centre = RingDescriptor::center(n, ctx);
      CHECK(parse_poly(to_string(f, centre), centre) == f);
      const RingDescriptor plain = RingDescriptor::poly(2 * n, ctx);
      CHECK(parse_poly(to_string(f, plain), plain) == f);
    }
  }
}

TEST_CASE("endo files") {
  const std::string src =
      "# twisted derivative\n"
      "ring weyl n=1 char=0\n"
      "\n"
      "d1 -> d1 + x1^2\n"
      "x1 -> x1\n";
  const Endomorphism e = parse_endo_file(src);
  REQUIRE(std::holds_alternative<WeylEndo>(e));
  const WeylEndo& phi = std::get<WeylEndo>(e);
  CHECK(phi.dimg()[0] == parse_weyl("d1 + x1^2", 1, QQ));
  const std::string printed = print_endo_file(phi);
  CHECK(printed == "ring weyl n=1 char=0\nx1 -> x1\nd1 -> x1^2 + d1\n");
  CHECK(std::get<WeylEndo>(parse_endo_file(printed)) == phi);
  CHECK(fnv1a_hex(canonical_text(phi)).size() == 16);
  CHECK(fnv1a_hex("") == "cbf29ce484222325");

  const Endomorphism p = parse_endo_file("ring poly n=2 char=5\nx1 -> x1\nx2 -> x2 + 6*x1^2\n");
  REQUIRE(std::holds_alternative<PolyEndo>(p));
  CHECK(print_endo_file(p) == "ring poly n=2 char=5\nx1 -> x1\nx2 -> x1^2 + x2\n");
}

TEST_CASE("malformed endo files") {
  CHECK_THROWS_AS(parse_endo_file("ring weyl n=1 char=0\nx1 -> x1\n"), ParseError);
  CHECK_THROWS_AS(parse_endo_file("ring weyl n=1 char=0\nx1 -> x1\nx1 -> x1\nd1 -> d1\n"),
                  ParseError);
  CHECK_THROWS_AS(parse_endo_file("ring weyl n=1 char=0\nx1 -> x1\nd1 -> d1\nx2 -> x1\n"),
                  ParseError);
  CHECK_THROWS_AS(parse_endo_file("ring poly n=1 char=0\nx1 -> x1\nd1 -> 1\n"), ParseError);
  CHECK_THROWS_AS(parse_endo_file("ring lie n=1 char=0\n"), ParseError);
  CHECK_THROWS_AS(parse_endo_file("ring weyl n=1 char=4\nx1 -> x1\nd1 -> d1\n"), Error);
  CHECK_THROWS_AS(parse_endo_file("ring weyl n=1 char=0\nx1 -> x1^2\nd1 -> d1\n"),
                  RelationViolation);
}
