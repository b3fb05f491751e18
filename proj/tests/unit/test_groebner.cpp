#include <doctest.h>

#include <algorithm>

#include "oracles.hpp"
#include "weylforge/error.hpp"
#include "weylforge/groebner.hpp"
#include "weylforge/text.hpp"

using namespace weylforge;

namespace {
const FieldCtx QQ = FieldCtx::rationals();
Poly P(const char* s, std::size_t n, FieldCtx ctx = QQ) {
  return parse_poly(s, RingDescriptor::poly(n, ctx));
}
Poly T(const char* s, std::size_t m, FieldCtx ctx = QQ) {
  std::vector<std::string> names{"t"};
  for (std::size_t i = 1; i <= m; ++i) names.push_back("t" + std::to_string(i));
  return parse_poly(s, RingDescriptor::named(names, ctx));
}
PolyEndo E(std::vector<const char*> imgs, FieldCtx ctx = QQ) {
  std::vector<Poly> out;
  for (auto s : imgs) out.push_back(P(s, imgs.size(), ctx));
  return PolyEndo(out);
}

bool is_reduced(const GroebnerBasis& gb) {
  const auto& g = gb.generators();
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!leading_coefficient(g[i], gb.order()).is_one()) return false;
    for (std::size_t j = 0; j < g.size(); ++j) {
      if (i == j) continue;
      const Monomial lj = leading_monomial(g[j], gb.order());
      for (const auto& [m, c] : g[i].terms()) {
        if (lj.divides(m)) return false;
      }
    }
  }
  return true;
}

bool contains(const GroebnerBasis& gb, const Poly& f) {
  return std::find(gb.generators().begin(), gb.generators().end(), f) != gb.generators().end();
}
}  // namespace

TEST_CASE("normal_form examples") {
  const TermOrder lex = TermOrder::lex(2);
  CHECK(normal_form(P("x1^2", 2), std::vector{P("x1", 2)}, lex).is_zero());
  CHECK(normal_form(P("x1^2 + x2", 2), std::vector{P("x1", 2)}, lex) == P("x2", 2));
  CHECK(normal_form(P("3*x1*x2 - 7", 2), std::vector{P("1", 2)}, TermOrder::grevlex(2)).is_zero());
  const std::vector<Poly> g{P("x1*x2 - 1", 2), P("x2^2 - 1", 2)};
  const Poly f = P("x1^2*x2 + x1*x2^2 + x2^2", 2);
  CHECK(normal_form(f, g, lex) == oracle::divide_remainder(f, g, lex));
}

TEST_CASE("buchberger examples") {
  const TermOrder lex = TermOrder::lex(2);
  const std::vector<Poly> f{P("x1^2", 2), P("x1*x2", 2)};
  const GroebnerBasis gb = buchberger(f, lex);
  CHECK(gb.generators() == std::vector{P("x1^2", 2), P("x1*x2", 2)});
  CHECK(oracle::is_groebner_basis_of(gb.generators(), f, lex));

  const GroebnerBasis single = buchberger(std::vector{P("x1 - 1", 1)}, TermOrder::grevlex(1));
  CHECK(single.generators() == std::vector{P("x1 - 1", 1)});

  const std::vector<Poly> cubic{P("x2 - x1^2", 3), P("x3 - x1^3", 3)};
  const GroebnerBasis tc = buchberger(cubic, TermOrder::lex(3));
  CHECK(contains(tc, P("x2^3 - x3^2", 3)));
  CHECK(oracle::is_groebner_basis_of(tc.generators(), cubic, TermOrder::lex(3)));
  CHECK(is_reduced(tc));
  const std::vector<Poly> curve{P("x1", 1), P("x1^2", 1), P("x1^3", 1)};
  for (const auto& g : tc.generators()) CHECK(substitute(g, curve).is_zero());
}

TEST_CASE("dube_bound examples") {
  CHECK(dube_bound(1, 2) == 8);
  CHECK(dube_bound(2, 2) == 32);
  CHECK(dube_bound(3, 2) == 512);
  CHECK(dube_bound(1, 1) == 3);
  const GroebnerBasis gb = buchberger(std::vector{P("x1 - 1", 1)}, TermOrder::lex(1));
  const DubeAudit a = gb_degree_audit(gb);
  CHECK(a.holds);
  CHECK(a.max_degree == 1);
  CHECK(a.bound == 3);
}

TEST_CASE("minimal_polynomial examples") {
  CHECK(minimal_polynomial(P("x1", 1), std::vector{P("x1", 1)}) == T("t - t1", 1));
  CHECK(minimal_polynomial(P("x1", 1), std::vector{P("x1^2", 1)}) == T("t^2 - t1", 1));
  CHECK(minimal_polynomial(P("x1", 2), std::vector{P("x1 + x2", 2), P("x1*x2", 2)}) ==
        T("t^2 - t1*t + t2", 2));
  CHECK_FALSE(minimal_polynomial(P("x2", 2), std::vector{P("x1", 2)}).has_value());
}

TEST_CASE("integrality_test examples") {
  const IntegralityResult id = integrality_test(PolyEndo::identity(2, QQ));
  REQUIRE(id.integral);
  CHECK(id.certificate->relations[0].minimal == T("t - t1", 2));
  CHECK(id.certificate->relations[1].minimal == T("t - t2", 2));

  const IntegralityResult sq = integrality_test(E({"x1^2", "x2"}));
  REQUIRE(sq.integral);
  CHECK(sq.certificate->relations[0].minimal == T("t^2 - t1", 2));
  CHECK(sq.certificate->relations[1].minimal == T("t - t2", 2));
  CHECK(sq.certificate->degree_bound == 4);
  CHECK(sq.certificate->coefficient_bound == 48);
  CHECK(sq.certificate->degree_audit_holds);
  CHECK(sq.certificate->coefficient_audit_holds);

  const IntegralityResult xy = integrality_test(E({"x1", "x1*x2"}));
  CHECK_FALSE(xy.integral);
  CHECK_FALSE(xy.reason.empty());

  const IntegralityResult dependent = integrality_test(E({"x1", "x1"}));
  CHECK_FALSE(dependent.integral);
}

TEST_CASE("invert_poly_endo examples") {
  CHECK(invert_poly_endo(E({"x1", "x2 + x1^2"})) == E({"x1", "x2 - x1^2"}));
  CHECK(invert_poly_endo(PolyEndo::identity(3, QQ)) == PolyEndo::identity(3, QQ));
  CHECK_FALSE(invert_poly_endo(E({"x1^2", "x2"})).has_value());
  CHECK(invert_poly_endo(E({"x1 + x2^3", "x2"})) == E({"x1 - x2^3", "x2"}));
}

TEST_CASE("resource budget") {
  const std::vector<Poly> cubic{P("x2 - x1^2", 3), P("x3 - x1^3", 3)};
  GbBudget tiny;
  tiny.max_pairs = 0;
  CHECK_THROWS_AS(buchberger(cubic, TermOrder::lex(3), tiny), BudgetExceeded);
  GbBudget shallow;
  shallow.max_degree = 2;
  CHECK_THROWS_AS(buchberger(cubic, TermOrder::lex(3), shallow), BudgetExceeded);
}

TEST_CASE("term orders are monomial orders") {
  oracle::Random rng(51);
  for (std::size_t n = 1; n <= 4; ++n) {
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = n - 1 - i;
    const std::vector<TermOrder> orders = {TermOrder::lex(n), TermOrder::grevlex(n),
                                           TermOrder::lex(perm), TermOrder::grevlex(perm),
                                           TermOrder::elimination(n, n / 2)};
    for (const auto& o : orders) {
      const Monomial one(n);
      for (int k = 0; k < 200; ++k) {
        const Monomial a = rng.monomial(n, 5), b = rng.monomial(n, 5), c = rng.monomial(n, 5);
        CHECK(o.compare(a, b) == -o.compare(b, a));
        CHECK((o.compare(a, b) == 0) == (a == b));
        CHECK(o.compare(a, b) == o.compare(a * c, b * c));
        if (o.compare(a, b) > 0 && o.compare(b, c) > 0) CHECK(o.compare(a, c) > 0);
        if (a != one) CHECK(o.compare(a, one) > 0);
      }
    }
  }
}

TEST_CASE("random bases satisfy the Buchberger criterion") {
  oracle::Random rng(52);
  for (const FieldCtx ctx : {QQ, FieldCtx::prime_field(7)}) {
    for (int k = 0; k < 25; ++k) {
      const std::size_t n = 2 + rng.below(2);
      std::vector<Poly> f;
      for (int j = 0; j < 2; ++j) f.push_back(rng.poly(n, ctx, 2, 3));
      if (std::all_of(f.begin(), f.end(), [](const Poly& g) { return g.is_zero(); })) continue;
      for (const TermOrder& order : {TermOrder::grevlex(n), TermOrder::lex(n)}) {
        const GroebnerBasis gb = buchberger(f, order);
        CHECK(oracle::is_groebner_basis_of(gb.generators(), f, order));
        CHECK(is_reduced(gb));
        std::vector<Poly> reversed(f.rbegin(), f.rend());
        CHECK(buchberger(reversed, order) == gb);
        CHECK(gb_degree_audit(gb).holds);
      }
    }
  }
}

TEST_CASE("minimal polynomials annihilate") {
  oracle::Random rng(53);
  const FieldCtx f5 = FieldCtx::prime_field(5);
  for (int k = 0; k < 30; ++k) {
    const Poly f = rng.poly(1, f5, 2, 2);
    std::vector<Poly> basis{rng.poly(1, f5, 3, 3)};
    if (basis[0].is_constant()) continue;
    const auto mp = minimal_polynomial(f, basis);
    REQUIRE(mp.has_value());
    const std::vector<Poly> at{f, basis[0]};
    CHECK(substitute(*mp, at).is_zero());
    CHECK(mp->degree_in(0) <= basis[0].degree());
  }
}

namespace {
PolyEndo random_triangular(oracle::Random& rng, std::size_t n, FieldCtx ctx) {
  std::vector<Poly> imgs;
  for (std::size_t i = 0; i < n; ++i) {
    const unsigned e = 1 + static_cast<unsigned>(rng.below(2));
    Poly lower(n, ctx);
    for (std::size_t j = 0; j < i; ++j) {
      lower += Poly::variable(n, ctx, j).pow(static_cast<unsigned>(rng.below(3)));
    }
    imgs.push_back(Poly::variable(n, ctx, i).pow(e) + lower);
  }
  return PolyEndo(imgs);
}
}  // namespace

TEST_CASE("integrality certificates hold identically") {
  oracle::Random rng(54);
  for (int k = 0; k < 15; ++k) {
    const std::size_t n = 1 + rng.below(2);
    const PolyEndo phi = random_triangular(rng, n, QQ);
    const IntegralityResult r = integrality_test(phi);
    REQUIRE(r.integral);
    const auto& cert = *r.certificate;
    CHECK(cert.degree_audit_holds);
    CHECK(cert.coefficient_audit_holds);
    for (const auto& rel : cert.relations) {
      CHECK(rel.degree <= cert.degree_bound);
      CHECK(rel.preimage_degree <= cert.coefficient_bound);
      std::vector<Poly> at{Poly::variable(n, QQ, rel.variable)};
      at.insert(at.end(), phi.images().begin(), phi.images().end());
      CHECK(substitute(rel.minimal, at).is_zero());
      Poly sum = Poly::variable(n, QQ, rel.variable).pow(rel.degree);
      for (unsigned j = 0; j < rel.degree; ++j) {
        CHECK(rel.coefficients[j] == apply_endo(phi, rel.preimages[j]));
        sum += rel.coefficients[j] * Poly::variable(n, QQ, rel.variable).pow(j);
      }
      CHECK(sum.is_zero());
    }
  }
}

TEST_CASE("every basis computed in this binary passed the degree audit") {
  const GbAuditLog log = gb_audit_log();
  CHECK(log.audited > 0);
  CHECK(log.violations == 0);
}
