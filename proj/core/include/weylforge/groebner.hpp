#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "weylforge/poly.hpp"

namespace weylforge {

/// Monomial order over a fixed variable count. `priority` lists variables from
/// most to least significant; for block elimination the first `split`
/// entries of `priority` form the eliminated block, and each block is compared
/// by degree reverse lexicographic order.
class TermOrder {
 public:
  enum class Kind { Lex, Grevlex, BlockElimination };

  static TermOrder lex(std::size_t n);
  static TermOrder lex(std::vector<std::size_t> priority);
  static TermOrder grevlex(std::size_t n);
  static TermOrder grevlex(std::vector<std::size_t> priority);
  static TermOrder elimination(std::size_t n, std::size_t split);
  static TermOrder elimination(std::vector<std::size_t> priority, std::size_t split);

  Kind kind() const { return kind_; }
  std::size_t nvars() const { return priority_.size(); }
  const std::vector<std::size_t>& priority() const { return priority_; }
  std::size_t split() const { return split_; }

  /// Sign of a - b under the order.
  int compare(const Monomial& a, const Monomial& b) const;
  bool greater(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }

  /// `lex`, `grevlex` or `elim:<split>`, with `[p0,p1,...]` appended (1-based
  /// variable numbers) when the priority is not the identity.
  std::string to_string() const;

 private:
  TermOrder(Kind kind, std::vector<std::size_t> priority, std::size_t split);
  int grevlex_range(const Monomial& a, const Monomial& b, std::size_t first,
                    std::size_t last) const;

  Kind kind_;
  std::vector<std::size_t> priority_;
  std::size_t split_;
};

/// Resource limits for Buchberger runs.
struct GbBudget {
  /// Total S-pairs examined (pairs skipped by a criterion included).
  std::size_t max_pairs = 200'000;
  /// Largest total degree of any intermediate polynomial; defaults to the
  /// Dube bound of the instance.
  std::optional<unsigned> max_degree;

  /// Reads WEYLFORGE_PAIR_BUDGET when set.
  static GbBudget from_env();
};

class GroebnerBasis {
 public:
  GroebnerBasis(std::vector<Poly> generators, TermOrder order, unsigned input_degree,
                std::size_t pairs_examined);

  const std::vector<Poly>& generators() const { return generators_; }
  const TermOrder& order() const { return order_; }
  std::size_t nvars() const { return order_.nvars(); }
  unsigned input_degree() const { return input_degree_; }
  unsigned max_degree() const { return max_degree_; }
  std::size_t pairs_examined() const { return pairs_examined_; }

  friend bool operator==(const GroebnerBasis& a, const GroebnerBasis& b) {
    return a.generators_ == b.generators_;
  }

 private:
  std::vector<Poly> generators_;
  TermOrder order_;
  unsigned input_degree_;
  unsigned max_degree_;
  std::size_t pairs_examined_;
};

/// Leading monomial of a nonzero polynomial under `order`.
Monomial leading_monomial(const Poly& f, const TermOrder& order);
Scalar leading_coefficient(const Poly& f, const TermOrder& order);

/// Full remainder of multivariate division; divisors are tried in list order.
Poly normal_form(const Poly& f, std::span<const Poly> divisors, const TermOrder& order);

/// S-polynomial of two nonzero polynomials.
Poly s_polynomial(const Poly& f, const Poly& g, const TermOrder& order);

/// Reduced Groebner basis of (F), sorted by descending leading monomial.
/// Every result passes gb_degree_audit before it is returned. Throws
/// BudgetExceeded when the budget is exhausted.
GroebnerBasis buchberger(std::span<const Poly> generators, const TermOrder& order,
                         const GbBudget& budget = GbBudget::from_env());

/// 2 (d^2/2 + d)^(2^(n-1)), rounded down.
mpz_class dube_bound(std::size_t nvars, unsigned input_degree);

struct DubeAudit {
  std::size_t nvars;
  unsigned input_degree;
  unsigned max_degree;
  mpz_class bound;
  bool holds;

  /// Exact integer when short, otherwise the closed form.
  std::string bound_text() const;
};

/// Checks max_degree against the Dube bound; throws InternalError on a
/// violation and records every audit in the process-wide log.
DubeAudit gb_degree_audit(const GroebnerBasis& basis);

struct GbAuditLog {
  std::uint64_t audited = 0;
  std::uint64_t violations = 0;
};
GbAuditLog gb_audit_log();

/// Outcome of eliminating x from (t - f, t_1 - f_1, ..., t_m - f_m) under lex
/// x_1 > ... > x_n > t > t_1 > ... > t_m.
struct EliminationResult {
  GroebnerBasis basis;
  /// Generator of smallest leading term in K[t, t_1..t_m] \ K[t_1..t_m], as a
  /// polynomial in 1+m variables (slot 0 is t).
  std::optional<Poly> minimal;
  /// Generators lying in K[t_1..t_m], i.e. algebraic relations among the f_i.
  std::vector<Poly> relations;
};

EliminationResult eliminate_for_minimal_polynomial(const Poly& f, std::span<const Poly> basis,
                                                   const GbBudget& budget = GbBudget::from_env());

/// Minimal polynomial of f over K(f_1..f_m) in variables t, t_1..t_m; nullopt
/// when f is transcendental.
std::optional<Poly> minimal_polynomial(const Poly& f, std::span<const Poly> basis,
                                       const GbBudget& budget = GbBudget::from_env());

/// Monic relation F_i(x_i) = 0 over the image A = phi(B).
struct IntegralityRelation {
  std::size_t variable;
  /// Minimal polynomial in t, t_1..t_n (slot 0 is t), monic in t.
  Poly minimal;
  unsigned degree;
  /// preimages[k] = b_k with coefficient of T^k equal to phi(b_k), k < degree.
  std::vector<Poly> preimages;
  /// coefficients[k] = phi(b_k), living in B.
  std::vector<Poly> coefficients;
  unsigned preimage_degree;
};

struct IntegralityCertificate {
  std::vector<IntegralityRelation> relations;
  unsigned endo_degree;
  /// deg(phi)^n.
  mpz_class degree_bound;
  /// 2^n deg(phi)^(n-1) (n + deg(phi)^n).
  mpz_class coefficient_bound;
  bool degree_audit_holds;
  bool coefficient_audit_holds;
};

struct IntegralityResult {
  bool integral = false;
  std::optional<IntegralityCertificate> certificate;
  std::string reason;
};

IntegralityResult integrality_test(const PolyEndo& phi,
                                   const GbBudget& budget = GbBudget::from_env());

/// Inverse via the lex basis of (t_i - f_i); nullopt when phi is not an
/// automorphism. The inverse degree is checked against deg(phi)^(n-1).
std::optional<PolyEndo> invert_poly_endo(const PolyEndo& phi,
                                         const GbBudget& budget = GbBudget::from_env());

/// Integer power in arbitrary precision.
mpz_class mpz_pow(unsigned base, unsigned long exponent);

}  // namespace weylforge
