#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "weylforge/monomial.hpp"
#include "weylforge/scalar.hpp"

namespace weylforge {

/// Sparse multivariate polynomial in n commuting variables. Terms are stored
/// in descending graded-lex order with nonzero coefficients.
class Poly {
 public:
  Poly(std::size_t n, FieldCtx ctx);

  static Poly constant(std::size_t n, FieldCtx ctx, const Scalar& c);
  static Poly constant(std::size_t n, FieldCtx ctx, long c) {
    return constant(n, ctx, Scalar(ctx, c));
  }
  static Poly one(std::size_t n, FieldCtx ctx) { return constant(n, ctx, 1L); }
  /// The variable x_i (0-based).
  static Poly variable(std::size_t n, FieldCtx ctx, std::size_t i);
  static Poly monomial(std::size_t n, FieldCtx ctx, const Monomial& mono, const Scalar& c);
  static Poly from_terms(std::size_t n, FieldCtx ctx, std::vector<Term> terms);

  std::size_t n() const { return n_; }
  FieldCtx ctx() const { return ctx_; }
  std::span<const Term> terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Only for constants; zero for the zero polynomial.
  Scalar constant_value() const;
  Scalar coefficient(const Monomial& mono) const;

  /// Total degree; throws UndefinedDegree on zero.
  unsigned degree() const;
  /// Highest exponent of variable i (0 for the zero polynomial).
  unsigned degree_in(std::size_t i) const;
  bool involves(std::size_t i) const { return degree_in(i) > 0; }

  Poly& operator+=(const Poly& other);
  Poly& operator-=(const Poly& other);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  Poly operator-() const;
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(const Scalar& c, const Poly& a);

  Poly pow(unsigned e) const;
  /// Formal partial derivative in variable i.
  Poly derivative(std::size_t i) const;
  /// f(g_1, ..., g_n); all g share one ring, which is the ring of the result.
  Poly substitute(std::span<const Poly> values) const;
  /// Same polynomial viewed in a ring with `new_n` variables, variable i
  /// sent to slot placement[i].
  Poly embed(std::size_t new_n, std::span<const std::size_t> placement) const;

  friend bool operator==(const Poly& a, const Poly& b);
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

 private:
  void check_compatible(const Poly& other) const;

  std::size_t n_;
  FieldCtx ctx_;
  std::vector<Term> terms_;
};

Poly add(const Poly& a, const Poly& b);
Poly mul(const Poly& a, const Poly& b);
Poly scale(const Scalar& c, const Poly& a);
Poly substitute(const Poly& f, std::span<const Poly> values);

/// Polynomial-ring endomorphism x_i -> f_i.
class PolyEndo {
 public:
  explicit PolyEndo(std::vector<Poly> images);

  static PolyEndo identity(std::size_t n, FieldCtx ctx);

  std::size_t n() const { return img_.size(); }
  FieldCtx ctx() const { return img_.front().ctx(); }
  const std::vector<Poly>& images() const { return img_; }
  bool is_identity() const;

  friend bool operator==(const PolyEndo& a, const PolyEndo& b) { return a.img_ == b.img_; }

 private:
  std::vector<Poly> img_;
};

/// phi(f) = f(f_1, ..., f_n).
Poly apply_endo(const PolyEndo& phi, const Poly& f);
/// phi o psi: x_i -> phi(psi(x_i)).
PolyEndo compose(const PolyEndo& phi, const PolyEndo& psi);
/// max total degree of the images.
unsigned poly_endo_degree(const PolyEndo& phi);

/// Entry (i, j) holds d f_i / d x_j.
std::vector<std::vector<Poly>> jacobian_matrix(const PolyEndo& phi);
Poly jacobian_det(const PolyEndo& phi);
/// Unit Jacobian determinant: the unramifiedness criterion.
bool is_etale_candidate(const PolyEndo& phi);

/// Determinant by cofactor expansion over any commutative polynomial ring.
Poly determinant(const std::vector<std::vector<Poly>>& matrix);

Poly reduce_mod_p(const Poly& f, std::uint32_t p);
PolyEndo reduce_endo_mod_p(const PolyEndo& phi, std::uint32_t p);

}  // namespace weylforge
