#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "weylforge/monomial.hpp"
#include "weylforge/scalar.hpp"

namespace weylforge {

/// An element of the Weyl algebra A_n over a field, stored as a sparse sum of
/// standard monomials x^u d^v. Slot i of a monomial holds u_i, slot n+i holds
/// v_i. Terms are kept in descending graded-lex order with nonzero
/// coefficients, so equality of elements is equality of term lists.
class WeylElement {
 public:
  WeylElement(std::size_t n, FieldCtx ctx);

  static WeylElement constant(std::size_t n, FieldCtx ctx, const Scalar& c);
  static WeylElement constant(std::size_t n, FieldCtx ctx, long c) {
    return constant(n, ctx, Scalar(ctx, c));
  }
  static WeylElement one(std::size_t n, FieldCtx ctx) { return constant(n, ctx, 1L); }
  /// The generator x_i (0-based).
  static WeylElement x(std::size_t n, FieldCtx ctx, std::size_t i);
  /// The generator d_i (0-based).
  static WeylElement d(std::size_t n, FieldCtx ctx, std::size_t i);
  /// c * x^u d^v; `mono` has 2n slots.
  static WeylElement monomial(std::size_t n, FieldCtx ctx, const Monomial& mono,
                              const Scalar& c);
  /// Builds the element from arbitrary (possibly repeated) standard terms.
  static WeylElement from_terms(std::size_t n, FieldCtx ctx, std::vector<Term> terms);

  std::size_t n() const { return n_; }
  FieldCtx ctx() const { return ctx_; }
  std::span<const Term> terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Scalar coefficient(const Monomial& mono) const;

  /// max |u|+|v|; throws UndefinedDegree on zero.
  unsigned degree() const;

  WeylElement& operator+=(const WeylElement& other);
  WeylElement& operator-=(const WeylElement& other);
  friend WeylElement operator+(WeylElement a, const WeylElement& b) { return a += b; }
  friend WeylElement operator-(WeylElement a, const WeylElement& b) { return a -= b; }
  WeylElement operator-() const;
  friend WeylElement operator*(const WeylElement& a, const WeylElement& b);
  friend WeylElement operator*(const Scalar& c, const WeylElement& a);

  /// Repeated squaring.
  WeylElement pow(unsigned e) const;

  friend bool operator==(const WeylElement& a, const WeylElement& b);
  friend bool operator!=(const WeylElement& a, const WeylElement& b) { return !(a == b); }

 private:
  void check_compatible(const WeylElement& other) const;

  std::size_t n_;
  FieldCtx ctx_;
  std::vector<Term> terms_;
};

/// Normal-form product using the per-variable commutation formula
/// d^b x^a = sum_k C(a,k) C(b,k) k! x^(a-k) d^(b-k).
WeylElement weyl_mul(const WeylElement& a, const WeylElement& b);
/// ab - ba.
WeylElement commutator(const WeylElement& a, const WeylElement& b);
unsigned weyl_degree(const WeylElement& a);

/// [Q_i,Q_j] = 0, [P_i,P_j] = 0, [P_i,Q_j] = delta_ij.
bool check_weyl_relations(std::span<const WeylElement> q, std::span<const WeylElement> p);

/// Endomorphism of A_n given by the images of x_1..x_n and d_1..d_n.
/// Construction validates the Weyl relations (RelationViolation).
class WeylEndo {
 public:
  WeylEndo(std::vector<WeylElement> ximg, std::vector<WeylElement> dimg);

  static WeylEndo identity(std::size_t n, FieldCtx ctx);

  std::size_t n() const { return ximg_.size(); }
  FieldCtx ctx() const { return ximg_.front().ctx(); }
  const std::vector<WeylElement>& ximg() const { return ximg_; }
  const std::vector<WeylElement>& dimg() const { return dimg_; }

  bool is_identity() const;

  friend bool operator==(const WeylEndo& a, const WeylEndo& b) {
    return a.ximg_ == b.ximg_ && a.dimg_ == b.dimg_;
  }

 private:
  std::vector<WeylElement> ximg_;
  std::vector<WeylElement> dimg_;
};

/// phi(a) = sum a_uv phi(x)^u phi(d)^v.
WeylElement apply_endo(const WeylEndo& phi, const WeylElement& a);
/// phi o psi: x_i -> phi(psi(x_i)).
WeylEndo compose_endo(const WeylEndo& phi, const WeylEndo& psi);
unsigned endo_degree(const WeylEndo& phi);

/// A_n over the rationals reduced coefficient-wise into GF(p).
WeylElement reduce_mod_p(const WeylElement& a, std::uint32_t p);
/// Re-validates the relations; throws BadPrime if p divides a denominator.
WeylEndo reduce_endo_mod_p(const WeylEndo& phi, std::uint32_t p);

}  // namespace weylforge
