#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "weylforge/poly.hpp"
#include "weylforge/weyl.hpp"

namespace weylforge {

/// Element of the center C = k[x_i^p, d_i^p] of A_n(GF(p)), written as a
/// commutative polynomial in 2n variables X_1..X_n, Y_1..Y_n (slot i is X_i,
/// slot n+i is Y_i), X_i standing for x_i^p and Y_i for d_i^p.
using CenterElement = Poly;

/// Whether every exponent of every term is divisible by p. Throws
/// WrongCharacteristic over the rationals.
bool center_test(const WeylElement& a);

/// Commutator route: [a, x_i] = 0 and [a, d_i] = 0 for all i.
bool commutes_with_generators(const WeylElement& a);

/// Divides every exponent by p. Throws NotCentral.
CenterElement center_extract(const WeylElement& a);

/// X_i -> x_i^p, Y_i -> d_i^p.
WeylElement inflate(const CenterElement& c);

/// phi restricted to the center: X_i -> phi(x_i)^p, Y_i -> phi(d_i)^p, read
/// back as a polynomial map in 2n variables.
PolyEndo restrict_center(const WeylEndo& phi);

/// Coefficients c_ab in C with a = sum c_ab Q^a P^b, 0 <= a_i, b_i <= p-1,
/// where Q = phi(x), P = phi(d). Slots are keyed by a 2n-slot monomial
/// (alpha, beta) and listed in descending graded-lex order.
struct QPExpansion {
  std::vector<std::pair<Monomial, CenterElement>> coefficients;

  CenterElement coefficient(const Monomial& slot) const;
};

/// Largest p^(2n) accepted by expand_qp_basis.
inline constexpr std::uint64_t kMaxQPSlots = 1'000'000;

/// Throws BudgetExceeded when p^(2n) exceeds kMaxQPSlots and InternalError if
/// peeling or recombination fails.
QPExpansion expand_qp_basis(const WeylElement& a, const WeylEndo& phi);

/// sum c_ab Q^a P^b.
WeylElement recombine_qp(const QPExpansion& expansion, const WeylEndo& phi);

/// Whether m commutes with phi(x_i) and phi(d_i) for every i.
bool centralizer_test(const WeylElement& m, const WeylEndo& phi);

}  // namespace weylforge
