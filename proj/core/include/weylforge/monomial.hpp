#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

#include "weylforge/scalar.hpp"

namespace weylforge {

/// Largest number of exponent slots a monomial can carry. A Weyl monomial of
/// A_n uses 2n slots (x exponents first, then d exponents).
inline constexpr std::size_t kMaxVariables = 16;

/// Current cap on the total degree of any monomial (default 10000). Products
/// exceeding it raise DegreeLimitExceeded.
unsigned degree_limit();
/// Values above 65535 are rejected with InvalidArgument.
void set_degree_limit(unsigned limit);

/// Fixed-length exponent vector.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t size);
  Monomial(std::initializer_list<unsigned> exponents);
  explicit Monomial(std::span<const unsigned> exponents);

  std::size_t size() const { return size_; }
  unsigned operator[](std::size_t i) const { return exps_[i]; }
  /// Bounds-checked against the degree limit.
  void set(std::size_t i, unsigned e);

  unsigned total_degree() const;
  /// Sum over the slots [first, last).
  unsigned partial_degree(std::size_t first, std::size_t last) const;
  bool is_one() const;

  /// Componentwise sum; throws DegreeLimitExceeded.
  Monomial operator*(const Monomial& other) const;
  bool divides(const Monomial& other) const;
  /// other / *this; requires divides(other).
  Monomial quotient_of(const Monomial& other) const;
  Monomial lcm(const Monomial& other) const;
  bool coprime(const Monomial& other) const;

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.size_ == b.size_ && a.exps_ == b.exps_;
  }
  friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }

  std::size_t hash() const;

 private:
  std::array<std::uint16_t, kMaxVariables> exps_{};
  std::uint8_t size_ = 0;
};

/// Graded lexicographic comparison: total degree first, then the first
/// differing slot. Used as the canonical storage and print order.
int grlex_compare(const Monomial& a, const Monomial& b);

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

using Term = std::pair<Monomial, Scalar>;

/// Sorts by descending graded-lex order, merges equal monomials and removes
/// zero coefficients.
void canonicalize_terms(std::vector<Term>& terms);

/// a + sign*b for canonical term lists.
std::vector<Term> merge_terms(const std::vector<Term>& a, const std::vector<Term>& b,
                              bool subtract);

}  // namespace weylforge
