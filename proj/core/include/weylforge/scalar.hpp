#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <variant>

#include <gmpxx.h>

namespace weylforge {

/// Coefficient field: the rationals or a prime field GF(p) with p < 2^31.
class Scalar;

class FieldCtx {
 public:
  enum class Kind { Rationals, PrimeField };

  constexpr FieldCtx() = default;

  static constexpr FieldCtx rationals() { return FieldCtx{}; }
  /// Throws InvalidArgument unless p is a prime below 2^31.
  static FieldCtx prime_field(std::uint64_t p);
  /// 0 selects the rationals, anything else must be a prime.
  static FieldCtx from_characteristic(std::uint64_t characteristic);

  constexpr Kind kind() const { return p_ == 0 ? Kind::Rationals : Kind::PrimeField; }
  constexpr bool is_rationals() const { return p_ == 0; }
  constexpr bool is_prime_field() const { return p_ != 0; }
  /// 0 for the rationals.
  constexpr std::uint32_t characteristic() const { return p_; }

  std::string name() const;

  friend constexpr bool operator==(FieldCtx a, FieldCtx b) { return a.p_ == b.p_; }

 private:
  friend class Scalar;
  explicit constexpr FieldCtx(std::uint32_t p) : p_(p) {}
  std::uint32_t p_ = 0;
};

bool is_prime(std::uint64_t n);

/// An exact field element. Rationals are kept reduced with positive
/// denominator; residues are kept canonical in [0, p).
class Scalar {
 public:
  Scalar() : Scalar(FieldCtx::rationals(), 0) {}
  Scalar(FieldCtx ctx, long value);
  Scalar(FieldCtx ctx, const mpz_class& value);
  /// Over GF(p) the value is reduced; throws BadPrime when p divides the
  /// denominator.
  Scalar(FieldCtx ctx, const mpq_class& value);

  static Scalar zero(FieldCtx ctx) { return Scalar(ctx, 0L); }
  static Scalar one(FieldCtx ctx) { return Scalar(ctx, 1L); }

  FieldCtx ctx() const;
  bool is_zero() const;
  bool is_one() const;

  /// Only valid over the rationals.
  const mpq_class& rational() const;
  /// Only valid over a prime field.
  std::uint32_t residue() const;

  Scalar inv() const;

  Scalar& operator+=(const Scalar& other);
  Scalar& operator-=(const Scalar& other);
  Scalar& operator*=(const Scalar& other);
  Scalar& operator/=(const Scalar& other);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  Scalar operator-() const;

  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  /// `a/b` or `a`; residues print as their canonical representative.
  std::string to_string() const;

  std::size_t hash() const;

 private:
  void check_same(const Scalar& other) const;

  std::uint32_t p_ = 0;
  std::variant<mpq_class, std::uint32_t> value_;
};

/// Scalar inverse; throws DivisionByZero for 0.
inline Scalar scalar_inv(const Scalar& a) { return a.inv(); }

/// Ring homomorphism Z_(p) -> GF(p). Throws BadPrime when p divides the
/// denominator and WrongCharacteristic if `a` is not rational.
Scalar reduce_mod_p(const Scalar& a, std::uint32_t p);

}  // namespace weylforge
