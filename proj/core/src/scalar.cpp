#include "weylforge/scalar.hpp"

#include "weylforge/error.hpp"

namespace weylforge {

namespace {

std::uint32_t mod_residue(const mpz_class& value, std::uint32_t p) {
  mpz_class r = value % p;
  if (r < 0) r += p;
  return static_cast<std::uint32_t>(r.get_ui());
}

std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t p) {
  // Extended Euclid on (a, p); a != 0 and p prime.
  std::int64_t r0 = p, r1 = a, s0 = 0, s1 = 1;
  while (r1 != 0) {
    std::int64_t q = r0 / r1;
    std::int64_t t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = s0 - q * s1;
    s0 = s1;
    s1 = t;
  }
  std::int64_t inv = s0 % static_cast<std::int64_t>(p);
  if (inv < 0) inv += p;
  return static_cast<std::uint32_t>(inv);
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

FieldCtx FieldCtx::prime_field(std::uint64_t p) {
  if (p >= (std::uint64_t{1} << 31)) {
    throw InvalidArgument("prime modulus must be below 2^31: " + std::to_string(p));
  }
  if (!is_prime(p)) throw InvalidArgument("modulus is not prime: " + std::to_string(p));
  return FieldCtx(static_cast<std::uint32_t>(p));
}

FieldCtx FieldCtx::from_characteristic(std::uint64_t characteristic) {
  return characteristic == 0 ? rationals() : prime_field(characteristic);
}

std::string FieldCtx::name() const {
  return is_rationals() ? std::string("QQ") : "GF(" + std::to_string(p_) + ")";
}

Scalar::Scalar(FieldCtx ctx, long value) : p_(ctx.characteristic()) {
  if (p_ == 0) {
    value_ = mpq_class(value);
  } else {
    std::int64_t r = static_cast<std::int64_t>(value) % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    value_ = static_cast<std::uint32_t>(r);
  }
}

Scalar::Scalar(FieldCtx ctx, const mpz_class& value) : p_(ctx.characteristic()) {
  if (p_ == 0) {
    value_ = mpq_class(value);
  } else {
    value_ = mod_residue(value, p_);
  }
}

Scalar::Scalar(FieldCtx ctx, const mpq_class& value) : p_(ctx.characteristic()) {
  mpq_class q = value;
  q.canonicalize();
  if (p_ == 0) {
    value_ = std::move(q);
    return;
  }
  const std::uint32_t den = mod_residue(q.get_den(), p_);
  if (den == 0) {
    throw BadPrime("prime " + std::to_string(p_) + " divides the denominator of " +
                   q.get_str());
  }
  const std::uint64_t num = mod_residue(q.get_num(), p_);
  value_ = static_cast<std::uint32_t>(num * inverse_mod(den, p_) % p_);
}

FieldCtx Scalar::ctx() const { return FieldCtx(p_); }

bool Scalar::is_zero() const {
  if (p_ == 0) return std::get<mpq_class>(value_) == 0;
  return std::get<std::uint32_t>(value_) == 0;
}

bool Scalar::is_one() const {
  if (p_ == 0) return std::get<mpq_class>(value_) == 1;
  return std::get<std::uint32_t>(value_) == 1;
}

const mpq_class& Scalar::rational() const {
  if (p_ != 0) throw WrongCharacteristic("scalar is not rational");
  return std::get<mpq_class>(value_);
}

std::uint32_t Scalar::residue() const {
  if (p_ == 0) throw WrongCharacteristic("scalar is not a residue");
  return std::get<std::uint32_t>(value_);
}

void Scalar::check_same(const Scalar& other) const {
  if (p_ != other.p_) {
    throw Mismatch("scalar fields differ: " + ctx().name() + " vs " + other.ctx().name());
  }
}

Scalar Scalar::inv() const {
  if (is_zero()) throw DivisionByZero();
  Scalar out = *this;
  if (p_ == 0) {
    out.value_ = mpq_class(1) / std::get<mpq_class>(value_);
  } else {
    out.value_ = inverse_mod(std::get<std::uint32_t>(value_), p_);
  }
  return out;
}

Scalar& Scalar::operator+=(const Scalar& other) {
  check_same(other);
  if (p_ == 0) {
    std::get<mpq_class>(value_) += std::get<mpq_class>(other.value_);
  } else {
    std::uint64_t s = std::uint64_t{std::get<std::uint32_t>(value_)} +
                      std::get<std::uint32_t>(other.value_);
    if (s >= p_) s -= p_;
    value_ = static_cast<std::uint32_t>(s);
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& other) {
  check_same(other);
  if (p_ == 0) {
    std::get<mpq_class>(value_) -= std::get<mpq_class>(other.value_);
  } else {
    std::uint64_t s = std::uint64_t{std::get<std::uint32_t>(value_)} + p_ -
                      std::get<std::uint32_t>(other.value_);
    if (s >= p_) s -= p_;
    value_ = static_cast<std::uint32_t>(s);
  }
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& other) {
  check_same(other);
  if (p_ == 0) {
    std::get<mpq_class>(value_) *= std::get<mpq_class>(other.value_);
  } else {
    value_ = static_cast<std::uint32_t>(std::uint64_t{std::get<std::uint32_t>(value_)} *
                                        std::get<std::uint32_t>(other.value_) % p_);
  }
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& other) {
  check_same(other);
  return *this *= other.inv();
}

Scalar Scalar::operator-() const {
  Scalar out = *this;
  if (p_ == 0) {
    out.value_ = -std::get<mpq_class>(value_);
  } else {
    const std::uint32_t r = std::get<std::uint32_t>(value_);
    out.value_ = r == 0 ? 0u : p_ - r;
  }
  return out;
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.p_ != b.p_) return false;
  if (a.p_ == 0) return std::get<mpq_class>(a.value_) == std::get<mpq_class>(b.value_);
  return std::get<std::uint32_t>(a.value_) == std::get<std::uint32_t>(b.value_);
}

std::string Scalar::to_string() const {
  if (p_ == 0) return std::get<mpq_class>(value_).get_str();
  return std::to_string(std::get<std::uint32_t>(value_));
}

std::size_t Scalar::hash() const {
  if (p_ != 0) return std::hash<std::uint32_t>{}(std::get<std::uint32_t>(value_));
  return std::hash<std::string>{}(to_string());
}

Scalar reduce_mod_p(const Scalar& a, std::uint32_t p) {
  if (!a.ctx().is_rationals()) {
    throw WrongCharacteristic("reduce_mod_p expects a rational scalar");
  }
  return Scalar(FieldCtx::prime_field(p), a.rational());
}

}  // namespace weylforge
