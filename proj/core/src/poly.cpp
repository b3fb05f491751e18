#include "weylforge/poly.hpp"

#include <algorithm>
#include <bit>
#include <unordered_map>

#include "weylforge/error.hpp"

namespace weylforge {

Poly::Poly(std::size_t n, FieldCtx ctx) : n_(n), ctx_(ctx) {
  if (n > kMaxVariables) {
    throw InvalidArgument("polynomial rings support at most " + std::to_string(kMaxVariables) +
                          " variables");
  }
}

Poly Poly::constant(std::size_t n, FieldCtx ctx, const Scalar& c) {
  return monomial(n, ctx, Monomial(n), c);
}

Poly Poly::variable(std::size_t n, FieldCtx ctx, std::size_t i) {
  if (i >= n) throw InvalidArgument("variable index out of range");
  Monomial m(n);
  m.set(i, 1);
  return monomial(n, ctx, m, Scalar::one(ctx));
}

Poly Poly::monomial(std::size_t n, FieldCtx ctx, const Monomial& mono, const Scalar& c) {
  Poly out(n, ctx);
  if (mono.size() != n) throw Mismatch("monomial size does not match variable count");
  if (c.ctx() != ctx) throw Mismatch("coefficient field mismatch");
  if (!c.is_zero()) out.terms_.emplace_back(mono, c);
  return out;
}

Poly Poly::from_terms(std::size_t n, FieldCtx ctx, std::vector<Term> terms) {
  Poly out(n, ctx);
  for (const auto& [m, c] : terms) {
    if (m.size() != n) throw Mismatch("monomial size does not match variable count");
    if (c.ctx() != ctx) throw Mismatch("coefficient field mismatch");
  }
  canonicalize_terms(terms);
  out.terms_ = std::move(terms);
  return out;
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.front().first.is_one());
}

Scalar Poly::constant_value() const {
  if (!is_constant()) throw InvalidArgument("polynomial is not constant");
  return terms_.empty() ? Scalar::zero(ctx_) : terms_.front().second;
}

Scalar Poly::coefficient(const Monomial& mono) const {
  for (const auto& [m, c] : terms_) {
    if (m == mono) return c;
  }
  return Scalar::zero(ctx_);
}

unsigned Poly::degree() const {
  if (terms_.empty()) throw UndefinedDegree();
  return terms_.front().first.total_degree();
}

unsigned Poly::degree_in(std::size_t i) const {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max(d, t.first[i]);
  return d;
}

void Poly::check_compatible(const Poly& other) const {
  if (n_ != other.n_) {
    throw Mismatch("polynomial ring mismatch: " + std::to_string(n_) + " vs " +
                   std::to_string(other.n_) + " variables");
  }
  if (ctx_ != other.ctx_) {
    throw Mismatch("coefficient field mismatch: " + ctx_.name() + " vs " + other.ctx_.name());
  }
}

Poly& Poly::operator+=(const Poly& other) {
  check_compatible(other);
  terms_ = merge_terms(terms_, other.terms_, false);
  return *this;
}

Poly& Poly::operator-=(const Poly& other) {
  check_compatible(other);
  terms_ = merge_terms(terms_, other.terms_, true);
  return *this;
}

Poly Poly::operator-() const {
  Poly out = *this;
  for (auto& t : out.terms_) t.second = -t.second;
  return out;
}

Poly operator*(const Scalar& c, const Poly& a) {
  if (c.ctx() != a.ctx_) throw Mismatch("coefficient field mismatch");
  Poly out(a.n_, a.ctx_);
  if (c.is_zero()) return out;
  out.terms_ = a.terms_;
  for (auto& t : out.terms_) t.second *= c;
  return out;
}

Poly operator*(const Poly& a, const Poly& b) {
  a.check_compatible(b);
  Poly out(a.n_, a.ctx_);
  if (a.is_zero() || b.is_zero()) return out;
  if (a.is_constant()) return a.terms_.front().second * b;
  if (b.is_constant()) return b.terms_.front().second * a;
  std::unordered_map<Monomial, Scalar, MonomialHash> acc;
  acc.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      Scalar c = ca * cb;
      auto [it, inserted] = acc.try_emplace(ma * mb, c);
      if (!inserted) it->second += c;
    }
  }
  out.terms_.reserve(acc.size());
  for (auto& [m, c] : acc) {
    if (!c.is_zero()) out.terms_.emplace_back(m, std::move(c));
  }
  canonicalize_terms(out.terms_);
  return out;
}

Poly Poly::pow(unsigned e) const {
  Poly result = one(n_, ctx_);
  Poly base = *this;
  while (e > 0) {
    if (e & 1u) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

Poly Poly::derivative(std::size_t i) const {
  if (i >= n_) throw InvalidArgument("variable index out of range");
  std::vector<Term> terms;
  for (const auto& [m, c] : terms_) {
    if (m[i] == 0) continue;
    Monomial dm = m;
    dm.set(i, m[i] - 1);
    // The exponent is reduced in the field, so d/dx x^p = 0 in GF(p).
    Scalar k = c * Scalar(ctx_, static_cast<long>(m[i]));
    if (!k.is_zero()) terms.emplace_back(dm, std::move(k));
  }
  return from_terms(n_, ctx_, std::move(terms));
}

Poly Poly::substitute(std::span<const Poly> values) const {
  if (values.size() != n_) {
    throw Mismatch("substitution needs " + std::to_string(n_) + " values, got " +
                   std::to_string(values.size()));
  }
  if (values.empty()) return *this;
  const std::size_t target_n = values.front().n();
  for (const auto& v : values) {
    if (v.n() != target_n || v.ctx() != ctx_) throw Mismatch("substitution values disagree");
  }
  std::vector<std::vector<Poly>> powers(n_);
  auto power = [&](std::size_t i, unsigned e) -> const Poly& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(one(target_n, ctx_));
    while (cache.size() <= e) cache.push_back(cache.back() * values[i]);
    return cache[e];
  };
  Poly out(target_n, ctx_);
  for (const auto& [m, c] : terms_) {
    Poly t = constant(target_n, ctx_, c);
    for (std::size_t i = 0; i < n_; ++i) {
      if (m[i] != 0) t = t * power(i, m[i]);
    }
    out += t;
  }
  return out;
}

Poly Poly::embed(std::size_t new_n, std::span<const std::size_t> placement) const {
  if (placement.size() != n_) throw Mismatch("embedding needs one slot per variable");
  std::vector<Term> terms;
  terms.reserve(terms_.size());
  for (const auto& [m, c] : terms_) {
    Monomial nm(new_n);
    for (std::size_t i = 0; i < n_; ++i) {
      if (m[i] == 0) continue;
      if (placement[i] >= new_n) throw InvalidArgument("embedding slot out of range");
      nm.set(placement[i], nm[placement[i]] + m[i]);
    }
    terms.emplace_back(nm, c);
  }
  return from_terms(new_n, ctx_, std::move(terms));
}

bool operator==(const Poly& a, const Poly& b) {
  if (a.n_ != b.n_ || a.ctx_ != b.ctx_ || a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (a.terms_[i].first != b.terms_[i].first || a.terms_[i].second != b.terms_[i].second) {
      return false;
    }
  }
  return true;
}

Poly add(const Poly& a, const Poly& b) { return a + b; }
Poly mul(const Poly& a, const Poly& b) { return a * b; }
Poly scale(const Scalar& c, const Poly& a) { return c * a; }
Poly substitute(const Poly& f, std::span<const Poly> values) { return f.substitute(values); }

PolyEndo::PolyEndo(std::vector<Poly> images) : img_(std::move(images)) {
  if (img_.empty()) throw InvalidArgument("an endomorphism needs at least one variable");
  const std::size_t n = img_.size();
  const FieldCtx ctx = img_.front().ctx();
  for (const auto& f : img_) {
    if (f.n() != n) throw Mismatch("image does not live in a ring with " + std::to_string(n) +
                                   " variables");
    if (f.ctx() != ctx) throw Mismatch("images use different coefficient fields");
  }
}

PolyEndo PolyEndo::identity(std::size_t n, FieldCtx ctx) {
  std::vector<Poly> img;
  for (std::size_t i = 0; i < n; ++i) img.push_back(Poly::variable(n, ctx, i));
  return PolyEndo(std::move(img));
}

bool PolyEndo::is_identity() const {
  for (std::size_t i = 0; i < n(); ++i) {
    if (img_[i] != Poly::variable(n(), ctx(), i)) return false;
  }
  return true;
}

Poly apply_endo(const PolyEndo& phi, const Poly& f) {
  if (f.n() != phi.n()) throw Mismatch("polynomial and endomorphism rings differ");
  return f.substitute(phi.images());
}

PolyEndo compose(const PolyEndo& phi, const PolyEndo& psi) {
  if (phi.n() != psi.n()) throw Mismatch("cannot compose endomorphisms of different rank");
  if (phi.ctx() != psi.ctx()) throw Mismatch("coefficient field mismatch");
  std::vector<Poly> img;
  for (const auto& g : psi.images()) img.push_back(apply_endo(phi, g));
  return PolyEndo(std::move(img));
}

unsigned poly_endo_degree(const PolyEndo& phi) {
  unsigned d = 0;
  for (const auto& f : phi.images()) {
    if (!f.is_zero()) d = std::max(d, f.degree());
  }
  return d;
}

std::vector<std::vector<Poly>> jacobian_matrix(const PolyEndo& phi) {
  std::vector<std::vector<Poly>> jac;
  for (const auto& f : phi.images()) {
    std::vector<Poly> row;
    for (std::size_t j = 0; j < phi.n(); ++j) row.push_back(f.derivative(j));
    jac.push_back(std::move(row));
  }
  return jac;
}

Poly determinant(const std::vector<std::vector<Poly>>& matrix) {
  const std::size_t n = matrix.size();
  if (n == 0) throw InvalidArgument("determinant of an empty matrix");
  if (n > 20) throw InvalidArgument("determinant size too large");
  for (const auto& row : matrix) {
    if (row.size() != n) throw InvalidArgument("determinant needs a square matrix");
  }
  // Laplace expansion along rows, memoized on the set of used columns:
  // minor[mask] is the determinant of rows [n - popcount(mask), n) against
  // the columns in mask.
  const std::size_t ring_n = matrix[0][0].n();
  const FieldCtx ctx = matrix[0][0].ctx();
  std::unordered_map<std::uint32_t, Poly> minor;
  minor.emplace(0u, Poly::one(ring_n, ctx));
  for (std::size_t k = 1; k <= n; ++k) {
    const std::size_t row = n - k;
    std::unordered_map<std::uint32_t, Poly> next;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      if (static_cast<std::size_t>(std::popcount(mask)) != k) continue;
      Poly acc(ring_n, ctx);
      int sign = 1;
      for (std::size_t col = 0; col < n; ++col) {
        if (!(mask & (1u << col))) continue;
        const auto& sub = minor.at(mask & ~(1u << col));
        if (!matrix[row][col].is_zero() && !sub.is_zero()) {
          Poly t = matrix[row][col] * sub;
          if (sign > 0) acc += t; else acc -= t;
        }
        sign = -sign;
      }
      next.emplace(mask, std::move(acc));
    }
    minor = std::move(next);
  }
  return minor.at((1u << n) - 1);
}

Poly jacobian_det(const PolyEndo& phi) { return determinant(jacobian_matrix(phi)); }

bool is_etale_candidate(const PolyEndo& phi) {
  const Poly det = jacobian_det(phi);
  return det.is_constant() && !det.is_zero();
}

Poly reduce_mod_p(const Poly& f, std::uint32_t p) {
  const FieldCtx target = FieldCtx::prime_field(p);
  if (!f.ctx().is_rationals()) throw WrongCharacteristic("polynomial is not defined over QQ");
  std::vector<Term> terms;
  terms.reserve(f.size());
  for (const auto& [m, c] : f.terms()) terms.emplace_back(m, reduce_mod_p(c, p));
  return Poly::from_terms(f.n(), target, std::move(terms));
}

PolyEndo reduce_endo_mod_p(const PolyEndo& phi, std::uint32_t p) {
  std::vector<Poly> img;
  for (const auto& f : phi.images()) img.push_back(reduce_mod_p(f, p));
  return PolyEndo(std::move(img));
}

}  // namespace weylforge
