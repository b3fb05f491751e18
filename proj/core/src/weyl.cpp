#include "weylforge/weyl.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "weylforge/error.hpp"

namespace weylforge {

namespace {

/// Coefficients C(a,k) C(v,k) k! for k = 0..min(a,v), evaluated in the field.
/// Over GF(p) the falling factorial a(a-1)...(a-k+1) vanishes once k >= p, so
/// the list is cut there.
std::vector<Scalar> commutation_coefficients(FieldCtx ctx, unsigned a, unsigned v) {
  const unsigned kmax = std::min(a, v);
  std::vector<Scalar> out;
  out.reserve(kmax + 1);
  if (ctx.is_rationals()) {
    mpz_class c = 1;
    out.emplace_back(ctx, c);
    for (unsigned k = 1; k <= kmax; ++k) {
      c *= (a - k + 1);
      c *= (v - k + 1);
      mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), k);
      out.emplace_back(ctx, c);
    }
    return out;
  }
  const std::uint64_t p = ctx.characteristic();
  Scalar c = Scalar::one(ctx);
  out.push_back(c);
  for (unsigned k = 1; k <= kmax && k < p; ++k) {
    c *= Scalar(ctx, static_cast<long>((std::uint64_t{a - k + 1} % p) * ((v - k + 1) % p) % p));
    c *= Scalar(ctx, static_cast<long>(k)).inv();
    if (c.is_zero()) break;
    out.push_back(c);
  }
  return out;
}

class CoefficientCache {
 public:
  explicit CoefficientCache(FieldCtx ctx) : ctx_(ctx) {}

  const std::vector<Scalar>& get(unsigned a, unsigned v) {
    const std::uint64_t key = (std::uint64_t{a} << 32) | v;
    auto it = cache_.find(key);
    if (it == cache_.end()) {
      it = cache_.emplace(key, commutation_coefficients(ctx_, a, v)).first;
    }
    return it->second;
  }

 private:
  FieldCtx ctx_;
  std::unordered_map<std::uint64_t, std::vector<Scalar>> cache_;
};

}  // namespace

WeylElement::WeylElement(std::size_t n, FieldCtx ctx) : n_(n), ctx_(ctx) {
  if (2 * n > kMaxVariables) {
    throw InvalidArgument("Weyl algebra rank " + std::to_string(n) + " exceeds supported maximum " +
                          std::to_string(kMaxVariables / 2));
  }
}

WeylElement WeylElement::constant(std::size_t n, FieldCtx ctx, const Scalar& c) {
  return monomial(n, ctx, Monomial(2 * n), c);
}

WeylElement WeylElement::x(std::size_t n, FieldCtx ctx, std::size_t i) {
  if (i >= n) throw InvalidArgument("variable index out of range");
  Monomial m(2 * n);
  m.set(i, 1);
  return monomial(n, ctx, m, Scalar::one(ctx));
}

WeylElement WeylElement::d(std::size_t n, FieldCtx ctx, std::size_t i) {
  if (i >= n) throw InvalidArgument("variable index out of range");
  Monomial m(2 * n);
  m.set(n + i, 1);
  return monomial(n, ctx, m, Scalar::one(ctx));
}

WeylElement WeylElement::monomial(std::size_t n, FieldCtx ctx, const Monomial& mono,
                                  const Scalar& c) {
  WeylElement out(n, ctx);
  if (mono.size() != 2 * n) throw Mismatch("monomial size does not match 2n");
  if (c.ctx() != ctx) throw Mismatch("coefficient field mismatch");
  if (!c.is_zero()) out.terms_.emplace_back(mono, c);
  return out;
}

WeylElement WeylElement::from_terms(std::size_t n, FieldCtx ctx, std::vector<Term> terms) {
  WeylElement out(n, ctx);
  for (const auto& [m, c] : terms) {
    if (m.size() != 2 * n) throw Mismatch("monomial size does not match 2n");
    if (c.ctx() != ctx) throw Mismatch("coefficient field mismatch");
  }
  canonicalize_terms(terms);
  out.terms_ = std::move(terms);
  return out;
}

bool WeylElement::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.front().first.is_one());
}

Scalar WeylElement::coefficient(const Monomial& mono) const {
  for (const auto& [m, c] : terms_) {
    if (m == mono) return c;
  }
  return Scalar::zero(ctx_);
}

unsigned WeylElement::degree() const {
  if (terms_.empty()) throw UndefinedDegree();
  // Descending graded order: the first term has maximal degree.
  return terms_.front().first.total_degree();
}

void WeylElement::check_compatible(const WeylElement& other) const {
  if (n_ != other.n_) {
    throw Mismatch("Weyl algebra rank mismatch: " + std::to_string(n_) + " vs " +
                   std::to_string(other.n_));
  }
  if (ctx_ != other.ctx_) {
    throw Mismatch("coefficient field mismatch: " + ctx_.name() + " vs " + other.ctx_.name());
  }
}

WeylElement& WeylElement::operator+=(const WeylElement& other) {
  check_compatible(other);
  terms_ = merge_terms(terms_, other.terms_, false);
  return *this;
}

WeylElement& WeylElement::operator-=(const WeylElement& other) {
  check_compatible(other);
  terms_ = merge_terms(terms_, other.terms_, true);
  return *this;
}

WeylElement WeylElement::operator-() const {
  WeylElement out = *this;
  for (auto& t : out.terms_) t.second = -t.second;
  return out;
}

WeylElement operator*(const Scalar& c, const WeylElement& a) {
  if (c.ctx() != a.ctx_) throw Mismatch("coefficient field mismatch");
  WeylElement out(a.n_, a.ctx_);
  if (c.is_zero()) return out;
  out.terms_ = a.terms_;
  for (auto& t : out.terms_) t.second *= c;
  return out;
}

WeylElement operator*(const WeylElement& a, const WeylElement& b) {
  a.check_compatible(b);
  const std::size_t n = a.n_;
  WeylElement out(n, a.ctx_);
  if (a.is_zero() || b.is_zero()) return out;

  CoefficientCache cache(a.ctx_);
  std::unordered_map<Monomial, Scalar, MonomialHash> acc;
  acc.reserve(a.terms_.size() * b.terms_.size());

  std::vector<const std::vector<Scalar>*> lists(n);
  std::vector<unsigned> k(n);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      const Monomial top = ma * mb;  // enforces the degree limit
      const Scalar base = ca * cb;
      for (std::size_t i = 0; i < n; ++i) lists[i] = &cache.get(mb[i], ma[n + i]);
      std::fill(k.begin(), k.end(), 0u);
      while (true) {
        Scalar c = base;
        Monomial m = top;
        for (std::size_t i = 0; i < n; ++i) {
          if (k[i] != 0) {
            c *= (*lists[i])[k[i]];
            m.set(i, top[i] - k[i]);
            m.set(n + i, top[n + i] - k[i]);
          }
        }
        auto [it, inserted] = acc.try_emplace(m, c);
        if (!inserted) it->second += c;
        std::size_t i = 0;
        for (; i < n; ++i) {
          if (++k[i] < lists[i]->size()) break;
          k[i] = 0;
        }
        if (i == n) break;
      }
    }
  }
  out.terms_.reserve(acc.size());
  for (auto& [m, c] : acc) {
    if (!c.is_zero()) out.terms_.emplace_back(m, std::move(c));
  }
  canonicalize_terms(out.terms_);
  return out;
}

WeylElement WeylElement::pow(unsigned e) const {
  WeylElement result = one(n_, ctx_);
  WeylElement base = *this;
  while (e > 0) {
    if (e & 1u) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

bool operator==(const WeylElement& a, const WeylElement& b) {
  if (a.n_ != b.n_ || a.ctx_ != b.ctx_ || a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (a.terms_[i].first != b.terms_[i].first || a.terms_[i].second != b.terms_[i].second) {
      return false;
    }
  }
  return true;
}

WeylElement weyl_mul(const WeylElement& a, const WeylElement& b) { return a * b; }

WeylElement commutator(const WeylElement& a, const WeylElement& b) { return a * b - b * a; }

unsigned weyl_degree(const WeylElement& a) { return a.degree(); }

bool check_weyl_relations(std::span<const WeylElement> q, std::span<const WeylElement> p) {
  const std::size_t n = q.size();
  if (n == 0 || p.size() != n) return false;
  const FieldCtx ctx = q.front().ctx();
  for (std::size_t i = 0; i < n; ++i) {
    if (q[i].n() != n || p[i].n() != n || q[i].ctx() != ctx || p[i].ctx() != ctx) return false;
  }
  const WeylElement one = WeylElement::one(n, ctx);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j > i) {
        if (!commutator(q[i], q[j]).is_zero()) return false;
        if (!commutator(p[i], p[j]).is_zero()) return false;
      }
      const WeylElement c = commutator(p[i], q[j]);
      if (i == j ? c != one : !c.is_zero()) return false;
    }
  }
  return true;
}

WeylEndo::WeylEndo(std::vector<WeylElement> ximg, std::vector<WeylElement> dimg)
    : ximg_(std::move(ximg)), dimg_(std::move(dimg)) {
  const std::size_t n = ximg_.size();
  if (n == 0) throw InvalidArgument("an endomorphism needs at least one generator pair");
  if (dimg_.size() != n) throw Mismatch("x and d image counts differ");
  const FieldCtx ctx = ximg_.front().ctx();
  for (std::size_t i = 0; i < n; ++i) {
    if (ximg_[i].n() != n || dimg_[i].n() != n) {
      throw Mismatch("generator image does not live in A_" + std::to_string(n));
    }
    if (ximg_[i].ctx() != ctx || dimg_[i].ctx() != ctx) {
      throw Mismatch("generator images use different coefficient fields");
    }
  }
  if (!check_weyl_relations(ximg_, dimg_)) {
    throw RelationViolation("generator images do not satisfy the Weyl relations");
  }
}

WeylEndo WeylEndo::identity(std::size_t n, FieldCtx ctx) {
  std::vector<WeylElement> xs, ds;
  for (std::size_t i = 0; i < n; ++i) {
    xs.push_back(WeylElement::x(n, ctx, i));
    ds.push_back(WeylElement::d(n, ctx, i));
  }
  return WeylEndo(std::move(xs), std::move(ds));
}

bool WeylEndo::is_identity() const {
  const std::size_t n = this->n();
  for (std::size_t i = 0; i < n; ++i) {
    if (ximg_[i] != WeylElement::x(n, ctx(), i)) return false;
    if (dimg_[i] != WeylElement::d(n, ctx(), i)) return false;
  }
  return true;
}

WeylElement apply_endo(const WeylEndo& phi, const WeylElement& a) {
  const std::size_t n = phi.n();
  if (a.n() != n) throw Mismatch("element and endomorphism live in different Weyl algebras");
  if (a.ctx() != phi.ctx()) throw Mismatch("coefficient field mismatch");

  // powers[s][e] = image of generator slot s raised to e.
  std::vector<std::vector<WeylElement>> powers(2 * n);
  auto power = [&](std::size_t slot, unsigned e) -> const WeylElement& {
    auto& cache = powers[slot];
    const WeylElement& gen = slot < n ? phi.ximg()[slot] : phi.dimg()[slot - n];
    if (cache.empty()) cache.push_back(WeylElement::one(n, a.ctx()));
    while (cache.size() <= e) cache.push_back(cache.back() * gen);
    return cache[e];
  };

  WeylElement out(n, a.ctx());
  for (const auto& [m, c] : a.terms()) {
    WeylElement t = WeylElement::constant(n, a.ctx(), c);
    for (std::size_t s = 0; s < 2 * n; ++s) {
      if (m[s] != 0) t = t * power(s, m[s]);
    }
    out += t;
  }
  return out;
}

WeylEndo compose_endo(const WeylEndo& phi, const WeylEndo& psi) {
  if (phi.n() != psi.n()) throw Mismatch("cannot compose endomorphisms of different rank");
  if (phi.ctx() != psi.ctx()) throw Mismatch("coefficient field mismatch");
  std::vector<WeylElement> xs, ds;
  for (const auto& e : psi.ximg()) xs.push_back(apply_endo(phi, e));
  for (const auto& e : psi.dimg()) ds.push_back(apply_endo(phi, e));
  return WeylEndo(std::move(xs), std::move(ds));
}

unsigned endo_degree(const WeylEndo& phi) {
  unsigned d = 0;
  for (const auto& e : phi.ximg()) d = std::max(d, e.degree());
  for (const auto& e : phi.dimg()) d = std::max(d, e.degree());
  return d;
}

WeylElement reduce_mod_p(const WeylElement& a, std::uint32_t p) {
  const FieldCtx target = FieldCtx::prime_field(p);
  if (!a.ctx().is_rationals()) throw WrongCharacteristic("element is not defined over QQ");
  std::vector<Term> terms;
  terms.reserve(a.size());
  for (const auto& [m, c] : a.terms()) terms.emplace_back(m, reduce_mod_p(c, p));
  return WeylElement::from_terms(a.n(), target, std::move(terms));
}

WeylEndo reduce_endo_mod_p(const WeylEndo& phi, std::uint32_t p) {
  std::vector<WeylElement> xs, ds;
  for (const auto& e : phi.ximg()) xs.push_back(reduce_mod_p(e, p));
  for (const auto& e : phi.dimg()) ds.push_back(reduce_mod_p(e, p));
  try {
    return WeylEndo(std::move(xs), std::move(ds));
  } catch (const RelationViolation&) {
    throw InternalError("reduction modulo " + std::to_string(p) +
                        " broke the Weyl relations of a relation-preserving input");
  }
}

}  // namespace weylforge
