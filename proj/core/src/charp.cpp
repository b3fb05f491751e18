#include "weylforge/charp.hpp"

#include <algorithm>

#include "weylforge/error.hpp"

namespace weylforge {

namespace {

void require_prime_field(FieldCtx ctx, const char* what) {
  if (!ctx.is_prime_field()) {
    throw WrongCharacteristic(std::string(what) + " requires a prime-field Weyl algebra");
  }
}

/// Q^alpha P^beta with cached generator powers.
class QPPowers {
 public:
  explicit QPPowers(const WeylEndo& phi) : phi_(phi), powers_(2 * phi.n()) {}

  WeylElement product(const Monomial& slot) {
    const std::size_t n = phi_.n();
    WeylElement out = WeylElement::one(n, phi_.ctx());
    for (std::size_t s = 0; s < 2 * n; ++s) {
      if (slot[s] != 0) out = out * power(s, slot[s]);
    }
    return out;
  }

 private:
  const WeylElement& power(std::size_t s, unsigned e) {
    const std::size_t n = phi_.n();
    auto& cache = powers_[s];
    const WeylElement& gen = s < n ? phi_.ximg()[s] : phi_.dimg()[s - n];
    if (cache.empty()) cache.push_back(WeylElement::one(n, phi_.ctx()));
    while (cache.size() <= e) cache.push_back(cache.back() * gen);
    return cache[e];
  }

  const WeylEndo& phi_;
  std::vector<std::vector<WeylElement>> powers_;
};

}  // namespace

bool center_test(const WeylElement& a) {
  require_prime_field(a.ctx(), "center_test");
  const unsigned p = a.ctx().characteristic();
  for (const auto& [m, c] : a.terms()) {
    for (std::size_t s = 0; s < m.size(); ++s) {
      if (m[s] % p != 0) return false;
    }
  }
  return true;
}

bool commutes_with_generators(const WeylElement& a) {
  for (std::size_t i = 0; i < a.n(); ++i) {
    if (!commutator(a, WeylElement::x(a.n(), a.ctx(), i)).is_zero()) return false;
    if (!commutator(a, WeylElement::d(a.n(), a.ctx(), i)).is_zero()) return false;
  }
  return true;
}

CenterElement center_extract(const WeylElement& a) {
  if (!center_test(a)) throw NotCentral("element is not in k[x^p, d^p]");
  const unsigned p = a.ctx().characteristic();
  std::vector<Term> terms;
  terms.reserve(a.size());
  for (const auto& [m, c] : a.terms()) {
    Monomial q(m.size());
    for (std::size_t s = 0; s < m.size(); ++s) q.set(s, m[s] / p);
    terms.emplace_back(q, c);
  }
  return Poly::from_terms(2 * a.n(), a.ctx(), std::move(terms));
}

WeylElement inflate(const CenterElement& c) {
  require_prime_field(c.ctx(), "inflate");
  if (c.n() % 2 != 0) throw Mismatch("center polynomials have an even number of variables");
  const unsigned p = c.ctx().characteristic();
  std::vector<Term> terms;
  terms.reserve(c.size());
  for (const auto& [m, coeff] : c.terms()) {
    Monomial w(m.size());
    for (std::size_t s = 0; s < m.size(); ++s) w.set(s, m[s] * p);
    terms.emplace_back(w, coeff);
  }
  return WeylElement::from_terms(c.n() / 2, c.ctx(), std::move(terms));
}

PolyEndo restrict_center(const WeylEndo& phi) {
  require_prime_field(phi.ctx(), "restrict_center");
  const unsigned p = phi.ctx().characteristic();
  std::vector<Poly> img;
  auto extract = [&](const WeylElement& g) {
    WeylElement power = g.pow(p);
    if (!center_test(power)) {
      throw InternalError("p-th power of a generator image is not central");
    }
    return center_extract(power);
  };
  for (const auto& g : phi.ximg()) img.push_back(extract(g));
  for (const auto& g : phi.dimg()) img.push_back(extract(g));
  return PolyEndo(std::move(img));
}

CenterElement QPExpansion::coefficient(const Monomial& slot) const {
  for (const auto& [s, c] : coefficients) {
    if (s == slot) return c;
  }
  if (coefficients.empty()) throw InvalidArgument("empty expansion has no ring");
  return Poly(coefficients.front().second.n(), coefficients.front().second.ctx());
}

QPExpansion expand_qp_basis(const WeylElement& a, const WeylEndo& phi) {
  require_prime_field(phi.ctx(), "expand_qp_basis");
  if (a.n() != phi.n() || a.ctx() != phi.ctx()) {
    throw Mismatch("element and endomorphism live in different Weyl algebras");
  }
  const std::size_t n = phi.n();
  const unsigned p = phi.ctx().characteristic();
  std::uint64_t slots = 1;
  for (std::size_t s = 0; s < 2 * n; ++s) {
    slots *= p;
    if (slots > kMaxQPSlots) {
      throw BudgetExceeded("Q^a P^b basis has p^(2n) > " + std::to_string(kMaxQPSlots) +
                           " slots");
    }
  }

  const FieldCtx ctx = phi.ctx();
  QPPowers powers(phi);
  std::vector<std::pair<Monomial, CenterElement>> found;
  WeylElement rem = a;
  std::uint64_t steps = 0;
  while (!rem.is_zero()) {
    if (++steps > slots) throw InternalError("Q^a P^b peeling did not terminate");
    // ad(P_i) lowers alpha_i and -ad(Q_i) lowers beta_i, each by one with
    // factor alpha_i (resp. beta_i). Apply them greedily until the next
    // application would vanish.
    Monomial slot(2 * n);
    WeylElement b = rem;
    Scalar factor = Scalar::one(ctx);
    for (std::size_t s = 0; s < 2 * n; ++s) {
      unsigned k = 0;
      while (true) {
        WeylElement next = s < n ? commutator(phi.dimg()[s], b) : commutator(b, phi.ximg()[s - n]);
        if (next.is_zero()) break;
        b = std::move(next);
        ++k;
        if (k >= p) throw InternalError("Q^a P^b exponent reached p during peeling");
        factor *= Scalar(ctx, static_cast<long>(k));
      }
      slot.set(s, k);
    }
    if (!center_test(b)) throw InternalError("peeled coefficient is not central");
    CenterElement coeff = factor.inv() * center_extract(b);
    for (const auto& [s, c] : found) {
      if (s == slot) throw InternalError("Q^a P^b slot extracted twice");
    }
    rem -= inflate(coeff) * powers.product(slot);
    found.emplace_back(slot, std::move(coeff));
  }

  std::sort(found.begin(), found.end(), [](const auto& l, const auto& r) {
    return grlex_compare(l.first, r.first) > 0;
  });
  QPExpansion out{std::move(found)};
  if (recombine_qp(out, phi) != a) {
    throw InternalError("Q^a P^b expansion does not recombine to the input");
  }
  return out;
}

WeylElement recombine_qp(const QPExpansion& expansion, const WeylEndo& phi) {
  QPPowers powers(phi);
  WeylElement out(phi.n(), phi.ctx());
  for (const auto& [slot, c] : expansion.coefficients) {
    out += inflate(c) * powers.product(slot);
  }
  return out;
}

bool centralizer_test(const WeylElement& m, const WeylEndo& phi) {
  for (std::size_t i = 0; i < phi.n(); ++i) {
    if (!commutator(phi.ximg()[i], m).is_zero()) return false;
    if (!commutator(phi.dimg()[i], m).is_zero()) return false;
  }
  return true;
}

}  // namespace weylforge
