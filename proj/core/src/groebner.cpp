#include "weylforge/groebner.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <tuple>

#include "weylforge/error.hpp"

namespace weylforge {

namespace {

std::atomic<std::uint64_t> g_audited{0};
std::atomic<std::uint64_t> g_violations{0};

void check_priority(const std::vector<std::size_t>& priority) {
  std::vector<bool> seen(priority.size(), false);
  for (std::size_t v : priority) {
    if (v >= priority.size() || seen[v]) {
      throw InvalidArgument("term order priority must be a permutation of the variables");
    }
    seen[v] = true;
  }
}

std::vector<std::size_t> identity_priority(std::size_t n) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), std::size_t{0});
  return p;
}

/// Terms sorted by descending order.
struct GPoly {
  std::vector<Term> terms;

  bool is_zero() const { return terms.empty(); }
  const Monomial& lm() const { return terms.front().first; }
  const Scalar& lc() const { return terms.front().second; }
  unsigned degree() const {
    unsigned d = 0;
    for (const auto& t : terms) d = std::max(d, t.first.total_degree());
    return d;
  }
};

struct Descending {
  const TermOrder* order;
  bool operator()(const Monomial& a, const Monomial& b) const { return order->greater(a, b); }
};

GPoly to_gpoly(const Poly& f, const TermOrder& order) {
  GPoly g{std::vector<Term>(f.terms().begin(), f.terms().end())};
  std::sort(g.terms.begin(), g.terms.end(),
            [&](const Term& a, const Term& b) { return order.greater(a.first, b.first); });
  return g;
}

Poly to_poly(const GPoly& g, std::size_t n, FieldCtx ctx) {
  return Poly::from_terms(n, ctx, g.terms);
}

void make_monic(GPoly& g) {
  if (g.is_zero() || g.lc().is_one()) return;
  const Scalar inv = g.lc().inv();
  for (auto& t : g.terms) t.second *= inv;
}

/// Full reduction of f by the divisors whose index is flagged in `use`.
GPoly reduce(const GPoly& f, const std::vector<GPoly>& divisors, const std::vector<bool>& use,
             const TermOrder& order) {
  std::map<Monomial, Scalar, Descending> work(Descending{&order});
  for (const auto& t : f.terms) work.emplace(t.first, t.second);
  GPoly rem;
  while (!work.empty()) {
    auto top = work.begin();
    const GPoly* divisor = nullptr;
    for (std::size_t k = 0; k < divisors.size(); ++k) {
      if (use[k] && divisors[k].lm().divides(top->first)) {
        divisor = &divisors[k];
        break;
      }
    }
    if (divisor == nullptr) {
      rem.terms.emplace_back(top->first, top->second);
      work.erase(top);
      continue;
    }
    const Monomial q = divisor->lm().quotient_of(top->first);
    const Scalar c = top->second / divisor->lc();
    work.erase(top);
    for (std::size_t k = 1; k < divisor->terms.size(); ++k) {
      const auto& [m, dc] = divisor->terms[k];
      Scalar delta = -(c * dc);
      auto [it, inserted] = work.try_emplace(q * m, delta);
      if (!inserted) {
        it->second += delta;
        if (it->second.is_zero()) work.erase(it);
      }
    }
  }
  return rem;
}

/// a - b for sorted term lists.
std::vector<Term> ordered_difference(std::vector<Term> a, std::vector<Term> b,
                                     const TermOrder& order) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    int cmp;
    if (i == a.size()) {
      cmp = -1;
    } else if (j == b.size()) {
      cmp = 1;
    } else {
      cmp = order.compare(a[i].first, b[j].first);
    }
    if (cmp > 0) {
      out.push_back(std::move(a[i++]));
    } else if (cmp < 0) {
      out.emplace_back(b[j].first, -b[j].second);
      ++j;
    } else {
      Scalar c = a[i].second - b[j].second;
      if (!c.is_zero()) out.emplace_back(a[i].first, std::move(c));
      ++i;
      ++j;
    }
  }
  return out;
}

GPoly s_poly(const GPoly& f, const GPoly& g, const TermOrder& order) {
  const Monomial l = f.lm().lcm(g.lm());
  auto shifted = [&](const GPoly& h) {
    const Monomial q = h.lm().quotient_of(l);
    const Scalar c = h.lc().inv();
    std::vector<Term> out;
    out.reserve(h.terms.size());
    for (const auto& [m, hc] : h.terms) out.emplace_back(q * m, hc * c);
    return out;
  };
  return GPoly{ordered_difference(shifted(f), shifted(g), order)};
}

unsigned saturating_unsigned(const mpz_class& value) {
  if (value > std::numeric_limits<unsigned>::max()) return std::numeric_limits<unsigned>::max();
  return static_cast<unsigned>(value.get_ui());
}

struct PairKey {
  unsigned degree;
  Monomial lcm;
  std::size_t j;
  std::size_t i;
};

Poly project(const Poly& f, std::size_t first, std::size_t new_n) {
  std::vector<Term> terms;
  terms.reserve(f.size());
  for (const auto& [m, c] : f.terms()) {
    Monomial nm(new_n);
    for (std::size_t s = 0; s < new_n; ++s) nm.set(s, m[first + s]);
    terms.emplace_back(nm, c);
  }
  return Poly::from_terms(new_n, f.ctx(), std::move(terms));
}

bool involves_range(const Poly& f, std::size_t first, std::size_t last) {
  for (const auto& t : f.terms()) {
    if (t.first.partial_degree(first, last) != 0) return true;
  }
  return false;
}

}  // namespace

TermOrder::TermOrder(Kind kind, std::vector<std::size_t> priority, std::size_t split)
    : kind_(kind), priority_(std::move(priority)), split_(split) {
  check_priority(priority_);
  if (kind_ == Kind::BlockElimination && split_ > priority_.size()) {
    throw InvalidArgument("elimination block larger than the variable count");
  }
}

TermOrder TermOrder::lex(std::size_t n) { return lex(identity_priority(n)); }
TermOrder TermOrder::lex(std::vector<std::size_t> priority) {
  return TermOrder(Kind::Lex, std::move(priority), 0);
}
TermOrder TermOrder::grevlex(std::size_t n) { return grevlex(identity_priority(n)); }
TermOrder TermOrder::grevlex(std::vector<std::size_t> priority) {
  return TermOrder(Kind::Grevlex, std::move(priority), 0);
}
TermOrder TermOrder::elimination(std::size_t n, std::size_t split) {
  return elimination(identity_priority(n), split);
}
TermOrder TermOrder::elimination(std::vector<std::size_t> priority, std::size_t split) {
  return TermOrder(Kind::BlockElimination, std::move(priority), split);
}

int TermOrder::grevlex_range(const Monomial& a, const Monomial& b, std::size_t first,
                             std::size_t last) const {
  unsigned da = 0, db = 0;
  for (std::size_t k = first; k < last; ++k) {
    da += a[priority_[k]];
    db += b[priority_[k]];
  }
  if (da != db) return da < db ? -1 : 1;
  for (std::size_t k = last; k-- > first;) {
    const unsigned ea = a[priority_[k]], eb = b[priority_[k]];
    if (ea != eb) return ea > eb ? -1 : 1;
  }
  return 0;
}

int TermOrder::compare(const Monomial& a, const Monomial& b) const {
  switch (kind_) {
    case Kind::Lex:
      for (std::size_t v : priority_) {
        if (a[v] != b[v]) return a[v] < b[v] ? -1 : 1;
      }
      return 0;
    case Kind::Grevlex:
      return grevlex_range(a, b, 0, priority_.size());
    case Kind::BlockElimination: {
      const int c = grevlex_range(a, b, 0, split_);
      if (c != 0) return c;
      return grevlex_range(a, b, split_, priority_.size());
    }
  }
  return 0;
}

std::string TermOrder::to_string() const {
  std::string out;
  switch (kind_) {
    case Kind::Lex: out = "lex"; break;
    case Kind::Grevlex: out = "grevlex"; break;
    case Kind::BlockElimination: out = "elim:" + std::to_string(split_); break;
  }
  if (priority_ != identity_priority(priority_.size())) {
    out += "[";
    for (std::size_t k = 0; k < priority_.size(); ++k) {
      if (k) out += ",";
      out += std::to_string(priority_[k] + 1);
    }
    out += "]";
  }
  return out;
}

GbBudget GbBudget::from_env() {
  GbBudget budget;
  if (const char* env = std::getenv("WEYLFORGE_PAIR_BUDGET")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0') {
      throw InvalidArgument(std::string("WEYLFORGE_PAIR_BUDGET is not a number: ") + env);
    }
    budget.max_pairs = static_cast<std::size_t>(v);
  }
  return budget;
}

GroebnerBasis::GroebnerBasis(std::vector<Poly> generators, TermOrder order, unsigned input_degree,
                             std::size_t pairs_examined)
    : generators_(std::move(generators)),
      order_(std::move(order)),
      input_degree_(input_degree),
      max_degree_(0),
      pairs_examined_(pairs_examined) {
  for (const auto& g : generators_) max_degree_ = std::max(max_degree_, g.degree());
}

Monomial leading_monomial(const Poly& f, const TermOrder& order) {
  if (f.is_zero()) throw InvalidArgument("zero polynomial has no leading monomial");
  const Term* best = &f.terms().front();
  for (const auto& t : f.terms()) {
    if (order.greater(t.first, best->first)) best = &t;
  }
  return best->first;
}

Scalar leading_coefficient(const Poly& f, const TermOrder& order) {
  const Monomial lm = leading_monomial(f, order);
  return f.coefficient(lm);
}

Poly normal_form(const Poly& f, std::span<const Poly> divisors, const TermOrder& order) {
  if (divisors.empty()) throw InvalidArgument("normal_form needs at least one divisor");
  std::vector<GPoly> gs;
  std::vector<bool> use;
  for (const auto& g : divisors) {
    if (g.n() != f.n() || g.ctx() != f.ctx()) throw Mismatch("divisor ring mismatch");
    if (g.is_zero()) continue;
    gs.push_back(to_gpoly(g, order));
    use.push_back(true);
  }
  if (order.nvars() != f.n()) throw Mismatch("term order variable count mismatch");
  return to_poly(reduce(to_gpoly(f, order), gs, use, order), f.n(), f.ctx());
}

Poly s_polynomial(const Poly& f, const Poly& g, const TermOrder& order) {
  if (f.is_zero() || g.is_zero()) throw InvalidArgument("S-polynomial of a zero polynomial");
  return to_poly(s_poly(to_gpoly(f, order), to_gpoly(g, order), order), f.n(), f.ctx());
}

mpz_class mpz_pow(unsigned base, unsigned long exponent) {
  mpz_class out;
  mpz_ui_pow_ui(out.get_mpz_t(), base, exponent);
  return out;
}

mpz_class dube_bound(std::size_t nvars, unsigned input_degree) {
  if (nvars == 0) return 2;
  const unsigned long e = 1ul << (nvars - 1);
  const unsigned d = input_degree;
  // 2 ((d^2 + 2d) / 2)^e = (d^2 + 2d)^e / 2^(e-1)
  mpz_class num = mpz_pow(d * d + 2 * d, e);
  mpz_class out;
  mpz_fdiv_q_2exp(out.get_mpz_t(), num.get_mpz_t(), e - 1);
  return out;
}

std::string DubeAudit::bound_text() const {
  const std::string digits = bound.get_str();
  if (digits.size() <= 30) return digits;
  const unsigned d = input_degree;
  return "2*(" + std::to_string(d * d + 2 * d) + "/2)^" +
         std::to_string(1ul << (nvars - 1));
}

DubeAudit gb_degree_audit(const GroebnerBasis& basis) {
  DubeAudit audit{basis.nvars(), basis.input_degree(), basis.max_degree(),
                  dube_bound(basis.nvars(), basis.input_degree()), false};
  audit.holds = mpz_class(audit.max_degree) <= audit.bound;
  g_audited.fetch_add(1, std::memory_order_relaxed);
  if (!audit.holds) {
    g_violations.fetch_add(1, std::memory_order_relaxed);
    throw InternalError("Groebner basis degree " + std::to_string(audit.max_degree) +
                        " exceeds the Dube bound " + audit.bound_text());
  }
  return audit;
}

GbAuditLog gb_audit_log() {
  return GbAuditLog{g_audited.load(std::memory_order_relaxed),
                    g_violations.load(std::memory_order_relaxed)};
}

GroebnerBasis buchberger(std::span<const Poly> generators, const TermOrder& order,
                         const GbBudget& budget) {
  if (generators.empty()) throw InvalidArgument("buchberger needs at least one generator");
  const std::size_t n = generators.front().n();
  const FieldCtx ctx = generators.front().ctx();
  if (order.nvars() != n) throw Mismatch("term order variable count mismatch");

  unsigned input_degree = 0;
  std::vector<GPoly> basis;
  for (const auto& f : generators) {
    if (f.n() != n || f.ctx() != ctx) throw Mismatch("generators live in different rings");
    if (f.is_zero()) continue;
    input_degree = std::max(input_degree, f.degree());
    GPoly g = to_gpoly(f, order);
    make_monic(g);
    basis.push_back(std::move(g));
  }
  if (basis.empty()) throw InvalidArgument("buchberger needs a nonzero generator");

  const unsigned degree_cap =
      budget.max_degree ? *budget.max_degree : saturating_unsigned(dube_bound(n, input_degree));

  auto pair_less = [&order](const PairKey& a, const PairKey& b) {
    if (a.degree != b.degree) return a.degree < b.degree;
    const int c = order.compare(a.lcm, b.lcm);
    if (c != 0) return c < 0;
    return std::tie(a.j, a.i) < std::tie(b.j, b.i);
  };
  std::set<PairKey, decltype(pair_less)> queue(pair_less);
  std::set<std::pair<std::size_t, std::size_t>> pending;

  auto add_pairs = [&](std::size_t j) {
    for (std::size_t i = 0; i < j; ++i) {
      Monomial l = basis[i].lm().lcm(basis[j].lm());
      queue.insert(PairKey{l.total_degree(), l, j, i});
      pending.emplace(i, j);
    }
  };
  for (std::size_t j = 1; j < basis.size(); ++j) add_pairs(j);

  std::vector<bool> use(basis.size(), true);
  std::size_t examined = 0;
  while (!queue.empty()) {
    const PairKey key = *queue.begin();
    queue.erase(queue.begin());
    pending.erase({key.i, key.j});
    if (++examined > budget.max_pairs) {
      throw BudgetExceeded("Buchberger pair budget of " + std::to_string(budget.max_pairs) +
                           " exhausted");
    }
    const GPoly& fi = basis[key.i];
    const GPoly& fj = basis[key.j];
    if (fi.lm().coprime(fj.lm())) continue;
    bool chain = false;
    for (std::size_t k = 0; k < basis.size() && !chain; ++k) {
      if (k == key.i || k == key.j) continue;
      if (!basis[k].lm().divides(key.lcm)) continue;
      const auto ik = std::minmax(key.i, k);
      const auto jk = std::minmax(key.j, k);
      chain = !pending.count({ik.first, ik.second}) && !pending.count({jk.first, jk.second});
    }
    if (chain) continue;

    GPoly s = s_poly(fi, fj, order);
    if (s.is_zero()) continue;
    if (s.degree() > degree_cap) {
      throw BudgetExceeded("S-polynomial degree " + std::to_string(s.degree()) +
                           " exceeds the degree budget " + std::to_string(degree_cap));
    }
    GPoly r = reduce(s, basis, use, order);
    if (r.is_zero()) continue;
    if (r.degree() > degree_cap) {
      throw BudgetExceeded("remainder degree " + std::to_string(r.degree()) +
                           " exceeds the degree budget " + std::to_string(degree_cap));
    }
    make_monic(r);
    basis.push_back(std::move(r));
    use.push_back(true);
    add_pairs(basis.size() - 1);
  }

  // Minimalize: drop generators whose leading monomial is divisible by
  // another kept leading monomial (earlier index wins on ties).
  std::vector<std::size_t> idx(basis.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return order.compare(basis[a].lm(), basis[b].lm()) < 0;
  });
  std::vector<GPoly> minimal;
  for (std::size_t k : idx) {
    bool redundant = false;
    for (const auto& h : minimal) {
      if (h.lm().divides(basis[k].lm())) {
        redundant = true;
        break;
      }
    }
    if (!redundant) minimal.push_back(basis[k]);
  }

  // Interreduce each generator against the others.
  std::vector<bool> others(minimal.size(), true);
  for (std::size_t k = 0; k < minimal.size(); ++k) {
    others[k] = false;
    minimal[k] = reduce(minimal[k], minimal, others, order);
    others[k] = true;
    make_monic(minimal[k]);
  }
  std::sort(minimal.begin(), minimal.end(), [&](const GPoly& a, const GPoly& b) {
    return order.greater(a.lm(), b.lm());
  });

  std::vector<Poly> out;
  out.reserve(minimal.size());
  for (const auto& g : minimal) out.push_back(to_poly(g, n, ctx));
  GroebnerBasis result(std::move(out), order, input_degree, examined);
  gb_degree_audit(result);
  return result;
}

EliminationResult eliminate_for_minimal_polynomial(const Poly& f, std::span<const Poly> basis,
                                                   const GbBudget& budget) {
  const std::size_t n = f.n();
  const std::size_t m = basis.size();
  const std::size_t total = n + 1 + m;
  if (total > kMaxVariables) {
    throw InvalidArgument("elimination ring needs " + std::to_string(total) +
                          " variables; at most " + std::to_string(kMaxVariables) +
                          " are supported");
  }
  std::vector<std::size_t> place(n);
  std::iota(place.begin(), place.end(), std::size_t{0});
  std::vector<Poly> ideal;
  ideal.push_back(Poly::variable(total, f.ctx(), n) - f.embed(total, place));
  for (std::size_t j = 0; j < m; ++j) {
    if (basis[j].n() != n || basis[j].ctx() != f.ctx()) {
      throw Mismatch("minimal polynomial inputs live in different rings");
    }
    ideal.push_back(Poly::variable(total, f.ctx(), n + 1 + j) - basis[j].embed(total, place));
  }
  GroebnerBasis gb = buchberger(ideal, TermOrder::lex(total), budget);

  EliminationResult result{gb, std::nullopt, {}};
  for (const auto& g : gb.generators()) {
    if (involves_range(g, 0, n)) continue;
    if (!g.involves(n)) {
      result.relations.push_back(project(g, n + 1, m));
      continue;
    }
    // Generators are sorted by descending leading monomial, so the last
    // qualifying one has the smallest leading term.
    result.minimal = project(g, n, 1 + m);
  }
  if (result.minimal) {
    // Leading terms in a reduced basis are distinct; guard the invariant.
    std::size_t count = 0;
    const Monomial lm = leading_monomial(*result.minimal, TermOrder::lex(1 + m));
    for (const auto& g : gb.generators()) {
      if (involves_range(g, 0, n) || !g.involves(n)) continue;
      if (leading_monomial(project(g, n, 1 + m), TermOrder::lex(1 + m)) == lm) ++count;
    }
    if (count != 1) throw InternalError("minimal polynomial leading term is not unique");
  }
  return result;
}

std::optional<Poly> minimal_polynomial(const Poly& f, std::span<const Poly> basis,
                                       const GbBudget& budget) {
  return eliminate_for_minimal_polynomial(f, basis, budget).minimal;
}

IntegralityResult integrality_test(const PolyEndo& phi, const GbBudget& budget) {
  const std::size_t n = phi.n();
  const FieldCtx ctx = phi.ctx();
  const unsigned deg = poly_endo_degree(phi);
  IntegralityResult result;

  IntegralityCertificate cert;
  cert.endo_degree = deg;
  cert.degree_bound = mpz_pow(deg, n);
  cert.coefficient_bound = mpz_pow(2, n) * (n == 0 ? mpz_class(1) : mpz_pow(deg, n - 1)) *
                           (mpz_class(static_cast<unsigned long>(n)) + cert.degree_bound);
  cert.degree_audit_holds = true;
  cert.coefficient_audit_holds = true;

  for (std::size_t i = 0; i < n; ++i) {
    const Poly xi = Poly::variable(n, ctx, i);
    EliminationResult elim = eliminate_for_minimal_polynomial(xi, phi.images(), budget);
    if (!elim.relations.empty()) {
      result.reason = "images are algebraically dependent";
      return result;
    }
    if (!elim.minimal) {
      result.reason = "x" + std::to_string(i + 1) + " is transcendental over the image";
      return result;
    }
    const Poly& g = *elim.minimal;
    const unsigned r = g.degree_in(0);
    std::vector<std::vector<Term>> parts(r + 1);
    for (const auto& [m, c] : g.terms()) {
      Monomial rest(n);
      for (std::size_t s = 0; s < n; ++s) rest.set(s, m[1 + s]);
      parts[m[0]].emplace_back(rest, c);
    }
    Poly lead = Poly::from_terms(n, ctx, parts[r]);
    if (!(lead.is_constant() && lead.constant_value().is_one())) {
      result.reason = "minimal polynomial of x" + std::to_string(i + 1) +
                      " is not monic over the image";
      return result;
    }
    IntegralityRelation rel{i, g, r, {}, {}, 0};
    for (unsigned k = 0; k < r; ++k) {
      Poly b = Poly::from_terms(n, ctx, parts[k]);
      if (!b.is_zero()) rel.preimage_degree = std::max(rel.preimage_degree, b.degree());
      rel.coefficients.push_back(apply_endo(phi, b));
      rel.preimages.push_back(std::move(b));
    }
    Poly check = xi.pow(r);
    for (unsigned k = 0; k < r; ++k) check += rel.coefficients[k] * xi.pow(k);
    if (!check.is_zero()) {
      throw InternalError("integrality relation does not annihilate x" + std::to_string(i + 1));
    }
    if (mpz_class(r) > cert.degree_bound) cert.degree_audit_holds = false;
    if (mpz_class(rel.preimage_degree) > cert.coefficient_bound) {
      cert.coefficient_audit_holds = false;
    }
    cert.relations.push_back(std::move(rel));
  }
  result.integral = true;
  result.certificate = std::move(cert);
  return result;
}

std::optional<PolyEndo> invert_poly_endo(const PolyEndo& phi, const GbBudget& budget) {
  const std::size_t n = phi.n();
  const FieldCtx ctx = phi.ctx();
  if (2 * n > kMaxVariables) throw InvalidArgument("too many variables to invert");
  std::vector<std::size_t> place(n);
  std::iota(place.begin(), place.end(), std::size_t{0});
  std::vector<Poly> ideal;
  for (std::size_t i = 0; i < n; ++i) {
    ideal.push_back(Poly::variable(2 * n, ctx, n + i) - phi.images()[i].embed(2 * n, place));
  }
  GroebnerBasis gb = buchberger(ideal, TermOrder::lex(2 * n), budget);

  std::vector<std::optional<Poly>> inverse(n);
  for (const auto& g : gb.generators()) {
    const Monomial lm = leading_monomial(g, gb.order());
    if (lm.total_degree() != 1 || lm.partial_degree(0, n) != 1) continue;
    std::size_t i = 0;
    while (lm[i] == 0) ++i;
    const Poly tail = Poly::variable(2 * n, ctx, i) - g;
    if (involves_range(tail, 0, n)) continue;
    inverse[i] = project(tail, n, n);
  }
  std::vector<Poly> img;
  for (auto& g : inverse) {
    if (!g) return std::nullopt;
    img.push_back(std::move(*g));
  }
  PolyEndo psi(std::move(img));
  if (!compose(phi, psi).is_identity() || !compose(psi, phi).is_identity()) {
    throw InternalError("Groebner inverse does not compose to the identity");
  }
  const unsigned deg = poly_endo_degree(phi);
  const mpz_class bound = n == 0 ? mpz_class(1) : mpz_pow(deg, n - 1);
  if (mpz_class(poly_endo_degree(psi)) > bound) {
    throw InternalError("inverse degree exceeds deg(phi)^(n-1)");
  }
  return psi;
}

}  // namespace weylforge
