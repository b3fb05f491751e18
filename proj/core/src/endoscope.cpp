#include "weylforge/endoscope.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cstdlib>
#include <map>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "weylforge/charp.hpp"
#include "weylforge/error.hpp"
#include "weylforge/linsolve.hpp"
#include "weylforge/text.hpp"

namespace weylforge {

namespace {

struct GrlexDescending {
  bool operator()(const Monomial& a, const Monomial& b) const { return grlex_compare(a, b) > 0; }
};

/// All monomials in `slots` variables of total degree <= bound, by degree.
std::vector<Monomial> monomials_up_to(std::size_t slots, unsigned bound) {
  std::vector<Monomial> out;
  Monomial current(slots);
  // Exponent vectors of exact degree d, lexicographically.
  auto fill = [&](auto&& self, std::size_t slot, unsigned remaining) -> void {
    if (slot + 1 == slots) {
      current.set(slot, remaining);
      out.push_back(current);
      return;
    }
    for (unsigned e = remaining + 1; e-- > 0;) {
      current.set(slot, e);
      self(self, slot + 1, remaining - e);
    }
    current.set(slot, 0);
  };
  for (unsigned d = 0; d <= bound; ++d) fill(fill, 0, d);
  return out;
}

std::size_t env_size(const char* name, std::size_t fallback) {
  const char* raw = std::getenv(name);
  if (raw == nullptr || *raw == '\0') return fallback;
  std::size_t v = 0;
  for (const char* c = raw; *c; ++c) {
    if (!std::isdigit(static_cast<unsigned char>(*c))) {
      throw InvalidArgument(std::string(name) + " must be a non-negative integer");
    }
    v = v * 10 + static_cast<std::size_t>(*c - '0');
  }
  return v;
}

WeylElement generator(const WeylEndo& phi, std::size_t family, std::size_t i) {
  return family == 0 ? WeylElement::x(phi.n(), phi.ctx(), i)
                     : WeylElement::d(phi.n(), phi.ctx(), i);
}

std::string center_poly_text(const Poly& f) {
  return to_string(f, RingDescriptor::center(f.n() / 2, f.ctx()));
}

std::string center_map_text(const PolyEndo& map) {
  const std::size_t n = map.n() / 2;
  const RingDescriptor ring = RingDescriptor::center(n, map.ctx());
  std::string out;
  for (std::size_t s = 0; s < map.n(); ++s) {
    if (s) out += "; ";
    out += ring.names[s] + " -> " + to_string(map.images()[s], ring);
  }
  return out;
}

std::string weyl_map_text(const WeylEndo& map) {
  std::string out;
  for (std::size_t i = 0; i < map.n(); ++i) {
    if (i) out += "; ";
    out += "x" + std::to_string(i + 1) + " -> " + to_string(map.ximg()[i]);
  }
  for (std::size_t i = 0; i < map.n(); ++i) {
    out += "; d" + std::to_string(i + 1) + " -> " + to_string(map.dimg()[i]);
  }
  return out;
}

RingDescriptor minimal_ring(std::size_t m, FieldCtx ctx) {
  std::vector<std::string> names{"t"};
  for (std::size_t j = 1; j <= m; ++j) names.push_back("t" + std::to_string(j));
  return RingDescriptor::named(std::move(names), ctx);
}

std::vector<std::string> minimal_texts(const IntegralityCertificate& cert) {
  std::vector<std::string> out;
  for (const auto& rel : cert.relations) {
    out.push_back(to_string(rel.minimal, minimal_ring(rel.minimal.n() - 1, rel.minimal.ctx())));
  }
  return out;
}

template <class Fn>
void downgrade_on_budget(PrimeRecord& record, const char* stage, Fn&& fn, Verdict& verdict) {
  try {
    fn();
  } catch (const BudgetExceeded& e) {
    verdict = Verdict::Inconclusive;
    record.notice += std::string(record.notice.empty() ? "" : "; ") + stage + ": " + e.what();
  } catch (const DegreeLimitExceeded& e) {
    verdict = Verdict::Inconclusive;
    record.notice += std::string(record.notice.empty() ? "" : "; ") + stage + ": " + e.what();
  }
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Yes:
      return "yes";
    case Verdict::No:
      return "no";
    case Verdict::Inconclusive:
      break;
  }
  return "inconclusive(budget)";
}

std::string to_string(Side side) { return side == Side::Left ? "left" : "right"; }

GabberAudit verify_gabber_bound(const PolyEndo& phi, const GbBudget& budget) {
  GabberAudit audit;
  audit.degree = poly_endo_degree(phi);
  audit.bound = mpz_pow(audit.degree, phi.n() - 1);
  try {
    audit.inverse = invert_poly_endo(phi, budget);
  } catch (const BudgetExceeded& e) {
    audit.note = e.what();
    return audit;
  } catch (const DegreeLimitExceeded& e) {
    audit.note = e.what();
    return audit;
  }
  if (!audit.inverse) {
    audit.automorphism = Verdict::No;
    audit.note = "not an automorphism";
    return audit;
  }
  audit.automorphism = Verdict::Yes;
  audit.inverse_degree = poly_endo_degree(*audit.inverse);
  audit.holds = mpz_class(*audit.inverse_degree) <= audit.bound;
  return audit;
}

WeylInverseAudit verify_weyl_inverse_bound(const WeylEndo& phi, const WeylEndo& psi) {
  if (phi.n() != psi.n() || phi.ctx() != psi.ctx()) {
    throw Mismatch("endomorphisms live in different Weyl algebras");
  }
  if (!compose_endo(phi, psi).is_identity() || !compose_endo(psi, phi).is_identity()) {
    throw NotInverse("maps are not mutually inverse");
  }
  WeylInverseAudit audit;
  audit.degree = endo_degree(phi);
  audit.inverse_degree = endo_degree(psi);
  audit.bound = mpz_pow(audit.degree, 2 * phi.n() - 1);
  audit.holds = mpz_class(audit.inverse_degree) <= audit.bound;
  return audit;
}

std::vector<EtaleWindowRecord> etale_window_check(const WeylEndo& phi,
                                                  std::span<const std::uint32_t> primes) {
  std::vector<std::uint32_t> todo;
  if (phi.ctx().is_prime_field()) {
    todo.push_back(phi.ctx().characteristic());
  } else {
    todo.assign(primes.begin(), primes.end());
    std::sort(todo.begin(), todo.end());
    todo.erase(std::unique(todo.begin(), todo.end()), todo.end());
  }
  std::vector<EtaleWindowRecord> out;
  for (const std::uint32_t p : todo) {
    EtaleWindowRecord rec;
    rec.prime = p;
    std::optional<WeylEndo> bar;
    if (phi.ctx().is_prime_field()) {
      bar = phi;
    } else {
      try {
        bar = reduce_endo_mod_p(phi, p);
      } catch (const BadPrime& e) {
        rec.skipped = true;
        rec.notice = e.what();
      } catch (const InvalidArgument& e) {
        rec.skipped = true;
        rec.notice = e.what();
      }
    }
    if (bar) {
      rec.degree = endo_degree(*bar);
      rec.in_window = static_cast<std::uint64_t>(p) > 2ULL * rec.degree;
      rec.jacobian = jacobian_det(restrict_center(*bar));
      rec.etale = rec.jacobian->is_constant() && !rec.jacobian->is_zero();
      rec.violation = rec.in_window && !rec.etale;
    }
    out.push_back(std::move(rec));
  }
  return out;
}

bool generation_verify(const GenerationCertificate& cert, const WeylEndo& phi) {
  const std::size_t n = phi.n();
  const std::size_t m = cert.generators.size();
  const bool has_one = std::any_of(cert.generators.begin(), cert.generators.end(),
                                   [&](const WeylElement& g) {
                                     return g.n() == n && g.ctx() == phi.ctx() &&
                                            g == WeylElement::one(n, phi.ctx());
                                   });
  if (!has_one) throw MalformedCertificate("generator set does not contain 1");
  for (const auto& g : cert.generators) {
    if (g.n() != n || g.ctx() != phi.ctx()) {
      throw MalformedCertificate("generator lives in a different Weyl algebra");
    }
  }
  for (const auto* family : {&cert.x_coeffs, &cert.d_coeffs}) {
    if (family->size() != n) throw MalformedCertificate("coefficient table has wrong rank");
    for (const auto& row : *family) {
      if (row.size() != m) throw MalformedCertificate("coefficient table has wrong width");
      for (const auto& cell : row) {
        if (cell.size() != m) throw MalformedCertificate("coefficient table has wrong depth");
        for (const auto& a : cell) {
          if (a.n() != n || a.ctx() != phi.ctx()) {
            throw MalformedCertificate("coefficient lives in a different Weyl algebra");
          }
          if (!a.is_zero() && a.degree() > cert.cutoff) {
            throw MalformedCertificate("coefficient degree exceeds the cutoff");
          }
        }
      }
    }
  }

  for (std::size_t family = 0; family < 2; ++family) {
    const auto& table = family == 0 ? cert.x_coeffs : cert.d_coeffs;
    for (std::size_t i = 0; i < n; ++i) {
      const WeylElement v = generator(phi, family, i);
      for (std::size_t j = 0; j < m; ++j) {
        const WeylElement& g = cert.generators[j];
        WeylElement lhs = cert.side == Side::Left ? g * v : v * g;
        WeylElement rhs(n, phi.ctx());
        for (std::size_t l = 0; l < m; ++l) {
          const WeylElement image = apply_endo(phi, table[i][j][l]);
          rhs += cert.side == Side::Left ? image * cert.generators[l]
                                         : cert.generators[l] * image;
        }
        if (lhs != rhs) return false;
      }
    }
  }
  return true;
}

GenerationOptions GenerationOptions::from_env() {
  GenerationOptions o;
  o.max_unknowns = env_size("WEYLFORGE_UNKNOWN_BUDGET", o.max_unknowns);
  return o;
}

unsigned generation_target_degree(const WeylEndo& phi, std::span<const WeylElement> generators,
                                  unsigned cutoff) {
  unsigned gdeg = 0;
  for (const auto& g : generators) {
    if (!g.is_zero()) gdeg = std::max(gdeg, g.degree());
  }
  return cutoff * endo_degree(phi) + gdeg + 1;
}

std::optional<GenerationCertificate> generation_solve(const WeylEndo& phi,
                                                      std::span<const WeylElement> generators,
                                                      unsigned cutoff, Side side,
                                                      const GenerationOptions& options) {
  const std::size_t n = phi.n();
  const FieldCtx ctx = phi.ctx();
  const std::size_t m = generators.size();
  if (std::none_of(generators.begin(), generators.end(), [&](const WeylElement& g) {
        return g.n() == n && g.ctx() == ctx && g == WeylElement::one(n, ctx);
      })) {
    throw InvalidArgument("generator set must contain 1");
  }
  for (const auto& g : generators) {
    if (g.n() != n || g.ctx() != ctx) throw Mismatch("generator lives in a different algebra");
  }

  // Count before enumerating so oversized requests fail fast.
  mpz_class monomial_count = 1;
  for (std::size_t k = 1; k <= 2 * n; ++k) {
    monomial_count = monomial_count * (cutoff + k) / k;
  }
  const mpz_class unknowns = monomial_count * static_cast<unsigned long>(m);
  if (unknowns > mpz_class(static_cast<unsigned long>(options.max_unknowns))) {
    throw BudgetExceeded("generation system needs " + unknowns.get_str() +
                         " unknowns, budget is " + std::to_string(options.max_unknowns));
  }

  const std::vector<Monomial> basis = monomials_up_to(2 * n, cutoff);
  const std::size_t M = basis.size();
  const std::size_t columns = M * m;
  const std::size_t rhs_count = 2 * n * m;
  const unsigned target = generation_target_degree(phi, generators, cutoff);

  std::map<Monomial, SparseRow, GrlexDescending> rows;
  auto deposit = [&](const WeylElement& e, std::size_t column) {
    for (const auto& [mono, c] : e.terms()) {
      if (mono.total_degree() > target) {
        throw InternalError("generation system left its target degree");
      }
      rows[mono].emplace(column, c);
    }
  };

  std::vector<WeylElement> images;
  images.reserve(M);
  for (const auto& mono : basis) {
    images.push_back(apply_endo(phi, WeylElement::monomial(n, ctx, mono, Scalar::one(ctx))));
  }
  for (std::size_t l = 0; l < m; ++l) {
    for (std::size_t k = 0; k < M; ++k) {
      deposit(side == Side::Left ? images[k] * generators[l] : generators[l] * images[k],
              l * M + k);
    }
  }
  for (std::size_t family = 0; family < 2; ++family) {
    for (std::size_t i = 0; i < n; ++i) {
      const WeylElement v = generator(phi, family, i);
      for (std::size_t j = 0; j < m; ++j) {
        deposit(side == Side::Left ? generators[j] * v : v * generators[j],
                columns + (family * n + i) * m + j);
      }
    }
  }

  std::vector<SparseRow> system;
  system.reserve(rows.size());
  for (auto& [mono, row] : rows) system.push_back(std::move(row));
  const auto solutions = solve_linear_systems(system, columns, rhs_count, ctx);

  GenerationCertificate cert;
  cert.side = side;
  cert.cutoff = cutoff;
  cert.generators.assign(generators.begin(), generators.end());
  const auto empty_table = std::vector<std::vector<std::vector<WeylElement>>>(
      n, std::vector<std::vector<WeylElement>>(m, std::vector<WeylElement>(m, WeylElement(n, ctx))));
  cert.x_coeffs = empty_table;
  cert.d_coeffs = empty_table;
  for (std::size_t family = 0; family < 2; ++family) {
    auto& table = family == 0 ? cert.x_coeffs : cert.d_coeffs;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        const auto& sol = solutions[(family * n + i) * m + j];
        if (!sol) return std::nullopt;
        for (std::size_t l = 0; l < m; ++l) {
          std::vector<Term> terms;
          for (std::size_t k = 0; k < M; ++k) {
            const Scalar& c = (*sol)[l * M + k];
            if (!c.is_zero()) terms.emplace_back(basis[k], c);
          }
          table[i][j][l] = WeylElement::from_terms(n, ctx, std::move(terms));
        }
      }
    }
  }
  if (!generation_verify(cert, phi)) {
    throw InternalError("generation solver produced a certificate that does not verify");
  }
  return cert;
}

PrimeRecord probe_at_prime(const WeylEndo& phi_bar, const ProbeOptions& options) {
  if (!phi_bar.ctx().is_prime_field()) {
    throw WrongCharacteristic("probe_at_prime needs a map over a prime field");
  }
  PrimeRecord rec;
  rec.prime = phi_bar.ctx().characteristic();
  rec.relation_ok = check_weyl_relations(phi_bar.ximg(), phi_bar.dimg()) ? Verdict::Yes
                                                                          : Verdict::No;
  rec.degree = endo_degree(phi_bar);
  rec.in_window = static_cast<std::uint64_t>(rec.prime) > 2ULL * rec.degree;
  if (rec.relation_ok != Verdict::Yes) {
    rec.etale = rec.finite = rec.invertible = rec.weyl_inverse = Verdict::No;
    rec.conclusion = "images violate the Weyl relations";
    return rec;
  }

  Verdict center_ok = Verdict::Yes;
  downgrade_on_budget(
      rec, "center", [&] { rec.center_map = restrict_center(phi_bar); }, center_ok);
  if (center_ok != Verdict::Yes) {
    rec.conclusion = "undecided within budget";
    return rec;
  }
  rec.center_degree = poly_endo_degree(*rec.center_map);

  downgrade_on_budget(
      rec, "etale",
      [&] {
        rec.jacobian = jacobian_det(*rec.center_map);
        rec.etale = rec.jacobian->is_constant() && !rec.jacobian->is_zero() ? Verdict::Yes
                                                                            : Verdict::No;
      },
      rec.etale);
  rec.window_violation = rec.in_window && rec.etale == Verdict::No;

  downgrade_on_budget(
      rec, "finite",
      [&] {
        IntegralityResult r = integrality_test(*rec.center_map, options.gb);
        rec.finite = r.integral ? Verdict::Yes : Verdict::No;
        rec.finite_reason = r.reason;
        rec.finite_certificate = std::move(r.certificate);
      },
      rec.finite);

  GabberAudit gabber = verify_gabber_bound(*rec.center_map, options.gb);
  rec.invertible = gabber.automorphism;
  if (gabber.automorphism == Verdict::Inconclusive) {
    rec.notice += std::string(rec.notice.empty() ? "" : "; ") + "invertible: " + gabber.note;
  }
  rec.center_inverse = gabber.inverse;
  rec.center_gabber = std::move(gabber);

  if (rec.invertible == Verdict::No) {
    rec.weyl_inverse = Verdict::No;
    rec.conclusion = "not an automorphism: the center restriction is not invertible";
    return rec;
  }
  if (rec.invertible == Verdict::Inconclusive) {
    rec.conclusion = "undecided within budget";
    return rec;
  }
  rec.conclusion = "automorphism: the center restriction is invertible";

  const WeylElement one = WeylElement::one(phi_bar.n(), phi_bar.ctx());
  downgrade_on_budget(
      rec, "weyl-inverse",
      [&] {
        auto cert = generation_solve(phi_bar, std::span<const WeylElement>(&one, 1),
                                     options.cutoff, Side::Left, options.generation);
        if (!cert) {
          rec.weyl_inverse = Verdict::Inconclusive;
          rec.notice += std::string(rec.notice.empty() ? "" : "; ") +
                        "weyl-inverse: none at cutoff " + std::to_string(options.cutoff);
          return;
        }
        std::vector<WeylElement> a, b;
        for (std::size_t i = 0; i < phi_bar.n(); ++i) {
          a.push_back(cert->x_coeffs[i][0][0]);
          b.push_back(cert->d_coeffs[i][0][0]);
        }
        try {
          WeylEndo psi(std::move(a), std::move(b));
          rec.weyl_inverse_audit = verify_weyl_inverse_bound(phi_bar, psi);
          rec.weyl_inverse_map = std::move(psi);
          rec.weyl_inverse = Verdict::Yes;
        } catch (const Error& e) {
          // Only a one-sided inverse: phi(a) = x, phi(b) = d.
          rec.weyl_inverse = Verdict::Inconclusive;
          rec.notice += std::string(rec.notice.empty() ? "" : "; ") + "weyl-inverse: " + e.what();
        }
      },
      rec.weyl_inverse);
  return rec;
}

ProbeReport dixmier_probe(const WeylEndo& phi, std::span<const std::uint32_t> primes,
                          const ProbeOptions& options) {
  ProbeReport report;
  report.fingerprint = fnv1a_hex(canonical_text(phi));
  report.n = phi.n();
  report.characteristic = phi.ctx().characteristic();
  report.degree = endo_degree(phi);
  report.cutoff = options.cutoff;

  std::vector<std::uint32_t> todo;
  if (phi.ctx().is_prime_field()) {
    todo.push_back(phi.ctx().characteristic());
  } else {
    todo.assign(primes.begin(), primes.end());
    std::sort(todo.begin(), todo.end());
    todo.erase(std::unique(todo.begin(), todo.end()), todo.end());
  }

  std::vector<PrimeRecord> records(todo.size());
  auto work = [&](std::size_t k) {
    const std::uint32_t p = todo[k];
    if (phi.ctx().is_prime_field()) {
      records[k] = probe_at_prime(phi, options);
      return;
    }
    std::optional<WeylEndo> bar;
    try {
      bar = reduce_endo_mod_p(phi, p);
    } catch (const BadPrime& e) {
      records[k].notice = e.what();
    } catch (const InvalidArgument& e) {
      records[k].notice = e.what();
    }
    if (!bar) {
      records[k].prime = p;
      records[k].skipped = true;
      records[k].conclusion = "skipped";
      return;
    }
    records[k] = probe_at_prime(*bar, options);
  };

  const std::size_t jobs = std::max<std::size_t>(1, std::min(options.jobs, todo.size()));
  if (jobs == 1) {
    for (std::size_t k = 0; k < todo.size(); ++k) work(k);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(jobs);
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < jobs; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t k = next++; k < todo.size(); k = next++) work(k);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }
  report.primes = std::move(records);
  return report;
}

std::string probe_text(const ProbeReport& report) {
  std::ostringstream os;
  os << "probe fingerprint=" << report.fingerprint << " n=" << report.n
     << " char=" << report.characteristic << " degree=" << report.degree
     << " cutoff=" << report.cutoff << "\n";
  for (const auto& r : report.primes) {
    os << "prime " << r.prime << "\n";
    if (r.skipped) {
      os << "  skipped: " << r.notice << "\n";
      continue;
    }
    os << "  relations: " << to_string(r.relation_ok) << "\n";
    os << "  degree: " << r.degree << "\n";
    if (r.center_map) {
      os << "  center: " << center_map_text(*r.center_map) << "\n";
      os << "  center-degree: " << r.center_degree << "\n";
    }
    os << "  window: p " << (r.in_window ? ">" : "<=") << " 2*deg = " << 2 * r.degree
       << (r.in_window ? " (asserted)" : " (unasserted)")
       << (r.window_violation ? " VIOLATED" : "") << "\n";
    os << "  etale: " << to_string(r.etale);
    if (r.jacobian) os << " (jacobian " << center_poly_text(*r.jacobian) << ")";
    os << "\n";
    os << "  finite: " << to_string(r.finite);
    if (!r.finite_reason.empty()) os << " (" << r.finite_reason << ")";
    os << "\n";
    if (r.finite_certificate) {
      const auto& c = *r.finite_certificate;
      const auto texts = minimal_texts(c);
      for (std::size_t k = 0; k < texts.size(); ++k) {
        os << "  finite-relation " << k + 1 << ": " << texts[k] << "\n";
      }
      os << "  finite-audit: degree bound " << c.degree_bound.get_str()
         << (c.degree_audit_holds ? " holds" : " VIOLATED") << ", coefficient bound "
         << c.coefficient_bound.get_str() << (c.coefficient_audit_holds ? " holds" : " VIOLATED")
         << "\n";
    }
    os << "  invertible: " << to_string(r.invertible) << "\n";
    if (r.center_inverse) os << "  center-inverse: " << center_map_text(*r.center_inverse) << "\n";
    if (r.center_gabber && r.center_gabber->inverse_degree) {
      os << "  gabber: " << *r.center_gabber->inverse_degree << " <= "
         << r.center_gabber->bound.get_str() << (r.center_gabber->holds ? " holds" : " VIOLATED")
         << "\n";
    }
    os << "  weyl-inverse: " << to_string(r.weyl_inverse) << "\n";
    if (r.weyl_inverse_map) os << "  weyl-inverse-map: " << weyl_map_text(*r.weyl_inverse_map) << "\n";
    if (r.weyl_inverse_audit) {
      os << "  invbound: " << r.weyl_inverse_audit->inverse_degree << " <= "
         << r.weyl_inverse_audit->bound.get_str()
         << (r.weyl_inverse_audit->holds ? " holds" : " VIOLATED") << "\n";
    }
    if (!r.notice.empty()) os << "  notice: " << r.notice << "\n";
    os << "  conclusion: " << r.conclusion << "\n";
  }
  return os.str();
}

std::string probe_records(const ProbeReport& report) {
  std::string out;
  for (const auto& r : report.primes) {
    nlohmann::ordered_json j;
    j["fingerprint"] = report.fingerprint;
    j["prime"] = r.prime;
    j["skipped"] = r.skipped;
    j["relation_ok"] = to_string(r.relation_ok);
    j["degree"] = r.degree;
    j["in_window"] = r.in_window;
    j["window_violation"] = r.window_violation;
    j["center"] = r.center_map ? center_map_text(*r.center_map) : "";
    j["etale"] = to_string(r.etale);
    j["jacobian"] = r.jacobian ? center_poly_text(*r.jacobian) : "";
    j["finite"] = to_string(r.finite);
    j["finite_reason"] = r.finite_reason;
    j["finite_relations"] =
        r.finite_certificate ? minimal_texts(*r.finite_certificate) : std::vector<std::string>{};
    j["invertible"] = to_string(r.invertible);
    j["center_inverse"] = r.center_inverse ? center_map_text(*r.center_inverse) : "";
    j["gabber_holds"] = !r.center_gabber || r.center_gabber->holds;
    j["weyl_inverse"] = to_string(r.weyl_inverse);
    j["weyl_inverse_map"] = r.weyl_inverse_map ? weyl_map_text(*r.weyl_inverse_map) : "";
    j["invbound_holds"] = !r.weyl_inverse_audit || r.weyl_inverse_audit->holds;
    j["notice"] = r.notice;
    j["conclusion"] = r.conclusion;
    out += j.dump() + "\n";
  }
  return out;
}

std::string print_certificate(const GenerationCertificate& cert, FieldCtx ctx) {
  const std::size_t n = cert.x_coeffs.size();
  std::ostringstream os;
  os << "certificate side=" << to_string(cert.side) << " n=" << n
     << " char=" << ctx.characteristic() << " cutoff=" << cert.cutoff
     << " generators=" << cert.generators.size() << "\n";
  for (std::size_t j = 0; j < cert.generators.size(); ++j) {
    os << "g" << j + 1 << " -> " << to_string(cert.generators[j]) << "\n";
  }
  for (std::size_t family = 0; family < 2; ++family) {
    const auto& table = family == 0 ? cert.x_coeffs : cert.d_coeffs;
    for (std::size_t i = 0; i < table.size(); ++i) {
      for (std::size_t j = 0; j < table[i].size(); ++j) {
        for (std::size_t l = 0; l < table[i][j].size(); ++l) {
          os << (family == 0 ? "a[" : "b[") << i + 1 << "," << j + 1 << "," << l + 1
             << "] -> " << to_string(table[i][j][l]) << "\n";
        }
      }
    }
  }
  return os.str();
}

GenerationCertificate parse_certificate(std::string_view text) {
  struct Line {
    std::string_view body;
    std::size_t offset;
  };
  std::vector<Line> lines;
  for (std::size_t start = 0; start <= text.size();) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    std::size_t lead = 0;
    while (lead < line.size() && std::isspace(static_cast<unsigned char>(line[lead]))) ++lead;
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) {
      line.remove_suffix(1);
    }
    if (lead < line.size()) lines.push_back({line.substr(lead), start + lead});
    start = end + 1;
  }
  if (lines.empty()) throw ParseError("missing certificate header", 0);

  std::map<std::string, std::string> header;
  {
    std::istringstream is{std::string(lines[0].body)};
    std::string word;
    is >> word;
    if (word != "certificate") throw ParseError("expected 'certificate'", lines[0].offset);
    while (is >> word) {
      const auto eq = word.find('=');
      if (eq == std::string::npos) throw ParseError("expected key=value", lines[0].offset);
      header[word.substr(0, eq)] = word.substr(eq + 1);
    }
  }
  auto number = [&](const std::string& key) -> std::uint64_t {
    const auto it = header.find(key);
    if (it == header.end() || it->second.empty() ||
        !std::all_of(it->second.begin(), it->second.end(),
                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }) ||
        it->second.size() > 12) {
      throw ParseError("header needs " + key + "=<int>", lines[0].offset);
    }
    return std::stoull(it->second);
  };
  GenerationCertificate cert;
  const auto side = header.find("side");
  if (side == header.end() || (side->second != "left" && side->second != "right")) {
    throw ParseError("header needs side=left|right", lines[0].offset);
  }
  cert.side = side->second == "left" ? Side::Left : Side::Right;
  const std::size_t n = number("n");
  FieldCtx ctx;
  try {
    ctx = FieldCtx::from_characteristic(number("char"));
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what(), lines[0].offset);
  }
  cert.cutoff = static_cast<unsigned>(number("cutoff"));
  const std::size_t m = number("generators");
  if (n == 0 || 2 * n > kMaxVariables) throw ParseError("unsupported rank", lines[0].offset);
  if (m == 0 || m > 4096) throw ParseError("unsupported generator count", lines[0].offset);

  std::vector<std::optional<WeylElement>> gens(m);
  using Table = std::vector<std::vector<std::vector<std::optional<WeylElement>>>>;
  Table tables[2] = {Table(n, std::vector<std::vector<std::optional<WeylElement>>>(
                                  m, std::vector<std::optional<WeylElement>>(m))),
                     Table(n, std::vector<std::vector<std::optional<WeylElement>>>(
                                  m, std::vector<std::optional<WeylElement>>(m)))};
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const Line& line = lines[k];
    const auto arrow = line.body.find("->");
    if (arrow == std::string_view::npos) throw ParseError("expected '<key> -> <expr>'", line.offset);
    std::string key(line.body.substr(0, arrow));
    while (!key.empty() && std::isspace(static_cast<unsigned char>(key.back()))) key.pop_back();
    WeylElement value = parse_weyl_at(line.body.substr(arrow + 2), n, ctx, line.offset + arrow + 2);
    std::optional<WeylElement>* slot = nullptr;
    if (key.size() > 1 && key[0] == 'g' &&
        std::all_of(key.begin() + 1, key.end(),
                    [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }) &&
        key.size() < 8) {
      const std::size_t j = std::stoul(key.substr(1));
      if (j >= 1 && j <= m) slot = &gens[j - 1];
    } else if (key.size() > 3 && (key[0] == 'a' || key[0] == 'b') && key[1] == '[' &&
               key.back() == ']') {
      std::size_t i = 0, j = 0, l = 0;
      char tail = 0;
      std::istringstream is(key.substr(2, key.size() - 3));
      char c1 = 0, c2 = 0;
      if ((is >> i >> c1 >> j >> c2 >> l) && c1 == ',' && c2 == ',' && !(is >> tail) && i >= 1 &&
          i <= n && j >= 1 && j <= m && l >= 1 && l <= m) {
        slot = &tables[key[0] == 'a' ? 0 : 1][i - 1][j - 1][l - 1];
      }
    }
    if (slot == nullptr) throw ParseError("unknown certificate key '" + key + "'", line.offset);
    if (*slot) throw ParseError("duplicate certificate key '" + key + "'", line.offset);
    *slot = std::move(value);
  }
  for (std::size_t j = 0; j < m; ++j) {
    if (!gens[j]) throw MalformedCertificate("missing generator g" + std::to_string(j + 1));
    cert.generators.push_back(std::move(*gens[j]));
  }
  for (int family = 0; family < 2; ++family) {
    auto& out = family == 0 ? cert.x_coeffs : cert.d_coeffs;
    out.assign(n, std::vector<std::vector<WeylElement>>(m));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t l = 0; l < m; ++l) {
          auto& cell = tables[family][i][j][l];
          if (!cell) {
            throw MalformedCertificate(std::string("missing coefficient ") +
                                       (family == 0 ? "a[" : "b[") + std::to_string(i + 1) +
                                       "," + std::to_string(j + 1) + "," +
                                       std::to_string(l + 1) + "]");
          }
          out[i][j].push_back(std::move(*cell));
        }
      }
    }
  }
  return cert;
}

}  // namespace weylforge
