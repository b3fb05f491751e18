#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "weylforge/groebner.hpp"
#include "weylforge/poly.hpp"
#include "weylforge/weyl.hpp"

namespace weylforge {

enum class Verdict { Yes, No, Inconclusive };

/// `yes`, `no` or `inconclusive(budget)`.
std::string to_string(Verdict v);

struct GabberAudit {
  /// Inconclusive when the Groebner budget ran out.
  Verdict automorphism = Verdict::Inconclusive;
  unsigned degree = 0;
  std::optional<unsigned> inverse_degree;
  /// deg(phi)^(n-1).
  mpz_class bound;
  bool holds = true;
  std::optional<PolyEndo> inverse;
  std::string note;
};

GabberAudit verify_gabber_bound(const PolyEndo& phi,
                                const GbBudget& budget = GbBudget::from_env());

struct WeylInverseAudit {
  unsigned degree = 0;
  unsigned inverse_degree = 0;
  /// deg(phi)^(2n-1).
  mpz_class bound;
  bool holds = true;
};

/// Throws NotInverse unless psi is a two-sided inverse of phi.
WeylInverseAudit verify_weyl_inverse_bound(const WeylEndo& phi, const WeylEndo& psi);

struct EtaleWindowRecord {
  std::uint32_t prime = 0;
  bool skipped = false;
  std::string notice;
  unsigned degree = 0;
  /// p > 2 deg(phi): the etale verdict is asserted.
  bool in_window = false;
  bool etale = false;
  std::optional<Poly> jacobian;
  bool violation = false;
};

/// Over the rationals every listed prime is tried; a map already over GF(p)
/// is checked at p only.
std::vector<EtaleWindowRecord> etale_window_check(const WeylEndo& phi,
                                                  std::span<const std::uint32_t> primes);

enum class Side { Left, Right };
std::string to_string(Side side);

/// Left: g_j x_i = sum_l phi(a_ijl) g_l and g_j d_i = sum_l phi(b_ijl) g_l.
/// Right: x_i g_j = sum_l g_l phi(a_ijl), likewise for d_i.
struct GenerationCertificate {
  Side side = Side::Left;
  std::vector<WeylElement> generators;
  /// Indexed [i][j][l].
  std::vector<std::vector<std::vector<WeylElement>>> x_coeffs;
  std::vector<std::vector<std::vector<WeylElement>>> d_coeffs;
  unsigned cutoff = 0;
};

/// Exact check of the certificate equations. Throws MalformedCertificate on
/// shape errors, coefficients above the cutoff or 1 missing from G.
bool generation_verify(const GenerationCertificate& cert, const WeylEndo& phi);

struct GenerationOptions {
  std::size_t max_unknowns = 50'000;
  /// Reads WEYLFORGE_UNKNOWN_BUDGET when set.
  static GenerationOptions from_env();
};

/// cutoff * deg(phi) + max deg(g) + 1: every monomial in the linear system
/// has at most this degree.
unsigned generation_target_degree(const WeylEndo& phi, std::span<const WeylElement> generators,
                                  unsigned cutoff);

/// Searches coefficients of degree <= cutoff; nullopt means "none at cutoff".
/// Throws BudgetExceeded when the unknown count exceeds the budget.
std::optional<GenerationCertificate> generation_solve(
    const WeylEndo& phi, std::span<const WeylElement> generators, unsigned cutoff,
    Side side = Side::Left, const GenerationOptions& options = GenerationOptions::from_env());

struct ProbeOptions {
  /// Degree cutoff for the lifted Weyl inverse search.
  unsigned cutoff = 2;
  std::size_t jobs = 1;
  GbBudget gb = GbBudget::from_env();
  GenerationOptions generation = GenerationOptions::from_env();
};

struct PrimeRecord {
  std::uint32_t prime = 0;
  bool skipped = false;
  std::string notice;

  Verdict relation_ok = Verdict::Inconclusive;
  unsigned degree = 0;
  std::optional<PolyEndo> center_map;
  unsigned center_degree = 0;

  Verdict etale = Verdict::Inconclusive;
  std::optional<Poly> jacobian;
  /// p > 2 deg: a non-etale verdict here is a violation.
  bool in_window = false;
  bool window_violation = false;

  Verdict finite = Verdict::Inconclusive;
  std::string finite_reason;
  std::optional<IntegralityCertificate> finite_certificate;

  Verdict invertible = Verdict::Inconclusive;
  std::optional<PolyEndo> center_inverse;
  std::optional<GabberAudit> center_gabber;

  Verdict weyl_inverse = Verdict::Inconclusive;
  std::optional<WeylEndo> weyl_inverse_map;
  std::optional<WeylInverseAudit> weyl_inverse_audit;

  std::string conclusion;
};

struct ProbeReport {
  std::string fingerprint;
  std::size_t n = 0;
  std::uint32_t characteristic = 0;
  unsigned degree = 0;
  unsigned cutoff = 0;
  /// Sorted by prime.
  std::vector<PrimeRecord> primes;
};

/// Analysis of a map already defined over GF(p).
PrimeRecord probe_at_prime(const WeylEndo& phi_bar, const ProbeOptions& options);

/// Reduces phi at each prime and probes the reduction. A map over GF(p) is
/// probed at p only. Per-prime work may run on `options.jobs` threads; the
/// report does not depend on the schedule.
ProbeReport dixmier_probe(const WeylEndo& phi, std::span<const std::uint32_t> primes,
                          const ProbeOptions& options = ProbeOptions{});

/// Line-oriented report.
std::string probe_text(const ProbeReport& report);
/// One JSON object per line and prime, fixed key order.
std::string probe_records(const ProbeReport& report);

/// Certificate file: header `certificate side=left n=1 char=0 cutoff=2
/// generators=1`, then `g<j> -> expr`, `a[i,j,l] -> expr`, `b[i,j,l] -> expr`
/// (1-based indices).
std::string print_certificate(const GenerationCertificate& cert, FieldCtx ctx);
GenerationCertificate parse_certificate(std::string_view text);

}  // namespace weylforge
