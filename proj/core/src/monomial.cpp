#include "weylforge/monomial.hpp"

#include <algorithm>
#include <atomic>
#include <string>

#include "weylforge/error.hpp"

namespace weylforge {

namespace {

std::atomic<unsigned> g_degree_limit{10000};

void check_size(std::size_t size) {
  if (size > kMaxVariables) {
    throw InvalidArgument("at most " + std::to_string(kMaxVariables) +
                          " exponent slots are supported, got " + std::to_string(size));
  }
}

}  // namespace

unsigned degree_limit() { return g_degree_limit.load(std::memory_order_relaxed); }

void set_degree_limit(unsigned limit) {
  if (limit > 65535) throw InvalidArgument("degree limit must not exceed 65535");
  g_degree_limit.store(limit, std::memory_order_relaxed);
}

Monomial::Monomial(std::size_t size) : size_(static_cast<std::uint8_t>(size)) {
  check_size(size);
}

Monomial::Monomial(std::initializer_list<unsigned> exponents)
    : Monomial(std::span<const unsigned>(exponents.begin(), exponents.size())) {}

Monomial::Monomial(std::span<const unsigned> exponents) : Monomial(exponents.size()) {
  for (std::size_t i = 0; i < exponents.size(); ++i) set(i, exponents[i]);
}

void Monomial::set(std::size_t i, unsigned e) {
  if (e > degree_limit()) {
    throw DegreeLimitExceeded("exponent " + std::to_string(e) + " exceeds degree limit " +
                              std::to_string(degree_limit()));
  }
  exps_[i] = static_cast<std::uint16_t>(e);
}

unsigned Monomial::total_degree() const { return partial_degree(0, size_); }

unsigned Monomial::partial_degree(std::size_t first, std::size_t last) const {
  unsigned s = 0;
  for (std::size_t i = first; i < last; ++i) s += exps_[i];
  return s;
}

bool Monomial::is_one() const {
  for (std::size_t i = 0; i < size_; ++i) {
    if (exps_[i] != 0) return false;
  }
  return true;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial out(size_);
  unsigned total = 0;
  for (std::size_t i = 0; i < size_; ++i) {
    const unsigned e = unsigned{exps_[i]} + other.exps_[i];
    total += e;
    out.exps_[i] = static_cast<std::uint16_t>(e);
  }
  if (total > degree_limit()) {
    throw DegreeLimitExceeded("monomial degree " + std::to_string(total) +
                              " exceeds degree limit " + std::to_string(degree_limit()));
  }
  return out;
}

bool Monomial::divides(const Monomial& other) const {
  for (std::size_t i = 0; i < size_; ++i) {
    if (exps_[i] > other.exps_[i]) return false;
  }
  return true;
}

Monomial Monomial::quotient_of(const Monomial& other) const {
  Monomial out(size_);
  for (std::size_t i = 0; i < size_; ++i) {
    out.exps_[i] = static_cast<std::uint16_t>(other.exps_[i] - exps_[i]);
  }
  return out;
}

Monomial Monomial::lcm(const Monomial& other) const {
  Monomial out(size_);
  for (std::size_t i = 0; i < size_; ++i) out.exps_[i] = std::max(exps_[i], other.exps_[i]);
  return out;
}

bool Monomial::coprime(const Monomial& other) const {
  for (std::size_t i = 0; i < size_; ++i) {
    if (exps_[i] != 0 && other.exps_[i] != 0) return false;
  }
  return true;
}

std::size_t Monomial::hash() const {
  // FNV-1a over the used slots.
  std::uint64_t h = 1469598103934665603ull;
  for (std::size_t i = 0; i < size_; ++i) {
    h ^= exps_[i];
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h);
}

int grlex_compare(const Monomial& a, const Monomial& b) {
  const unsigned da = a.total_degree();
  const unsigned db = b.total_degree();
  if (da != db) return da < db ? -1 : 1;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  }
  return 0;
}

void canonicalize_terms(std::vector<Term>& terms) {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) {
    return grlex_compare(a.first, b.first) > 0;
  });
  std::size_t out = 0;
  for (std::size_t i = 0; i < terms.size();) {
    std::size_t j = i + 1;
    Scalar c = std::move(terms[i].second);
    while (j < terms.size() && terms[j].first == terms[i].first) {
      c += terms[j].second;
      ++j;
    }
    if (!c.is_zero()) {
      terms[out].first = terms[i].first;
      terms[out].second = std::move(c);
      ++out;
    }
    i = j;
  }
  terms.resize(out);
}

std::vector<Term> merge_terms(const std::vector<Term>& a, const std::vector<Term>& b,
                              bool subtract) {
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
      cmp = grlex_compare(a[i].first, b[j].first);
    }
    if (cmp > 0) {
      out.push_back(a[i++]);
    } else if (cmp < 0) {
      out.emplace_back(b[j].first, subtract ? -b[j].second : b[j].second);
      ++j;
    } else {
      Scalar c = subtract ? a[i].second - b[j].second : a[i].second + b[j].second;
      if (!c.is_zero()) out.emplace_back(a[i].first, std::move(c));
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace weylforge
