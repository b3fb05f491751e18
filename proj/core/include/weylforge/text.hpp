#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "weylforge/poly.hpp"
#include "weylforge/weyl.hpp"

namespace weylforge {

/// Variable names for a ring. Weyl rings always use x1..xn, d1..dn.
struct RingDescriptor {
  enum class Kind { Weyl, Poly };
  Kind kind = Kind::Weyl;
  std::size_t n = 0;
  FieldCtx ctx;
  /// One name per slot (2n for Weyl rings).
  std::vector<std::string> names;

  static RingDescriptor weyl(std::size_t n, FieldCtx ctx);
  /// x1..xn.
  static RingDescriptor poly(std::size_t n, FieldCtx ctx);
  /// X1..Xn, Y1..Yn for the center k[x^p, d^p].
  static RingDescriptor center(std::size_t n, FieldCtx ctx);
  static RingDescriptor named(std::vector<std::string> names, FieldCtx ctx);

  std::size_t slots() const { return names.size(); }
};

/// Grammar: [sign] term ((+|-) term)*, term := [coeff] [*] factor (* factor)*,
/// coeff := int | int/int, factor := name [^ nat]. In a Weyl ring the factors
/// multiply in the order written.
WeylElement parse_weyl(std::string_view text, std::size_t n, FieldCtx ctx);
/// As parse_weyl, with error positions shifted by `offset`.
WeylElement parse_weyl_at(std::string_view text, std::size_t n, FieldCtx ctx, std::size_t offset);
Poly parse_poly(std::string_view text, const RingDescriptor& ring);
std::variant<WeylElement, Poly> parse_expr(std::string_view text, const RingDescriptor& ring);

/// Largest index k among names like x<k> or d<k>; 0 when none appear.
std::size_t max_variable_index(std::string_view text);

std::string to_string(const WeylElement& a);
std::string to_string(const Poly& f, const RingDescriptor& ring);
/// Uses x1..xn.
std::string to_string(const Poly& f);

/// `ring weyl n=2 char=0` followed by `x1 -> ...` and `d1 -> ...` lines.
/// Blank lines and `#` comments are ignored.
using Endomorphism = std::variant<WeylEndo, PolyEndo>;

Endomorphism parse_endo_file(std::string_view text);
std::string print_endo_file(const WeylEndo& phi);
std::string print_endo_file(const PolyEndo& phi);
std::string print_endo_file(const Endomorphism& phi);

/// Canonical serialization used for fingerprints.
std::string canonical_text(const WeylEndo& phi);

/// 64-bit FNV-1a, rendered as 16 hex digits.
std::string fnv1a_hex(std::string_view bytes);

}  // namespace weylforge
