#include "weylforge/text.hpp"

#include <cctype>
#include <cstdio>
#include <optional>
#include <sstream>

#include "weylforge/error.hpp"

namespace weylforge {

namespace {

std::vector<std::string> numbered(const std::string& prefix, std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

struct Factor {
  std::size_t slot;
  unsigned exponent;
};

struct ParsedTerm {
  Scalar coeff;
  std::vector<Factor> factors;
};

class Parser {
 public:
  Parser(std::string_view text, const RingDescriptor& ring, std::size_t base)
      : s_(text), ring_(ring), base_(base) {}

  std::vector<ParsedTerm> parse() {
    std::vector<ParsedTerm> out;
    skip_ws();
    if (pos_ >= s_.size()) fail("empty expression");
    bool negative = false;
    if (peek() == '+' || peek() == '-') {
      negative = peek() == '-';
      ++pos_;
    }
    while (true) {
      ParsedTerm t = term();
      if (negative) t.coeff = -t.coeff;
      out.push_back(std::move(t));
      skip_ws();
      if (pos_ >= s_.size()) break;
      const char c = peek();
      if (c != '+' && c != '-') fail(std::string("unexpected character '") + c + "'");
      negative = c == '-';
      ++pos_;
    }
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, base_ + pos_); }

  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  mpz_class integer() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && is_digit(s_[pos_])) ++pos_;
    if (start == pos_) fail("expected an integer");
    return mpz_class(std::string(s_.substr(start, pos_ - start)));
  }

  ParsedTerm term() {
    skip_ws();
    ParsedTerm t{Scalar::one(ring_.ctx), {}};
    bool have_coeff = false;
    if (is_digit(peek())) {
      mpz_class num = integer();
      skip_ws();
      if (peek() == '/') {
        ++pos_;
        skip_ws();
        const std::size_t at = pos_;
        mpz_class den = integer();
        if (den == 0) {
          pos_ = at;
          fail("zero denominator");
        }
        mpq_class q(num, den);
        q.canonicalize();
        t.coeff = Scalar(ring_.ctx, q);
      } else {
        t.coeff = Scalar(ring_.ctx, num);
      }
      have_coeff = true;
      skip_ws();
      if (peek() == '*') {
        ++pos_;
        skip_ws();
        if (!is_ident_start(peek())) fail("expected a variable after '*'");
      }
    }
    skip_ws();
    if (!is_ident_start(peek())) {
      if (!have_coeff) fail("expected a term");
      return t;
    }
    while (true) {
      t.factors.push_back(factor());
      skip_ws();
      if (peek() == '*') {
        ++pos_;
        skip_ws();
      } else if (!is_ident_start(peek())) {
        break;
      }
    }
    return t;
  }

  Factor factor() {
    const std::size_t start = pos_;
    if (!is_ident_start(peek())) fail("expected a variable");
    while (pos_ < s_.size() && is_ident_start(s_[pos_])) ++pos_;
    const std::size_t letters_end = pos_;
    while (pos_ < s_.size() && is_digit(s_[pos_])) ++pos_;
    const std::string name(s_.substr(start, pos_ - start));
    std::optional<std::size_t> slot;
    for (std::size_t i = 0; i < ring_.names.size(); ++i) {
      if (ring_.names[i] == name) {
        slot = i;
        break;
      }
    }
    if (!slot) {
      const std::string prefix(s_.substr(start, letters_end - start));
      const bool family = letters_end != pos_ && [&] {
        for (const auto& known : ring_.names) {
          if (known.size() > prefix.size() && known.compare(0, prefix.size(), prefix) == 0 &&
              is_digit(known[prefix.size()])) {
            return true;
          }
        }
        return false;
      }();
      pos_ = start;
      if (family) fail("variable index out of range in '" + name + "'");
      fail("unknown variable '" + name + "'");
    }
    unsigned e = 1;
    skip_ws();
    if (peek() == '^') {
      ++pos_;
      skip_ws();
      const std::size_t at = pos_;
      mpz_class v = integer();
      if (v > degree_limit()) {
        pos_ = at;
        fail("exponent exceeds the degree limit");
      }
      e = static_cast<unsigned>(v.get_ui());
    }
    return Factor{*slot, e};
  }

  std::string_view s_;
  const RingDescriptor& ring_;
  std::size_t base_;
  std::size_t pos_ = 0;
};

WeylElement build_weyl(const std::vector<ParsedTerm>& terms, std::size_t n, FieldCtx ctx) {
  WeylElement out(n, ctx);
  for (const auto& t : terms) {
    WeylElement prod = WeylElement::constant(n, ctx, t.coeff);
    for (const auto& f : t.factors) {
      Monomial m(2 * n);
      m.set(f.slot, f.exponent);
      prod = prod * WeylElement::monomial(n, ctx, m, Scalar::one(ctx));
    }
    out += prod;
  }
  return out;
}

Poly build_poly(const std::vector<ParsedTerm>& terms, const RingDescriptor& ring) {
  std::vector<Term> out;
  for (const auto& t : terms) {
    Monomial m(ring.slots());
    for (const auto& f : t.factors) {
      const unsigned e = m[f.slot] + f.exponent;
      m.set(f.slot, e);
    }
    out.emplace_back(m, t.coeff);
  }
  return Poly::from_terms(ring.slots(), ring.ctx, std::move(out));
}

RingDescriptor weyl_ring_checked(std::size_t n, FieldCtx ctx) {
  if (n == 0 || 2 * n > kMaxVariables) throw InvalidArgument("unsupported Weyl rank");
  return RingDescriptor::weyl(n, ctx);
}

std::string print_terms(std::span<const Term> terms, const std::vector<std::string>& names) {
  if (terms.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms) {
    bool negative = false;
    Scalar mag = c;
    if (c.ctx().is_rationals() && sgn(c.rational()) < 0) {
      negative = true;
      mag = -c;
    }
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    std::string body;
    for (std::size_t s = 0; s < m.size(); ++s) {
      if (m[s] == 0) continue;
      if (!body.empty()) body += "*";
      body += names[s];
      if (m[s] > 1) body += "^" + std::to_string(m[s]);
    }
    if (body.empty()) {
      out += mag.to_string();
    } else if (mag.is_one()) {
      out += body;
    } else {
      out += mag.to_string() + "*" + body;
    }
  }
  return out;
}

struct Line {
  std::string_view text;
  std::size_t offset;
  std::size_t number;
};

std::vector<Line> content_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t start = 0;
  std::size_t number = 1;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    const std::size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    std::size_t lead = 0;
    while (lead < line.size() && std::isspace(static_cast<unsigned char>(line[lead]))) ++lead;
    std::size_t trail = line.size();
    while (trail > lead && std::isspace(static_cast<unsigned char>(line[trail - 1]))) --trail;
    if (trail > lead) out.push_back({line.substr(lead, trail - lead), start + lead, number});
    if (end == text.size()) break;
    start = end + 1;
    ++number;
  }
  return out;
}

std::uint64_t header_number(std::string_view token, std::string_view key, std::size_t offset) {
  if (token.substr(0, key.size()) != key || token.size() == key.size()) {
    throw ParseError("expected " + std::string(key) + "<int>", offset);
  }
  std::uint64_t v = 0;
  for (std::size_t i = key.size(); i < token.size(); ++i) {
    if (!is_digit(token[i])) throw ParseError("expected an integer", offset + i);
    v = v * 10 + static_cast<std::uint64_t>(token[i] - '0');
    if (v > (1ULL << 40)) throw ParseError("integer too large", offset + i);
  }
  return v;
}

std::vector<std::pair<std::string_view, std::size_t>> split_ws(std::string_view line,
                                                                  std::size_t offset) {
  std::vector<std::pair<std::string_view, std::size_t>> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.emplace_back(line.substr(start, i - start), offset + start);
  }
  return out;
}

}  // namespace

RingDescriptor RingDescriptor::weyl(std::size_t n, FieldCtx ctx) {
  RingDescriptor r{Kind::Weyl, n, ctx, numbered("x", n)};
  for (auto& name : numbered("d", n)) r.names.push_back(std::move(name));
  return r;
}

RingDescriptor RingDescriptor::poly(std::size_t n, FieldCtx ctx) {
  return RingDescriptor{Kind::Poly, n, ctx, numbered("x", n)};
}

RingDescriptor RingDescriptor::center(std::size_t n, FieldCtx ctx) {
  RingDescriptor r{Kind::Poly, 2 * n, ctx, numbered("X", n)};
  for (auto& name : numbered("Y", n)) r.names.push_back(std::move(name));
  return r;
}

RingDescriptor RingDescriptor::named(std::vector<std::string> names, FieldCtx ctx) {
  const std::size_t n = names.size();
  return RingDescriptor{Kind::Poly, n, ctx, std::move(names)};
}

WeylElement parse_weyl(std::string_view text, std::size_t n, FieldCtx ctx) {
  return parse_weyl_at(text, n, ctx, 0);
}

WeylElement parse_weyl_at(std::string_view text, std::size_t n, FieldCtx ctx, std::size_t offset) {
  const RingDescriptor ring = weyl_ring_checked(n, ctx);
  return build_weyl(Parser(text, ring, offset).parse(), n, ctx);
}

Poly parse_poly(std::string_view text, const RingDescriptor& ring) {
  return build_poly(Parser(text, ring, 0).parse(), ring);
}

std::variant<WeylElement, Poly> parse_expr(std::string_view text, const RingDescriptor& ring) {
  if (ring.kind == RingDescriptor::Kind::Weyl) return parse_weyl(text, ring.n, ring.ctx);
  return parse_poly(text, ring);
}

std::size_t max_variable_index(std::string_view text) {
  std::size_t best = 0;
  std::size_t i = 0;
  while (i < text.size()) {
    if (is_ident_start(text[i])) {
      while (i < text.size() && is_ident_start(text[i])) ++i;
      std::size_t v = 0;
      bool any = false;
      while (i < text.size() && is_digit(text[i])) {
        v = v * 10 + static_cast<std::size_t>(text[i] - '0');
        if (v > 1'000'000) v = 1'000'000;
        any = true;
        ++i;
      }
      if (any && v > best) best = v;
    } else if (is_digit(text[i])) {
      while (i < text.size() && is_digit(text[i])) ++i;
    } else {
      ++i;
    }
  }
  return best;
}

std::string to_string(const WeylElement& a) {
  return print_terms(a.terms(), RingDescriptor::weyl(a.n(), a.ctx()).names);
}

std::string to_string(const Poly& f, const RingDescriptor& ring) {
  if (ring.slots() != f.n()) throw Mismatch("ring descriptor does not match the polynomial");
  return print_terms(f.terms(), ring.names);
}

std::string to_string(const Poly& f) {
  return print_terms(f.terms(), numbered("x", f.n()));
}

Endomorphism parse_endo_file(std::string_view text) {
  const auto lines = content_lines(text);
  if (lines.empty()) throw ParseError("missing ring header", 0);
  const auto header = split_ws(lines[0].text, lines[0].offset);
  if (header.size() != 4 || header[0].first != "ring") {
    throw ParseError("expected 'ring <weyl|poly> n=<int> char=<int>'", lines[0].offset);
  }
  const bool weyl = header[1].first == "weyl";
  if (!weyl && header[1].first != "poly") {
    throw ParseError("ring kind must be weyl or poly", header[1].second);
  }
  const std::uint64_t n = header_number(header[2].first, "n=", header[2].second);
  const std::uint64_t ch = header_number(header[3].first, "char=", header[3].second);
  if (n == 0 || (weyl ? 2 * n : n) > kMaxVariables) {
    throw ParseError("unsupported number of variables", header[2].second);
  }
  FieldCtx ctx;
  try {
    ctx = FieldCtx::from_characteristic(ch);
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what(), header[3].second);
  }

  const RingDescriptor ring =
      weyl ? RingDescriptor::weyl(n, ctx) : RingDescriptor::poly(n, ctx);
  const std::size_t generators = weyl ? 2 * n : n;
  std::vector<std::optional<std::vector<ParsedTerm>>> images(generators);
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const Line& line = lines[k];
    const std::size_t arrow = line.text.find("->");
    if (arrow == std::string_view::npos) {
      throw ParseError("expected '<generator> -> <expression>'", line.offset);
    }
    std::string_view lhs = line.text.substr(0, arrow);
    while (!lhs.empty() && std::isspace(static_cast<unsigned char>(lhs.back()))) {
      lhs.remove_suffix(1);
    }
    std::optional<std::size_t> slot;
    for (std::size_t s = 0; s < generators; ++s) {
      if (ring.names[s] == lhs) slot = s;
    }
    if (!slot) {
      throw ParseError("unknown generator '" + std::string(lhs) + "'", line.offset);
    }
    if (images[*slot]) {
      throw ParseError("duplicate image for '" + std::string(lhs) + "'", line.offset);
    }
    images[*slot] = Parser(line.text.substr(arrow + 2), ring, line.offset + arrow + 2).parse();
  }
  for (std::size_t s = 0; s < generators; ++s) {
    if (!images[s]) throw ParseError("missing image for '" + ring.names[s] + "'", text.size());
  }

  if (weyl) {
    std::vector<WeylElement> ximg, dimg;
    for (std::size_t s = 0; s < n; ++s) ximg.push_back(build_weyl(*images[s], n, ctx));
    for (std::size_t s = n; s < 2 * n; ++s) dimg.push_back(build_weyl(*images[s], n, ctx));
    return WeylEndo(std::move(ximg), std::move(dimg));
  }
  std::vector<Poly> img;
  for (std::size_t s = 0; s < n; ++s) img.push_back(build_poly(*images[s], ring));
  return PolyEndo(std::move(img));
}

std::string print_endo_file(const WeylEndo& phi) {
  std::ostringstream os;
  os << "ring weyl n=" << phi.n() << " char=" << phi.ctx().characteristic() << "\n";
  for (std::size_t i = 0; i < phi.n(); ++i) {
    os << "x" << i + 1 << " -> " << to_string(phi.ximg()[i]) << "\n";
  }
  for (std::size_t i = 0; i < phi.n(); ++i) {
    os << "d" << i + 1 << " -> " << to_string(phi.dimg()[i]) << "\n";
  }
  return os.str();
}

std::string print_endo_file(const PolyEndo& phi) {
  std::ostringstream os;
  os << "ring poly n=" << phi.n() << " char=" << phi.ctx().characteristic() << "\n";
  for (std::size_t i = 0; i < phi.n(); ++i) {
    os << "x" << i + 1 << " -> " << to_string(phi.images()[i]) << "\n";
  }
  return os.str();
}

std::string print_endo_file(const Endomorphism& phi) {
  return std::visit([](const auto& e) { return print_endo_file(e); }, phi);
}

std::string canonical_text(const WeylEndo& phi) { return print_endo_file(phi); }

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (const char c : bytes) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace weylforge
