#include "gmlattice/integer.hpp"

#include "gmlattice/error.hpp"

#include <cctype>

namespace gmlat {

Integer isqrt(const Integer& n) {
  if (n < 0) throw LatticeError(ErrorKind::Domain, "square root of a negative integer");
  return boost::multiprecision::sqrt(n);
}

std::optional<Integer> exact_sqrt(const Integer& n) {
  if (n < 0) return std::nullopt;
  Integer r = isqrt(n);
  if (r * r == n) return r;
  return std::nullopt;
}

Integer isqrt_ceil(const Integer& n) {
  Integer r = isqrt(n);
  return r * r == n ? r : Integer(r + 1);
}

bool is_square(const Integer& n) { return exact_sqrt(n).has_value(); }

Integer numerator_of(const Rational& x) { return Integer(boost::multiprecision::numerator(x)); }

Integer denominator_of(const Rational& x) {
  return Integer(boost::multiprecision::denominator(x));
}

Rational reduce_mod(const Rational& x, const Integer& modulus) {
  const Integer num = numerator_of(x);
  const Integer den = denominator_of(x);
  // x mod m = (num mod m*den) / den
  const Integer reduced = mod_floor(num, Integer(modulus * den));
  return Rational(reduced) / Rational(den);
}

std::string to_string(const Integer& x) { return x.str(); }

std::string to_string(const Rational& x) {
  const Integer den = denominator_of(x);
  if (den == 1) return numerator_of(x).str();
  return numerator_of(x).str() + "/" + den.str();
}

std::optional<Integer> parse_integer(const std::string& text) {
  std::size_t start = 0;
  std::size_t end = text.size();
  while (start < end && std::isspace(static_cast<unsigned char>(text[start]))) ++start;
  while (end > start && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
  if (start == end) return std::nullopt;
  std::size_t digits = start;
  if (text[digits] == '-' || text[digits] == '+') ++digits;
  if (digits == end) return std::nullopt;
  for (std::size_t i = digits; i < end; ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) return std::nullopt;
  }
  std::string body = text.substr(start, end - start);
  if (body[0] == '+') body.erase(0, 1);
  return Integer(body);
}

std::optional<Rational> parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) {
    auto n = parse_integer(text);
    if (!n) return std::nullopt;
    return Rational(*n);
  }
  auto num = parse_integer(text.substr(0, slash));
  auto den = parse_integer(text.substr(slash + 1));
  if (!num || !den || *den == 0) return std::nullopt;
  return Rational(*num) / Rational(*den);
}

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "invalid-input";
    case ErrorKind::InvalidTwist: return "invalid-twist";
    case ErrorKind::NotSymmetric: return "not-symmetric";
    case ErrorKind::DegenerateLattice: return "degenerate-lattice";
    case ErrorKind::UnsupportedRank: return "unsupported-rank";
    case ErrorKind::InvalidElement: return "invalid-element";
    case ErrorKind::GlueObstruction: return "glue-obstruction";
    case ErrorKind::NotOrthogonal: return "not-orthogonal";
    case ErrorKind::SquareInput: return "square-input";
    case ErrorKind::UnsupportedForm: return "unsupported-form";
    case ErrorKind::ImprimitiveForm: return "imprimitive-form";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::OutOfScope: return "out-of-scope";
    case ErrorKind::Hypothesis: return "hypothesis";
    case ErrorKind::SearchCap: return "search-cap";
  }
  return "unknown";
}

}  // namespace gmlat
