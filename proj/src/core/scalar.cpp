#include "scalar.hpp"

#include <cctype>
#include <optional>

#include "error.hpp"

namespace gconv {

bool is_integer(const Rational& q) { return q.get_den() == 1; }

bool is_dyadic(const Rational& q) { return is_power_of_two(q.get_den()); }

DyadicParts dyadic_parts(const Rational& q) {
  if (!is_dyadic(q)) {
    throw Error(ErrorCode::InvalidArgument, "not a dyadic rational: " + q.get_str());
  }
  DyadicParts parts;
  parts.numerator = q.get_num();
  parts.exponent = mpz_sizeinbase(q.get_den().get_mpz_t(), 2) - 1;
  return parts;
}

Rational from_dyadic(const Integer& numerator, unsigned long exponent) {
  Integer den;
  mpz_ui_pow_ui(den.get_mpz_t(), 2, exponent);
  Rational q(numerator, den);
  q.canonicalize();
  return q;
}

Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

Integer abs(const Integer& z) { return z < 0 ? Integer(-z) : z; }

Integer mod(const Integer& z, const Integer& m) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), z.get_mpz_t(), m.get_mpz_t());
  return r;
}

Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

bool is_power_of_two(const Integer& n) {
  return n > 0 && mpz_popcount(n.get_mpz_t()) == 1;
}

std::string format_rational(const Rational& q) { return q.get_str(); }

std::string format_dyadic(const Rational& q) {
  DyadicParts p = dyadic_parts(q);
  if (p.exponent == 0) return p.numerator.get_str();
  return p.numerator.get_str() + "/2^" + std::to_string(p.exponent);
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::optional<Integer> parse_integer(std::string_view s, bool allow_sign) {
  if (s.empty()) return std::nullopt;
  std::size_t start = 0;
  if (allow_sign && (s[0] == '-' || s[0] == '+')) start = 1;
  if (start == s.size()) return std::nullopt;
  for (std::size_t i = start; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return std::nullopt;
  }
  std::string digits(s.substr(s[0] == '+' ? 1 : 0));
  return Integer(digits, 10);
}

}  // namespace

Rational parse_scalar(std::string_view text) {
  std::string_view s = trim(text);
  auto fail = [&]() -> Error {
    return Error(ErrorCode::InvalidArgument, "malformed scalar '" + std::string(text) + "'");
  };
  std::size_t slash = s.find('/');
  if (slash == std::string_view::npos) {
    auto n = parse_integer(s, true);
    if (!n) throw fail();
    return Rational(*n);
  }
  auto num = parse_integer(trim(s.substr(0, slash)), true);
  std::string_view den_text = trim(s.substr(slash + 1));
  if (!num) throw fail();
  Integer den;
  if (den_text.size() > 2 && den_text[0] == '2' && den_text[1] == '^') {
    auto k = parse_integer(den_text.substr(2), false);
    if (!k || !k->fits_ulong_p()) throw fail();
    return from_dyadic(*num, k->get_ui());
  }
  auto d = parse_integer(den_text, false);
  if (!d || *d == 0) throw fail();
  Rational q(*num, *d);
  q.canonicalize();
  return q;
}

namespace {

Integer pow2(unsigned long e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
  return r;
}

bool perfect_root(const Integer& z, unsigned long m, Integer& root) {
  return mpz_root(root.get_mpz_t(), z.get_mpz_t(), m) != 0;
}

// floor((num * 2^(bits*m) / den)^(1/m)) and whether it is exact.
Integer scaled_floor_root(const Rational& q, unsigned long m, unsigned long bits, bool& exact) {
  Integer scaled = q.get_num() * pow2(bits * m);
  Integer quotient;
  mpz_fdiv_q(quotient.get_mpz_t(), scaled.get_mpz_t(), q.get_den().get_mpz_t());
  Integer k;
  mpz_root(k.get_mpz_t(), quotient.get_mpz_t(), m);
  Integer km;
  mpz_pow_ui(km.get_mpz_t(), k.get_mpz_t(), m);
  exact = km * q.get_den() == scaled;
  return k;
}

}  // namespace

Rational root_upper(const Rational& q, unsigned long m, unsigned long bits) {
  if (q < 0 || m == 0) throw Error(ErrorCode::InvalidArgument, "root of negative value");
  if (m == 1) return q;
  Integer rn, rd;
  if (perfect_root(q.get_num(), m, rn) && perfect_root(q.get_den(), m, rd)) {
    Rational r(rn, rd);
    r.canonicalize();
    return r;
  }
  bool exact = false;
  Integer k = scaled_floor_root(q, m, bits, exact);
  if (!exact) k += 1;
  return from_dyadic(k, bits);
}

Rational root_lower(const Rational& q, unsigned long m, unsigned long bits) {
  if (q < 0 || m == 0) throw Error(ErrorCode::InvalidArgument, "root of negative value");
  if (m == 1) return q;
  Integer rn, rd;
  if (perfect_root(q.get_num(), m, rn) && perfect_root(q.get_den(), m, rd)) {
    Rational r(rn, rd);
    r.canonicalize();
    return r;
  }
  bool exact = false;
  Integer k = scaled_floor_root(q, m, bits, exact);
  return from_dyadic(k, bits);
}

}  // namespace gconv
