#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace gconv {

using Integer = mpz_class;
using Rational = mpq_class;

// A dyadic rational numerator / 2^exponent with numerator odd or exponent 0.
struct DyadicParts {
  Integer numerator;
  unsigned long exponent = 0;
};

// p/q in lowest terms (mpq_class(p, q) does not reduce on its own).
inline Rational ratio(const Integer& p, const Integer& q) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

bool is_integer(const Rational& q);
bool is_dyadic(const Rational& q);
DyadicParts dyadic_parts(const Rational& q);
Rational from_dyadic(const Integer& numerator, unsigned long exponent);

Rational abs(const Rational& q);
Integer abs(const Integer& z);
// Nonnegative residue of z modulo m > 0.
Integer mod(const Integer& z, const Integer& m);
Integer gcd(const Integer& a, const Integer& b);
bool is_power_of_two(const Integer& n);

// "p" or "p/q".
std::string format_rational(const Rational& q);
// "p" or "p/2^k"; throws InvalidArgument for non-dyadic input.
std::string format_dyadic(const Rational& q);

// Accepts "p", "p/q" and "p/2^k" (optional sign on p, surrounding blanks).
Rational parse_scalar(std::string_view text);

// Smallest (resp. largest) value u = k/2^bits with u^m >= q (resp. u^m <= q);
// the exact root is returned whenever q is a perfect m-th power. q >= 0.
Rational root_upper(const Rational& q, unsigned long m, unsigned long bits = 40);
Rational root_lower(const Rational& q, unsigned long m, unsigned long bits = 40);

}  // namespace gconv
