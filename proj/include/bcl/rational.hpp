#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

namespace bcl {

// Exact arbitrary-precision arithmetic. mpq_class keeps the canonical form we
// rely on: gcd(|num|, den) = 1 and den >= 1.
using Integer = mpz_class;
using Rational = mpq_class;

// Parses "p/q", a plain integer, or a finite decimal like "-0.125".
Rational parse_rational(const std::string& text);

// Canonical "p/q" form (always with an explicit denominator).
std::string format_rational(const Rational& q);

std::string format_integer(const Integer& n);

inline Integer floor_div(const Integer& num, const Integer& den) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return q;
}

// Largest integer <= q.
inline Integer rational_floor(const Rational& q) {
  return floor_div(q.get_num(), q.get_den());
}

// q - floor(q), in [0,1).
inline Rational fractional_part(const Rational& q) {
  Rational f = q - Rational(rational_floor(q));
  return f;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

Integer integer_pow(const Integer& base, unsigned long e);
Rational rational_pow(const Rational& base, long e);

inline Integer factorial(unsigned long n) {
  Integer f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return f;
}

inline Integer pow2(unsigned long n) {
  Integer p = 1;
  mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), n);
  return p;
}

}  // namespace bcl
