#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bcl/interval.hpp"
#include "bcl/rational.hpp"

namespace bcl {

// Dense integer polynomial, constant term first. The zero polynomial is the
// empty coefficient list; otherwise the last coefficient is non-zero.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<Integer> coeffs) : c_(std::move(coeffs)) {
    normalize();
  }
  static IntPolynomial constant(Integer v) {
    return IntPolynomial({std::move(v)});
  }
  static IntPolynomial monomial(Integer coeff, size_t k);
  static IntPolynomial x() { return monomial(1, 1); }
  // Parses "c0,c1,..." (constant term first).
  static IntPolynomial from_string(const std::string& text);

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<Integer>& coeffs() const { return c_; }
  Integer coeff(size_t i) const { return i < c_.size() ? c_[i] : Integer(0); }
  const Integer& leading() const;

  std::string to_string() const;  // "c0,c1,..."
  bool operator==(const IntPolynomial& o) const { return c_ == o.c_; }

 private:
  void normalize();
  std::vector<Integer> c_;
};

// Dense rational polynomial, constant term first.
class RatPolynomial {
 public:
  RatPolynomial() = default;
  explicit RatPolynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) {
    normalize();
  }
  explicit RatPolynomial(const IntPolynomial& p);
  static RatPolynomial constant(Rational v) {
    return RatPolynomial(std::vector<Rational>{std::move(v)});
  }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(size_t i) const {
    return i < c_.size() ? c_[i] : Rational(0);
  }
  const Rational& leading() const;

  std::string to_string() const;
  bool operator==(const RatPolynomial& o) const { return c_ == o.c_; }

 private:
  void normalize();
  std::vector<Rational> c_;
};

// Polynomial with coefficients in {-1, 0, +1}, the enumeration domain.
class SignPolynomial {
 public:
  SignPolynomial() = default;
  explicit SignPolynomial(std::vector<int8_t> trits);
  static std::optional<SignPolynomial> from_int_poly(const IntPolynomial& p);
  static SignPolynomial from_string(const std::string& text);

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<int8_t>& coeffs() const { return c_; }
  IntPolynomial to_int_poly() const;
  std::string to_string() const;
  bool operator==(const SignPolynomial& o) const { return c_ == o.c_; }
  bool operator<(const SignPolynomial& o) const;  // lexicographic, for dedup

 private:
  std::vector<int8_t> c_;
};

// ---- arithmetic ----

IntPolynomial add(const IntPolynomial& a, const IntPolynomial& b);
IntPolynomial sub(const IntPolynomial& a, const IntPolynomial& b);
IntPolynomial mul(const IntPolynomial& a, const IntPolynomial& b);
IntPolynomial neg(const IntPolynomial& a);
IntPolynomial mul_scalar(const IntPolynomial& a, const Integer& s);
IntPolynomial mul_xk(const IntPolynomial& a, size_t k);
IntPolynomial derivative(const IntPolynomial& a);
// Coefficient list reversed: x^d * P(1/x).
IntPolynomial reverse(const IntPolynomial& a);

RatPolynomial add(const RatPolynomial& a, const RatPolynomial& b);
RatPolynomial sub(const RatPolynomial& a, const RatPolynomial& b);
RatPolynomial mul(const RatPolynomial& a, const RatPolynomial& b);
RatPolynomial mul_scalar(const RatPolynomial& a, const Rational& s);
// Quotient and remainder over Q; b non-zero.
std::pair<RatPolynomial, RatPolynomial> divmod(const RatPolynomial& a,
                                               const RatPolynomial& b);

// Exact division in Z[x]; nullopt if b does not divide a.
std::optional<IntPolynomial> divide_exact(const IntPolynomial& a,
                                          const IntPolynomial& b);
bool divides(const IntPolynomial& b, const IntPolynomial& a);

// ---- content, gcd, square-free ----

Integer content(const IntPolynomial& a);  // gcd of coefficients, >= 0
// Content removed, leading coefficient positive.
IntPolynomial primitive_part(const IntPolynomial& a);

// Primitive gcd in Z[x] with positive leading coefficient.
IntPolynomial gcd_poly(const IntPolynomial& a, const IntPolynomial& b);
// Throws AllZero if every member is zero.
IntPolynomial gcd_set(const std::vector<IntPolynomial>& members);

// Yun decomposition: list of (square-free factor, multiplicity) with
// pairwise-coprime primitive factors; product of factor^mult equals the
// primitive part up to sign.
std::vector<std::pair<IntPolynomial, int>> square_free_decomposition(
    const IntPolynomial& a);
IntPolynomial square_free_part(const IntPolynomial& a);

// ---- norms ----

Integer l1_norm(const IntPolynomial& a);
// Max over coefficients of max(|numerator|, denominator).
Integer naive_height(const RatPolynomial& a);

// ---- evaluation ----

Rational eval(const IntPolynomial& a, const Rational& x);
Rational eval(const RatPolynomial& a, const Rational& x);
int sign_at(const IntPolynomial& a, const Rational& x);

// Horner with outward rounding; result contains P(xi) for every xi in x.
IntervalScalar interval_eval_poly(const IntPolynomial& a,
                                  const IntervalScalar& x, mpfr_prec_t prec);

// 1 + max|c_i| / |c_d|: all roots have modulus below this.
Rational cauchy_root_bound(const IntPolynomial& a);

// ---- enumeration of sign polynomials ----

Integer signpoly_count(int d);  // 3^(d+1)

// The i-th element of P_d in enumeration order: base-3 digits of i,
// constant term fastest-varying, digit value - 1.
SignPolynomial signpoly_from_index(const Integer& index, int d);

// Streams P_d in order. A filter predicate restricts emission but the full
// space is still traversed; the cap guards the traversal itself.
class SignPolyEnumerator {
 public:
  SignPolyEnumerator(int d, Integer begin, Integer end);
  std::optional<SignPolynomial> next();
  const Integer& remaining_begin() const { return next_; }

 private:
  int d_;
  Integer next_;
  Integer end_;
  std::vector<int8_t> trits_;
  bool primed_ = false;
};

// Calls fn for every P in P_d. Throws CapExceeded when 3^(d+1) > cap and no
// filter is supplied.
void enumerate_signpolys(
    int d, const Integer& cap,
    const std::function<bool(const SignPolynomial&)>* filter,
    const std::function<void(const SignPolynomial&)>& fn);

}  // namespace bcl
