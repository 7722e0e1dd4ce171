#pragma once

#include <mpfr.h>

#include <optional>
#include <string>
#include <utility>

#include "bcl/prec.hpp"
#include "bcl/rational.hpp"

namespace bcl {

// Real enclosure [lo, hi] with dyadic endpoints (MPFR numbers) and outward
// rounding: every operation returns an interval containing the exact result.
// Values are immutable after construction and safe to share across threads.
class IntervalScalar {
 public:
  IntervalScalar();  // [0, 0] at default precision
  explicit IntervalScalar(mpfr_prec_t prec);
  IntervalScalar(const IntervalScalar& o);
  IntervalScalar(IntervalScalar&& o) noexcept;
  IntervalScalar& operator=(IntervalScalar o) noexcept;
  ~IntervalScalar();

  void swap(IntervalScalar& o) noexcept;

  mpfr_prec_t precision() const { return prec_; }
  mpfr_srcptr lo() const { return lo_; }
  mpfr_srcptr hi() const { return hi_; }

  static IntervalScalar from_int(long v, mpfr_prec_t prec);
  static IntervalScalar from_integer(const Integer& v, mpfr_prec_t prec);
  static IntervalScalar from_rational(const Rational& q, mpfr_prec_t prec);
  // Exact dyadic point m * 2^e.
  static IntervalScalar from_dyadic(const Integer& m, long e, mpfr_prec_t prec);
  static IntervalScalar from_endpoints(mpfr_srcptr lo, mpfr_srcptr hi,
                                       mpfr_prec_t prec);
  static IntervalScalar from_mpfr_point(mpfr_srcptr x, mpfr_prec_t prec);
  static IntervalScalar hull(const IntervalScalar& a, const IntervalScalar& b);

  IntervalScalar round_to(mpfr_prec_t prec) const;

  IntervalScalar add(const IntervalScalar& o) const;
  IntervalScalar sub(const IntervalScalar& o) const;
  IntervalScalar mul(const IntervalScalar& o) const;
  IntervalScalar div(const IntervalScalar& o) const;  // o must exclude 0
  IntervalScalar neg() const;
  IntervalScalar abs() const;
  IntervalScalar sqrt() const;  // hi must be >= 0; negative lo clamped to 0
  IntervalScalar square() const;
  // Exact scaling by 2^k.
  IntervalScalar scale2(long k) const;
  IntervalScalar log2(mpfr_prec_t prec) const;  // requires lo > 0
  IntervalScalar exp2(mpfr_prec_t prec) const;

  bool is_point() const;
  bool contains_zero() const;
  bool contains(const Rational& q) const;
  bool contains(const IntervalScalar& inner) const;
  // Certified sign: -1 if hi < 0, +1 if lo > 0, 0 otherwise (undecided or 0).
  int sign_certain() const;
  bool is_positive_certain() const { return sign_certain() > 0; }
  bool is_negative_certain() const { return sign_certain() < 0; }
  bool less_certain(const IntervalScalar& o) const;        // hi < o.lo
  bool less_equal_certain(const IntervalScalar& o) const;  // hi <= o.lo
  bool disjoint(const IntervalScalar& o) const;
  bool overlaps(const IntervalScalar& o) const { return !disjoint(o); }

  // Certified comparison against an exact rational: -1 (< q), +1 (> q),
  // nullopt if q lies inside the enclosure.
  std::optional<int> compare(const Rational& q) const;

  // Floor certified to a unique integer, or nullopt when the enclosure
  // straddles an integer boundary.
  std::optional<Integer> floor_certain() const;

  // Width hi - lo, rounded up.
  IntervalScalar width() const;
  bool width_below(long exp2) const;  // width < 2^exp2, certified
  double width_approx() const;

  IntervalScalar midpoint() const;  // point interval at the dyadic midpoint
  // Exact rational value of the lower/upper endpoint.
  Rational lo_rational() const;
  Rational hi_rational() const;

  double lo_double() const { return mpfr_get_d(lo_, MPFR_RNDD); }
  double hi_double() const { return mpfr_get_d(hi_, MPFR_RNDU); }

  // Lossless "m*2^e" serialization of an endpoint.
  static std::string dyadic_string(mpfr_srcptr x);
  std::string lo_string() const { return dyadic_string(lo_); }
  std::string hi_string() const { return dyadic_string(hi_); }
  std::string to_string() const;  // "[lo, hi]" dyadic form

 private:
  mpfr_prec_t prec_;
  mpfr_t lo_;
  mpfr_t hi_;
};

inline IntervalScalar operator+(const IntervalScalar& a,
                                const IntervalScalar& b) {
  return a.add(b);
}
inline IntervalScalar operator-(const IntervalScalar& a,
                                const IntervalScalar& b) {
  return a.sub(b);
}
inline IntervalScalar operator*(const IntervalScalar& a,
                                const IntervalScalar& b) {
  return a.mul(b);
}
inline IntervalScalar operator/(const IntervalScalar& a,
                                const IntervalScalar& b) {
  return a.div(b);
}
inline IntervalScalar operator-(const IntervalScalar& a) { return a.neg(); }

// Enclosure of log2 over x; requires x.lo > 0 (NonPositiveArgument otherwise).
IntervalScalar log2_interval(const IntervalScalar& x, mpfr_prec_t prec);
IntervalScalar log2_interval(const Rational& q, mpfr_prec_t prec);

IntervalScalar exp2_interval(const IntervalScalar& x, mpfr_prec_t prec);

// Enclosure of x^(p/q) for x.lo > 0.
IntervalScalar pow_interval(const IntervalScalar& x, const Rational& e,
                            mpfr_prec_t prec);

// Shannon entropy summand -p*log2(p) for p in (0,1]; exact [0,0] at p = 1.
IntervalScalar entropy_term(const Rational& p, mpfr_prec_t prec);

// -v*log2(v)*len for a step-density segment; v may exceed 1.  v > 0 required.
IntervalScalar neg_xlog2x_times(const Rational& v, const Rational& len,
                                mpfr_prec_t prec);

}  // namespace bcl
