#include "bcl/interval.hpp"

#include <algorithm>
#include <cmath>

#include "bcl/errors.hpp"

namespace bcl {

namespace {
constexpr mpfr_prec_t kMinPrec = 32;

mpfr_prec_t clamp_prec(mpfr_prec_t p) { return std::max(p, kMinPrec); }
}  // namespace

IntervalScalar::IntervalScalar() : IntervalScalar(128) {}

IntervalScalar::IntervalScalar(mpfr_prec_t prec) : prec_(clamp_prec(prec)) {
  mpfr_init2(lo_, prec_);
  mpfr_init2(hi_, prec_);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

IntervalScalar::IntervalScalar(const IntervalScalar& o) : prec_(o.prec_) {
  mpfr_init2(lo_, prec_);
  mpfr_init2(hi_, prec_);
  mpfr_set(lo_, o.lo_, MPFR_RNDD);
  mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

IntervalScalar::IntervalScalar(IntervalScalar&& o) noexcept : prec_(o.prec_) {
  lo_[0] = o.lo_[0];
  hi_[0] = o.hi_[0];
  // Leave the source valid for its destructor.
  mpfr_init2(o.lo_, kMinPrec);
  mpfr_init2(o.hi_, kMinPrec);
  mpfr_set_zero(o.lo_, 1);
  mpfr_set_zero(o.hi_, 1);
}

IntervalScalar& IntervalScalar::operator=(IntervalScalar o) noexcept {
  swap(o);
  return *this;
}

IntervalScalar::~IntervalScalar() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

void IntervalScalar::swap(IntervalScalar& o) noexcept {
  std::swap(prec_, o.prec_);
  mpfr_swap(lo_, o.lo_);
  mpfr_swap(hi_, o.hi_);
}

IntervalScalar IntervalScalar::from_int(long v, mpfr_prec_t prec) {
  IntervalScalar r(prec);
  mpfr_set_si(r.lo_, v, MPFR_RNDD);
  mpfr_set_si(r.hi_, v, MPFR_RNDU);
  return r;
}

IntervalScalar IntervalScalar::from_integer(const Integer& v,
                                            mpfr_prec_t prec) {
  IntervalScalar r(prec);
  mpfr_set_z(r.lo_, v.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(r.hi_, v.get_mpz_t(), MPFR_RNDU);
  return r;
}

IntervalScalar IntervalScalar::from_rational(const Rational& q,
                                             mpfr_prec_t prec) {
  IntervalScalar r(prec);
  mpfr_set_q(r.lo_, q.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi_, q.get_mpq_t(), MPFR_RNDU);
  return r;
}

IntervalScalar IntervalScalar::from_dyadic(const Integer& m, long e,
                                           mpfr_prec_t prec) {
  mpfr_prec_t need = std::max<mpfr_prec_t>(
      prec, static_cast<mpfr_prec_t>(mpz_sizeinbase(m.get_mpz_t(), 2) + 2));
  IntervalScalar r(need);
  mpfr_set_z_2exp(r.lo_, m.get_mpz_t(), e, MPFR_RNDD);
  mpfr_set_z_2exp(r.hi_, m.get_mpz_t(), e, MPFR_RNDU);
  return r;
}

IntervalScalar IntervalScalar::from_endpoints(mpfr_srcptr lo, mpfr_srcptr hi,
                                              mpfr_prec_t prec) {
  IntervalScalar r(prec);
  mpfr_set(r.lo_, lo, MPFR_RNDD);
  mpfr_set(r.hi_, hi, MPFR_RNDU);
  if (mpfr_cmp(r.lo_, r.hi_) > 0) throw Error("invalid interval endpoints");
  return r;
}

IntervalScalar IntervalScalar::from_mpfr_point(mpfr_srcptr x,
                                               mpfr_prec_t prec) {
  return from_endpoints(x, x, std::max(prec, mpfr_get_prec(x)));
}

IntervalScalar IntervalScalar::hull(const IntervalScalar& a,
                                    const IntervalScalar& b) {
  IntervalScalar r(std::max(a.prec_, b.prec_));
  mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

IntervalScalar IntervalScalar::round_to(mpfr_prec_t prec) const {
  IntervalScalar r(prec);
  mpfr_set(r.lo_, lo_, MPFR_RNDD);
  mpfr_set(r.hi_, hi_, MPFR_RNDU);
  return r;
}

IntervalScalar IntervalScalar::add(const IntervalScalar& o) const {
  IntervalScalar r(std::max(prec_, o.prec_));
  mpfr_add(r.lo_, lo_, o.lo_, MPFR_RNDD);
  mpfr_add(r.hi_, hi_, o.hi_, MPFR_RNDU);
  return r;
}

IntervalScalar IntervalScalar::sub(const IntervalScalar& o) const {
  IntervalScalar r(std::max(prec_, o.prec_));
  mpfr_sub(r.lo_, lo_, o.hi_, MPFR_RNDD);
  mpfr_sub(r.hi_, hi_, o.lo_, MPFR_RNDU);
  return r;
}

IntervalScalar IntervalScalar::mul(const IntervalScalar& o) const {
  IntervalScalar r(std::max(prec_, o.prec_));
  mpfr_t t;
  mpfr_init2(t, r.prec_);
  // lo: min of the four products rounded down.
  mpfr_mul(r.lo_, lo_, o.lo_, MPFR_RNDD);
  mpfr_mul(t, lo_, o.hi_, MPFR_RNDD);
  mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
  mpfr_mul(t, hi_, o.lo_, MPFR_RNDD);
  mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
  mpfr_mul(t, hi_, o.hi_, MPFR_RNDD);
  mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
  // hi: max of the four products rounded up.
  mpfr_mul(r.hi_, lo_, o.lo_, MPFR_RNDU);
  mpfr_mul(t, lo_, o.hi_, MPFR_RNDU);
  mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
  mpfr_mul(t, hi_, o.lo_, MPFR_RNDU);
  mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
  mpfr_mul(t, hi_, o.hi_, MPFR_RNDU);
  mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
  mpfr_clear(t);
  return r;
}

IntervalScalar IntervalScalar::div(const IntervalScalar& o) const {
  if (o.contains_zero()) throw Error("interval division through zero");
  IntervalScalar r(std::max(prec_, o.prec_));
  mpfr_t t;
  mpfr_init2(t, r.prec_);
  mpfr_div(r.lo_, lo_, o.lo_, MPFR_RNDD);
  mpfr_div(t, lo_, o.hi_, MPFR_RNDD);
  mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
  mpfr_div(t, hi_, o.lo_, MPFR_RNDD);
  mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
  mpfr_div(t, hi_, o.hi_, MPFR_RNDD);
  mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
  mpfr_div(r.hi_, lo_, o.lo_, MPFR_RNDU);
  mpfr_div(t, lo_, o.hi_, MPFR_RNDU);
  mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
  mpfr_div(t, hi_, o.lo_, MPFR_RNDU);
  mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
  mpfr_div(t, hi_, o.hi_, MPFR_RNDU);
  mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
  mpfr_clear(t);
  return r;
}

IntervalScalar IntervalScalar::neg() const {
  IntervalScalar r(prec_);
  mpfr_neg(r.lo_, hi_, MPFR_RNDD);
  mpfr_neg(r.hi_, lo_, MPFR_RNDU);
  return r;
}

IntervalScalar IntervalScalar::abs() const {
  IntervalScalar r(prec_);
  if (mpfr_sgn(lo_) >= 0) return *this;
  if (mpfr_sgn(hi_) <= 0) return neg();
  mpfr_set_zero(r.lo_, 1);
  mpfr_t t;
  mpfr_init2(t, prec_);
  mpfr_neg(t, lo_, MPFR_RNDU);
  mpfr_max(r.hi_, t, hi_, MPFR_RNDU);
  mpfr_clear(t);
  return r;
}

IntervalScalar IntervalScalar::sqrt() const {
  if (mpfr_sgn(hi_) < 0) throw OutOfRange("sqrt of a negative interval");
  IntervalScalar r(prec_);
  if (mpfr_sgn(lo_) <= 0) {
    mpfr_set_zero(r.lo_, 1);
  } else {
    mpfr_sqrt(r.lo_, lo_, MPFR_RNDD);
  }
  mpfr_sqrt(r.hi_, hi_, MPFR_RNDU);
  return r;
}

IntervalScalar IntervalScalar::square() const {
  IntervalScalar a = abs();
  return a.mul(a);
}

IntervalScalar IntervalScalar::scale2(long k) const {
  IntervalScalar r(prec_);
  mpfr_mul_2si(r.lo_, lo_, k, MPFR_RNDD);
  mpfr_mul_2si(r.hi_, hi_, k, MPFR_RNDU);
  return r;
}

bool IntervalScalar::is_point() const { return mpfr_equal_p(lo_, hi_); }

bool IntervalScalar::contains_zero() const {
  return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0;
}

bool IntervalScalar::contains(const Rational& q) const {
  return mpfr_cmp_q(lo_, q.get_mpq_t()) <= 0 &&
         mpfr_cmp_q(hi_, q.get_mpq_t()) >= 0;
}

bool IntervalScalar::contains(const IntervalScalar& inner) const {
  return mpfr_cmp(lo_, inner.lo_) <= 0 && mpfr_cmp(hi_, inner.hi_) >= 0;
}

int IntervalScalar::sign_certain() const {
  if (mpfr_sgn(lo_) > 0) return 1;
  if (mpfr_sgn(hi_) < 0) return -1;
  return 0;
}

bool IntervalScalar::less_certain(const IntervalScalar& o) const {
  return mpfr_cmp(hi_, o.lo_) < 0;
}

bool IntervalScalar::less_equal_certain(const IntervalScalar& o) const {
  return mpfr_cmp(hi_, o.lo_) <= 0;
}

bool IntervalScalar::disjoint(const IntervalScalar& o) const {
  return mpfr_cmp(hi_, o.lo_) < 0 || mpfr_cmp(o.hi_, lo_) < 0;
}

std::optional<int> IntervalScalar::compare(const Rational& q) const {
  if (mpfr_cmp_q(hi_, q.get_mpq_t()) < 0) return -1;
  if (mpfr_cmp_q(lo_, q.get_mpq_t()) > 0) return 1;
  return std::nullopt;
}

std::optional<Integer> IntervalScalar::floor_certain() const {
  Integer fl, fh;
  mpfr_t t;
  mpfr_init2(t, mpfr_get_prec(lo_));
  mpfr_floor(t, lo_);
  mpfr_get_z(fl.get_mpz_t(), t, MPFR_RNDD);
  mpfr_set_prec(t, mpfr_get_prec(hi_));
  mpfr_floor(t, hi_);
  mpfr_get_z(fh.get_mpz_t(), t, MPFR_RNDD);
  mpfr_clear(t);
  if (fl == fh) return fl;
  return std::nullopt;
}

IntervalScalar IntervalScalar::width() const {
  IntervalScalar r(prec_);
  mpfr_sub(r.hi_, hi_, lo_, MPFR_RNDU);
  mpfr_set(r.lo_, r.hi_, MPFR_RNDD);
  return r;
}

bool IntervalScalar::width_below(long exp2) const {
  mpfr_t w, b;
  mpfr_init2(w, prec_);
  mpfr_init2(b, kMinPrec);
  mpfr_sub(w, hi_, lo_, MPFR_RNDU);
  mpfr_set_ui_2exp(b, 1, exp2, MPFR_RNDD);
  bool ok = mpfr_cmp(w, b) < 0;
  mpfr_clear(w);
  mpfr_clear(b);
  return ok;
}

double IntervalScalar::width_approx() const {
  mpfr_t w;
  mpfr_init2(w, 64);
  mpfr_sub(w, hi_, lo_, MPFR_RNDU);
  double d = mpfr_get_d(w, MPFR_RNDU);
  mpfr_clear(w);
  return d;
}

IntervalScalar IntervalScalar::midpoint() const {
  IntervalScalar r(prec_ + 8);
  mpfr_add(r.lo_, lo_, hi_, MPFR_RNDN);
  mpfr_div_2si(r.lo_, r.lo_, 1, MPFR_RNDN);
  mpfr_set(r.hi_, r.lo_, MPFR_RNDU);
  return r;
}

Rational IntervalScalar::lo_rational() const {
  if (!mpfr_number_p(lo_)) throw Error("non-finite endpoint");
  if (mpfr_zero_p(lo_)) return Rational(0);
  Integer m;
  mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), lo_);
  Rational q(m);
  if (e >= 0) {
    mpz_mul_2exp(q.get_num().get_mpz_t(), q.get_num().get_mpz_t(), e);
  } else {
    mpz_mul_2exp(q.get_den().get_mpz_t(), q.get_den().get_mpz_t(), -e);
  }
  q.canonicalize();
  return q;
}

Rational IntervalScalar::hi_rational() const {
  if (!mpfr_number_p(hi_)) throw Error("non-finite endpoint");
  if (mpfr_zero_p(hi_)) return Rational(0);
  Integer m;
  mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), hi_);
  Rational q(m);
  if (e >= 0) {
    mpz_mul_2exp(q.get_num().get_mpz_t(), q.get_num().get_mpz_t(), e);
  } else {
    mpz_mul_2exp(q.get_den().get_mpz_t(), q.get_den().get_mpz_t(), -e);
  }
  q.canonicalize();
  return q;
}

std::string IntervalScalar::dyadic_string(mpfr_srcptr x) {
  if (mpfr_zero_p(x)) return "0*2^0";
  if (!mpfr_number_p(x)) throw Error("non-finite endpoint");
  Integer m;
  mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), x);
  // Canonical form: odd mantissa (or zero).
  while (m != 0 && mpz_even_p(m.get_mpz_t())) {
    mpz_fdiv_q_2exp(m.get_mpz_t(), m.get_mpz_t(), 1);
    ++e;
  }
  return m.get_str() + "*2^" + std::to_string(static_cast<long>(e));
}

std::string IntervalScalar::to_string() const {
  return "[" + lo_string() + ", " + hi_string() + "]";
}

IntervalScalar IntervalScalar::log2(mpfr_prec_t prec) const {
  if (mpfr_sgn(lo_) <= 0)
    throw NonPositiveArgument("log2 requires a certified-positive argument");
  // A few guard bits keep the enclosure width within 2^(4-prec) for
  // moderate arguments even after the two directed roundings.
  IntervalScalar r(prec);
  mpfr_t t;
  mpfr_init2(t, prec + 16);
  mpfr_log2(t, lo_, MPFR_RNDD);
  mpfr_set(r.lo_, t, MPFR_RNDD);
  mpfr_log2(t, hi_, MPFR_RNDU);
  mpfr_set(r.hi_, t, MPFR_RNDU);
  mpfr_clear(t);
  return r;
}

IntervalScalar IntervalScalar::exp2(mpfr_prec_t prec) const {
  IntervalScalar r(prec);
  mpfr_exp2(r.lo_, lo_, MPFR_RNDD);
  mpfr_exp2(r.hi_, hi_, MPFR_RNDU);
  return r;
}

IntervalScalar log2_interval(const IntervalScalar& x, mpfr_prec_t prec) {
  return x.log2(prec);
}

IntervalScalar log2_interval(const Rational& q, mpfr_prec_t prec) {
  if (q <= 0) throw NonPositiveArgument("log2 requires a positive rational");
  return IntervalScalar::from_rational(q, prec + 16).log2(prec);
}

IntervalScalar exp2_interval(const IntervalScalar& x, mpfr_prec_t prec) {
  return x.exp2(prec);
}

IntervalScalar pow_interval(const IntervalScalar& x, const Rational& e,
                            mpfr_prec_t prec) {
  if (e == 0) return IntervalScalar::from_int(1, prec);
  if (is_integer(e) && e.get_num().fits_slong_p()) {
    long n = e.get_num().get_si();
    long a = n < 0 ? -n : n;
    IntervalScalar acc = IntervalScalar::from_int(1, prec);
    IntervalScalar base = x;
    while (a > 0) {
      if (a & 1) acc = acc.mul(base);
      base = base.mul(base);
      a >>= 1;
    }
    if (n < 0) return IntervalScalar::from_int(1, prec).div(acc);
    return acc;
  }
  IntervalScalar lg = log2_interval(x, prec + 16);
  IntervalScalar ei = IntervalScalar::from_rational(e, prec + 16);
  return exp2_interval(lg.mul(ei), prec);
}

IntervalScalar entropy_term(const Rational& p, mpfr_prec_t prec) {
  if (p <= 0 || p > 1) throw OutOfRange("entropy_term requires p in (0,1]");
  if (p == 1) return IntervalScalar::from_int(0, prec);
  IntervalScalar lg = log2_interval(p, prec + 8);
  IntervalScalar pi = IntervalScalar::from_rational(p, prec + 8);
  return pi.mul(lg).neg().round_to(prec);
}

IntervalScalar neg_xlog2x_times(const Rational& v, const Rational& len,
                                mpfr_prec_t prec) {
  if (v <= 0) throw OutOfRange("density value must be positive");
  if (v == 1) return IntervalScalar::from_int(0, prec);
  IntervalScalar lg = log2_interval(v, prec + 8);
  IntervalScalar vi = IntervalScalar::from_rational(v * len, prec + 8);
  return vi.mul(lg).neg().round_to(prec);
}

}  // namespace bcl
