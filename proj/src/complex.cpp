#include "bcl/complex.hpp"

#include <utility>

namespace bcl {

ComplexInterval eval_poly(const IntPolynomial& p, const ComplexInterval& z,
                          mpfr_prec_t prec) {
  ComplexInterval r{IntervalScalar::from_int(0, prec),
                    IntervalScalar::from_int(0, prec)};
  if (p.is_zero()) return r;
  r.re = IntervalScalar::from_integer(p.coeffs().back(), prec);
  for (auto it = p.coeffs().rbegin() + 1; it != p.coeffs().rend(); ++it) {
    r = r.mul(z).add_integer(*it, prec);
  }
  return r;
}

MpfrComplex::MpfrComplex(mpfr_prec_t prec) : prec_(prec) {
  mpfr_init2(re_, prec_);
  mpfr_init2(im_, prec_);
  mpfr_set_zero(re_, 1);
  mpfr_set_zero(im_, 1);
}

MpfrComplex::MpfrComplex(const MpfrComplex& o) : prec_(o.prec_) {
  mpfr_init2(re_, prec_);
  mpfr_init2(im_, prec_);
  mpfr_set(re_, o.re_, MPFR_RNDN);
  mpfr_set(im_, o.im_, MPFR_RNDN);
}

MpfrComplex::MpfrComplex(MpfrComplex&& o) noexcept : prec_(o.prec_) {
  re_[0] = o.re_[0];
  im_[0] = o.im_[0];
  mpfr_init2(o.re_, 32);
  mpfr_init2(o.im_, 32);
  mpfr_set_zero(o.re_, 1);
  mpfr_set_zero(o.im_, 1);
}

MpfrComplex& MpfrComplex::operator=(MpfrComplex o) noexcept {
  swap(o);
  return *this;
}

MpfrComplex::~MpfrComplex() {
  mpfr_clear(re_);
  mpfr_clear(im_);
}

void MpfrComplex::swap(MpfrComplex& o) noexcept {
  std::swap(prec_, o.prec_);
  mpfr_swap(re_, o.re_);
  mpfr_swap(im_, o.im_);
}

MpfrComplex MpfrComplex::from_double(std::complex<double> z,
                                     mpfr_prec_t prec) {
  MpfrComplex r(prec);
  mpfr_set_d(r.re_, z.real(), MPFR_RNDN);
  mpfr_set_d(r.im_, z.imag(), MPFR_RNDN);
  return r;
}

MpfrComplex MpfrComplex::from_mpfr(mpfr_srcptr re, mpfr_srcptr im,
                                   mpfr_prec_t prec) {
  MpfrComplex r(prec);
  mpfr_set(r.re_, re, MPFR_RNDN);
  mpfr_set(r.im_, im, MPFR_RNDN);
  return r;
}

std::complex<double> MpfrComplex::to_double() const {
  return {mpfr_get_d(re_, MPFR_RNDN), mpfr_get_d(im_, MPFR_RNDN)};
}

MpfrComplex MpfrComplex::round_to(mpfr_prec_t prec) const {
  MpfrComplex r(prec);
  mpfr_set(r.re_, re_, MPFR_RNDN);
  mpfr_set(r.im_, im_, MPFR_RNDN);
  return r;
}

MpfrComplex MpfrComplex::add(const MpfrComplex& o) const {
  MpfrComplex r(std::max(prec_, o.prec_));
  mpfr_add(r.re_, re_, o.re_, MPFR_RNDN);
  mpfr_add(r.im_, im_, o.im_, MPFR_RNDN);
  return r;
}

MpfrComplex MpfrComplex::sub(const MpfrComplex& o) const {
  MpfrComplex r(std::max(prec_, o.prec_));
  mpfr_sub(r.re_, re_, o.re_, MPFR_RNDN);
  mpfr_sub(r.im_, im_, o.im_, MPFR_RNDN);
  return r;
}

MpfrComplex MpfrComplex::mul(const MpfrComplex& o) const {
  MpfrComplex r(std::max(prec_, o.prec_));
  mpfr_t t1, t2;
  mpfr_init2(t1, r.prec_);
  mpfr_init2(t2, r.prec_);
  mpfr_mul(t1, re_, o.re_, MPFR_RNDN);
  mpfr_mul(t2, im_, o.im_, MPFR_RNDN);
  mpfr_sub(r.re_, t1, t2, MPFR_RNDN);
  mpfr_mul(t1, re_, o.im_, MPFR_RNDN);
  mpfr_mul(t2, im_, o.re_, MPFR_RNDN);
  mpfr_add(r.im_, t1, t2, MPFR_RNDN);
  mpfr_clear(t1);
  mpfr_clear(t2);
  return r;
}

MpfrComplex MpfrComplex::div(const MpfrComplex& o) const {
  MpfrComplex r(std::max(prec_, o.prec_));
  mpfr_t n1, n2, den, t1, t2;
  mpfr_init2(n1, r.prec_);
  mpfr_init2(n2, r.prec_);
  mpfr_init2(den, r.prec_);
  mpfr_init2(t1, r.prec_);
  mpfr_init2(t2, r.prec_);
  // den = |o|^2
  mpfr_mul(t1, o.re_, o.re_, MPFR_RNDN);
  mpfr_mul(t2, o.im_, o.im_, MPFR_RNDN);
  mpfr_add(den, t1, t2, MPFR_RNDN);
  // numerator = this * conj(o)
  mpfr_mul(t1, re_, o.re_, MPFR_RNDN);
  mpfr_mul(t2, im_, o.im_, MPFR_RNDN);
  mpfr_add(n1, t1, t2, MPFR_RNDN);
  mpfr_mul(t1, im_, o.re_, MPFR_RNDN);
  mpfr_mul(t2, re_, o.im_, MPFR_RNDN);
  mpfr_sub(n2, t1, t2, MPFR_RNDN);
  mpfr_div(r.re_, n1, den, MPFR_RNDN);
  mpfr_div(r.im_, n2, den, MPFR_RNDN);
  mpfr_clear(n1);
  mpfr_clear(n2);
  mpfr_clear(den);
  mpfr_clear(t1);
  mpfr_clear(t2);
  return r;
}

MpfrComplex MpfrComplex::add_integer(const Integer& v) const {
  MpfrComplex r(*this);
  mpfr_add_z(r.re_, re_, v.get_mpz_t(), MPFR_RNDN);
  return r;
}

MpfrComplex MpfrComplex::conj() const {
  MpfrComplex r(*this);
  mpfr_neg(r.im_, r.im_, MPFR_RNDN);
  return r;
}

double MpfrComplex::abs_double() const {
  mpfr_t t1, t2;
  mpfr_init2(t1, 64);
  mpfr_init2(t2, 64);
  mpfr_mul(t1, re_, re_, MPFR_RNDN);
  mpfr_mul(t2, im_, im_, MPFR_RNDN);
  mpfr_add(t1, t1, t2, MPFR_RNDN);
  mpfr_sqrt(t1, t1, MPFR_RNDN);
  double d = mpfr_get_d(t1, MPFR_RNDN);
  mpfr_clear(t1);
  mpfr_clear(t2);
  return d;
}

bool MpfrComplex::is_finite() const {
  return mpfr_number_p(re_) && mpfr_number_p(im_);
}

ComplexInterval MpfrComplex::to_point_box() const {
  return {IntervalScalar::from_mpfr_point(re_, prec_),
          IntervalScalar::from_mpfr_point(im_, prec_)};
}

MpfrComplex eval_poly(const IntPolynomial& p, const MpfrComplex& z) {
  MpfrComplex r(z.precision());
  if (p.is_zero()) return r;
  r = r.add_integer(p.coeffs().back());
  for (auto it = p.coeffs().rbegin() + 1; it != p.coeffs().rend(); ++it) {
    r = r.mul(z).add_integer(*it);
  }
  return r;
}

}  // namespace bcl
