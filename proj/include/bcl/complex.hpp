#pragma once

#include <complex>
#include <vector>

#include "bcl/interval.hpp"
#include "bcl/poly.hpp"

namespace bcl {

// Rectangular complex enclosure.
struct ComplexInterval {
  IntervalScalar re, im;

  ComplexInterval() = default;
  ComplexInterval(IntervalScalar r, IntervalScalar i)
      : re(std::move(r)), im(std::move(i)) {}

  ComplexInterval add(const ComplexInterval& o) const {
    return {re.add(o.re), im.add(o.im)};
  }
  ComplexInterval sub(const ComplexInterval& o) const {
    return {re.sub(o.re), im.sub(o.im)};
  }
  ComplexInterval mul(const ComplexInterval& o) const {
    return {re.mul(o.re).sub(im.mul(o.im)), re.mul(o.im).add(im.mul(o.re))};
  }
  ComplexInterval add_integer(const Integer& v, mpfr_prec_t prec) const {
    return {re.add(IntervalScalar::from_integer(v, prec)), im};
  }
  IntervalScalar abs2() const { return re.square().add(im.square()); }
  IntervalScalar abs() const { return abs2().sqrt(); }
  bool contains_zero() const { return re.contains_zero() && im.contains_zero(); }
  bool disjoint(const ComplexInterval& o) const {
    return re.disjoint(o.re) || im.disjoint(o.im);
  }
  // Certified |this - o| bounds.
  IntervalScalar distance(const ComplexInterval& o) const {
    return sub(o).abs();
  }
};

ComplexInterval eval_poly(const IntPolynomial& p, const ComplexInterval& z,
                          mpfr_prec_t prec);

// Point complex number in MPFR arithmetic (round-to-nearest); used for root
// refinement iterations whose results are certified separately.
class MpfrComplex {
 public:
  explicit MpfrComplex(mpfr_prec_t prec);
  MpfrComplex(const MpfrComplex& o);
  MpfrComplex(MpfrComplex&& o) noexcept;
  MpfrComplex& operator=(MpfrComplex o) noexcept;
  ~MpfrComplex();
  void swap(MpfrComplex& o) noexcept;

  static MpfrComplex from_double(std::complex<double> z, mpfr_prec_t prec);
  static MpfrComplex from_mpfr(mpfr_srcptr re, mpfr_srcptr im,
                               mpfr_prec_t prec);
  std::complex<double> to_double() const;
  mpfr_srcptr re() const { return re_; }
  mpfr_srcptr im() const { return im_; }
  mpfr_prec_t precision() const { return prec_; }

  MpfrComplex round_to(mpfr_prec_t prec) const;
  MpfrComplex add(const MpfrComplex& o) const;
  MpfrComplex sub(const MpfrComplex& o) const;
  MpfrComplex mul(const MpfrComplex& o) const;
  MpfrComplex div(const MpfrComplex& o) const;
  MpfrComplex add_integer(const Integer& v) const;
  MpfrComplex conj() const;
  double abs_double() const;
  bool is_finite() const;

  // Exact dyadic box around this point (zero-width).
  ComplexInterval to_point_box() const;

 private:
  mpfr_prec_t prec_;
  mpfr_t re_, im_;
};

MpfrComplex eval_poly(const IntPolynomial& p, const MpfrComplex& z);

}  // namespace bcl
