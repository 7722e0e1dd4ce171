#pragma once

#include <optional>
#include <vector>

#include "bcl/complex.hpp"
#include "bcl/poly.hpp"
#include "bcl/prec.hpp"

namespace bcl {

// A root of a square-free primitive integer polynomial, carried as the
// polynomial plus an enclosure certified to contain exactly that root.
// Refinement tightens the enclosure in place; the represented number never
// changes. Not safe to refine the same object from two threads.
class AlgebraicNumber {
 public:
  // Exact rational value (defining is its primitive linear polynomial).
  static AlgebraicNumber rational(const Rational& value);
  // Real root certified by a sign change: sign(F(lo)) * sign(F(hi)) < 0.
  static AlgebraicNumber real_root(IntPolynomial defining, const Rational& lo,
                                   const Rational& hi);
  // Non-real root in a box certified to contain exactly one root of the
  // defining polynomial; the box must not meet the real axis.
  static AlgebraicNumber complex_root(IntPolynomial defining,
                                      ComplexInterval box);

  const IntPolynomial& defining() const { return defining_; }
  bool is_real() const { return real_; }
  bool is_exact_rational() const { return exact_.has_value(); }
  const Rational& exact_value() const { return *exact_; }

  ComplexInterval box(mpfr_prec_t prec) const;
  IntervalScalar real_enclosure(mpfr_prec_t prec) const;  // real roots only
  IntervalScalar modulus(mpfr_prec_t prec) const;

  double approx_re() const;
  double approx_im() const;

  // Tightens the enclosure until its width is below 2^width_exp2.
  void refine_below(long width_exp2, const PrecisionContext& ctx);
  double width_approx() const;

  std::string describe() const;

 private:
  AlgebraicNumber() = default;
  IntPolynomial defining_;
  bool real_ = true;
  std::optional<Rational> exact_;
  // Real case: exact rational endpoints with recorded signs.
  Rational rlo_, rhi_;
  int slo_ = 0, shi_ = 0;
  // Complex case.
  ComplexInterval cbox_;
};

struct IsolatedRoot {
  AlgebraicNumber number;
  int multiplicity = 1;
};

// Certified isolation of all distinct complex roots of P: pairwise-disjoint
// enclosures of width <= eps, one per distinct root, multiplicities from the
// square-free decomposition.
std::vector<IsolatedRoot> isolate_roots(const IntPolynomial& P,
                                        const Rational& eps,
                                        const PrecisionContext& ctx);

// Isolates the roots of a square-free primitive polynomial.
std::vector<AlgebraicNumber> isolate_squarefree(const IntPolynomial& F,
                                                const PrecisionContext& ctx);

// Exact equality decision for two algebraic numbers.
bool algebraic_equal(AlgebraicNumber& a, AlgebraicNumber& b,
                     const PrecisionContext& ctx);

// Does h vanish at x? Decided exactly through gcd(h, x.defining).
bool algebraic_is_root_of(AlgebraicNumber& x, const IntPolynomial& h,
                          const PrecisionContext& ctx);

// Enclosure of |a - b|, with both enclosures refined below 2^width_exp2
// first.
IntervalScalar algebraic_distance(AlgebraicNumber& a, AlgebraicNumber& b,
                                  long width_exp2, const PrecisionContext& ctx);

// Enclosure of the Mahler measure |lead| * prod max(1, |root|), width <= eps.
IntervalScalar mahler_measure(const IntPolynomial& P, const Rational& eps,
                              const PrecisionContext& ctx);

}  // namespace bcl
