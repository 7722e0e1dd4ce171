#include "doctest.h"

#include "bcl/interval.hpp"
#include "bcl/poly.hpp"
#include "bcl/errors.hpp"

using namespace bcl;

namespace {

// Independent log2 oracle in exact integer arithmetic: with M = 2^k,
// 2^p <= x^M < 2^(p+1) brackets M*log2(x) by the bit length of num^M and
// den^M. Equivalent to bisection against 2^y = x carried to depth k at once.
struct OracleBracket {
  Rational lo, hi;
};

OracleBracket log2_oracle(const Rational& x, unsigned k) {
  REQUIRE(x > 0);
  unsigned long M = 1ul << k;
  Integer n = integer_pow(x.get_num(), M);
  Integer d = integer_pow(x.get_den(), M);
  long bn = static_cast<long>(mpz_sizeinbase(n.get_mpz_t(), 2));
  long bd = static_cast<long>(mpz_sizeinbase(d.get_mpz_t(), 2));
  Rational den(Integer(1) << k);
  // M*log2(x) in (bn-1-bd, bn-bd+1)
  return {Rational(Integer(bn - 1 - bd)) / den,
          Rational(Integer(bn - bd + 1)) / den};
}

bool overlaps_decimal(const bcl::IntervalScalar& v, const std::string& lo,
                      const std::string& hi) {
  Rational a = parse_rational(lo), b = parse_rational(hi);
  return v.hi_rational() >= a && v.lo_rational() <= b;
}

}  // namespace

TEST_CASE("interval basics and containment") {
  auto a = IntervalScalar::from_rational(Rational(1, 3), 128);
  CHECK(a.contains(Rational(1, 3)));
  CHECK(a.width_below(-120));
  auto b = IntervalScalar::from_int(2, 128);
  CHECK(b.is_point());
  auto c = a.mul(b);
  CHECK(c.contains(Rational(2, 3)));
  auto d = c.sub(c);
  CHECK(d.contains_zero());
  auto e = IntervalScalar::from_rational(Rational(-7, 5), 128).abs();
  CHECK(e.contains(Rational(7, 5)));
}

TEST_CASE("interval division and floor") {
  auto one = IntervalScalar::from_int(1, 64);
  auto three = IntervalScalar::from_int(3, 64);
  auto t = one.div(three);
  CHECK(t.contains(Rational(1, 3)));
  CHECK_THROWS_AS(one.div(t.sub(t)), Error);
  auto f = IntervalScalar::from_rational(Rational(7, 2), 64).floor_certain();
  REQUIRE(f.has_value());
  CHECK(*f == 3);
  // floor undecided across a boundary
  auto g = IntervalScalar::hull(IntervalScalar::from_rational(Rational(199, 100), 64),
                                IntervalScalar::from_rational(Rational(201, 100), 64));
  CHECK(!g.floor_certain().has_value());
}

TEST_CASE("interval_eval_poly examples") {
  // identity polynomial at [0.5, 0.5]
  auto x = IntervalScalar::from_rational(Rational(1, 2), 128);
  auto idp = IntPolynomial::from_string("0,1");
  auto r = interval_eval_poly(idp, x, 128);
  CHECK(r.contains(Rational(1, 2)));
  CHECK(r.width_below(-100));

  // x^2 - x - 1 at exact 2 -> exactly 1
  auto p = IntPolynomial::from_string("-1,-1,1");
  auto at2 = interval_eval_poly(p, IntervalScalar::from_int(2, 128), 128);
  CHECK(at2.contains(Rational(1)));
  CHECK(at2.is_point());

  // x^2 + x - 1 at an enclosure of (sqrt(5)-1)/2 contains 0 once the
  // enclosure is tight enough.
  auto q = IntPolynomial::from_string("-1,1,1");
  // golden inverse enclosure by bisection on q
  Rational lo(0), hi(1);
  for (int i = 0; i < 220; ++i) {
    Rational mid = (lo + hi) / 2;
    if (sign_at(q, mid) < 0) lo = mid; else hi = mid;
  }
  auto enc = IntervalScalar::hull(IntervalScalar::from_rational(lo, 256),
                                  IntervalScalar::from_rational(hi, 256));
  CHECK(enc.width_below(-100));
  auto val = interval_eval_poly(q, enc, 256);
  CHECK(val.contains_zero());
  CHECK(val.width_below(-100));
}

TEST_CASE("log2 exact points and oracle") {
  auto four = IntervalScalar::from_int(4, 64);
  auto l4 = log2_interval(four, 64);
  CHECK(l4.is_point());
  CHECK(l4.contains(Rational(2)));

  auto one = IntervalScalar::from_int(1, 64);
  auto l1 = log2_interval(one, 64);
  CHECK(l1.is_point());
  CHECK(l1.contains(Rational(0)));

  // width bound at 64 bits for [3,3]
  auto three = IntervalScalar::from_int(3, 64);
  auto l3 = log2_interval(three, 64);
  CHECK(l3.width_below(-60));
  // against the exact oracle bracket
  auto ob = log2_oracle(Rational(3), 18);
  CHECK(l3.hi_rational() >= ob.lo);
  CHECK(l3.lo_rational() <= ob.hi);
  // decimal anchor 1.5849625007
  CHECK(overlaps_decimal(l3, "1.5849625007", "1.5849625008"));

  CHECK_THROWS_AS(log2_interval(IntervalScalar::from_int(0, 64), 64),
                  NonPositiveArgument);
  CHECK_THROWS_AS(log2_interval(IntervalScalar::from_int(-2, 64), 64),
                  NonPositiveArgument);
}

TEST_CASE("log2 oracle on assorted rationals") {
  for (long p = 1; p <= 40; p += 3) {
    Rational x(p, 7);
    auto li = log2_interval(x, 96);
    auto ob = log2_oracle(x, 16);
    CHECK(li.lo_rational() <= ob.hi);
    CHECK(li.hi_rational() >= ob.lo);
  }
}

TEST_CASE("entropy_term examples") {
  auto e1 = entropy_term(Rational(1), 128);
  CHECK(e1.is_point());
  CHECK(e1.contains(Rational(0)));

  auto eh = entropy_term(Rational(1, 2), 128);
  CHECK(eh.contains(Rational(1, 2)));
  CHECK(eh.width_below(-120));

  // p = 1/3: -(1/3)log2(1/3) = log2(3)/3, cross-checked via log2_interval.
  auto et = entropy_term(Rational(1, 3), 128);
  auto l3 = log2_interval(Rational(3), 160);
  auto expect = l3.div(IntervalScalar::from_int(3, 160));
  CHECK(et.overlaps(expect));
  CHECK(et.width_below(-100));
  // decimal anchor 0.528320...
  CHECK(overlaps_decimal(et, "0.5283208335", "0.5283208336"));

  CHECK_THROWS_AS(entropy_term(Rational(0), 128), OutOfRange);
  CHECK_THROWS_AS(entropy_term(Rational(3, 2), 128), OutOfRange);
}

TEST_CASE("binary entropy bound property") {
  Rational bound = Rational(1) + Rational(1, Integer(1) << 50);
  for (long num = 1; num < 64; ++num) {
    Rational p = Rational(num) / 64;
    if (p >= 1) continue;
    auto s = entropy_term(p, 128).add(entropy_term(Rational(1) - p, 128));
    CHECK(s.lo_rational() <= bound);
  }
}

TEST_CASE("monotone refinement: doubling precision tightens enclosures") {
  Rational x(355, 113);
  auto c64 = log2_interval(x, 64);
  auto c128 = log2_interval(x, 128);
  auto c256 = log2_interval(x, 256);
  CHECK(c64.contains(c128));
  CHECK(c128.contains(c256));

  auto p = IntPolynomial::from_string("3,-2,0,5,-1");
  auto xi64 = IntervalScalar::from_rational(Rational(22, 7), 64);
  auto xi128 = IntervalScalar::from_rational(Rational(22, 7), 128);
  CHECK(interval_eval_poly(p, xi64, 64).contains(
      interval_eval_poly(p, xi128, 128)));
}

TEST_CASE("containment: rational vs interval expression trees") {
  // ((3/7) * (5/3) - 2/21)^2 evaluated both ways
  Rational a(3, 7), b(5, 3), c(2, 21);
  Rational exact = (a * b - c) * (a * b - c);
  auto ia = IntervalScalar::from_rational(a, 96);
  auto ib = IntervalScalar::from_rational(b, 96);
  auto ic = IntervalScalar::from_rational(c, 96);
  auto expr = ia.mul(ib).sub(ic).square();
  CHECK(expr.contains(exact));
}

TEST_CASE("exp2/pow interval") {
  auto h = IntervalScalar::from_rational(Rational(1, 2), 96);
  auto r = exp2_interval(h, 96);
  // 2^(1/2) = sqrt(2)
  auto s = IntervalScalar::from_int(2, 96).sqrt();
  CHECK(r.overlaps(s));
  auto p = pow_interval(IntervalScalar::from_int(8, 96), Rational(1, 3), 96);
  CHECK(p.contains(Rational(2)));
  auto ip = pow_interval(IntervalScalar::from_rational(Rational(3, 2), 96),
                         Rational(3), 96);
  CHECK(ip.contains(Rational(27, 8)));
}

TEST_CASE("dyadic serialization round trip") {
  auto v = IntervalScalar::from_rational(Rational(5, 8), 64);
  CHECK(v.lo_string() == "5*2^-3");
  CHECK(v.hi_string() == "5*2^-3");
  auto z = IntervalScalar();
  CHECK(z.lo_string() == "0*2^0");
}
