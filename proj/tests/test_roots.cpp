#include "doctest.h"

#include <algorithm>

#include "bcl/errors.hpp"
#include "bcl/roots.hpp"

using namespace bcl;

namespace {

const PrecisionContext kCtx{128, 4096};

// Quadratic-formula oracle: for x^2+bx+c with real roots, an enclosure of
// (-b +- sqrt(b^2-4c))/2 via interval sqrt.
IntervalScalar quad_root(long b, long c, int sign, mpfr_prec_t prec) {
  auto disc = IntervalScalar::from_int(b * b - 4 * c, prec).sqrt();
  auto num = IntervalScalar::from_int(-b, prec);
  num = sign > 0 ? num.add(disc) : num.sub(disc);
  return num.div(IntervalScalar::from_int(2, prec));
}

}  // namespace

TEST_CASE("isolate x^2-1: exact roots +-1") {
  auto roots = isolate_roots(IntPolynomial::from_string("-1,0,1"),
                             Rational(1, 1 << 20), kCtx);
  REQUIRE(roots.size() == 2);
  std::vector<Rational> vals;
  for (auto& r : roots) {
    REQUIRE(r.number.is_exact_rational());
    CHECK(r.multiplicity == 1);
    vals.push_back(r.number.exact_value());
  }
  std::sort(vals.begin(), vals.end());
  CHECK(vals[0] == -1);
  CHECK(vals[1] == 1);
}

TEST_CASE("isolate x^2+1: boxes around +-i") {
  auto roots = isolate_roots(IntPolynomial::from_string("1,0,1"),
                             Rational(1, 1 << 20), kCtx);
  REQUIRE(roots.size() == 2);
  for (auto& r : roots) {
    CHECK(!r.number.is_real());
    auto box = r.number.box(128);
    CHECK(box.re.contains(Rational(0)));
    CHECK(!box.im.contains(Rational(0)));
  }
  auto m0 = roots[0].number.modulus(128);
  CHECK(m0.contains(Rational(1)));
}

TEST_CASE("isolate x^2+x-1 against the quadratic oracle") {
  auto roots = isolate_roots(IntPolynomial::from_string("-1,1,1"),
                             Rational(1, Integer(1) << 48), kCtx);
  REQUIRE(roots.size() == 2);
  // roots 0.618... and -1.618...
  auto plus = quad_root(1, -1, +1, 128);
  auto minus = quad_root(1, -1, -1, 128);
  int matched = 0;
  for (auto& r : roots) {
    REQUIRE(r.number.is_real());
    auto enc = r.number.real_enclosure(128);
    if (enc.overlaps(plus)) ++matched;
    if (enc.overlaps(minus)) ++matched;
  }
  CHECK(matched == 2);
}

TEST_CASE("multiplicities via (x+1)^2(x-1) and root count") {
  auto p = IntPolynomial::from_string("-1,-1,1,1");
  auto roots = isolate_roots(p, Rational(1, 1024), kCtx);
  REQUIRE(roots.size() == 2);
  int total = 0;
  for (auto& r : roots) total += r.multiplicity;
  CHECK(total == p.degree());
}

TEST_CASE("root count equals degree with multiplicity on a corpus") {
  // all non-zero polynomials in P_4 with several checks
  Integer total = signpoly_count(4);
  SignPolyEnumerator en(4, 0, total);
  int count = 0;
  while (auto sp = en.next()) {
    if (sp->is_zero()) continue;
    auto p = sp->to_int_poly();
    if (p.degree() < 1) continue;
    if (++count % 7 != 0) continue;  // sample for speed
    auto roots = isolate_roots(p, Rational(1, 1 << 16), kCtx);
    int tot = 0;
    for (auto& r : roots) tot += r.multiplicity;
    CHECK(tot == p.degree());
    // enclosures pairwise disjoint
    for (size_t i = 0; i < roots.size(); ++i)
      for (size_t j = i + 1; j < roots.size(); ++j) {
        auto bi = roots[i].number.box(128);
        auto bj = roots[j].number.box(128);
        CHECK(bi.disjoint(bj));
      }
  }
}

TEST_CASE("refinement tightens enclosures") {
  auto roots = isolate_roots(IntPolynomial::from_string("-1,1,1"),
                             Rational(1, 1024), kCtx);
  for (auto& r : roots) {
    if (r.number.is_exact_rational()) continue;
    r.number.refine_below(-200, kCtx);
    CHECK(r.number.real_enclosure(256).width_below(-200));
  }
}

TEST_CASE("algebraic equality and distance") {
  auto p = IntPolynomial::from_string("-1,1,1");        // roots golden-inverse, -golden
  auto q = mul(p, IntPolynomial::from_string("1,1"));   // times (x+1)
  auto rp = isolate_roots(p, Rational(1, 1 << 20), kCtx);
  auto rq = isolate_roots(q, Rational(1, 1 << 20), kCtx);
  REQUIRE(rp.size() == 2);
  REQUIRE(rq.size() == 3);
  // every root of p equals exactly one root of q
  for (auto& a : rp) {
    int eq = 0;
    for (auto& b : rq) {
      AlgebraicNumber x = a.number, y = b.number;
      if (algebraic_equal(x, y, kCtx)) ++eq;
    }
    CHECK(eq == 1);
  }
  // distance between the two roots of p is sqrt(5)
  AlgebraicNumber a = rp[0].number, b = rp[1].number;
  auto dist = algebraic_distance(a, b, -80, kCtx);
  auto sqrt5 = IntervalScalar::from_int(5, 128).sqrt();
  CHECK(dist.overlaps(sqrt5));
}

TEST_CASE("mahler measure examples") {
  // M(x-2) = [2,2] exactly
  auto m1 = mahler_measure(IntPolynomial::from_string("-2,1"),
                           Rational(1, Integer(1) << 40), kCtx);
  CHECK(m1.is_point());
  CHECK(m1.contains(Rational(2)));

  // M(x^2-x-1) = (1+sqrt 5)/2 within 1e-12
  auto m2 = mahler_measure(IntPolynomial::from_string("-1,-1,1"),
                           Rational(1, Integer(1000000000000)), kCtx);
  auto golden = IntervalScalar::from_int(5, 160)
                    .sqrt()
                    .add(IntervalScalar::from_int(1, 160))
                    .div(IntervalScalar::from_int(2, 160));
  CHECK(m2.overlaps(golden));
  CHECK(m2.width().hi_rational() <= Rational(1, Integer(1000000000000)));

  // Lehmer's polynomial within 1e-10 of 1.17628081825991
  auto lehmer = IntPolynomial::from_string("1,1,0,-1,-1,-1,-1,-1,0,1,1");
  auto m3 = mahler_measure(lehmer, Rational(1, Integer(10000000000)), kCtx);
  Rational lo = parse_rational("1.17628081820");
  Rational hi = parse_rational("1.17628081831");
  CHECK(m3.hi_rational() >= lo);
  CHECK(m3.lo_rational() <= hi);
  CHECK(m3.lo_rational() >= parse_rational("1.176280818"));
  CHECK(m3.hi_rational() <= parse_rational("1.176280819"));

  // constant independent of roots
  auto m4 = mahler_measure(IntPolynomial::from_string("7"), Rational(1, 8), kCtx);
  CHECK(m4.contains(Rational(7)));
}

TEST_CASE("mahler multiplicativity on sample pairs") {
  std::vector<IntPolynomial> ps = {
      IntPolynomial::from_string("-1,-1,1"),
      IntPolynomial::from_string("1,1,1"),
      IntPolynomial::from_string("-1,0,0,1"),
      IntPolynomial::from_string("1,-1,0,1"),
  };
  Rational eps(1, Integer(1) << 36);
  for (size_t i = 0; i < ps.size(); ++i)
    for (size_t j = i; j < ps.size(); ++j) {
      auto mp = mahler_measure(ps[i], eps, kCtx);
      auto mq = mahler_measure(ps[j], eps, kCtx);
      auto mpq = mahler_measure(mul(ps[i], ps[j]), eps, kCtx);
      CHECK(mpq.overlaps(mp.mul(mq)));
    }
}

TEST_CASE("cyclotomic-heavy polynomial has measure 1") {
  // x^4+x^3+x^2+x+1 (all roots on the unit circle)
  auto m = mahler_measure(IntPolynomial::from_string("1,1,1,1,1"),
                          Rational(1, Integer(1) << 40), kCtx);
  CHECK(m.contains(Rational(1)));
  CHECK(m.width().hi_rational() <= Rational(1, Integer(1) << 40));
}
