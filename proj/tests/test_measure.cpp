#include "doctest.h"

#include <sstream>

#include "bcl/errors.hpp"
#include "bcl/measure.hpp"

using namespace bcl;

TEST_CASE("bernoulli level lambda=1/2") {
  auto m2 = bernoulli_level_rational(Rational(1, 2), 2);
  REQUIRE(m2.size() == 4);
  CHECK(m2.positions()[0] == Rational(-3, 2));
  CHECK(m2.positions()[1] == Rational(-1, 2));
  CHECK(m2.positions()[2] == Rational(1, 2));
  CHECK(m2.positions()[3] == Rational(3, 2));
  for (const auto& w : m2.weights()) CHECK(w == Rational(1, 4));

  auto m10 = bernoulli_level_rational(Rational(1, 2), 10);
  CHECK(m10.size() == 1024);
  for (const auto& w : m10.weights()) CHECK(w == Rational(1, 1024));
}

TEST_CASE("level support bound and mass") {
  for (auto lam : {Rational(1, 2), Rational(2, 3), Rational(3, 5)}) {
    for (int n : {1, 3, 6}) {
      auto m = bernoulli_level_rational(lam, n);
      Rational bound = (1 - rational_pow(lam, n)) / (1 - lam);
      CHECK(m.min() >= -bound);
      CHECK(m.max() <= bound);
      Rational total(0);
      for (const auto& w : m.weights()) total += w;
      CHECK(total == 1);
    }
  }
}

TEST_CASE("level counts collisions for rational lambda with vanishing") {
  // lambda = 2/3 at level 2: sums {±1 ± 2/3} all distinct -> 4 atoms;
  // lambda = 1/2 level 3 gives 8 atoms; a collision requires P(lambda)=0
  // for some sign polynomial P, impossible for 1/2 except powers.
  auto m = bernoulli_level_rational(Rational(2, 3), 2);
  CHECK(m.size() == 4);
  auto m3 = bernoulli_level_rational(Rational(1, 2), 3);
  CHECK(m3.size() == 8);
}

TEST_CASE("convolve identity and uniform example") {
  auto mu = bernoulli_level_rational(Rational(1, 2), 3);
  auto conv = convolve(AtomicMeasure::delta(Rational(0)), mu);
  CHECK(conv.positions() == mu.positions());
  CHECK(conv.weights() == mu.weights());

  auto pm = AtomicMeasure::uniform({Rational(-1), Rational(1)});
  auto cc = convolve(pm, pm);
  REQUIRE(cc.size() == 3);
  CHECK(cc.positions()[0] == Rational(-2));
  CHECK(cc.weights()[0] == Rational(1, 4));
  CHECK(cc.positions()[1] == Rational(0));
  CHECK(cc.weights()[1] == Rational(1, 2));
  CHECK(cc.weights()[2] == Rational(1, 4));
}

TEST_CASE("convolution commutes and associates") {
  auto a = AtomicMeasure::uniform({Rational(0), Rational(1, 3)});
  auto b = AtomicMeasure::uniform({Rational(0), Rational(1, 2), Rational(2)});
  auto c = AtomicMeasure::from_atoms(
      {{Rational(-1), Rational(1, 4)}, {Rational(5, 7), Rational(3, 4)}});
  auto ab = convolve(a, b);
  auto ba = convolve(b, a);
  CHECK(ab.positions() == ba.positions());
  CHECK(ab.weights() == ba.weights());
  auto abc1 = convolve(ab, c);
  auto abc2 = convolve(a, convolve(b, c));
  CHECK(abc1.positions() == abc2.positions());
  CHECK(abc1.weights() == abc2.weights());
}

TEST_CASE("level via convolution identity") {
  // level(1/2, 2) = level-1 measure convolved with rescaled level-1
  Rational lam(1, 2);
  auto l1 = bernoulli_level_rational(lam, 1);
  auto l2 = bernoulli_level_rational(lam, 2);
  auto conv = convolve(l1, rescale(l1, lam));
  CHECK(conv.positions() == l2.positions());
  CHECK(conv.weights() == l2.weights());
}

TEST_CASE("rescale identity and smooth examples") {
  auto mu = AtomicMeasure::uniform({Rational(0), Rational(1, 2)});
  auto same = rescale(mu, Rational(1));
  CHECK(same.positions() == mu.positions());

  auto s = smooth(AtomicMeasure::delta(Rational(0)), Rational(1));
  REQUIRE(s.segments() == 1);
  CHECK(s.breakpoints()[0] == 0);
  CHECK(s.breakpoints()[1] == 1);
  CHECK(s.values()[0] == 1);

  auto s2 = smooth(mu, Rational(1));
  REQUIRE(s2.segments() == 3);
  CHECK(s2.values()[0] == Rational(1, 2));
  CHECK(s2.values()[1] == Rational(1));
  CHECK(s2.values()[2] == Rational(1, 2));
  CHECK(s2.breakpoints()[0] == 0);
  CHECK(s2.breakpoints()[3] == Rational(3, 2));
  CHECK(s2.total_mass() == 1);
}

TEST_CASE("step_convolve mass and values") {
  auto mu = AtomicMeasure::uniform({Rational(0), Rational(1, 2)});
  auto f = smooth(AtomicMeasure::delta(Rational(0)), Rational(1, 4));
  auto g = step_convolve(f, mu);
  CHECK(g.total_mass() == 1);
  // density = (1/2)*4 on [0,1/4) u [1/2,3/4)
  CHECK(g.value_at(Rational(1, 8)) == Rational(2));
  CHECK(g.value_at(Rational(3, 8)) == Rational(0));
  CHECK(g.value_at(Rational(5, 8)) == Rational(2));
}

TEST_CASE("csv round trip") {
  auto mu = AtomicMeasure::from_atoms(
      {{Rational(-1, 3), Rational(1, 4)}, {Rational(2), Rational(3, 4)}});
  std::stringstream ss;
  mu.write_csv(ss);
  auto back = AtomicMeasure::parse_csv(ss);
  CHECK(back.positions() == mu.positions());
  CHECK(back.weights() == mu.weights());
  std::stringstream dec("0.25,0.5\n1,0.5\n");
  auto d = AtomicMeasure::parse_csv(dec);
  CHECK(d.positions()[0] == Rational(1, 4));
}

TEST_CASE("interval-lambda level separates or throws") {
  PrecisionContext ctx{128, 4096};
  // A rational-like interval around 0.7 separates fine at small n.
  auto lam = IntervalScalar::from_rational(Rational(7, 10), 128);
  auto em = bernoulli_level_interval(lam, 6, ctx);
  CHECK(em.positions.size() == 64);
  // A fat interval cannot separate adjacent sums.
  auto fat = IntervalScalar::hull(
      IntervalScalar::from_rational(Rational(60, 100), 64),
      IntervalScalar::from_rational(Rational(62, 100), 64));
  CHECK_THROWS_AS(bernoulli_level_interval(fat, 6, ctx),
                  UndecidableAtPrecision);
}

TEST_CASE("measure invariants rejected on bad input") {
  CHECK_THROWS(AtomicMeasure::from_atoms(
      {{Rational(0), Rational(1, 2)}, {Rational(1), Rational(1, 3)}}));
  CHECK_THROWS(AtomicMeasure::from_atoms({}));
}
