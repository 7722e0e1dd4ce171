#include "doctest.h"

#include <set>

#include "bcl/errors.hpp"
#include "bcl/poly.hpp"

using namespace bcl;

TEST_CASE("construction and parsing") {
  auto p = IntPolynomial::from_string("-1,-1,1");
  CHECK(p.degree() == 2);
  CHECK(p.to_string() == "-1,-1,1");
  auto z = IntPolynomial(std::vector<Integer>{Integer(0), Integer(0)});
  CHECK(z.is_zero());
  CHECK(z.degree() == -1);
  CHECK_THROWS_AS(IntPolynomial::from_string("1,,2"), UsageError);
}

TEST_CASE("arithmetic and evaluation") {
  auto p = IntPolynomial::from_string("-1,-1,1");  // x^2-x-1
  CHECK(eval(p, Rational(2)) == 1);
  CHECK(eval(p, Rational(0)) == -1);
  auto q = mul(p, p);
  CHECK(q.degree() == 4);
  CHECK(eval(q, Rational(2)) == 1);
  CHECK(sub(add(p, q), q) == p);
  auto d = derivative(p);
  CHECK(d == IntPolynomial::from_string("-1,2"));
  CHECK(reverse(p) == IntPolynomial::from_string("1,-1,-1"));
}

TEST_CASE("division and divisibility") {
  auto p = IntPolynomial::from_string("-1,-1,1");
  auto u = IntPolynomial::from_string("3,1");  // x+3
  auto prod = mul(p, u);
  auto q = divide_exact(prod, p);
  REQUIRE(q.has_value());
  CHECK(*q == u);
  CHECK(!divide_exact(prod, IntPolynomial::from_string("1,1")).has_value());
  CHECK(divides(p, prod));
}

TEST_CASE("gcd_set spec examples") {
  // {x^2-1, x^3-1} -> x-1
  auto a = IntPolynomial::from_string("-1,0,1");
  auto b = IntPolynomial::from_string("-1,0,0,1");
  auto g = gcd_set({a, b});
  CHECK(g == IntPolynomial::from_string("-1,1"));

  // single element: primitive part of +-P
  auto p = IntPolynomial::from_string("0,-2,-2");
  auto gp = gcd_set({p});
  CHECK(gp == IntPolynomial::from_string("0,2,2"));

  // constructed: x*(x^2+x-1) and (x+1)*(x^2+x-1) -> x^2+x-1
  auto core = IntPolynomial::from_string("-1,1,1");
  auto m1 = mul(core, IntPolynomial::from_string("0,1"));
  auto m2 = mul(core, IntPolynomial::from_string("1,1"));
  CHECK(gcd_set({m1, m2}) == core);

  CHECK_THROWS_AS(gcd_set({IntPolynomial(), IntPolynomial()}), AllZero);
}

TEST_CASE("gcd randomized recovery") {
  // gcd recovers a planted common factor from random multiples
  uint64_t s = 42;
  auto rnd = [&]() {
    s ^= s << 13;
    s ^= s >> 7;
    s ^= s << 17;
    return s;
  };
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Integer> tc;
    for (int i = 0; i < 3; ++i)
      tc.emplace_back(static_cast<long>(rnd() % 3) - 1);
    tc.emplace_back(1);
    IntPolynomial core(std::move(tc));
    std::vector<IntPolynomial> mult;
    for (int j = 0; j < 3; ++j) {
      std::vector<Integer> c;
      for (int i = 0; i <= 2; ++i)
        c.emplace_back(static_cast<long>(rnd() % 5) - 2);
      IntPolynomial u(std::move(c));
      if (u.is_zero()) u = IntPolynomial::constant(1);
      mult.push_back(mul(core, u));
    }
    auto g = gcd_set(mult);
    CHECK(divides(core, g));
    for (const auto& m : mult) CHECK(divides(g, m));
  }
}

TEST_CASE("square-free decomposition") {
  // (x+1)^2 (x-1) = x^3+x^2-x-1, a sign polynomial with a double root
  auto p = IntPolynomial::from_string("-1,-1,1,1");
  auto sf = square_free_decomposition(p);
  REQUIRE(sf.size() == 2);
  CHECK(sf[0].second == 1);
  CHECK(sf[0].first == IntPolynomial::from_string("-1,1"));
  CHECK(sf[1].second == 2);
  CHECK(sf[1].first == IntPolynomial::from_string("1,1"));

  auto q = IntPolynomial::from_string("-1,1,1");
  auto sq = square_free_decomposition(q);
  REQUIRE(sq.size() == 1);
  CHECK(sq[0].second == 1);

  // (x^2+x+1)^3
  auto c = IntPolynomial::from_string("1,1,1");
  auto cc = mul(mul(c, c), c);
  auto sc = square_free_decomposition(cc);
  REQUIRE(sc.size() == 1);
  CHECK(sc[0].first == c);
  CHECK(sc[0].second == 3);
}

TEST_CASE("norms") {
  CHECK(l1_norm(IntPolynomial::from_string("-1,-1,1")) == 3);
  RatPolynomial q(std::vector<Rational>{Rational(5), Rational(2, 3)});
  CHECK(naive_height(q) == 5);
  RatPolynomial q2(std::vector<Rational>{Rational(1, 7), Rational(2)});
  CHECK(naive_height(q2) == 7);
}

TEST_CASE("enumeration counts and order") {
  CHECK(signpoly_count(0) == 3);
  CHECK(signpoly_count(1) == 9);
  CHECK(signpoly_count(9) == 59049);

  // d = 0: exactly {-1, 0, 1}
  std::vector<std::string> seen;
  enumerate_signpolys(0, Integer(100), nullptr,
                      [&](const SignPolynomial& p) {
                        seen.push_back(p.to_int_poly().to_string());
                      });
  REQUIRE(seen.size() == 3);
  CHECK(seen[0] == "-1");
  CHECK(seen[1] == "0");
  CHECK(seen[2] == "1");

  // d = 1: 9 distinct, constant term fastest-varying
  std::set<std::string> all;
  std::vector<SignPolynomial> order;
  enumerate_signpolys(1, Integer(100), nullptr,
                      [&](const SignPolynomial& p) {
                        all.insert(p.to_string());
                        order.push_back(p);
                      });
  CHECK(all.size() == 9);
  // first three share the x-coefficient -1 and vary the constant term
  CHECK(order[0].to_int_poly() == IntPolynomial::from_string("-1,-1"));
  CHECK(order[1].to_int_poly() == IntPolynomial::from_string("0,-1"));
  CHECK(order[2].to_int_poly() == IntPolynomial::from_string("1,-1"));

  // d = 9 count by full traversal
  size_t n = 0;
  enumerate_signpolys(9, Integer(100000), nullptr,
                      [&](const SignPolynomial&) { ++n; });
  CHECK(n == 59049);

  CHECK_THROWS_AS(
      enumerate_signpolys(9, Integer(1000), nullptr,
                          [](const SignPolynomial&) {}),
      CapExceeded);
  // with a filter the cap does not apply
  std::function<bool(const SignPolynomial&)> f =
      [](const SignPolynomial& p) { return p.is_zero(); };
  size_t k = 0;
  enumerate_signpolys(9, Integer(1000), &f,
                      [&](const SignPolynomial&) { ++k; });
  CHECK(k == 1);
}

TEST_CASE("enumerator partition by index ranges") {
  Integer total = signpoly_count(3);
  std::vector<std::string> whole;
  SignPolyEnumerator all(3, 0, total);
  while (auto p = all.next()) whole.push_back(p->to_string());

  std::vector<std::string> pieces;
  Integer third = total / 3;
  for (int part = 0; part < 3; ++part) {
    Integer b = third * part;
    Integer e = part == 2 ? total : third * (part + 1);
    SignPolyEnumerator en(3, b, e);
    while (auto p = en.next()) pieces.push_back(p->to_string());
  }
  CHECK(whole == pieces);
}

TEST_CASE("interval containment of polynomial evaluation") {
  auto p = IntPolynomial::from_string("2,-3,0,1");
  for (long num = -8; num <= 8; ++num) {
    Rational x(num, 5);
    Rational exact = eval(p, x);
    auto iv = interval_eval_poly(p, IntervalScalar::from_rational(x, 96), 96);
    CHECK(iv.contains(exact));
  }
}
