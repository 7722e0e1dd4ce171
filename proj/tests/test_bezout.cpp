#include "doctest.h"

#include "bcl/bezout.hpp"
#include "bcl/errors.hpp"

using namespace bcl;

namespace {

uint64_t splitmix(uint64_t& s) {
  s += 0x9e3779b97f4a7c15ull;
  uint64_t z = s;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

SignPolynomial random_signpoly(uint64_t& s, int d) {
  std::vector<int8_t> t(static_cast<size_t>(d) + 1);
  for (auto& v : t) v = static_cast<int8_t>(splitmix(s) % 3) - 1;
  return SignPolynomial(std::move(t));
}

}  // namespace

TEST_CASE("constant one") {
  auto cert = bezout_certificate({SignPolynomial::from_string("1")}, 1);
  CHECK(cert.gcd == IntPolynomial::constant(1));
  REQUIRE(cert.members.size() == 1);
  verify_bezout(cert);
}

TEST_CASE("x and x+1 combine to 1") {
  auto a = SignPolynomial::from_string("0,1");
  auto b = SignPolynomial::from_string("1,1");
  auto cert = bezout_certificate({a, b}, 1);
  CHECK(cert.gcd == IntPolynomial::constant(1));
  verify_bezout(cert);
}

TEST_CASE("gcd collapse for {P, xP}") {
  auto p = SignPolynomial::from_string("-1,1,1");
  auto xp = SignPolynomial::from_string("0,-1,1,1");
  auto cert = bezout_certificate({p, xp}, 3);
  CHECK(cert.gcd == p.to_int_poly());
  verify_bezout(cert);
}

TEST_CASE("all zero throws") {
  CHECK_THROWS_AS(bezout_certificate({SignPolynomial()}, 2), AllZero);
}

TEST_CASE("random subsets of P_6 verify with height bound") {
  uint64_t s = 7;
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<SignPolynomial> a;
    int size = 1 + static_cast<int>(splitmix(s) % 3);
    bool nonzero = false;
    for (int i = 0; i < size; ++i) {
      a.push_back(random_signpoly(s, 6));
      nonzero |= !a.back().is_zero();
    }
    if (!nonzero) continue;
    auto cert = bezout_certificate(a, 6);
    verify_bezout(cert);
    CHECK(cert.height_bound() == pow2(6) * factorial(12));
    for (const auto& q : cert.cofactors) {
      CHECK(naive_height(q) <= pow2(6) * factorial(12));
      CHECK(q.degree() <= 5);
    }
    // gcd divides every input member
    for (const auto& p : a) {
      if (p.is_zero()) continue;
      CHECK(divides(cert.gcd, p.to_int_poly()));
    }
  }
}

TEST_CASE("divisor l1 bound over random member sets") {
  // every gcd verified to divide a member of P_n has l1 <= 2^n n
  uint64_t s = 123;
  int n = 8;
  Integer bound = pow2(static_cast<unsigned long>(n)) * n;
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<SignPolynomial> a;
    for (int i = 0; i < 2 + static_cast<int>(splitmix(s) % 3); ++i)
      a.push_back(random_signpoly(s, n));
    bool nz = false;
    for (auto& p : a) nz |= !p.is_zero();
    if (!nz) continue;
    auto cert = bezout_certificate(a, n);
    bool divides_member = false;
    for (auto& p : a)
      if (!p.is_zero() && divides(cert.gcd, p.to_int_poly()))
        divides_member = true;
    CHECK(divides_member);
    CHECK(l1_norm(cert.gcd) <= bound);
  }
}
