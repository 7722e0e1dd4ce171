#pragma once

#include <vector>

#include "bcl/poly.hpp"

namespace bcl {

// D = sum Q_j P_j with P_j from the input set, deg(Q_j) <= n-1, at most n+1
// members, and naive heights h(Q_j) <= 2^n (2n)!.
struct BezoutCertificate {
  IntPolynomial gcd;
  std::vector<SignPolynomial> members;
  std::vector<RatPolynomial> cofactors;
  int n = 0;

  Integer height_bound() const;  // 2^n (2n)!
};

BezoutCertificate bezout_certificate(const std::vector<SignPolynomial>& A,
                                     int n);

// Re-checks every certificate invariant in exact arithmetic; throws Error on
// the first violation.
void verify_bezout(const BezoutCertificate& cert);

}  // namespace bcl
