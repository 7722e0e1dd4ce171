#include "bcl/bezout.hpp"

#include <algorithm>

#include "bcl/errors.hpp"

namespace bcl {

namespace {

struct ExtGcd {
  RatPolynomial g, s, t;  // s*a + t*b = g, g monic
};

ExtGcd ext_gcd(const RatPolynomial& a, const RatPolynomial& b) {
  RatPolynomial r0 = a, r1 = b;
  RatPolynomial s0 = RatPolynomial::constant(Rational(1)), s1;
  RatPolynomial t0, t1 = RatPolynomial::constant(Rational(1));
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    RatPolynomial ns = sub(s0, mul(q, s1));
    RatPolynomial nt = sub(t0, mul(q, t1));
    r0 = r1;
    r1 = r;
    s0 = s1;
    s1 = ns;
    t0 = t1;
    t1 = nt;
  }
  Rational lead = r0.leading();
  return {mul_scalar(r0, 1 / lead), mul_scalar(s0, 1 / lead),
          mul_scalar(t0, 1 / lead)};
}

}  // namespace

Integer BezoutCertificate::height_bound() const {
  return pow2(static_cast<unsigned long>(n)) *
         factorial(2 * static_cast<unsigned long>(n));
}

BezoutCertificate bezout_certificate(const std::vector<SignPolynomial>& A,
                                     int n) {
  if (A.empty()) throw AllZero("empty polynomial set");
  if (n < 0) throw OutOfRange("degree bound must be >= 0");
  for (const auto& p : A)
    if (p.degree() > n)
      throw OutOfRange("member degree exceeds the declared bound");

  // Extended-Euclid sweep. Members are consulted in input order and kept only
  // when they strictly decrease the running gcd, which caps the count at n+1.
  std::vector<SignPolynomial> sel;
  std::vector<RatPolynomial> cof;
  RatPolynomial g;
  for (const auto& sp : A) {
    if (sp.is_zero()) continue;
    RatPolynomial p(sp.to_int_poly());
    if (g.is_zero()) {
      Rational lead = p.leading();
      g = mul_scalar(p, 1 / lead);
      sel.push_back(sp);
      cof.push_back(RatPolynomial::constant(1 / lead));
      continue;
    }
    if (divmod(p, g).second.is_zero()) continue;
    ExtGcd e = ext_gcd(g, p);
    for (auto& q : cof) q = mul(q, e.s);
    cof.push_back(e.t);
    sel.push_back(sp);
    g = e.g;
  }
  if (sel.empty()) throw AllZero("all members are zero");

  // Primitive integer gcd D = k * g with g monic.
  Integer den = 1;
  for (const auto& v : g.coeffs())
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.get_den().get_mpz_t());
  std::vector<Integer> ic;
  for (const auto& v : g.coeffs()) ic.push_back(Rational(v * den).get_num());
  IntPolynomial D = primitive_part(IntPolynomial(std::move(ic)));
  Rational k(D.leading());  // g is monic
  for (auto& q : cof) q = mul_scalar(q, k);

  size_t m = sel.size();
  // Reduce cofactor degrees modulo the last member, folding the quotients
  // into the last cofactor.
  if (m > 1) {
    RatPolynomial pm(sel[m - 1].to_int_poly());
    RatPolynomial extra;
    for (size_t j = 0; j + 1 < m; ++j) {
      if (cof[j].degree() < pm.degree()) continue;
      auto [q, r] = divmod(cof[j], pm);
      cof[j] = r;
      extra = add(extra, mul(q, RatPolynomial(sel[j].to_int_poly())));
    }
    cof[m - 1] = add(cof[m - 1], extra);
  }

  // Height control: re-solve the 2n-dimensional coefficient system exactly.
  // Columns are the shifts x^k P_j; the basic solution of a Gauss-Jordan
  // elimination equals the Cramer solution on the pivot minor, whose
  // determinants have {-1,0,1} entries except for one column taken from D.
  if (n >= 1 && D.degree() <= 2 * n - 1) {
    size_t rows = 2 * static_cast<size_t>(n);
    size_t cols = m * static_cast<size_t>(n);
    std::vector<std::vector<Rational>> M(rows,
                                         std::vector<Rational>(cols + 1, 0));
    for (size_t j = 0; j < m; ++j) {
      auto pj = sel[j].to_int_poly();
      for (size_t kk = 0; kk < static_cast<size_t>(n); ++kk)
        for (int i = 0; i <= pj.degree(); ++i) {
          size_t row = kk + static_cast<size_t>(i);
          if (row < rows)
            M[row][j * static_cast<size_t>(n) + kk] = Rational(pj.coeff(i));
        }
    }
    for (size_t row = 0; row < rows; ++row)
      M[row][cols] = Rational(D.coeff(row));

    std::vector<long> pivot_col_of_row(rows, -1);
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
      size_t pr = r;
      while (pr < rows && M[pr][c] == 0) ++pr;
      if (pr == rows) continue;
      std::swap(M[pr], M[r]);
      Rational inv = 1 / M[r][c];
      for (size_t cc = c; cc <= cols; ++cc) M[r][cc] *= inv;
      for (size_t rr = 0; rr < rows; ++rr) {
        if (rr == r || M[rr][c] == 0) continue;
        Rational f = M[rr][c];
        for (size_t cc = c; cc <= cols; ++cc) M[rr][cc] -= f * M[r][cc];
      }
      pivot_col_of_row[r] = static_cast<long>(c);
      ++r;
    }
    bool consistent = true;
    for (size_t rr = r; rr < rows; ++rr)
      if (M[rr][cols] != 0) consistent = false;
    if (consistent) {
      std::vector<Rational> lambda(cols, 0);
      for (size_t rr = 0; rr < r; ++rr)
        if (pivot_col_of_row[rr] >= 0)
          lambda[static_cast<size_t>(pivot_col_of_row[rr])] = M[rr][cols];
      std::vector<RatPolynomial> ncof;
      for (size_t j = 0; j < m; ++j) {
        std::vector<Rational> qc(
            lambda.begin() + static_cast<long>(j) * n,
            lambda.begin() + static_cast<long>(j + 1) * n);
        ncof.emplace_back(std::move(qc));
      }
      cof = std::move(ncof);
    }
  }

  // Drop members whose cofactor vanished.
  std::vector<SignPolynomial> fm;
  std::vector<RatPolynomial> fc;
  for (size_t j = 0; j < m; ++j) {
    if (cof[j].is_zero()) continue;
    fm.push_back(sel[j]);
    fc.push_back(cof[j]);
  }

  BezoutCertificate cert{D, std::move(fm), std::move(fc), n};
  verify_bezout(cert);
  return cert;
}

void verify_bezout(const BezoutCertificate& cert) {
  if (cert.members.size() != cert.cofactors.size())
    throw Error("bezout: member/cofactor count mismatch");
  if (cert.members.empty()) throw Error("bezout: empty certificate");
  if (cert.members.size() > static_cast<size_t>(cert.n) + 1)
    throw Error("bezout: more than n+1 members");
  RatPolynomial acc;
  for (size_t j = 0; j < cert.members.size(); ++j) {
    const auto& q = cert.cofactors[j];
    if (q.degree() > std::max(cert.n - 1, 0))
      throw Error("bezout: cofactor degree exceeds n-1");
    if (naive_height(q) > cert.height_bound())
      throw Error("bezout: cofactor height exceeds 2^n (2n)!");
    acc = add(acc, mul(q, RatPolynomial(cert.members[j].to_int_poly())));
  }
  if (!(acc == RatPolynomial(cert.gcd)))
    throw Error("bezout: identity sum Q_j P_j = gcd fails");
  for (const auto& p : cert.members) {
    if (!divides(cert.gcd, p.to_int_poly()))
      throw Error("bezout: gcd does not divide a member");
  }
}

}  // namespace bcl
