#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "bcl/audits.hpp"
#include "bcl/bezout.hpp"
#include "bcl/garsia.hpp"
#include "bcl/measure.hpp"
#include "bcl/number_field.hpp"

namespace bcl {

// The parameter of a run: exact rational, marked algebraic root, or a bare
// interval (exploration only; exact collision decisions need the first two).
struct LambdaSpec {
  enum class Kind { rational, algebraic, interval };
  Kind kind = Kind::rational;
  Rational rat;
  std::shared_ptr<const NumberField> field;
  IntervalScalar box;

  static LambdaSpec from_rational(const Rational& q);
  static LambdaSpec from_field(std::shared_ptr<const NumberField> f);
  static LambdaSpec from_interval(const IntervalScalar& i);

  // Enclosure of the parameter at the requested width (interval kind returns
  // the fixed box).
  IntervalScalar enclosure(long width_exp2, const PrecisionContext& ctx) const;
  std::string describe() const;
};

enum class BinPolicy { strict, inclusive };

struct DiophConfig {
  int assert_floor = 9;            // paper bounds asserted for n >= floor
  Rational epsilon = Rational(1, 64);  // lambda <= 1 - epsilon
  std::optional<Rational> c_exponent;  // optional sharper r^c bound
  Rational full_check_c = Rational(1, 2);
  size_t pair_cap = 4'000'000;
  size_t enum_cap = size_t(1) << 26;
};

struct CollisionSet {
  int n = 0;
  Rational r;
  Rational t;
  // sign vectors as bitmasks: bit j set means +1 at position j
  std::vector<std::pair<uint64_t, uint64_t>> pairs;
  bool pairs_complete = true;
  size_t pair_count = 0;
  std::vector<SignPolynomial> difference_polys;  // deduped, sign-normalized
  std::vector<char> certified;  // |P(lambda)| <= r certified per poly
};

CollisionSet collision_search(const LambdaSpec& lambda, int n,
                              const Rational& r, const Rational& t,
                              BinPolicy policy, const PrecisionContext& ctx,
                              const DiophConfig& cfg = {});

struct EntropyWitness {
  int n = 0;
  Rational r;
  IntervalScalar entropy;  // certified [n, n]
  size_t support = 0;
};

struct ApproximationCertificate {
  AlgebraicNumber eta = AlgebraicNumber::rational(Rational(0));
  bool eta_real = false;
  IntervalScalar distance;            // |lambda - eta|
  std::vector<SignPolynomial> vanishing;
  IntPolynomial gcd;
  BezoutCertificate bezout;           // evidence for the gcd smallness
  IntervalScalar gcd_at_lambda;       // |D(lambda)|
  Rational gcd_bound;                 // (n+1) 2^(2n+1) (2n)! r
  bool gcd_bound_ok = false;
  std::string bound_kind;             // "r^(1/n)(2n)^2" and optionally "r^c"
  IntervalScalar bound_value;
  bool bound_asserted = false;        // asserted only for n >= assert_floor
  bool bound_holds = false;
  std::optional<IntervalScalar> c_bound_value;  // r^c when configured
  bool c_bound_holds = false;
  int n = 0;
  Rational r;
  // entropy rate of the level distribution modulo eta's defining polynomial
  IntervalScalar h_eta_bound;
  bool has_h_eta = false;
};

// Prop.-style certificate: gcd, nearest root, distance against the explicit
// bound. Throws PreconditionUnmet when r is too large for either route and
// NoRootInRange when no root lies within the asserted bound.
ApproximationCertificate common_root_certificate(
    const std::vector<SignPolynomial>& A, const LambdaSpec& lambda, int n,
    const Rational& r, const PrecisionContext& ctx,
    const DiophConfig& cfg = {});

// Re-checks an emitted certificate from scratch: fresh gcd, fresh isolation,
// fresh interval evaluations at an independent precision.
void reverify_certificate(const ApproximationCertificate& cert,
                          const LambdaSpec& lambda,
                          const PrecisionContext& fresh_ctx);

struct DichotomyResult {
  std::optional<EntropyWitness> witness;
  std::optional<ApproximationCertificate> certificate;
  IntervalScalar entropy;  // H(mu_lambda^((lambda^n,1]); r)
  bool entropy_known = false;
  Rational witness_offset;
  size_t support = 0;
  size_t collision_pairs = 0;
};

DichotomyResult dichotomy(const LambdaSpec& lambda, int n, const Rational& r,
                          const PrecisionContext& ctx,
                          const DiophConfig& cfg = {});

// Theorem-3.2-style audit: eta a root of a sign polynomial of degree <= n,
// 0 < |lambda - eta| < n^(-4n); checks H(mu_lambda^((lambda^n,1]); r) = n at
// r just below |lambda - eta|^(1/c).
AuditReport full_entropy_check(const LambdaSpec& lambda,
                               std::shared_ptr<const NumberField> eta, int n,
                               const PrecisionContext& ctx,
                               const DiophConfig& cfg = {});

// n^(-3n) and friends as exact rationals.
Rational power_bound(int n, int exponent_factor);  // n^(-exponent_factor*n)

}  // namespace bcl
