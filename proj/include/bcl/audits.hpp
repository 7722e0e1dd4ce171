#pragma once

#include <map>
#include <string>
#include <vector>

#include "bcl/interval.hpp"
#include "bcl/prec.hpp"
#include "bcl/rational.hpp"

namespace bcl {

struct AuditCheck {
  std::string id;
  std::string description;
  long cases = 0;
  long failures = 0;
  bool asserted = true;  // informational checks set this to false
  bool passed = true;
  std::vector<std::string> witnesses;
};

struct AuditReport {
  std::string name;
  std::map<std::string, std::string> params;
  std::map<std::string, std::string> values;
  std::vector<AuditCheck> checks;

  bool all_passed() const {
    for (const auto& c : checks)
      if (c.asserted && !c.passed) return false;
    return true;
  }
};

// Root-separation audit over all of P_n: isolates every root, deduplicates
// equal roots across polynomials (grid bucketing, never all-pairs), and
// certifies the minimum distance between distinct roots against 2*n^(-4n).
// The bound is asserted for n >= assert_floor only; smaller n report the
// observed minimum.
AuditReport separation_audit(int n, const Rational& pair_threshold,
                             const PrecisionContext& ctx, int threads,
                             int assert_floor = 9);

// Root-count audit: for every non-zero P in P_n and every k <= k_max, the
// certified count of non-zero roots of modulus < a(k), with
// a(k) = (k/(k+1)) * (k+1)^(-1/k); asserts count <= k.
AuditReport jensen_audit(int n, int k_max, const PrecisionContext& ctx,
                         int threads);

// a(k) enclosure; a(1) = 1/4 exactly.
IntervalScalar jensen_radius(int k, mpfr_prec_t prec);

}  // namespace bcl
