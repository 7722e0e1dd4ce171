#pragma once

#include <cstdint>

#include "bcl/audits.hpp"
#include "bcl/entropy.hpp"

namespace bcl {

struct SuiteConfig {
  uint64_t seed = 1;
  int cases = 100;
  int max_atoms = 32;
  long slack_exp2 = -40;
};

// Randomized audit of the scale-entropy laws:
//   (a) digit bound          H(mu; r|2r) <= 1
//   (b) Lipschitz/monotone   0 <= H(r1)-H(r2) <= 2 log(r2/r1)
//   (c) convolution          H(mu*nu; r|mr) >= H(mu; r|mr), integer m
//   (d) scaling              H(sX; sr) = H(X; r)
//   (e) halving              an integer-ratio subscale pair achieves half
//   (f) more digits          1-H(2r|4r) <= 4(1-H(r|2r))
//   (g) submodularity        H(X+Y+Z)+H(Y) <= H(X+Y)+H(Y+Z), smoothed Y
//   (h) interpretation       H(r/N|r) equals the conditional-entropy integral
AuditReport run_property_suite(const SuiteConfig& cfg,
                               const PrecisionContext& ctx, int threads);

// Non-asserting probe of the truncated normalized entropy sequence
// f_k = (H(mu_m; lambda^(2^k) | 1) - 2) / (2^k log2(1/lambda)),
// where mu_m is the level-m truncation. Heuristic: the monotonicity statement
// concerns the full infinite convolution.
std::vector<std::pair<int, IntervalScalar>> fk_probe(const Rational& lambda,
                                                     int truncation, int k_max,
                                                     const PrecisionContext& ctx);

// Deterministic 64-bit generator for the corpus.
struct SplitMix64 {
  uint64_t state;
  explicit SplitMix64(uint64_t seed) : state(seed) {}
  uint64_t next() {
    state += 0x9e3779b97f4a7c15ull;
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  uint64_t below(uint64_t n) { return next() % n; }
};

// Random measure with dyadic atoms (denominators <= 2^12) and exactly
// normalized rational weights.
AtomicMeasure random_measure(SplitMix64& rng, int max_atoms);
Rational random_dyadic_scale(SplitMix64& rng);

}  // namespace bcl
