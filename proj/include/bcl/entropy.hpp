#pragma once

#include <optional>
#include <vector>

#include "bcl/measure.hpp"
#include "bcl/prec.hpp"

namespace bcl {

enum class ScaleMethod { sweep, smoothed };

// Entropy at a scale (bits), carried as an enclosure of the exact value.
struct EntropyValue {
  IntervalScalar value;
  ScaleMethod method = ScaleMethod::sweep;
  Rational r1;
  std::optional<Rational> r2;  // set for conditional entropies
};

// Shannon entropy in bits.
IntervalScalar shannon(const AtomicMeasure& mu, mpfr_prec_t prec);

struct SweepSegment {
  Rational t_lo, t_hi;
  IntervalScalar binned_entropy;
};
struct SweepResult {
  IntervalScalar value;
  std::vector<SweepSegment> segments;
};

// H(X;r) = int_0^1 H(floor(X/r + t)) dt computed exactly: the integrand is
// constant between breakpoints given by the fractional parts of x_i/r.
SweepResult sweep_entropy(const AtomicMeasure& mu, const Rational& r,
                          const PrecisionContext& ctx);

EntropyValue entropy_at_scale_sweep(const AtomicMeasure& mu, const Rational& r,
                                    const PrecisionContext& ctx);

// H(X;r) = H(X + I_r) - log2(r) via the exact step density of X + I_r.
EntropyValue entropy_at_scale_smoothed(const AtomicMeasure& mu,
                                       const Rational& r,
                                       const PrecisionContext& ctx);

IntervalScalar step_differential_entropy(const StepDensity& f,
                                         mpfr_prec_t prec);

EntropyValue cond_entropy(const AtomicMeasure& mu, const Rational& r1,
                          const Rational& r2, ScaleMethod method,
                          const PrecisionContext& ctx);

// H(mu*nu; r1|r2) - H(mu; r1|r2); reported, never asserted.
IntervalScalar convolution_gain_probe(const AtomicMeasure& mu,
                                      const AtomicMeasure& nu,
                                      const Rational& r1, const Rational& r2,
                                      const PrecisionContext& ctx);

// Bin partition of the atoms at a fixed offset t: list of (bin, atom indices).
std::vector<std::pair<Integer, std::vector<size_t>>> binned_partition(
    const AtomicMeasure& mu, const Rational& r, const Rational& t);

}  // namespace bcl
