#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "bcl/interval.hpp"
#include "bcl/rational.hpp"

namespace bcl {

// Finitely supported probability measure with exact rational atoms.
// Positions strictly increasing, weights positive, total mass exactly 1.
class AtomicMeasure {
 public:
  AtomicMeasure() = default;
  static AtomicMeasure delta(const Rational& position);
  // Sorts, merges duplicate positions, validates mass.
  static AtomicMeasure from_atoms(std::vector<std::pair<Rational, Rational>>);
  static AtomicMeasure uniform(const std::vector<Rational>& positions);

  size_t size() const { return pos_.size(); }
  const std::vector<Rational>& positions() const { return pos_; }
  const std::vector<Rational>& weights() const { return w_; }

  Rational min() const;
  Rational max() const;

  static AtomicMeasure parse_csv(std::istream& in);
  void write_csv(std::ostream& out) const;

 private:
  void validate() const;
  std::vector<Rational> pos_;
  std::vector<Rational> w_;
};

// Piecewise-constant density: values_[i] on [breaks_[i], breaks_[i+1]).
// Integral exactly 1, values non-negative, compact support.
class StepDensity {
 public:
  StepDensity() = default;
  StepDensity(std::vector<Rational> breaks, std::vector<Rational> values);

  size_t segments() const { return val_.size(); }
  const std::vector<Rational>& breakpoints() const { return brk_; }
  const std::vector<Rational>& values() const { return val_; }
  Rational total_mass() const;
  Rational value_at(const Rational& x) const;

 private:
  std::vector<Rational> brk_;
  std::vector<Rational> val_;
};

AtomicMeasure convolve(const AtomicMeasure& a, const AtomicMeasure& b,
                       size_t support_cap = size_t(1) << 26);
AtomicMeasure rescale(const AtomicMeasure& a, const Rational& s);
AtomicMeasure translate(const AtomicMeasure& a, const Rational& c);

// Density of X + uniform[0, r].
StepDensity smooth(const AtomicMeasure& a, const Rational& r);
// Density of f * mu (independent sum of a step density and an atomic
// measure).
StepDensity step_convolve(const StepDensity& f, const AtomicMeasure& mu);

// Law of sum_{j<n} xi_j lambda^j for unbiased independent signs, lambda
// rational in (0,1); equal sums merged exactly.
AtomicMeasure bernoulli_level_rational(const Rational& lambda, int n,
                                       size_t support_cap = size_t(1) << 26);

// Sign sums for a parameter known only as an interval: positions as
// enclosures with uniform weight 1/2^n; distinctness certified or
// UndecidableAtPrecision.
struct EnclosedMeasure {
  std::vector<IntervalScalar> positions;
  int level = 0;  // weights are 1/2^level each
};
EnclosedMeasure bernoulli_level_interval(const IntervalScalar& lambda, int n,
                                         const PrecisionContext& ctx,
                                         size_t support_cap = size_t(1) << 22);

}  // namespace bcl
