#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "bcl/entropy.hpp"
#include "bcl/poly.hpp"
#include "bcl/roots.hpp"

namespace bcl {

// A marked real root of a square-free integer polynomial; the arithmetic
// substrate for exact collision detection. Elements live as integer
// coefficient vectors reduced modulo the defining polynomial with a shared
// power-of-leading-coefficient denominator.
class NumberField {
 public:
  // The isolator must certify a unique root (sign change or exact point).
  NumberField(IntPolynomial defining, const Rational& iso_lo,
              const Rational& iso_hi);

  const IntPolynomial& defining() const { return defining_; }
  int degree() const { return defining_.degree(); }
  const Integer& lead() const { return defining_.leading(); }

  // Enclosure of the marked root with width below 2^width_exp2.
  IntervalScalar enclosure(long width_exp2, const PrecisionContext& ctx) const;
  AlgebraicNumber root_copy() const;
  bool root_in_unit_interval(const PrecisionContext& ctx) const;

  // lambda^k = vec / lead^k with an integer coefficient vector.
  std::vector<Integer> power_vector(int k) const;

 private:
  IntPolynomial defining_;
  mutable std::mutex mu_;
  mutable AlgebraicNumber root_ = AlgebraicNumber::rational(Rational(0));
  mutable std::vector<std::vector<Integer>> powers_;  // cache of power_vector
};

// Finitely supported measure over a number field: atom values are
// vec(lambda) / scale, weights are mult / 2^level.
struct FieldMeasure {
  std::shared_ptr<const NumberField> field;
  int level = 0;
  Integer scale = 1;  // lead^(level-1)
  struct Atom {
    std::vector<Integer> vec;
    Integer mult;
  };
  std::vector<Atom> atoms;  // sorted by coefficient vector

  size_t support() const { return atoms.size(); }
  Rational weight(size_t i) const;
  IntervalScalar value_enclosure(size_t i, long lambda_width_exp2,
                                 const PrecisionContext& ctx) const;
};

// Law of sum_{j<n} xi_j lambda^j with exact merging of equal reduced
// vectors, built one digit at a time.
FieldMeasure level_distribution(std::shared_ptr<const NumberField> field,
                                int n, const PrecisionContext& ctx,
                                size_t support_cap = size_t(1) << 26);

// The same digit-at-a-time reduction for a bare defining polynomial (no
// marked root needed): merging is purely algebraic, so this serves entropy
// bounds for any root of the polynomial, real or complex.
struct ModLevel {
  int level = 0;
  Integer scale = 1;
  std::vector<FieldMeasure::Atom> atoms;
};
ModLevel level_atoms_modulo(const IntPolynomial& defining, int n,
                            size_t support_cap = size_t(1) << 26);

// Shannon entropy in bits: level - 2^-level * sum m log2 m.
IntervalScalar shannon(const FieldMeasure& mu, mpfr_prec_t prec);
IntervalScalar shannon(const ModLevel& mu, mpfr_prec_t prec);

// Exact test: vec(lambda)/scale == q.
bool field_value_equals_rational(const NumberField& field,
                                 const std::vector<Integer>& vec,
                                 const Integer& scale, const Rational& q,
                                 const PrecisionContext& ctx);

// Entropy at a scale for field measures; same definition as the rational
// sweep, breakpoints certified by refining the root enclosure with exact
// algebraic tie decisions.
SweepResult sweep_entropy_field(const FieldMeasure& mu, const Rational& r,
                                const PrecisionContext& ctx);

// Bin partition of atom classes at offset t: bin index per atom group.
std::vector<std::pair<Integer, std::vector<size_t>>> binned_partition_field(
    const FieldMeasure& mu, const Rational& r, const Rational& t,
    const PrecisionContext& ctx);

// Binary serialization (header "BCL1"): defining, level, atoms with scaled
// integer vectors and multiplicities; bit-exact reload.
void write_level_file(const std::string& path, const FieldMeasure& mu);
FieldMeasure read_level_file(const std::string& path,
                             std::shared_ptr<const NumberField> field);

}  // namespace bcl
