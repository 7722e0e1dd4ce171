#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bcl/number_field.hpp"

namespace bcl {

struct GarsiaLevel {
  int n = 0;
  size_t support = 0;
  IntervalScalar entropy;        // H_n in bits
  IntervalScalar entropy_rate;   // H_n / n, an upper bound on h_lambda
  IntervalScalar dim_bound;      // min(H_n / (n log2(1/lambda)), 1)
};

struct GarsiaReport {
  std::string defining;
  std::string isolator_lo, isolator_hi;
  std::vector<GarsiaLevel> levels;
  bool monotone_ok = true;  // H_2n/2n <= H_n/n along the doubling pairs
  bool upper_bound_only = true;  // semantics valid also for reducible inputs
};

enum class LevelSchedule { doubling, dense };

// Level distribution with optional on-disk caching keyed by
// sha256(defining|n) under {cache_dir}/garsia/{hash}/level.bin.
FieldMeasure cached_level_distribution(
    std::shared_ptr<const NumberField> field, int n,
    const PrecisionContext& ctx,
    const std::optional<std::string>& cache_dir,
    size_t support_cap = size_t(1) << 26);

GarsiaReport garsia_bounds(std::shared_ptr<const NumberField> field, int n_max,
                           LevelSchedule schedule, const PrecisionContext& ctx,
                           const std::optional<std::string>& cache_dir,
                           size_t support_cap = size_t(1) << 26);

std::string sha256_hex(const std::string& data);

}  // namespace bcl
