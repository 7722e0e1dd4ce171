#include "bcl/garsia.hpp"

#include <openssl/evp.h>

#include <filesystem>

#include "bcl/errors.hpp"

namespace bcl {

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_MD_CTX* c = EVP_MD_CTX_new();
  if (!c || EVP_DigestInit_ex(c, EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(c, data.data(), data.size()) != 1 ||
      EVP_DigestFinal_ex(c, md, &len) != 1) {
    if (c) EVP_MD_CTX_free(c);
    throw Error("sha256 failed");
  }
  EVP_MD_CTX_free(c);
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[md[i] >> 4]);
    out.push_back(hex[md[i] & 15]);
  }
  return out;
}

FieldMeasure cached_level_distribution(
    std::shared_ptr<const NumberField> field, int n,
    const PrecisionContext& ctx, const std::optional<std::string>& cache_dir,
    size_t support_cap) {
  if (!cache_dir) return level_distribution(field, n, ctx, support_cap);
  std::string key =
      sha256_hex(field->defining().to_string() + "|" + std::to_string(n));
  std::filesystem::path dir =
      std::filesystem::path(*cache_dir) / "garsia" / key;
  std::filesystem::path file = dir / "level.bin";
  if (std::filesystem::exists(file)) {
    return read_level_file(file.string(), field);
  }
  FieldMeasure mu = level_distribution(field, n, ctx, support_cap);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (!ec) write_level_file(file.string(), mu);
  return mu;
}

GarsiaReport garsia_bounds(std::shared_ptr<const NumberField> field, int n_max,
                           LevelSchedule schedule, const PrecisionContext& ctx,
                           const std::optional<std::string>& cache_dir,
                           size_t support_cap) {
  if (n_max < 1) throw OutOfRange("n_max must be >= 1");
  if (!field->root_in_unit_interval(ctx))
    throw PreconditionUnmet("the marked root must lie in (0,1)");
  GarsiaReport rep;
  rep.defining = field->defining().to_string();
  {
    IntervalScalar e = field->enclosure(-64, ctx);
    rep.isolator_lo = e.lo_string();
    rep.isolator_hi = e.hi_string();
  }

  std::vector<int> levels;
  if (schedule == LevelSchedule::doubling) {
    for (int n = 1; n <= n_max; n *= 2) levels.push_back(n);
  } else {
    for (int n = 1; n <= n_max; ++n) levels.push_back(n);
  }

  // log2(1/lambda) enclosure
  IntervalScalar lam = field->enclosure(-static_cast<long>(ctx.bits), ctx);
  IntervalScalar log_inv = log2_interval(lam, ctx.bits).neg();

  for (int n : levels) {
    FieldMeasure mu = cached_level_distribution(field, n, ctx, cache_dir,
                                                support_cap);
    GarsiaLevel lvl;
    lvl.n = n;
    lvl.support = mu.support();
    lvl.entropy = shannon(mu, ctx.bits);
    lvl.entropy_rate =
        lvl.entropy.div(IntervalScalar::from_int(n, ctx.bits));
    IntervalScalar db = lvl.entropy_rate.div(log_inv);
    // min(db, 1)
    IntervalScalar one = IntervalScalar::from_int(1, ctx.bits);
    if (db.less_certain(one)) {
      lvl.dim_bound = db;
    } else if (one.less_equal_certain(db)) {
      lvl.dim_bound = one;
    } else {
      mpfr_t lo;
      mpfr_init2(lo, ctx.bits);
      mpfr_min(lo, db.lo(), one.lo(), MPFR_RNDD);
      lvl.dim_bound = IntervalScalar::from_endpoints(lo, one.hi(), ctx.bits);
      mpfr_clear(lo);
    }
    rep.levels.push_back(std::move(lvl));
  }

  // Subadditivity along doubling pairs: H_2n/2n <= H_n/n within slack.
  Rational slack(Integer(1), pow2(40));
  for (size_t i = 0; i < rep.levels.size(); ++i) {
    for (size_t j = 0; j < rep.levels.size(); ++j) {
      if (rep.levels[j].n != 2 * rep.levels[i].n) continue;
      if (!(rep.levels[j].entropy_rate.lo_rational() <=
            rep.levels[i].entropy_rate.hi_rational() + slack))
        rep.monotone_ok = false;
    }
  }
  return rep;
}

}  // namespace bcl
