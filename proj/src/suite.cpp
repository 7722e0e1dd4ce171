#include "bcl/suite.hpp"

#include <algorithm>
#include <set>

#include "bcl/errors.hpp"
#include "bcl/par.hpp"

namespace bcl {

AtomicMeasure random_measure(SplitMix64& rng, int max_atoms) {
  int m = 1 + static_cast<int>(rng.below(static_cast<uint64_t>(max_atoms)));
  std::set<Rational> pos;
  while (static_cast<int>(pos.size()) < m) {
    int e = static_cast<int>(rng.below(13));
    long k = static_cast<long>(rng.below(1ull << 17)) - (1l << 16);
    pos.insert(Rational(Integer(k)) / Rational(Integer(1) << e));
  }
  std::vector<std::pair<Rational, Rational>> atoms;
  Rational total(0);
  std::vector<Rational> raw;
  for (size_t i = 0; i < pos.size(); ++i) {
    Rational u(1 + rng.below(1ull << 16));
    raw.push_back(u);
    total += u;
  }
  size_t i = 0;
  for (const auto& p : pos) atoms.emplace_back(p, raw[i++] / total);
  return AtomicMeasure::from_atoms(std::move(atoms));
}

Rational random_dyadic_scale(SplitMix64& rng) {
  int e = static_cast<int>(rng.below(13));
  long k = 1 + static_cast<long>(rng.below(1ull << 10));
  return Rational(Integer(k)) / Rational(Integer(1) << e);
}

namespace {

struct CaseResult {
  // one flag per check (a)..(h); true = passed
  bool ok[8];
  std::string witness[8];
};

bool leq_slack(const IntervalScalar& a, const IntervalScalar& b,
               const Rational& slack) {
  return a.lo_rational() <= b.hi_rational() + slack;
}

bool leq_slack(const IntervalScalar& a, const Rational& b,
               const Rational& slack) {
  return a.lo_rational() <= b + slack;
}

bool close_slack(const IntervalScalar& a, const IntervalScalar& b,
                 const Rational& slack) {
  return a.lo_rational() <= b.hi_rational() + slack &&
         b.lo_rational() <= a.hi_rational() + slack;
}

// Direct evaluation of the conditional-entropy integral
// int_0^1 H(floor(N(X/r+t)) | floor(X/r+t)) dt over the exact joint
// breakpoint grid, segment by segment.
IntervalScalar conditional_integral(const AtomicMeasure& mu, const Rational& r,
                                    long N, const PrecisionContext& ctx) {
  std::set<Rational> cuts;
  cuts.insert(Rational(0));
  cuts.insert(Rational(1));
  for (const auto& x : mu.positions()) {
    // coarse jumps at 1 - frac(x/r); fine jumps every 1/N
    Rational q = x / r;
    Rational f = fractional_part(q);
    if (f != 0) cuts.insert(Rational(1) - f);
    Rational fN = fractional_part(q * N);
    for (long s = 0; s < N; ++s) {
      Rational t = (Rational(1) - fN + s) / N;
      t = t - Rational(rational_floor(t));
      if (t != 0) cuts.insert(t);
    }
  }
  std::vector<Rational> grid(cuts.begin(), cuts.end());
  auto partition_entropy = [&](const Rational& scale, const Rational& t) {
    auto part = binned_partition(mu, scale, t);
    IntervalScalar h = IntervalScalar::from_int(0, ctx.bits);
    for (auto& [bin, idxs] : part) {
      Rational w(0);
      for (size_t i : idxs) w += mu.weights()[i];
      h = h.add(entropy_term(w, ctx.bits));
    }
    return h;
  };
  IntervalScalar acc = IntervalScalar::from_int(0, ctx.bits);
  for (size_t i = 0; i + 1 < grid.size(); ++i) {
    Rational mid = (grid[i] + grid[i + 1]) / 2;
    IntervalScalar fine = partition_entropy(r / N, mid * N);
    IntervalScalar coarse = partition_entropy(r, mid);
    IntervalScalar len =
        IntervalScalar::from_rational(grid[i + 1] - grid[i], ctx.bits);
    acc = acc.add(len.mul(fine.sub(coarse)));
  }
  return acc;
}

CaseResult run_case(uint64_t seed, int case_idx, int max_atoms,
                    const Rational& slack, const PrecisionContext& ctx) {
  SplitMix64 rng(seed * 0x100000001b3ull + static_cast<uint64_t>(case_idx));
  CaseResult res;
  for (auto& f : res.ok) f = true;

  AtomicMeasure mu = random_measure(rng, max_atoms);
  AtomicMeasure nu = random_measure(rng, std::max(2, max_atoms / 2));
  Rational r = random_dyadic_scale(rng);

  auto H = [&](const AtomicMeasure& m, const Rational& s) {
    return entropy_at_scale_sweep(m, s, ctx).value;
  };

  // (a) digit bound
  {
    auto c = H(mu, r).sub(H(mu, 2 * r));
    if (!leq_slack(c, Rational(1), slack)) {
      res.ok[0] = false;
      res.witness[0] = "r=" + format_rational(r);
    }
  }
  // (b) Lipschitz / monotone
  {
    Rational ratio = Rational(1 + static_cast<long>(rng.below(64))) /
                     Rational(1 + static_cast<long>(rng.below(8)));
    Rational r1 = r, r2 = r * ratio;
    if (r2 < r1) std::swap(r1, r2);
    auto d = H(mu, r1).sub(H(mu, r2));
    auto lip = log2_interval(r2, ctx.bits)
                   .sub(log2_interval(r1, ctx.bits))
                   .scale2(1);
    bool ok = d.hi_rational() >= -slack && leq_slack(d, lip, slack);
    if (!ok) {
      res.ok[1] = false;
      res.witness[1] = "r1=" + format_rational(r1) +
                       " r2=" + format_rational(r2);
    }
  }
  // (c) convolution monotonicity at integer ratio
  {
    long mratio = 2 + static_cast<long>(rng.below(5));
    Rational r2 = r * mratio;
    auto lhs = cond_entropy(convolve(mu, nu), r, r2, ScaleMethod::sweep, ctx);
    auto rhs = cond_entropy(mu, r, r2, ScaleMethod::sweep, ctx);
    if (!leq_slack(rhs.value, lhs.value, slack)) {
      res.ok[2] = false;
      res.witness[2] = "m=" + std::to_string(mratio);
    }
  }
  // (d) scaling
  {
    Rational s = Rational(1 + static_cast<long>(rng.below(1 << 10))) /
                 Rational(1 + static_cast<long>(rng.below(1 << 10)));
    auto a = H(rescale(mu, s), s * r);
    auto b = H(mu, r);
    if (!close_slack(a, b, slack)) {
      res.ok[3] = false;
      res.witness[3] = "s=" + format_rational(s);
    }
  }
  // (e) halving via integer-ratio subscale
  {
    Rational r1 = r;
    Rational r2 = r * (Rational(2 + static_cast<long>(rng.below(30))) /
                       Rational(1 + static_cast<long>(rng.below(3))));
    if (r2 < 2 * r1) r2 = 2 * r1;
    Integer N = rational_floor(r2 / r1);
    auto whole = cond_entropy(mu, r1, r2, ScaleMethod::sweep, ctx).value;
    auto c1 =
        cond_entropy(mu, r1, r1 * Rational(N), ScaleMethod::sweep, ctx).value;
    auto c2 =
        cond_entropy(mu, r2 / Rational(N), r2, ScaleMethod::sweep, ctx).value;
    Rational best = std::max(c1.hi_rational(), c2.hi_rational());
    if (!(whole.lo_rational() / 2 <= best + slack)) {
      res.ok[4] = false;
      res.witness[4] = "r1=" + format_rational(r1) +
                       " r2=" + format_rational(r2);
    }
  }
  // (f) more-digits inequality
  {
    auto h1 = H(mu, r).sub(H(mu, 2 * r));
    auto h2 = H(mu, 2 * r).sub(H(mu, 4 * r));
    auto one = IntervalScalar::from_int(1, ctx.bits);
    auto lhs = one.sub(h2);
    auto rhs = one.sub(h1).mul(IntervalScalar::from_int(4, ctx.bits));
    if (!leq_slack(lhs, rhs, slack)) {
      res.ok[5] = false;
      res.witness[5] = "r=" + format_rational(r);
    }
  }
  // (g) submodularity on smoothed triples
  {
    SplitMix64 r2(rng.next());
    AtomicMeasure X = random_measure(r2, 6);
    AtomicMeasure Yat = random_measure(r2, 6);
    AtomicMeasure Z = random_measure(r2, 6);
    Rational s = random_dyadic_scale(r2);
    StepDensity Y = smooth(Yat, s);
    auto hy = step_differential_entropy(Y, ctx.bits);
    auto hxy = step_differential_entropy(step_convolve(Y, X), ctx.bits);
    auto hyz = step_differential_entropy(step_convolve(Y, Z), ctx.bits);
    auto hxyz = step_differential_entropy(
        step_convolve(Y, convolve(X, Z)), ctx.bits);
    if (!leq_slack(hxyz.add(hy), hxy.add(hyz), slack)) {
      res.ok[6] = false;
      res.witness[6] = "s=" + format_rational(s);
    }
  }
  // (h) interpretation identity
  {
    long N = 2 + static_cast<long>(rng.below(5));
    auto direct = conditional_integral(mu, r, N, ctx);
    auto byder = cond_entropy(mu, r / N, r, ScaleMethod::sweep, ctx).value;
    if (!close_slack(direct, byder, slack)) {
      res.ok[7] = false;
      res.witness[7] = "N=" + std::to_string(N);
    }
  }
  return res;
}

}  // namespace

AuditReport run_property_suite(const SuiteConfig& cfg,
                               const PrecisionContext& ctx, int threads) {
  static const char* kIds[8] = {"a_digit_bound",    "b_lipschitz",
                                "c_convolution",    "d_scaling",
                                "e_halving",        "f_more_digits",
                                "g_submodularity",  "h_interpretation"};
  static const char* kDesc[8] = {
      "H(mu;r|2r) <= 1",
      "0 <= H(r1)-H(r2) <= 2(log r2 - log r1)",
      "H(mu*nu;r1|r2) >= H(mu;r1|r2), integer ratio",
      "H(sX;sr) = H(X;r)",
      "integer-ratio subscale pair achieves H(r1|r2)/2",
      "1-H(2r|4r) <= 4(1-H(r|2r))",
      "H(X+Y+Z)+H(Y) <= H(X+Y)+H(Y+Z), smoothed",
      "H(r/N|r) equals the conditional-entropy integral",
  };
  Rational slack(Integer(1),
                 pow2(static_cast<unsigned long>(-cfg.slack_exp2)));

  std::vector<CaseResult> results(static_cast<size_t>(cfg.cases));
  parallel_chunks(results.size(), threads, [&](size_t, size_t b, size_t e) {
    for (size_t i = b; i < e; ++i)
      results[i] = run_case(cfg.seed, static_cast<int>(i), cfg.max_atoms,
                            slack, ctx);
  });

  AuditReport rep;
  rep.name = "property_suite";
  rep.params["seed"] = std::to_string(cfg.seed);
  rep.params["cases"] = std::to_string(cfg.cases);
  rep.params["max_atoms"] = std::to_string(cfg.max_atoms);
  rep.params["slack"] = "2^" + std::to_string(cfg.slack_exp2);
  for (int c = 0; c < 8; ++c) {
    AuditCheck chk;
    chk.id = kIds[c];
    chk.description = kDesc[c];
    chk.cases = cfg.cases;
    for (size_t i = 0; i < results.size(); ++i) {
      if (!results[i].ok[c]) {
        ++chk.failures;
        if (chk.witnesses.size() < 8)
          chk.witnesses.push_back("case " + std::to_string(i) + ": " +
                                  results[i].witness[c]);
      }
    }
    chk.passed = chk.failures == 0;
    rep.checks.push_back(std::move(chk));
  }
  return rep;
}

std::vector<std::pair<int, IntervalScalar>> fk_probe(
    const Rational& lambda, int truncation, int k_max,
    const PrecisionContext& ctx) {
  if (!(lambda > 0 && lambda < 1)) throw OutOfRange("lambda must be in (0,1)");
  auto mu = bernoulli_level_rational(lambda, truncation);
  IntervalScalar loginv = log2_interval(lambda, ctx.bits).neg();
  std::vector<std::pair<int, IntervalScalar>> out;
  for (int k = 0; k <= k_max; ++k) {
    Rational scale = rational_pow(lambda, 1l << k);
    auto h = cond_entropy(mu, scale, Rational(1), ScaleMethod::sweep, ctx);
    auto num = h.value.sub(IntervalScalar::from_int(2, ctx.bits));
    auto den = loginv.mul(IntervalScalar::from_int(1l << k, ctx.bits));
    out.emplace_back(k, num.div(den));
  }
  return out;
}

}  // namespace bcl
