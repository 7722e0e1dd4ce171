#include "bcl/entropy.hpp"

#include <algorithm>
#include <map>

#include "bcl/errors.hpp"

namespace bcl {

IntervalScalar shannon(const AtomicMeasure& mu, mpfr_prec_t prec) {
  IntervalScalar h = IntervalScalar::from_int(0, prec);
  for (const auto& w : mu.weights()) h = h.add(entropy_term(w, prec));
  return h;
}

namespace {

struct BinInfo {
  Rational weight;
  IntervalScalar term;
};

}  // namespace

SweepResult sweep_entropy(const AtomicMeasure& mu, const Rational& r,
                          const PrecisionContext& ctx) {
  if (r <= 0) throw OutOfRange("scale must be positive");
  const mpfr_prec_t prec = ctx.bits;
  const size_t m = mu.size();

  // Initial bin of atom i is floor(x_i / r); atom i moves up one bin at
  // t = 1 - frac(x_i / r) when the fractional part is non-zero.
  std::vector<Integer> bin_of(m);
  std::map<Rational, std::vector<size_t>> jumps;
  for (size_t i = 0; i < m; ++i) {
    Rational q = mu.positions()[i] / r;
    Integer k = rational_floor(q);
    Rational f = q - Rational(k);
    bin_of[i] = k;
    if (f != 0) jumps[Rational(1) - f].push_back(i);
  }

  std::map<Integer, BinInfo> bins;
  IntervalScalar H = IntervalScalar::from_int(0, prec);
  auto add_weight = [&](const Integer& b, const Rational& w) {
    auto it = bins.find(b);
    if (it == bins.end()) {
      BinInfo info{w, entropy_term(w, prec)};
      H = H.add(info.term);
      bins.emplace(b, std::move(info));
    } else {
      H = H.sub(it->second.term);
      it->second.weight += w;
      it->second.term = entropy_term(it->second.weight, prec);
      H = H.add(it->second.term);
    }
  };
  auto remove_weight = [&](const Integer& b, const Rational& w) {
    auto it = bins.find(b);
    H = H.sub(it->second.term);
    it->second.weight -= w;
    if (it->second.weight == 0) {
      bins.erase(it);
    } else {
      it->second.term = entropy_term(it->second.weight, prec);
      H = H.add(it->second.term);
    }
  };

  for (size_t i = 0; i < m; ++i) add_weight(bin_of[i], mu.weights()[i]);

  SweepResult out;
  IntervalScalar total = IntervalScalar::from_int(0, prec);
  Rational t_prev(0);
  auto flush_segment = [&](const Rational& t_next) {
    if (t_next == t_prev) return;
    IntervalScalar len =
        IntervalScalar::from_rational(t_next - t_prev, prec);
    total = total.add(len.mul(H));
    out.segments.push_back({t_prev, t_next, H});
    t_prev = t_next;
  };
  for (const auto& [tau, idxs] : jumps) {
    flush_segment(tau);
    for (size_t i : idxs) {
      remove_weight(bin_of[i], mu.weights()[i]);
      bin_of[i] += 1;
      add_weight(bin_of[i], mu.weights()[i]);
    }
  }
  flush_segment(Rational(1));
  out.value = total;
  return out;
}

EntropyValue entropy_at_scale_sweep(const AtomicMeasure& mu, const Rational& r,
                                    const PrecisionContext& ctx) {
  return {sweep_entropy(mu, r, ctx).value, ScaleMethod::sweep, r,
          std::nullopt};
}

IntervalScalar step_differential_entropy(const StepDensity& f,
                                         mpfr_prec_t prec) {
  IntervalScalar h = IntervalScalar::from_int(0, prec);
  for (size_t i = 0; i < f.segments(); ++i) {
    const Rational& v = f.values()[i];
    if (v == 0) continue;
    Rational len = f.breakpoints()[i + 1] - f.breakpoints()[i];
    h = h.add(neg_xlog2x_times(v, len, prec));
  }
  return h;
}

EntropyValue entropy_at_scale_smoothed(const AtomicMeasure& mu,
                                       const Rational& r,
                                       const PrecisionContext& ctx) {
  if (r <= 0) throw OutOfRange("scale must be positive");
  StepDensity f = smooth(mu, r);
  IntervalScalar h = step_differential_entropy(f, ctx.bits);
  IntervalScalar lg = log2_interval(r, ctx.bits);
  return {h.sub(lg), ScaleMethod::smoothed, r, std::nullopt};
}

EntropyValue cond_entropy(const AtomicMeasure& mu, const Rational& r1,
                          const Rational& r2, ScaleMethod method,
                          const PrecisionContext& ctx) {
  if (r1 <= 0 || r2 <= 0) throw OutOfRange("scales must be positive");
  auto at = [&](const Rational& r) {
    return method == ScaleMethod::sweep
               ? entropy_at_scale_sweep(mu, r, ctx).value
               : entropy_at_scale_smoothed(mu, r, ctx).value;
  };
  return {at(r1).sub(at(r2)), method, r1, r2};
}

IntervalScalar convolution_gain_probe(const AtomicMeasure& mu,
                                      const AtomicMeasure& nu,
                                      const Rational& r1, const Rational& r2,
                                      const PrecisionContext& ctx) {
  if (!(r1 < r2)) throw OutOfRange("gain probe needs r1 < r2");
  AtomicMeasure conv = convolve(mu, nu);
  auto a = cond_entropy(conv, r1, r2, ScaleMethod::sweep, ctx);
  auto b = cond_entropy(mu, r1, r2, ScaleMethod::sweep, ctx);
  return a.value.sub(b.value);
}

std::vector<std::pair<Integer, std::vector<size_t>>> binned_partition(
    const AtomicMeasure& mu, const Rational& r, const Rational& t) {
  std::map<Integer, std::vector<size_t>> bins;
  for (size_t i = 0; i < mu.size(); ++i) {
    Rational q = mu.positions()[i] / r + t;
    bins[rational_floor(q)].push_back(i);
  }
  return {bins.begin(), bins.end()};
}

}  // namespace bcl
