#include "bcl/measure.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "bcl/errors.hpp"

namespace bcl {

void AtomicMeasure::validate() const {
  if (pos_.size() != w_.size()) throw Error("measure: size mismatch");
  Rational total(0);
  for (size_t i = 0; i < pos_.size(); ++i) {
    if (w_[i] <= 0) throw Error("measure: non-positive weight");
    if (i && !(pos_[i - 1] < pos_[i]))
      throw Error("measure: positions not strictly increasing");
    total += w_[i];
  }
  if (total != 1) throw Error("measure: total mass is not 1");
}

AtomicMeasure AtomicMeasure::delta(const Rational& position) {
  AtomicMeasure m;
  m.pos_ = {position};
  m.w_ = {Rational(1)};
  return m;
}

AtomicMeasure AtomicMeasure::from_atoms(
    std::vector<std::pair<Rational, Rational>> atoms) {
  if (atoms.empty()) throw Error("measure: no atoms");
  std::sort(atoms.begin(), atoms.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  AtomicMeasure m;
  for (auto& [p, w] : atoms) {
    if (w == 0) continue;
    if (!m.pos_.empty() && m.pos_.back() == p) {
      m.w_.back() += w;
    } else {
      m.pos_.push_back(std::move(p));
      m.w_.push_back(std::move(w));
    }
  }
  m.validate();
  return m;
}

AtomicMeasure AtomicMeasure::uniform(const std::vector<Rational>& positions) {
  std::vector<std::pair<Rational, Rational>> atoms;
  Rational w(1, static_cast<unsigned long>(positions.size()));
  for (const auto& p : positions) atoms.emplace_back(p, w);
  return from_atoms(std::move(atoms));
}

Rational AtomicMeasure::min() const {
  if (pos_.empty()) throw Error("empty measure");
  return pos_.front();
}

Rational AtomicMeasure::max() const {
  if (pos_.empty()) throw Error("empty measure");
  return pos_.back();
}

AtomicMeasure AtomicMeasure::parse_csv(std::istream& in) {
  std::vector<std::pair<Rational, Rational>> atoms;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto comma = line.find(',');
    if (comma == std::string::npos)
      throw UsageError("atom line needs 'position,weight': " + line);
    atoms.emplace_back(parse_rational(line.substr(0, comma)),
                       parse_rational(line.substr(comma + 1)));
  }
  return from_atoms(std::move(atoms));
}

void AtomicMeasure::write_csv(std::ostream& out) const {
  for (size_t i = 0; i < pos_.size(); ++i)
    out << format_rational(pos_[i]) << "," << format_rational(w_[i]) << "\n";
}

StepDensity::StepDensity(std::vector<Rational> breaks,
                         std::vector<Rational> values)
    : brk_(std::move(breaks)), val_(std::move(values)) {
  if (brk_.size() != val_.size() + 1 || val_.empty())
    throw Error("step density: bad shape");
  for (size_t i = 0; i + 1 < brk_.size(); ++i)
    if (!(brk_[i] < brk_[i + 1]))
      throw Error("step density: breakpoints not increasing");
  for (const auto& v : val_)
    if (v < 0) throw Error("step density: negative value");
  if (total_mass() != 1) throw Error("step density: mass is not 1");
}

Rational StepDensity::total_mass() const {
  Rational t(0);
  for (size_t i = 0; i < val_.size(); ++i)
    t += val_[i] * (brk_[i + 1] - brk_[i]);
  return t;
}

Rational StepDensity::value_at(const Rational& x) const {
  auto it = std::upper_bound(brk_.begin(), brk_.end(), x);
  if (it == brk_.begin() || it == brk_.end()) return Rational(0);
  return val_[static_cast<size_t>(it - brk_.begin()) - 1];
}

AtomicMeasure convolve(const AtomicMeasure& a, const AtomicMeasure& b,
                       size_t support_cap) {
  if (a.size() == 0 || b.size() == 0) throw Error("empty measure");
  if (a.size() * b.size() > support_cap)
    throw CapExceeded("convolution support exceeds cap");
  std::map<Rational, Rational> acc;
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j)
      acc[a.positions()[i] + b.positions()[j]] +=
          a.weights()[i] * b.weights()[j];
  std::vector<std::pair<Rational, Rational>> atoms(acc.begin(), acc.end());
  return AtomicMeasure::from_atoms(std::move(atoms));
}

AtomicMeasure rescale(const AtomicMeasure& a, const Rational& s) {
  if (s == 0) throw OutOfRange("rescale by zero");
  std::vector<std::pair<Rational, Rational>> atoms;
  for (size_t i = 0; i < a.size(); ++i)
    atoms.emplace_back(a.positions()[i] * s, a.weights()[i]);
  return AtomicMeasure::from_atoms(std::move(atoms));
}

AtomicMeasure translate(const AtomicMeasure& a, const Rational& c) {
  std::vector<std::pair<Rational, Rational>> atoms;
  for (size_t i = 0; i < a.size(); ++i)
    atoms.emplace_back(a.positions()[i] + c, a.weights()[i]);
  return AtomicMeasure::from_atoms(std::move(atoms));
}

StepDensity smooth(const AtomicMeasure& a, const Rational& r) {
  if (r <= 0) throw OutOfRange("smoothing width must be positive");
  // Sweep events: +w/r at x_i, -w/r at x_i + r.
  std::map<Rational, Rational> delta;
  for (size_t i = 0; i < a.size(); ++i) {
    Rational d = a.weights()[i] / r;
    delta[a.positions()[i]] += d;
    delta[a.positions()[i] + r] -= d;
  }
  std::vector<Rational> brk, val;
  Rational cur(0);
  for (auto& [x, d] : delta) {
    if (!brk.empty() && cur != 0) {
      // close previous segment at x
    }
    brk.push_back(x);
    cur += d;
    val.push_back(cur);
  }
  val.pop_back();  // last value is 0 past the final breakpoint
  // Remove zero-value middle segments only if they truly vanish; keep shape.
  return StepDensity(std::move(brk), std::move(val));
}

StepDensity step_convolve(const StepDensity& f, const AtomicMeasure& mu) {
  // Events: on segment [b_j + x_i, b_{j+1} + x_i) add w_i * v_j.
  std::map<Rational, Rational> delta;
  for (size_t i = 0; i < mu.size(); ++i) {
    const Rational& x = mu.positions()[i];
    const Rational& w = mu.weights()[i];
    Rational prev(0);
    for (size_t j = 0; j < f.segments(); ++j) {
      delta[f.breakpoints()[j] + x] += w * (f.values()[j] - prev);
      prev = f.values()[j];
    }
    delta[f.breakpoints().back() + x] -= w * prev;
  }
  std::vector<Rational> brk, val;
  Rational cur(0);
  for (auto& [x, d] : delta) {
    brk.push_back(x);
    cur += d;
    val.push_back(cur);
  }
  val.pop_back();
  // Merge adjacent equal values and drop leading/trailing zero segments.
  std::vector<Rational> cb, cv;
  for (size_t i = 0; i < val.size(); ++i) {
    if (!cv.empty() && cv.back() == val[i]) continue;  // extend
    cb.push_back(brk[i]);
    cv.push_back(val[i]);
  }
  cb.push_back(brk.back());
  while (!cv.empty() && cv.front() == 0) {
    cv.erase(cv.begin());
    cb.erase(cb.begin());
  }
  while (!cv.empty() && cv.back() == 0) {
    cv.pop_back();
    cb.pop_back();
  }
  return StepDensity(std::move(cb), std::move(cv));
}

AtomicMeasure bernoulli_level_rational(const Rational& lambda, int n,
                                       size_t support_cap) {
  if (!(lambda > 0 && lambda < 1))
    throw OutOfRange("lambda must lie in (0,1)");
  if (n < 1) throw OutOfRange("level must be >= 1");
  Rational lam = lambda;
  lam.canonicalize();
  const Integer p = lam.get_num();
  const Integer q = lam.get_den();
  // Scaled positions: q^(k-1) * sum_{j<k} xi_j (p/q)^j stays integral.
  std::vector<std::pair<Integer, Integer>> cur;  // (scaled position, count)
  cur.emplace_back(Integer(0), Integer(1));
  Integer pk(1);  // p^k
  for (int k = 0; k < n; ++k) {
    std::vector<std::pair<Integer, Integer>> plus, minus;
    plus.reserve(cur.size());
    minus.reserve(cur.size());
    for (auto& [x, c] : cur) {
      Integer base = k == 0 ? x : x * q;
      plus.emplace_back(base + pk, c);
      minus.emplace_back(base - pk, c);
    }
    // Both lists are sorted; merge and combine equal positions.
    std::vector<std::pair<Integer, Integer>> merged;
    merged.reserve(plus.size() + minus.size());
    size_t i = 0, j = 0;
    while (i < plus.size() || j < minus.size()) {
      bool take_plus =
          j >= minus.size() ||
          (i < plus.size() && plus[i].first <= minus[j].first);
      auto& item = take_plus ? plus[i++] : minus[j++];
      if (!merged.empty() && merged.back().first == item.first) {
        merged.back().second += item.second;
      } else {
        merged.push_back(std::move(item));
      }
    }
    cur = std::move(merged);
    if (cur.size() > support_cap)
      throw CapExceeded("level support exceeds cap");
    pk *= p;
  }
  Integer denom = integer_pow(q, static_cast<unsigned long>(n) - 1);
  Rational total_w(Integer(1), pow2(static_cast<unsigned long>(n)));
  std::vector<std::pair<Rational, Rational>> atoms;
  atoms.reserve(cur.size());
  for (auto& [x, c] : cur) {
    Rational pos(x, denom);
    pos.canonicalize();
    atoms.emplace_back(std::move(pos), Rational(c) * total_w);
  }
  return AtomicMeasure::from_atoms(std::move(atoms));
}

EnclosedMeasure bernoulli_level_interval(const IntervalScalar& lambda, int n,
                                         const PrecisionContext& ctx,
                                         size_t support_cap) {
  if (!(lambda.is_positive_certain()) ||
      !lambda.less_certain(IntervalScalar::from_int(1, 64)))
    throw OutOfRange("lambda enclosure must lie in (0,1)");
  if (n < 1) throw OutOfRange("level must be >= 1");
  if (n < 64 && (size_t(1) << n) > support_cap)
    throw CapExceeded("2^n exceeds the enumeration cap");
  mpfr_prec_t prec = ctx.bits;
  std::vector<IntervalScalar> sums{IntervalScalar::from_int(0, prec)};
  IntervalScalar power = IntervalScalar::from_int(1, prec);
  for (int k = 0; k < n; ++k) {
    std::vector<IntervalScalar> next;
    next.reserve(sums.size() * 2);
    for (const auto& s : sums) {
      next.push_back(s.add(power));
      next.push_back(s.sub(power));
    }
    sums = std::move(next);
    power = power.mul(lambda);
  }
  std::sort(sums.begin(), sums.end(),
            [](const IntervalScalar& a, const IntervalScalar& b) {
              return mpfr_cmp(a.lo(), b.lo()) < 0;
            });
  for (size_t i = 0; i + 1 < sums.size(); ++i) {
    if (!sums[i].less_certain(sums[i + 1]))
      throw UndecidableAtPrecision(
          "two sign sums cannot be separated for an interval parameter; "
          "supply an algebraic parameter to resolve collisions");
  }
  return {std::move(sums), n};
}

}  // namespace bcl
