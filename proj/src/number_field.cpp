#include "bcl/number_field.hpp"

#include <algorithm>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <map>

#include "bcl/errors.hpp"

namespace bcl {

NumberField::NumberField(IntPolynomial defining, const Rational& iso_lo,
                         const Rational& iso_hi)
    : defining_(primitive_part(defining)) {
  if (defining_.is_zero() || defining_.degree() < 1)
    throw PreconditionUnmet("defining polynomial must be non-constant");
  if (!(iso_lo <= iso_hi)) throw PreconditionUnmet("bad isolator");
  IntPolynomial sf = square_free_part(defining_);
  if (!(sf == defining_))
    throw PreconditionUnmet("defining polynomial must be square-free");
  if (defining_.degree() == 1) {
    Rational root(-defining_.coeff(0), defining_.coeff(1));
    root.canonicalize();
    if (!(iso_lo <= root && root <= iso_hi))
      throw PreconditionUnmet("isolator does not contain the rational root");
    root_ = AlgebraicNumber::rational(root);
    return;
  }
  int slo = sign_at(defining_, iso_lo);
  int shi = sign_at(defining_, iso_hi);
  if (slo == 0) {
    root_ = AlgebraicNumber::rational(iso_lo);
  } else if (shi == 0) {
    root_ = AlgebraicNumber::rational(iso_hi);
  } else if (slo * shi < 0) {
    root_ = AlgebraicNumber::real_root(defining_, iso_lo, iso_hi);
  } else {
    throw PreconditionUnmet(
        "isolator endpoints do not certify a root (no sign change)");
  }
}

IntervalScalar NumberField::enclosure(long width_exp2,
                                      const PrecisionContext& ctx) const {
  std::lock_guard<std::mutex> lock(mu_);
  root_.refine_below(width_exp2, ctx);
  mpfr_prec_t prec = std::max<mpfr_prec_t>(ctx.bits, -width_exp2 + 32);
  return root_.real_enclosure(prec);
}

AlgebraicNumber NumberField::root_copy() const {
  std::lock_guard<std::mutex> lock(mu_);
  return root_;
}

bool NumberField::root_in_unit_interval(const PrecisionContext& ctx) const {
  IntervalScalar e = enclosure(-64, ctx);
  return e.is_positive_certain() &&
         e.less_certain(IntervalScalar::from_int(1, 64));
}

std::vector<Integer> NumberField::power_vector(int k) const {
  if (k < 0) throw OutOfRange("negative power");
  std::lock_guard<std::mutex> lock(mu_);
  size_t d = static_cast<size_t>(defining_.degree());
  if (powers_.empty()) {
    std::vector<Integer> e0(d, Integer(0));
    e0[0] = 1;
    powers_.push_back(std::move(e0));
  }
  while (powers_.size() <= static_cast<size_t>(k)) {
    const auto& w = powers_.back();
    // x * w, reduced: lead * shift_low(w) - top * (c_0..c_{d-1})
    std::vector<Integer> nw(d, Integer(0));
    const Integer& top = w[d - 1];
    for (size_t i = 1; i < d; ++i) nw[i] = defining_.leading() * w[i - 1];
    if (top != 0)
      for (size_t i = 0; i < d; ++i) nw[i] -= top * defining_.coeff(i);
    powers_.push_back(std::move(nw));
  }
  return powers_[static_cast<size_t>(k)];
}

Rational FieldMeasure::weight(size_t i) const {
  Rational w(atoms[i].mult, pow2(static_cast<unsigned long>(level)));
  w.canonicalize();
  return w;
}

IntervalScalar FieldMeasure::value_enclosure(size_t i, long lambda_width_exp2,
                                             const PrecisionContext& ctx) const {
  IntervalScalar lam = field->enclosure(lambda_width_exp2, ctx);
  mpfr_prec_t prec = std::max<mpfr_prec_t>(ctx.bits, -lambda_width_exp2 + 32);
  IntervalScalar acc = IntervalScalar::from_int(0, prec);
  const auto& v = atoms[i].vec;
  for (auto it = v.rbegin(); it != v.rend(); ++it)
    acc = acc.mul(lam).add(IntervalScalar::from_integer(*it, prec));
  return acc.div(IntervalScalar::from_integer(scale, prec));
}

ModLevel level_atoms_modulo(const IntPolynomial& defining, int n,
                            size_t support_cap) {
  if (n < 1) throw OutOfRange("level must be >= 1");
  IntPolynomial def = primitive_part(defining);
  if (def.degree() < 1) throw PreconditionUnmet("defining must be non-constant");
  size_t d = static_cast<size_t>(def.degree());
  const Integer& lead = def.leading();

  ModLevel out;
  out.level = n;
  out.scale = integer_pow(lead, static_cast<unsigned long>(n) - 1);

  // power vectors: lambda^k = wk / lead^k
  std::vector<Integer> wk(d, Integer(0));
  wk[0] = 1;
  std::vector<FieldMeasure::Atom> cur;
  cur.push_back({std::vector<Integer>(d, Integer(0)), Integer(1)});
  for (int k = 0; k < n; ++k) {
    std::vector<FieldMeasure::Atom> next;
    next.reserve(cur.size() * 2);
    for (const auto& a : cur) {
      FieldMeasure::Atom plus, minus;
      plus.vec.resize(d);
      minus.vec.resize(d);
      for (size_t i = 0; i < d; ++i) {
        Integer base = k == 0 ? a.vec[i] : Integer(lead * a.vec[i]);
        plus.vec[i] = base + wk[i];
        minus.vec[i] = base - wk[i];
      }
      plus.mult = a.mult;
      minus.mult = a.mult;
      next.push_back(std::move(plus));
      next.push_back(std::move(minus));
    }
    std::sort(next.begin(), next.end(),
              [](const FieldMeasure::Atom& a, const FieldMeasure::Atom& b) {
                return a.vec < b.vec;
              });
    cur.clear();
    for (auto& a : next) {
      if (!cur.empty() && cur.back().vec == a.vec) {
        cur.back().mult += a.mult;
      } else {
        cur.push_back(std::move(a));
      }
    }
    if (cur.size() > support_cap)
      throw CapExceeded("level support exceeds cap");
    // advance the power vector
    std::vector<Integer> nw(d, Integer(0));
    const Integer top = wk[d - 1];
    for (size_t i = d; i-- > 1;) nw[i] = lead * wk[i - 1];
    if (top != 0)
      for (size_t i = 0; i < d; ++i) nw[i] -= top * def.coeff(i);
    wk = std::move(nw);
  }
  out.atoms = std::move(cur);
  return out;
}

FieldMeasure level_distribution(std::shared_ptr<const NumberField> field,
                                int n, const PrecisionContext& ctx,
                                size_t support_cap) {
  (void)ctx;
  ModLevel lvl = level_atoms_modulo(field->defining(), n, support_cap);
  FieldMeasure mu;
  mu.field = field;
  mu.level = lvl.level;
  mu.scale = std::move(lvl.scale);
  mu.atoms = std::move(lvl.atoms);
  return mu;
}

namespace {

IntervalScalar shannon_from_mults(const std::vector<FieldMeasure::Atom>& atoms,
                                  int level, mpfr_prec_t prec) {
  IntervalScalar acc = IntervalScalar::from_int(0, prec);
  for (const auto& a : atoms) {
    if (a.mult == 1) continue;
    IntervalScalar m = IntervalScalar::from_integer(a.mult, prec);
    acc = acc.add(m.mul(log2_interval(m, prec)));
  }
  IntervalScalar lvl = IntervalScalar::from_int(level, prec);
  return lvl.sub(acc.scale2(-level));
}

}  // namespace

IntervalScalar shannon(const FieldMeasure& mu, mpfr_prec_t prec) {
  return shannon_from_mults(mu.atoms, mu.level, prec);
}

IntervalScalar shannon(const ModLevel& mu, mpfr_prec_t prec) {
  return shannon_from_mults(mu.atoms, mu.level, prec);
}

bool field_value_equals_rational(const NumberField& field,
                                 const std::vector<Integer>& vec,
                                 const Integer& scale, const Rational& q,
                                 const PrecisionContext& ctx) {
  // vec(lambda)/scale == q  <=>  den*vec(lambda) - num*scale == 0
  const Integer& num = q.get_num();
  const Integer& den = q.get_den();
  std::vector<Integer> g(vec.size(), Integer(0));
  for (size_t i = 0; i < vec.size(); ++i) g[i] = den * vec[i];
  if (!g.empty()) g[0] -= num * scale;
  IntPolynomial G(std::move(g));
  if (G.is_zero()) return true;
  AlgebraicNumber root = field.root_copy();
  return algebraic_is_root_of(root, G, ctx);
}

namespace {

// A sweep class: one or more atoms sharing the same exact value.
struct ValueClass {
  std::vector<size_t> atom_idx;
  std::vector<Integer> vec;  // representative vector
  Rational weight;
  Integer bin;               // floor(value / r)
  bool frac_zero = false;    // value / r is exactly an integer
  IntervalScalar tau;        // 1 - frac(value/r), when frac > 0
};

std::vector<Integer> vec_sub(const std::vector<Integer>& a,
                             const std::vector<Integer>& b) {
  std::vector<Integer> c(a.size());
  for (size_t i = 0; i < a.size(); ++i) c[i] = a[i] - b[i];
  return c;
}

}  // namespace

SweepResult sweep_entropy_field(const FieldMeasure& mu, const Rational& r,
                                const PrecisionContext& ctx) {
  if (r <= 0) throw OutOfRange("scale must be positive");
  if (mu.atoms.empty()) throw Error("empty measure");
  const NumberField& field = *mu.field;
  const mpfr_prec_t prec = ctx.bits;
  const Rational rs = r * Rational(mu.scale);  // value/r = vec(lambda)/rs

  // Working width: enough to see gaps at scale r plus slack.
  long w = -64;
  {
    Rational t = r;
    while (t < 1) {
      t = t * 2;
      w -= 1;
    }
    w -= 64;
  }

  // 1. Merge atoms with exactly equal values (possible when the defining
  // polynomial is a proper multiple of the minimal polynomial).
  std::vector<ValueClass> classes;
  {
    struct Item {
      size_t idx;
      IntervalScalar q;  // value / r enclosure
    };
    std::vector<Item> items;
    auto recompute = [&](long width) {
      items.clear();
      IntervalScalar lam = field.enclosure(width, ctx);
      mpfr_prec_t p2 = std::max<mpfr_prec_t>(prec, -width + 32);
      IntervalScalar rsi = IntervalScalar::from_rational(rs, p2);
      for (size_t i = 0; i < mu.atoms.size(); ++i) {
        IntervalScalar acc = IntervalScalar::from_int(0, p2);
        const auto& v = mu.atoms[i].vec;
        for (auto it = v.rbegin(); it != v.rend(); ++it)
          acc = acc.mul(lam).add(IntervalScalar::from_integer(*it, p2));
        items.push_back({i, acc.div(rsi)});
      }
      std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
        int c = mpfr_cmp(a.q.lo(), b.q.lo());
        if (c != 0) return c < 0;
        return a.idx < b.idx;
      });
    };
    recompute(w);
    // Resolve overlapping neighbours exactly, refining as needed.
    for (int round = 0; round < 40; ++round) {
      bool unresolved = false;
      std::vector<char> merged_into_prev(items.size(), 0);
      for (size_t i = 0; i + 1 < items.size(); ++i) {
        if (items[i].q.overlaps(items[i + 1].q)) {
          auto diff = vec_sub(mu.atoms[items[i].idx].vec,
                              mu.atoms[items[i + 1].idx].vec);
          if (field_value_equals_rational(field, diff, mu.scale, Rational(0),
                                          ctx)) {
            merged_into_prev[i + 1] = 1;
          } else {
            unresolved = true;
          }
        }
      }
      // Build classes from the resolved prefix relation.
      classes.clear();
      for (size_t i = 0; i < items.size(); ++i) {
        if (merged_into_prev[i] && !classes.empty()) {
          classes.back().atom_idx.push_back(items[i].idx);
          classes.back().weight += mu.weight(items[i].idx);
        } else {
          ValueClass vc;
          vc.atom_idx = {items[i].idx};
          vc.vec = mu.atoms[items[i].idx].vec;
          vc.weight = mu.weight(items[i].idx);
          classes.push_back(std::move(vc));
        }
      }
      if (!unresolved) break;
      w -= 64;
      if (-w > static_cast<long>(ctx.cap) * 4)
        throw UndecidableAtPrecision("value classes did not separate");
      recompute(w);
      classes.clear();
    }
    if (classes.empty()) throw Error("sweep: no value classes");
  }

  // 2. Certified floor and fractional part per class.
  IntervalScalar lam = field.enclosure(w, ctx);
  mpfr_prec_t p2 = std::max<mpfr_prec_t>(prec, -w + 32);
  auto q_enclosure = [&](const ValueClass& vc) {
    IntervalScalar acc = IntervalScalar::from_int(0, p2);
    for (auto it = vc.vec.rbegin(); it != vc.vec.rend(); ++it)
      acc = acc.mul(lam).add(IntervalScalar::from_integer(*it, p2));
    return acc.div(IntervalScalar::from_rational(rs, p2));
  };
  for (auto& vc : classes) {
    for (;;) {
      IntervalScalar q = q_enclosure(vc);
      auto fl = q.floor_certain();
      if (fl) {
        vc.bin = *fl;
        // The lower endpoint may still sit exactly on the bin edge.
        if (field_value_equals_rational(field, vc.vec, mu.scale,
                                        Rational(vc.bin) * r, ctx)) {
          vc.frac_zero = true;
        } else {
          IntervalScalar fq =
              q.sub(IntervalScalar::from_integer(vc.bin, p2));
          vc.tau = IntervalScalar::from_int(1, p2).sub(fq);
          vc.frac_zero = false;
        }
        break;
      }
      // Straddling an integer b: decide exactly whether value == b*r.
      Integer b;
      {
        mpfr_t t;
        mpfr_init2(t, p2);
        mpfr_floor(t, q.hi());
        mpfr_get_z(b.get_mpz_t(), t, MPFR_RNDD);
        mpfr_clear(t);
      }
      if (field_value_equals_rational(field, vc.vec, mu.scale,
                                      Rational(b) * r, ctx)) {
        vc.bin = b;
        vc.frac_zero = true;
        break;
      }
      w -= 64;
      if (-w > static_cast<long>(ctx.cap) * 4)
        throw ScaleNotRational(
            "fractional parts cannot be certified at the precision cap");
      lam = field.enclosure(w, ctx);
      p2 = std::max<mpfr_prec_t>(prec, -w + 32);
    }
  }

  // 3. Group classes with equal fractional parts and order the jump times.
  std::vector<size_t> jumpers;
  for (size_t i = 0; i < classes.size(); ++i)
    if (!classes[i].frac_zero) jumpers.push_back(i);
  // Exact equality of fractional parts: difference of q values is an
  // integer m; test vec_i - vec_j == m * r * scale.
  std::vector<std::vector<size_t>> groups;  // indices into classes
  {
    std::sort(jumpers.begin(), jumpers.end(), [&](size_t a, size_t b) {
      int c = mpfr_cmp(classes[a].tau.lo(), classes[b].tau.lo());
      if (c != 0) return c < 0;
      return a < b;
    });
    for (int round = 0;; ++round) {
      bool unresolved = false;
      groups.clear();
      std::vector<char> same_as_prev(jumpers.size(), 0);
      for (size_t i = 0; i + 1 < jumpers.size(); ++i) {
        const auto& a = classes[jumpers[i]];
        const auto& b = classes[jumpers[i + 1]];
        if (a.tau.overlaps(b.tau)) {
          // Equal fractional parts <=> q_b - q_a is an integer. Test every
          // integer candidate inside the difference enclosure exactly; when
          // all are refuted the jump times are distinct but still need
          // separating for the sweep order.
          auto diff = vec_sub(b.vec, a.vec);
          IntervalScalar dq = q_enclosure(b).sub(q_enclosure(a));
          Integer clo, chi;
          {
            mpfr_t t;
            mpfr_init2(t, p2);
            mpfr_ceil(t, dq.lo());
            mpfr_get_z(clo.get_mpz_t(), t, MPFR_RNDD);
            mpfr_floor(t, dq.hi());
            mpfr_get_z(chi.get_mpz_t(), t, MPFR_RNDD);
            mpfr_clear(t);
          }
          bool equal = false;
          for (Integer cand = clo; cand <= chi; cand += 1) {
            if (field_value_equals_rational(field, diff, mu.scale,
                                            Rational(cand) * r, ctx)) {
              equal = true;
              break;
            }
          }
          if (equal) {
            same_as_prev[i + 1] = 1;
          } else {
            unresolved = true;
          }
        }
      }
      if (!unresolved) {
        for (size_t i = 0; i < jumpers.size(); ++i) {
          if (same_as_prev[i] && !groups.empty()) {
            groups.back().push_back(jumpers[i]);
          } else {
            groups.push_back({jumpers[i]});
          }
        }
        break;
      }
      w -= 64;
      if (-w > static_cast<long>(ctx.cap) * 4)
        throw ScaleNotRational(
            "jump times cannot be certified-ordered at the precision cap");
      lam = field.enclosure(w, ctx);
      p2 = std::max<mpfr_prec_t>(prec, -w + 32);
      for (auto& vc : classes) {
        if (vc.frac_zero) continue;
        IntervalScalar q = q_enclosure(vc);
        IntervalScalar fq = q.sub(IntervalScalar::from_integer(vc.bin, p2));
        vc.tau = IntervalScalar::from_int(1, p2).sub(fq);
      }
      std::sort(jumpers.begin(), jumpers.end(), [&](size_t a, size_t b) {
        int c = mpfr_cmp(classes[a].tau.lo(), classes[b].tau.lo());
        if (c != 0) return c < 0;
        return a < b;
      });
    }
  }

  // 4. Sweep. Bins keyed by integer index; per-segment entropy of the bin
  // weight partition, integrated against segment lengths.
  std::map<Integer, std::pair<Rational, IntervalScalar>> bins;
  IntervalScalar H = IntervalScalar::from_int(0, prec);
  auto bin_add = [&](const Integer& b, const Rational& wt) {
    auto it = bins.find(b);
    if (it == bins.end()) {
      IntervalScalar term = entropy_term(wt, prec);
      H = H.add(term);
      bins.emplace(b, std::make_pair(wt, term));
    } else {
      H = H.sub(it->second.second);
      it->second.first += wt;
      it->second.second = entropy_term(it->second.first, prec);
      H = H.add(it->second.second);
    }
  };
  auto bin_remove = [&](const Integer& b, const Rational& wt) {
    auto it = bins.find(b);
    H = H.sub(it->second.second);
    it->second.first -= wt;
    if (it->second.first == 0) {
      bins.erase(it);
    } else {
      it->second.second = entropy_term(it->second.first, prec);
      H = H.add(it->second.second);
    }
  };
  for (auto& vc : classes) bin_add(vc.bin, vc.weight);

  SweepResult out;
  IntervalScalar total = IntervalScalar::from_int(0, prec);
  IntervalScalar t_prev = IntervalScalar::from_int(0, prec);
  Rational inner_prev(0);
  auto flush = [&](const IntervalScalar& t_next, const Rational& inner_next) {
    IntervalScalar len = t_next.sub(t_prev);
    total = total.add(len.mul(H));
    out.segments.push_back({inner_prev, inner_next, H});
    t_prev = t_next;
  };
  for (const auto& g : groups) {
    const IntervalScalar& tau = classes[g.front()].tau;
    Rational inner_lo = tau.lo_rational();
    flush(tau, inner_lo);
    inner_prev = tau.hi_rational();
    for (size_t ci : g) {
      bin_remove(classes[ci].bin, classes[ci].weight);
      classes[ci].bin += 1;
      bin_add(classes[ci].bin, classes[ci].weight);
    }
  }
  flush(IntervalScalar::from_int(1, prec), Rational(1));
  out.value = total;
  return out;
}

std::vector<std::pair<Integer, std::vector<size_t>>> binned_partition_field(
    const FieldMeasure& mu, const Rational& r, const Rational& t,
    const PrecisionContext& ctx) {
  const NumberField& field = *mu.field;
  const Rational rs = r * Rational(mu.scale);
  long w = -128;
  std::map<Integer, std::vector<size_t>> bins;
  for (size_t i = 0; i < mu.atoms.size(); ++i) {
    for (long ww = w;; ww -= 64) {
      if (-ww > static_cast<long>(ctx.cap) * 4)
        throw ScaleNotRational("bin assignment undecidable");
      IntervalScalar lam = field.enclosure(ww, ctx);
      mpfr_prec_t p2 = std::max<mpfr_prec_t>(ctx.bits, -ww + 32);
      IntervalScalar acc = IntervalScalar::from_int(0, p2);
      const auto& v = mu.atoms[i].vec;
      for (auto it = v.rbegin(); it != v.rend(); ++it)
        acc = acc.mul(lam).add(IntervalScalar::from_integer(*it, p2));
      IntervalScalar q =
          acc.div(IntervalScalar::from_rational(rs, p2))
              .add(IntervalScalar::from_rational(t, p2));
      auto fl = q.floor_certain();
      if (fl) {
        bins[*fl].push_back(i);
        break;
      }
      // exact boundary: value/r + t == b
      Integer b;
      {
        mpfr_t tt;
        mpfr_init2(tt, p2);
        mpfr_floor(tt, q.hi());
        mpfr_get_z(b.get_mpz_t(), tt, MPFR_RNDD);
        mpfr_clear(tt);
      }
      if (field_value_equals_rational(field, mu.atoms[i].vec, mu.scale,
                                      (Rational(b) - t) * r, ctx)) {
        bins[b].push_back(i);
        break;
      }
    }
  }
  return {bins.begin(), bins.end()};
}

namespace {

void put_u32(std::string& buf, uint32_t v) {
  for (int i = 0; i < 4; ++i) buf.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_integer(std::string& buf, const Integer& v) {
  int sign = sgn(v);
  size_t bytes = (mpz_sizeinbase(v.get_mpz_t(), 2) + 7) / 8;
  if (sign == 0) bytes = 0;
  uint32_t len = static_cast<uint32_t>(bytes);
  put_u32(buf, sign < 0 ? (len | 0x80000000u) : len);
  std::string raw(bytes, '\0');
  if (bytes) {
    size_t count = 0;
    mpz_export(raw.data(), &count, -1, 1, 0, 0, v.get_mpz_t());
    raw.resize(bytes);
  }
  buf += raw;
}

uint32_t get_u32(const std::string& buf, size_t& at) {
  if (at + 4 > buf.size()) throw Error("level file truncated");
  uint32_t v = 0;
  for (int i = 0; i < 4; ++i)
    v |= static_cast<uint32_t>(static_cast<unsigned char>(buf[at + i]))
         << (8 * i);
  at += 4;
  return v;
}

Integer get_integer(const std::string& buf, size_t& at) {
  uint32_t hdr = get_u32(buf, at);
  bool neg = hdr & 0x80000000u;
  uint32_t len = hdr & 0x7fffffffu;
  if (at + len > buf.size()) throw Error("level file truncated");
  Integer v = 0;
  if (len)
    mpz_import(v.get_mpz_t(), len, -1, 1, 0, 0, buf.data() + at);
  at += len;
  if (neg) v = -v;
  return v;
}

}  // namespace

void write_level_file(const std::string& path, const FieldMeasure& mu) {
  std::string buf = "BCL1";
  put_u32(buf, static_cast<uint32_t>(mu.field->defining().coeffs().size()));
  for (const auto& c : mu.field->defining().coeffs()) put_integer(buf, c);
  put_integer(buf, Integer(mu.level));
  put_integer(buf, Integer(static_cast<unsigned long>(mu.atoms.size())));
  for (const auto& a : mu.atoms) {
    for (const auto& c : a.vec) put_integer(buf, c);
    put_integer(buf, a.mult);
  }
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp);
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw Error("cannot rename level file into place");
}

FieldMeasure read_level_file(const std::string& path,
                             std::shared_ptr<const NumberField> field) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::string buf((std::istreambuf_iterator<char>(in)),
                  std::istreambuf_iterator<char>());
  if (buf.size() < 4 || buf.compare(0, 4, "BCL1") != 0)
    throw Error("bad level file magic");
  size_t at = 4;
  uint32_t ncoef = get_u32(buf, at);
  std::vector<Integer> coeffs;
  for (uint32_t i = 0; i < ncoef; ++i) coeffs.push_back(get_integer(buf, at));
  IntPolynomial defining(std::move(coeffs));
  if (!(defining == field->defining()))
    throw Error("level file defining polynomial mismatch");
  FieldMeasure mu;
  mu.field = field;
  mu.level = static_cast<int>(get_integer(buf, at).get_si());
  mu.scale =
      integer_pow(field->lead(), static_cast<unsigned long>(mu.level) - 1);
  long count = get_integer(buf, at).get_si();
  size_t d = static_cast<size_t>(field->degree());
  for (long i = 0; i < count; ++i) {
    FieldMeasure::Atom a;
    a.vec.resize(d);
    for (size_t j = 0; j < d; ++j) a.vec[j] = get_integer(buf, at);
    a.mult = get_integer(buf, at);
    mu.atoms.push_back(std::move(a));
  }
  return mu;
}

}  // namespace bcl
