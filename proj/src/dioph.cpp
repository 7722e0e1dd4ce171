#include "bcl/dioph.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>

#include "bcl/entropy.hpp"
#include "bcl/errors.hpp"

namespace bcl {

LambdaSpec LambdaSpec::from_rational(const Rational& q) {
  LambdaSpec s;
  s.kind = Kind::rational;
  s.rat = q;
  s.rat.canonicalize();
  return s;
}

LambdaSpec LambdaSpec::from_field(std::shared_ptr<const NumberField> f) {
  LambdaSpec s;
  s.kind = Kind::algebraic;
  s.field = std::move(f);
  return s;
}

LambdaSpec LambdaSpec::from_interval(const IntervalScalar& i) {
  LambdaSpec s;
  s.kind = Kind::interval;
  s.box = i;
  return s;
}

IntervalScalar LambdaSpec::enclosure(long width_exp2,
                                     const PrecisionContext& ctx) const {
  switch (kind) {
    case Kind::rational:
      return IntervalScalar::from_rational(
          rat, std::max<mpfr_prec_t>(ctx.bits, -width_exp2 + 16));
    case Kind::algebraic:
      return field->enclosure(width_exp2, ctx);
    case Kind::interval:
      return box;
  }
  throw Error("bad lambda kind");
}

std::string LambdaSpec::describe() const {
  switch (kind) {
    case Kind::rational:
      return "rational " + format_rational(rat);
    case Kind::algebraic:
      return "root of " + field->defining().to_string();
    case Kind::interval:
      return "interval " + box.to_string();
  }
  return "?";
}

Rational power_bound(int n, int exponent_factor) {
  if (n < 1) throw OutOfRange("n must be >= 1");
  Integer den = integer_pow(
      Integer(n), static_cast<unsigned long>(exponent_factor) *
                      static_cast<unsigned long>(n));
  Rational b(Integer(1), den);
  b.canonicalize();
  return b;
}

namespace {

SignPolynomial difference_poly(uint64_t a, uint64_t b, int n) {
  std::vector<int8_t> c(static_cast<size_t>(n), 0);
  for (int j = 0; j < n; ++j) {
    int sa = (a >> j) & 1 ? 1 : -1;
    int sb = (b >> j) & 1 ? 1 : -1;
    c[static_cast<size_t>(j)] = static_cast<int8_t>((sa - sb) / 2);
  }
  SignPolynomial p(std::move(c));
  // sign-normalize: leading coefficient +1
  if (!p.is_zero() && p.coeffs().back() < 0) {
    std::vector<int8_t> t = p.coeffs();
    for (auto& v : t) v = static_cast<int8_t>(-v);
    p = SignPolynomial(std::move(t));
  }
  return p;
}

// |P(lambda)| <= r, certified, for exact parameter kinds; returns the final
// enclosure of |P(lambda)|.
IntervalScalar certify_small(const SignPolynomial& sp, const LambdaSpec& lam,
                             const Rational& r, bool* ok,
                             const PrecisionContext& ctx) {
  IntPolynomial p = sp.to_int_poly();
  if (lam.kind == LambdaSpec::Kind::rational) {
    Rational v = eval(p, lam.rat);
    if (v < 0) v = -v;
    *ok = v <= r;
    return IntervalScalar::from_rational(v, ctx.bits);
  }
  if (lam.kind == LambdaSpec::Kind::algebraic) {
    // exact zero when the defining polynomial divides P
    AlgebraicNumber root = lam.field->root_copy();
    if (algebraic_is_root_of(root, p, ctx)) {
      *ok = true;
      return IntervalScalar::from_int(0, ctx.bits);
    }
    for (long w = -128;; w -= 128) {
      IntervalScalar e =
          interval_eval_poly(p, lam.enclosure(w, ctx),
                             std::max<mpfr_prec_t>(ctx.bits, -w + 32))
              .abs();
      if (e.hi_rational() <= r) {
        *ok = true;
        return e;
      }
      if (e.lo_rational() > r) {
        *ok = false;
        return e;
      }
      if (-w > static_cast<long>(ctx.cap) * 4)
        throw UndecidableAtPrecision("cannot certify |P(lambda)| vs r");
    }
  }
  IntervalScalar e =
      interval_eval_poly(p, lam.box, ctx.bits).abs();
  *ok = e.hi_rational() <= r;
  return e;
}

void emit_run_pairs(std::vector<uint64_t>& run, CollisionSet& out,
                    const DiophConfig& cfg) {
  std::sort(run.begin(), run.end());
  for (size_t i = 0; i < run.size(); ++i)
    for (size_t j = i + 1; j < run.size(); ++j) {
      if (out.pairs.size() >= cfg.pair_cap)
        throw CapExceeded("collision pair list exceeds cap");
      out.pairs.emplace_back(run[i], run[j]);
      ++out.pair_count;
    }
  run.clear();
}

CollisionSet collisions_rational(const Rational& lambda, int n,
                                 const Rational& r, const Rational& t,
                                 const DiophConfig& cfg) {
  const Integer p = lambda.get_num();
  const Integer q = lambda.get_den();
  int h = (n + 1) / 2;  // low half size
  // scaled weights: term_j = p^j q^(n-1-j); sum over omega of +-term_j
  std::vector<Integer> term(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j)
    term[static_cast<size_t>(j)] =
        integer_pow(p, static_cast<unsigned long>(j)) *
        integer_pow(q, static_cast<unsigned long>(n - 1 - j));

  auto build_half = [&](int lo, int hi) {
    size_t count = size_t(1) << (hi - lo);
    std::vector<std::pair<Integer, uint64_t>> half(count);
    for (size_t w = 0; w < count; ++w) {
      Integer s = 0;
      for (int j = lo; j < hi; ++j) {
        bool plus = (w >> (j - lo)) & 1;
        if (plus)
          s += term[static_cast<size_t>(j)];
        else
          s -= term[static_cast<size_t>(j)];
      }
      half[w] = {std::move(s), static_cast<uint64_t>(w)};
    }
    std::sort(half.begin(), half.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return half;
  };
  auto lows = build_half(0, h);
  auto highs = build_half(h, n);

  // scaled bin: floor(S / (r q^(n-1)) + t)
  Rational R = r * Rational(integer_pow(q, static_cast<unsigned long>(n) - 1));
  auto bin_of = [&](const Integer& s) {
    Rational v = Rational(s) / R + t;
    return rational_floor(v);
  };

  CollisionSet out;
  out.n = n;
  out.r = r;
  out.t = t;

  // k-way merge: one ascending stream per high-half value.
  struct Node {
    const Integer* value;
    size_t hi_idx, lo_idx;
  };
  std::vector<Integer> current(highs.size());
  auto cmp = [&](const Node& a, const Node& b) {
    int c = ::cmp(*a.value, *b.value);
    if (c != 0) return c > 0;  // min-heap
    if (a.hi_idx != b.hi_idx) return a.hi_idx > b.hi_idx;
    return a.lo_idx > b.lo_idx;
  };
  std::priority_queue<Node, std::vector<Node>, decltype(cmp)> heap(cmp);
  for (size_t i = 0; i < highs.size(); ++i) {
    current[i] = highs[i].first + lows[0].first;
    heap.push({&current[i], i, 0});
  }
  std::optional<Integer> run_bin;
  std::vector<uint64_t> run;
  while (!heap.empty()) {
    Node nd = heap.top();
    heap.pop();
    Integer b = bin_of(*nd.value);
    uint64_t omega = (highs[nd.hi_idx].second << h) | lows[nd.lo_idx].second;
    if (run_bin && *run_bin == b) {
      run.push_back(omega);
    } else {
      if (run.size() > 1) emit_run_pairs(run, out, cfg);
      run.clear();
      run.push_back(omega);
      run_bin = b;
    }
    if (nd.lo_idx + 1 < lows.size()) {
      current[nd.hi_idx] = highs[nd.hi_idx].first + lows[nd.lo_idx + 1].first;
      heap.push({&current[nd.hi_idx], nd.hi_idx, nd.lo_idx + 1});
    }
  }
  if (run.size() > 1) emit_run_pairs(run, out, cfg);
  return out;
}

CollisionSet collisions_algebraic(const LambdaSpec& lam, int n,
                                  const Rational& r, const Rational& t,
                                  const PrecisionContext& ctx,
                                  const DiophConfig& cfg) {
  const NumberField& field = *lam.field;
  size_t d = static_cast<size_t>(field.degree());
  // scaled digit vectors U_j = W_j * lead^(n-1-j)
  std::vector<std::vector<Integer>> U(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) {
    U[static_cast<size_t>(j)] = field.power_vector(j);
    Integer s = integer_pow(field.lead(),
                            static_cast<unsigned long>(n - 1 - j));
    for (auto& c : U[static_cast<size_t>(j)]) c *= s;
  }
  // Gray-code enumeration of all sign vectors, bucketed by reduced vector.
  std::map<std::vector<Integer>, std::vector<uint64_t>> buckets;
  std::vector<Integer> v(d, Integer(0));
  uint64_t total = uint64_t(1) << n;
  if (total > cfg.enum_cap) throw CapExceeded("2^n exceeds enumeration cap");
  for (int j = 0; j < n; ++j)
    for (size_t i = 0; i < d; ++i) v[i] -= U[static_cast<size_t>(j)][i];
  uint64_t gray = 0;  // all bits 0 = all minus
  buckets[v].push_back(0);
  for (uint64_t i = 1; i < total; ++i) {
    int b = __builtin_ctzll(i);
    uint64_t ngray = gray ^ (uint64_t(1) << b);
    bool now_plus = (ngray >> b) & 1;
    for (size_t k = 0; k < d; ++k) {
      if (now_plus)
        v[k] += 2 * U[static_cast<size_t>(b)][k];
      else
        v[k] -= 2 * U[static_cast<size_t>(b)][k];
    }
    gray = ngray;
    buckets[v].push_back(gray);
  }
  // Distinct vectors as a field measure for certified binning.
  FieldMeasure fm;
  fm.field = lam.field;
  fm.level = n;
  fm.scale = integer_pow(field.lead(), static_cast<unsigned long>(n) - 1);
  std::vector<const std::vector<uint64_t>*> omega_of_atom;
  for (auto& [vec, omegas] : buckets) {
    FieldMeasure::Atom a;
    a.vec = vec;
    a.mult = Integer(static_cast<unsigned long>(omegas.size()));
    fm.atoms.push_back(std::move(a));
    omega_of_atom.push_back(&omegas);
  }
  auto part = binned_partition_field(fm, r, t, ctx);

  CollisionSet out;
  out.n = n;
  out.r = r;
  out.t = t;
  for (auto& [bin, idxs] : part) {
    size_t members = 0;
    for (size_t ai : idxs) members += omega_of_atom[ai]->size();
    if (members < 2) continue;
    std::vector<uint64_t> run;
    run.reserve(members);
    for (size_t ai : idxs)
      run.insert(run.end(), omega_of_atom[ai]->begin(),
                 omega_of_atom[ai]->end());
    emit_run_pairs(run, out, cfg);
  }
  return out;
}

CollisionSet collisions_interval(const LambdaSpec& lam, int n,
                                 const Rational& r, const Rational& t,
                                 BinPolicy policy, const PrecisionContext& ctx,
                                 const DiophConfig& cfg) {
  uint64_t total = uint64_t(1) << n;
  if (total > cfg.enum_cap) throw CapExceeded("2^n exceeds enumeration cap");
  mpfr_prec_t prec = std::max<mpfr_prec_t>(ctx.bits, 192);
  std::vector<IntervalScalar> power(static_cast<size_t>(n));
  {
    IntervalScalar acc = IntervalScalar::from_int(1, prec);
    for (int j = 0; j < n; ++j) {
      power[static_cast<size_t>(j)] = acc;
      acc = acc.mul(lam.box.round_to(prec));
    }
  }
  struct Entry {
    Integer lo_bin, hi_bin;
    uint64_t omega;
  };
  std::vector<Entry> entries;
  entries.reserve(total);
  for (uint64_t w = 0; w < total; ++w) {
    IntervalScalar s = IntervalScalar::from_int(0, prec);
    for (int j = 0; j < n; ++j) {
      s = ((w >> j) & 1) ? s.add(power[static_cast<size_t>(j)])
                         : s.sub(power[static_cast<size_t>(j)]);
    }
    Rational lo = s.lo_rational() / r + t;
    Rational hi = s.hi_rational() / r + t;
    Entry e{rational_floor(lo), rational_floor(hi), w};
    if (policy == BinPolicy::strict && e.lo_bin != e.hi_bin)
      throw UndecidableAtPrecision(
          "bin membership straddles an edge for the interval parameter");
    entries.push_back(std::move(e));
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    if (a.lo_bin != b.lo_bin) return a.lo_bin < b.lo_bin;
    return a.omega < b.omega;
  });
  CollisionSet out;
  out.n = n;
  out.r = r;
  out.t = t;
  // pair when bin ranges intersect
  for (size_t i = 0; i < entries.size(); ++i) {
    for (size_t j = i + 1; j < entries.size(); ++j) {
      if (entries[j].lo_bin > entries[i].hi_bin) break;
      if (out.pairs.size() >= cfg.pair_cap)
        throw CapExceeded("collision pair list exceeds cap");
      uint64_t a = entries[i].omega, b = entries[j].omega;
      out.pairs.emplace_back(std::min(a, b), std::max(a, b));
      ++out.pair_count;
    }
  }
  return out;
}

}  // namespace

CollisionSet collision_search(const LambdaSpec& lambda, int n,
                              const Rational& r, const Rational& t,
                              BinPolicy policy, const PrecisionContext& ctx,
                              const DiophConfig& cfg) {
  if (n < 2) throw OutOfRange("collision search needs n >= 2");
  if (r <= 0) throw OutOfRange("scale must be positive");
  {
    IntervalScalar e = lambda.enclosure(-64, ctx);
    if (!e.is_positive_certain() ||
        !e.less_certain(IntervalScalar::from_int(1, 64)))
      throw PreconditionUnmet("lambda must be certified inside (0,1)");
  }
  CollisionSet out;
  switch (lambda.kind) {
    case LambdaSpec::Kind::rational:
      out = collisions_rational(lambda.rat, n, r, t, cfg);
      break;
    case LambdaSpec::Kind::algebraic:
      out = collisions_algebraic(lambda, n, r, t, ctx, cfg);
      break;
    case LambdaSpec::Kind::interval:
      out = collisions_interval(lambda, n, r, t, policy, ctx, cfg);
      break;
  }
  std::sort(out.pairs.begin(), out.pairs.end());
  // Deduplicated difference polynomials with certification.
  std::set<SignPolynomial> seen;
  for (auto& [a, b] : out.pairs) {
    SignPolynomial p = difference_poly(a, b, n);
    if (p.is_zero()) continue;
    seen.insert(std::move(p));
  }
  for (const auto& p : seen) {
    bool ok = false;
    IntervalScalar e = certify_small(p, lambda, r, &ok, ctx);
    (void)e;
    if (!ok && policy == BinPolicy::strict &&
        lambda.kind != LambdaSpec::Kind::interval)
      throw Error("internal: same-bin difference polynomial not small");
    out.difference_polys.push_back(p);
    out.certified.push_back(ok ? 1 : 0);
  }
  return out;
}

ApproximationCertificate common_root_certificate(
    const std::vector<SignPolynomial>& A, const LambdaSpec& lambda, int n,
    const Rational& r, const PrecisionContext& ctx, const DiophConfig& cfg) {
  if (A.empty()) throw AllZero("empty polynomial set");
  bool any = false;
  for (const auto& p : A) {
    if (p.degree() > n) throw OutOfRange("member degree exceeds bound");
    any |= !p.is_zero();
  }
  if (!any) throw AllZero("all members are zero");

  // Scale preconditions: explicit route needs r < (2n)^(-2n); the sharper
  // exponent additionally needs r < n^(-3n) and lambda in (eps, 1-eps).
  Rational r33(Integer(1),
               integer_pow(Integer(2 * n), 2ul * static_cast<unsigned long>(n)));
  r33.canonicalize();
  Rational r34 = power_bound(n, 3);
  bool route33 = r < r33;
  bool route34 = r < r34;
  if (!route33 && !route34)
    throw PreconditionUnmet("r is too large: needs r < (2n)^-2n or r < n^-3n");

  // certified |P(lambda)| <= r for every member
  for (const auto& p : A) {
    if (p.is_zero()) continue;
    bool ok = false;
    certify_small(p, lambda, r, &ok, ctx);
    if (!ok)
      throw PreconditionUnmet("a member is not certified r-small at lambda");
  }

  std::vector<IntPolynomial> ints;
  for (const auto& p : A)
    if (!p.is_zero()) ints.push_back(p.to_int_poly());
  IntPolynomial D = gcd_set(ints);
  if (D.degree() < 1)
    throw PreconditionUnmet(
        "gcd is constant: the smallness hypotheses cannot all hold");

  ApproximationCertificate cert;
  cert.n = n;
  cert.r = r;
  cert.gcd = D;
  for (const auto& p : A)
    if (!p.is_zero()) cert.vanishing.push_back(p);

  std::vector<SignPolynomial> nz = cert.vanishing;
  cert.bezout = bezout_certificate(nz, n);
  // |D(lambda)| against (n+1) 2^(2n+1) (2n)! r
  cert.gcd_bound = Rational(Integer(n + 1) *
                            pow2(2 * static_cast<unsigned long>(n) + 1) *
                            factorial(2 * static_cast<unsigned long>(n))) *
                   r;
  {
    bool decided = false;
    for (long w = -128; !decided && -w <= static_cast<long>(ctx.cap) * 4;
         w -= 128) {
      IntervalScalar e =
          interval_eval_poly(D, lambda.enclosure(w, ctx),
                             std::max<mpfr_prec_t>(ctx.bits, -w + 32))
              .abs();
      cert.gcd_at_lambda = e;
      if (e.hi_rational() <= cert.gcd_bound) {
        cert.gcd_bound_ok = true;
        decided = true;
      } else if (e.lo_rational() > cert.gcd_bound) {
        cert.gcd_bound_ok = false;
        decided = true;
      }
    }
  }

  // Roots of D; pick the certified-nearest to lambda.
  auto roots = isolate_roots(D, Rational(1, Integer(1) << 48), ctx);
  if (roots.empty()) throw NoRootInRange("gcd has no roots");
  long w = -96;
  size_t best = 0;
  {
    std::vector<IntervalScalar> dist;
    IntervalScalar le = lambda.enclosure(w, ctx);
    ComplexInterval lbox{le, IntervalScalar::from_int(0, ctx.bits)};
    for (auto& rt : roots) {
      dist.push_back(lbox.distance(rt.number.box(ctx.bits)));
    }
    for (size_t i = 1; i < dist.size(); ++i) {
      if (dist[i].hi_rational() < dist[best].hi_rational()) best = i;
    }
    cert.distance = dist[best];
  }
  cert.eta = roots[best].number;
  cert.eta_real = cert.eta.is_real();

  // Explicit bound r^(1/n) (2n)^2.
  cert.bound_kind = "r^(1/n)*(2n)^2";
  Rational inv_n(1, static_cast<unsigned long>(n));
  IntervalScalar b33 =
      pow_interval(IntervalScalar::from_rational(r, ctx.bits), inv_n,
                   ctx.bits)
          .mul(IntervalScalar::from_int(4l * n * n, ctx.bits));
  cert.bound_value = b33;
  cert.bound_asserted = route33 && n >= cfg.assert_floor;
  // refine until the comparison is certified either way
  for (;;) {
    if (cert.distance.hi_rational() < b33.lo_rational()) {
      cert.bound_holds = true;
      break;
    }
    if (cert.distance.lo_rational() > b33.hi_rational()) {
      cert.bound_holds = false;
      break;
    }
    w -= 96;
    if (-w > static_cast<long>(ctx.cap) * 4)
      throw UndecidableAtPrecision("distance vs bound undecided");
    cert.eta.refine_below(w, ctx);
    IntervalScalar le = lambda.enclosure(w, ctx);
    ComplexInterval lbox{le, IntervalScalar::from_int(0, ctx.bits)};
    cert.distance = lbox.distance(
        cert.eta.box(std::max<mpfr_prec_t>(ctx.bits, -w + 32)));
  }
  if (cert.bound_asserted && !cert.bound_holds)
    throw NoRootInRange("no gcd root lies within the asserted bound");

  if (cfg.c_exponent) {
    IntervalScalar bc = pow_interval(
        IntervalScalar::from_rational(r, ctx.bits), *cfg.c_exponent, ctx.bits);
    cert.c_bound_value = bc;
    cert.c_bound_holds =
        cert.distance.hi_rational() < bc.lo_rational() && route34;
  }

  // Entropy rate modulo eta's defining polynomial: an upper bound on h_eta.
  {
    ModLevel lvl = level_atoms_modulo(cert.eta.defining(), n, cfg.enum_cap);
    cert.h_eta_bound =
        shannon(lvl, ctx.bits).div(IntervalScalar::from_int(n, ctx.bits));
    cert.has_h_eta = true;
  }
  return cert;
}

void reverify_certificate(const ApproximationCertificate& cert,
                          const LambdaSpec& lambda,
                          const PrecisionContext& fresh_ctx) {
  // fresh gcd
  std::vector<IntPolynomial> ints;
  for (const auto& p : cert.vanishing) ints.push_back(p.to_int_poly());
  IntPolynomial D = gcd_set(ints);
  if (!(D == cert.gcd)) throw Error("reverify: gcd mismatch");
  for (const auto& p : cert.vanishing)
    if (!divides(cert.gcd, p.to_int_poly()))
      throw Error("reverify: gcd does not divide a member");
  verify_bezout(cert.bezout);
  if (!(cert.bezout.gcd == cert.gcd))
    throw Error("reverify: bezout gcd mismatch");
  // eta is a root of the gcd: its defining polynomial divides D
  if (!divides(cert.eta.defining(), D))
    throw Error("reverify: eta's defining polynomial does not divide the gcd");
  // fresh smallness
  for (const auto& p : cert.vanishing) {
    bool ok = false;
    certify_small(p, lambda, cert.r, &ok, fresh_ctx);
    if (!ok) throw Error("reverify: member not r-small");
  }
  // fresh isolation: eta equals one of the freshly isolated roots
  auto roots = isolate_squarefree(square_free_part(D), fresh_ctx);
  AlgebraicNumber eta = cert.eta;
  bool found = false;
  for (auto& rt : roots) {
    AlgebraicNumber cand = rt;
    if (algebraic_equal(eta, cand, fresh_ctx)) {
      found = true;
      break;
    }
  }
  if (!found) throw Error("reverify: eta is not a root of the gcd");
  // distance against the recorded bound
  if (cert.bound_asserted && cert.bound_holds) {
    ComplexInterval lbox{lambda.enclosure(-256, fresh_ctx),
                         IntervalScalar::from_int(0, fresh_ctx.bits)};
    eta.refine_below(-256, fresh_ctx);
    IntervalScalar d = lbox.distance(eta.box(fresh_ctx.bits));
    if (!(d.lo_rational() <= cert.bound_value.hi_rational()))
      throw Error("reverify: distance exceeds the recorded bound");
  }
}

namespace {

// Minimum adjacent gap of exact rational positions, compared to r.
bool rational_gaps_exceed(const AtomicMeasure& mu, const Rational& r) {
  for (size_t i = 0; i + 1 < mu.size(); ++i)
    if (mu.positions()[i + 1] - mu.positions()[i] <= r) return false;
  return true;
}

// Certified check that all distinct field values are pairwise farther than r
// apart (adjacent gaps after certified ordering). Returns false when some
// pair is within r or exactly equal.
bool field_gaps_exceed(const FieldMeasure& mu, const Rational& r,
                       const PrecisionContext& ctx) {
  // sort value enclosures; refine until adjacent relations to r are decided
  struct Item {
    size_t idx;
    IntervalScalar v;
  };
  long w = -128;
  for (;;) {
    IntervalScalar lam = mu.field->enclosure(w, ctx);
    mpfr_prec_t p2 = std::max<mpfr_prec_t>(ctx.bits, -w + 32);
    IntervalScalar sc = IntervalScalar::from_integer(mu.scale, p2);
    std::vector<Item> items;
    for (size_t i = 0; i < mu.atoms.size(); ++i) {
      IntervalScalar acc = IntervalScalar::from_int(0, p2);
      for (auto it = mu.atoms[i].vec.rbegin(); it != mu.atoms[i].vec.rend();
           ++it)
        acc = acc.mul(lam).add(IntervalScalar::from_integer(*it, p2));
      items.push_back({i, acc.div(sc)});
    }
    std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
      return mpfr_cmp(a.v.lo(), b.v.lo()) < 0;
    });
    bool undecided = false;
    for (size_t i = 0; i + 1 < items.size(); ++i) {
      IntervalScalar gap = items[i + 1].v.sub(items[i].v);
      if (gap.lo_rational() > r) continue;
      if (gap.hi_rational() <= r) return false;
      undecided = true;
      break;
    }
    if (!undecided) return true;
    w -= 128;
    if (-w > static_cast<long>(ctx.cap) * 4) {
      // Could not separate: treat as a potential collision; the exact
      // collision machinery settles it.
      return false;
    }
  }
}

Rational pick_witness_offset(const std::vector<SweepSegment>& segs) {
  size_t best = 0;
  for (size_t i = 1; i < segs.size(); ++i) {
    if (mpfr_cmp(segs[i].binned_entropy.lo(),
                 segs[best].binned_entropy.lo()) < 0)
      best = i;
  }
  return (segs[best].t_lo + segs[best].t_hi) / 2;
}

}  // namespace

DichotomyResult dichotomy(const LambdaSpec& lambda, int n, const Rational& r,
                          const PrecisionContext& ctx,
                          const DiophConfig& cfg) {
  if (n < 2) throw OutOfRange("dichotomy needs n >= 2");
  Rational rmax = power_bound(n, 3);
  if (!(r < rmax))
    throw PreconditionUnmet("dichotomy needs r < n^-3n");
  {
    IntervalScalar e = lambda.enclosure(-64, ctx);
    Rational upper = Rational(1) - cfg.epsilon;
    if (!e.is_positive_certain() ||
        !(e.hi_rational() < upper))
      throw PreconditionUnmet("lambda must be certified inside (0, 1-eps)");
  }

  DichotomyResult out;
  Integer full = Integer(1) << n;

  if (lambda.kind == LambdaSpec::Kind::rational) {
    AtomicMeasure mu = bernoulli_level_rational(lambda.rat, n, cfg.enum_cap);
    out.support = mu.size();
    if (Integer(static_cast<unsigned long>(mu.size())) == full &&
        rational_gaps_exceed(mu, r)) {
      out.witness = EntropyWitness{
          n, r, IntervalScalar::from_int(n, ctx.bits), mu.size()};
      out.entropy = out.witness->entropy;
      out.entropy_known = true;
      return out;
    }
    SweepResult sr = sweep_entropy(mu, r, ctx);
    out.entropy = sr.value;
    out.entropy_known = true;
    out.witness_offset = pick_witness_offset(sr.segments);
  } else if (lambda.kind == LambdaSpec::Kind::algebraic) {
    FieldMeasure fm = level_distribution(lambda.field, n, ctx, cfg.enum_cap);
    out.support = fm.support();
    if (Integer(static_cast<unsigned long>(fm.support())) == full &&
        field_gaps_exceed(fm, r, ctx)) {
      out.witness = EntropyWitness{
          n, r, IntervalScalar::from_int(n, ctx.bits), fm.support()};
      out.entropy = out.witness->entropy;
      out.entropy_known = true;
      return out;
    }
    SweepResult sr = sweep_entropy_field(fm, r, ctx);
    out.entropy = sr.value;
    out.entropy_known = true;
    out.witness_offset = pick_witness_offset(sr.segments);
  } else {
    // Interval parameter: certified separation or the collision route with
    // certified-small polynomials; no certified sweep is available.
    EnclosedMeasure em;
    bool separated = true;
    try {
      em = bernoulli_level_interval(lambda.box, n, ctx, cfg.enum_cap);
      for (size_t i = 0; i + 1 < em.positions.size(); ++i) {
        IntervalScalar gap = em.positions[i + 1].sub(em.positions[i]);
        if (!(gap.lo_rational() > r)) {
          separated = false;
          break;
        }
      }
    } catch (const UndecidableAtPrecision&) {
      separated = false;
    }
    if (separated) {
      out.support = em.positions.size();
      out.witness = EntropyWitness{
          n, r, IntervalScalar::from_int(n, ctx.bits), em.positions.size()};
      out.entropy = out.witness->entropy;
      out.entropy_known = true;
      return out;
    }
    out.witness_offset = Rational(0);
  }

  BinPolicy policy = lambda.kind == LambdaSpec::Kind::interval
                         ? BinPolicy::inclusive
                         : BinPolicy::strict;
  CollisionSet cs =
      collision_search(lambda, n, r, out.witness_offset, policy, ctx, cfg);
  out.collision_pairs = cs.pair_count;
  std::vector<SignPolynomial> certified;
  for (size_t i = 0; i < cs.difference_polys.size(); ++i)
    if (cs.certified[i]) certified.push_back(cs.difference_polys[i]);
  if (certified.empty())
    throw UndecidableAtPrecision(
        "no certified-small collision polynomials at the witness offset");
  out.certificate =
      common_root_certificate(certified, lambda, n, r, ctx, cfg);
  return out;
}

AuditReport full_entropy_check(const LambdaSpec& lambda,
                               std::shared_ptr<const NumberField> eta, int n,
                               const PrecisionContext& ctx,
                               const DiophConfig& cfg) {
  AuditReport rep;
  rep.name = "full_entropy_check";
  rep.params["n"] = std::to_string(n);
  rep.params["lambda"] = lambda.describe();
  rep.params["eta"] = eta->defining().to_string();
  rep.params["c"] = format_rational(cfg.full_check_c);

  // eta must be a root of some polynomial in P_n; its defining polynomial
  // serves as the witness when it lies in P_n itself.
  {
    bool witness = eta->defining().degree() <= n;
    if (witness)
      for (const auto& c : eta->defining().coeffs())
        if (c < -1 || c > 1) witness = false;
    if (!witness)
      throw PreconditionUnmet(
          "eta's defining polynomial is not a {-1,0,1} polynomial of degree "
          "<= n; no witness membership in P_n");
  }

  // 0 < |lambda - eta| < n^(-4n), certified.
  Rational bound4 = power_bound(n, 4);
  IntervalScalar dist(ctx.bits);
  {
    if (lambda.kind == LambdaSpec::Kind::algebraic &&
        lambda.field->defining() == eta->defining()) {
      AlgebraicNumber a = lambda.field->root_copy();
      AlgebraicNumber b = eta->root_copy();
      if (algebraic_equal(a, b, ctx))
        throw PreconditionUnmet("lambda equals eta; distance not positive");
    }
    if (lambda.kind == LambdaSpec::Kind::rational) {
      AlgebraicNumber b = eta->root_copy();
      if (b.is_exact_rational() && b.exact_value() == lambda.rat)
        throw PreconditionUnmet("lambda equals eta; distance not positive");
    }
    long w = -128;
    for (;;) {
      IntervalScalar le = lambda.enclosure(w, ctx);
      IntervalScalar ee = eta->enclosure(w, ctx);
      dist = le.sub(ee).abs();
      if (dist.lo_rational() > 0 && dist.hi_rational() < bound4) break;
      if (dist.lo_rational() >= bound4)
        throw PreconditionUnmet("|lambda - eta| is not below n^-4n");
      w -= 128;
      if (-w > static_cast<long>(ctx.cap) * 4)
        throw PreconditionUnmet(
            "|lambda - eta| could not be certified positive");
    }
  }
  rep.values["distance_lo"] = dist.lo_string();
  rep.values["distance_hi"] = dist.hi_string();
  rep.values["bound_n4n"] = format_rational(bound4);

  // r just below |lambda - eta|^(1/c)
  Rational inv_c = 1 / cfg.full_check_c;
  IntervalScalar renc = pow_interval(dist, inv_c, ctx.bits);
  Rational r = renc.lo_rational();
  if (r <= 0) throw PreconditionUnmet("mandated scale underflows");
  rep.values["r"] = format_rational(r);

  // H(mu_lambda^((lambda^n,1]); r) must certify = n.
  bool full_entropy = false;
  size_t support = 0;
  if (lambda.kind == LambdaSpec::Kind::rational) {
    AtomicMeasure mu = bernoulli_level_rational(lambda.rat, n, cfg.enum_cap);
    support = mu.size();
    full_entropy = (Integer(static_cast<unsigned long>(mu.size())) ==
                    (Integer(1) << n)) &&
                   rational_gaps_exceed(mu, r);
  } else if (lambda.kind == LambdaSpec::Kind::algebraic) {
    FieldMeasure fm = level_distribution(lambda.field, n, ctx, cfg.enum_cap);
    support = fm.support();
    full_entropy = (Integer(static_cast<unsigned long>(fm.support())) ==
                    (Integer(1) << n)) &&
                   field_gaps_exceed(fm, r, ctx);
  } else {
    throw PreconditionUnmet(
        "full entropy check needs an exact (rational or algebraic) lambda");
  }
  rep.values["support"] = std::to_string(support);

  AuditCheck chk;
  chk.id = "full_entropy";
  chk.description = "H(mu;r) = n at r <= |lambda-eta|^(1/c)";
  chk.cases = 1;
  chk.passed = full_entropy;
  chk.failures = full_entropy ? 0 : 1;
  chk.asserted = n >= cfg.assert_floor;
  rep.checks.push_back(std::move(chk));
  rep.values["verdict"] = full_entropy ? "true" : "false";
  return rep;
}

}  // namespace bcl
