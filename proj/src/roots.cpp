#include "bcl/roots.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "bcl/errors.hpp"

namespace bcl {

namespace {

Rational two_pow(long e) {
  Rational r(1);
  if (e >= 0) {
    mpz_mul_2exp(r.get_num().get_mpz_t(), r.get_num().get_mpz_t(), e);
  } else {
    mpz_mul_2exp(r.get_den().get_mpz_t(), r.get_den().get_mpz_t(), -e);
  }
  return r;
}

}  // namespace

AlgebraicNumber AlgebraicNumber::rational(const Rational& value) {
  Rational v = value;
  v.canonicalize();
  AlgebraicNumber a;
  a.exact_ = v;
  a.real_ = true;
  std::vector<Integer> c{-v.get_num(), v.get_den()};
  a.defining_ = primitive_part(IntPolynomial(std::move(c)));
  a.rlo_ = v;
  a.rhi_ = v;
  return a;
}

AlgebraicNumber AlgebraicNumber::real_root(IntPolynomial defining,
                                           const Rational& lo,
                                           const Rational& hi) {
  AlgebraicNumber a;
  a.defining_ = std::move(defining);
  a.real_ = true;
  a.rlo_ = lo;
  a.rhi_ = hi;
  a.slo_ = sign_at(a.defining_, lo);
  a.shi_ = sign_at(a.defining_, hi);
  if (a.slo_ * a.shi_ >= 0)
    throw Error("real_root: endpoints do not certify a sign change");
  return a;
}

AlgebraicNumber AlgebraicNumber::complex_root(IntPolynomial defining,
                                              ComplexInterval box) {
  AlgebraicNumber a;
  a.defining_ = std::move(defining);
  a.real_ = false;
  if (box.im.contains_zero())
    throw Error("complex_root: box must avoid the real axis");
  a.cbox_ = std::move(box);
  return a;
}

ComplexInterval AlgebraicNumber::box(mpfr_prec_t prec) const {
  if (real_) {
    return {real_enclosure(prec), IntervalScalar::from_int(0, prec)};
  }
  return {cbox_.re.round_to(prec), cbox_.im.round_to(prec)};
}

IntervalScalar AlgebraicNumber::real_enclosure(mpfr_prec_t prec) const {
  if (!real_) throw Error("real_enclosure of a non-real algebraic number");
  if (exact_) return IntervalScalar::from_rational(*exact_, prec);
  IntervalScalar lo = IntervalScalar::from_rational(rlo_, prec);
  IntervalScalar hi = IntervalScalar::from_rational(rhi_, prec);
  return IntervalScalar::hull(lo, hi);
}

IntervalScalar AlgebraicNumber::modulus(mpfr_prec_t prec) const {
  if (real_) return real_enclosure(prec).abs();
  return cbox_.abs().round_to(prec);
}

double AlgebraicNumber::approx_re() const {
  if (real_) {
    if (exact_) return exact_->get_d();
    return (rlo_.get_d() + rhi_.get_d()) / 2;
  }
  return (cbox_.re.lo_double() + cbox_.re.hi_double()) / 2;
}

double AlgebraicNumber::approx_im() const {
  if (real_) return 0.0;
  return (cbox_.im.lo_double() + cbox_.im.hi_double()) / 2;
}

double AlgebraicNumber::width_approx() const {
  if (exact_) return 0.0;
  if (real_) {
    Rational w = rhi_ - rlo_;
    return w.get_d();
  }
  return std::max(cbox_.re.width_approx(), cbox_.im.width_approx());
}

namespace {

// One interval-Newton contraction attempt for a real sign-change bracket.
// Returns false if the step did not shrink the bracket enough.
bool newton_real_step(const IntPolynomial& f, const IntPolynomial& df,
                      Rational& rlo, Rational& rhi, int& slo, int& shi,
                      mpfr_prec_t prec) {
  IntervalScalar x = IntervalScalar::hull(
      IntervalScalar::from_rational(rlo, prec),
      IntervalScalar::from_rational(rhi, prec));
  IntervalScalar dfx = interval_eval_poly(df, x, prec);
  if (dfx.contains_zero()) return false;
  Rational m = (rlo + rhi) / 2;
  Rational fm = eval(f, m);
  if (fm == 0) {
    // Exact rational root hit; collapse the bracket to it below.
    rlo = m;
    rhi = m;
    return true;
  }
  IntervalScalar mi = IntervalScalar::from_rational(m, prec);
  IntervalScalar fmi = IntervalScalar::from_rational(fm, prec);
  IntervalScalar nx = mi.sub(fmi.div(dfx));
  Rational nlo = std::max(rlo, nx.lo_rational());
  Rational nhi = std::min(rhi, nx.hi_rational());
  if (nlo > nhi) return false;
  Rational w_old = rhi - rlo;
  Rational w_new = nhi - nlo;
  if (w_new * 4 > w_old) return false;
  int nslo = sign_at(f, nlo);
  int nshi = sign_at(f, nhi);
  if (nslo == 0 || nshi == 0 || nslo * nshi > 0) return false;
  rlo = nlo;
  rhi = nhi;
  slo = nslo;
  shi = nshi;
  return true;
}

}  // namespace

void AlgebraicNumber::refine_below(long width_exp2,
                                   const PrecisionContext& ctx) {
  if (exact_) return;
  Rational target = two_pow(width_exp2);
  if (real_) {
    IntPolynomial df = derivative(defining_);
    mpfr_prec_t prec = std::max<mpfr_prec_t>(ctx.bits, -width_exp2 + 64);
    while (rhi_ - rlo_ >= target) {
      if (newton_real_step(defining_, df, rlo_, rhi_, slo_, shi_, prec)) {
        if (rlo_ == rhi_) {
          exact_ = rlo_;
          return;
        }
        continue;
      }
      Rational m = (rlo_ + rhi_) / 2;
      int sm = sign_at(defining_, m);
      if (sm == 0) {
        exact_ = m;
        rlo_ = m;
        rhi_ = m;
        return;
      }
      if (sm == slo_) {
        rlo_ = m;
      } else {
        rhi_ = m;
      }
    }
    return;
  }
  // Complex: Newton point iteration plus certified inclusion radius.
  int d = defining_.degree();
  IntPolynomial df = derivative(defining_);
  mpfr_prec_t prec = std::max<mpfr_prec_t>(ctx.bits, -width_exp2 + 64);
  IntervalScalar tgt = IntervalScalar::from_rational(target, 64);
  while (!(cbox_.re.width().less_certain(tgt) &&
           cbox_.im.width().less_certain(tgt))) {
    bool ok = false;
    for (; prec <= ctx.cap; prec *= 2) {
      IntervalScalar rc = cbox_.re.midpoint();
      IntervalScalar ic = cbox_.im.midpoint();
      MpfrComplex z = MpfrComplex::from_mpfr(rc.lo(), ic.lo(), prec);
      for (int it = 0; it < 4; ++it) {
        MpfrComplex fz = eval_poly(defining_, z);
        MpfrComplex dfz = eval_poly(df, z);
        if (!fz.is_finite() || !dfz.is_finite()) break;
        if (dfz.abs_double() == 0) break;
        z = z.sub(fz.div(dfz));
      }
      if (!z.is_finite()) continue;
      ComplexInterval zb = z.to_point_box();
      ComplexInterval fz = eval_poly(defining_, zb, prec);
      ComplexInterval dfz = eval_poly(df, zb, prec);
      if (dfz.contains_zero()) continue;
      IntervalScalar rho =
          fz.abs().div(dfz.abs()).mul(IntervalScalar::from_int(d, 64));
      // Pad one part in 2^20 so the root is strictly interior.
      IntervalScalar pad = IntervalScalar::hull(
          rho, rho.mul(IntervalScalar::from_rational(
                   Rational(1048577, 1048576), 64)));
      IntervalScalar nre = IntervalScalar::from_endpoints(
          zb.re.sub(pad).lo(), zb.re.add(pad).hi(), prec);
      IntervalScalar nim = IntervalScalar::from_endpoints(
          zb.im.sub(pad).lo(), zb.im.add(pad).hi(), prec);
      if (!cbox_.re.contains(nre) || !cbox_.im.contains(nim)) continue;
      Rational oldw = cbox_.re.width().hi_rational() +
                      cbox_.im.width().hi_rational();
      Rational neww = nre.width().hi_rational() + nim.width().hi_rational();
      if (neww * 2 > oldw && oldw > 0) continue;
      cbox_.re = nre;
      cbox_.im = nim;
      ok = true;
      break;
    }
    if (!ok)
      throw CapExceeded("complex root refinement hit the precision cap");
  }
}

std::string AlgebraicNumber::describe() const {
  std::string s = "root of " + defining_.to_string();
  if (exact_) return s + " = " + format_rational(*exact_);
  if (real_)
    return s + " in [" + format_rational(rlo_) + ", " + format_rational(rhi_) +
           "]";
  return s + " in box re=" + cbox_.re.to_string() +
         " im=" + cbox_.im.to_string();
}

// ---------- Aberth-Ehrlich approximation ----------

namespace {

std::vector<std::complex<double>> aberth_double(const IntPolynomial& F,
                                                int restarts) {
  int d = F.degree();
  std::vector<double> c(d + 1);
  double maxc = 0;
  for (int i = 0; i <= d; ++i) {
    c[i] = F.coeff(i).get_d();
    maxc = std::max(maxc, std::fabs(c[i]));
  }
  for (auto& v : c) v /= maxc;
  std::vector<double> dc(d);
  for (int i = 1; i <= d; ++i) dc[i - 1] = c[i] * i;

  auto horner = [](const std::vector<double>& p, std::complex<double> z) {
    std::complex<double> r = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) r = r * z + *it;
    return r;
  };

  double r0 = std::pow(std::fabs(c[0] / c[d]), 1.0 / d);
  if (!(r0 > 1e-12 && r0 < 1e12)) r0 = 1.0;
  r0 *= std::pow(1.3, restarts);
  std::vector<std::complex<double>> z(d);
  for (int k = 0; k < d; ++k) {
    double th = 2 * M_PI * k / d + 0.4 / d + 0.25 + 0.11 * restarts;
    z[k] = r0 * std::complex<double>(std::cos(th), std::sin(th));
  }
  for (int iter = 0; iter < 400; ++iter) {
    double worst = 0;
    for (int k = 0; k < d; ++k) {
      std::complex<double> p = horner(c, z[k]);
      std::complex<double> dp = horner(dc, z[k]);
      std::complex<double> N = (dp == 0.0 ? p : p / dp);
      std::complex<double> S = 0;
      for (int j = 0; j < d; ++j) {
        if (j == k) continue;
        std::complex<double> diff = z[k] - z[j];
        if (diff == 0.0) diff = 1e-30;
        S += 1.0 / diff;
      }
      std::complex<double> den = 1.0 - N * S;
      std::complex<double> w = (den == 0.0 ? N : N / den);
      z[k] -= w;
      worst = std::max(worst, std::abs(w) / (1.0 + std::abs(z[k])));
      if (!std::isfinite(z[k].real()) || !std::isfinite(z[k].imag()))
        z[k] = std::complex<double>(0.5 + 0.01 * k, 0.3);
    }
    if (worst < 1e-14) break;
  }
  return z;
}

std::vector<MpfrComplex> aberth_mpfr(const IntPolynomial& F,
                                     const std::vector<MpfrComplex>& init,
                                     mpfr_prec_t prec, int iters) {
  int d = F.degree();
  IntPolynomial dF = derivative(F);
  std::vector<MpfrComplex> z;
  z.reserve(d);
  for (const auto& v : init) z.push_back(v.round_to(prec));
  MpfrComplex one = MpfrComplex::from_double({1, 0}, prec);
  for (int iter = 0; iter < iters; ++iter) {
    for (int k = 0; k < d; ++k) {
      MpfrComplex p = eval_poly(F, z[k]);
      MpfrComplex dp = eval_poly(dF, z[k]);
      if (!p.is_finite() || !dp.is_finite() || dp.abs_double() == 0) continue;
      MpfrComplex N = p.div(dp);
      MpfrComplex S = MpfrComplex::from_double({0, 0}, prec);
      bool bad = false;
      for (int j = 0; j < d; ++j) {
        if (j == k) continue;
        MpfrComplex diff = z[k].sub(z[j]);
        if (diff.abs_double() == 0) {
          bad = true;
          break;
        }
        S = S.add(one.div(diff));
      }
      if (bad) continue;
      MpfrComplex den = one.sub(N.mul(S));
      MpfrComplex w = den.abs_double() == 0 ? N : N.div(den);
      z[k] = z[k].sub(w);
    }
  }
  return z;
}

struct CertifiedRoots {
  std::vector<AlgebraicNumber> roots;
};

std::optional<CertifiedRoots> try_certify(const IntPolynomial& F,
                                          const std::vector<MpfrComplex>& zs,
                                          mpfr_prec_t prec) {
  int d = F.degree();
  if (static_cast<int>(zs.size()) != d) return std::nullopt;
  IntPolynomial dF = derivative(F);

  struct RealCand {
    Rational a, b;
  };
  std::vector<RealCand> reals;
  std::vector<ComplexInterval> boxes;

  for (const auto& z : zs) {
    if (!z.is_finite()) return std::nullopt;
    ComplexInterval zb = z.to_point_box();
    ComplexInterval fz = eval_poly(F, zb, prec);
    ComplexInterval dfz = eval_poly(dF, zb, prec);
    if (dfz.contains_zero()) return std::nullopt;
    IntervalScalar rho =
        fz.abs().div(dfz.abs()).mul(IntervalScalar::from_int(d, 64));
    Rational rho_q = rho.hi_rational();
    if (rho_q <= 0) rho_q = two_pow(-static_cast<long>(prec));
    Rational im_q = zb.im.lo_rational();
    Rational abs_im = im_q < 0 ? -im_q : im_q;
    if (abs_im > rho_q) {
      // Strictly off-axis: certified non-real enclosure.
      Rational pad = rho_q * Rational(9, 8);
      Rational re_q = zb.re.lo_rational();
      mpfr_prec_t bp = prec;
      IntervalScalar bre = IntervalScalar::hull(
          IntervalScalar::from_rational(re_q - pad, bp),
          IntervalScalar::from_rational(re_q + pad, bp));
      IntervalScalar bim = IntervalScalar::hull(
          IntervalScalar::from_rational(im_q - pad, bp),
          IntervalScalar::from_rational(im_q + pad, bp));
      if (bim.contains_zero()) return std::nullopt;
      boxes.push_back({bre, bim});
    } else {
      // Candidate real root: certify by exact sign change.
      Rational x = zb.re.lo_rational();
      Rational delta = rho_q * 2;
      Rational a = x - delta, b = x + delta;
      int tries = 0;
      while (sign_at(F, a) == 0 && tries++ < 8) a -= delta / 8;
      tries = 0;
      while (sign_at(F, b) == 0 && tries++ < 8) b += delta / 8;
      if (sign_at(F, a) * sign_at(F, b) >= 0) return std::nullopt;
      reals.push_back({a, b});
    }
  }

  // Disjointness. Real intervals against each other:
  std::sort(reals.begin(), reals.end(),
            [](const RealCand& u, const RealCand& v) { return u.a < v.a; });
  for (size_t i = 0; i + 1 < reals.size(); ++i)
    if (reals[i + 1].a <= reals[i].b) return std::nullopt;
  // Boxes pairwise (their im-ranges exclude 0, so they never meet the reals):
  for (size_t i = 0; i < boxes.size(); ++i)
    for (size_t j = i + 1; j < boxes.size(); ++j)
      if (!boxes[i].disjoint(boxes[j])) return std::nullopt;

  CertifiedRoots out;
  for (const auto& rc : reals)
    out.roots.push_back(AlgebraicNumber::real_root(F, rc.a, rc.b));
  for (const auto& bx : boxes)
    out.roots.push_back(AlgebraicNumber::complex_root(F, bx));
  return out;
}

// All roots of a square-free primitive F with F(0) != 0 and no roots at +-1.
std::vector<AlgebraicNumber> isolate_core(const IntPolynomial& F,
                                          const PrecisionContext& ctx) {
  int d = F.degree();
  std::vector<AlgebraicNumber> out;
  if (d <= 0) return out;
  if (d == 1) {
    out.push_back(
        AlgebraicNumber::rational(Rational(-F.coeff(0), F.coeff(1))));
    return out;
  }
  for (int restart = 0; restart < 3; ++restart) {
    auto zd = aberth_double(F, restart);
    std::vector<MpfrComplex> zs;
    zs.reserve(zd.size());
    for (auto z : zd) zs.push_back(MpfrComplex::from_double(z, 96));
    if (auto cert = try_certify(F, zs, 96)) return std::move(cert->roots);
    for (mpfr_prec_t p = 192; p <= ctx.cap; p *= 2) {
      zs = aberth_mpfr(F, zs, p, 48);
      if (auto cert = try_certify(F, zs, p)) return std::move(cert->roots);
    }
  }
  throw CapExceeded("root isolation failed to certify at the precision cap: " +
                    F.to_string());
}

}  // namespace

std::vector<AlgebraicNumber> isolate_squarefree(const IntPolynomial& F,
                                                const PrecisionContext& ctx) {
  std::vector<AlgebraicNumber> out;
  IntPolynomial G = primitive_part(F);
  if (G.is_zero()) throw Error("isolate_squarefree of zero polynomial");
  // Peel the rational roots 0 and +-1 exactly; they are ubiquitous in the
  // {-1,0,1} corpus and exact handling keeps later equality tests cheap.
  size_t val = 0;
  while (val < G.coeffs().size() && G.coeffs()[val] == 0) ++val;
  if (val > 0) {
    std::vector<Integer> c(G.coeffs().begin() + val, G.coeffs().end());
    G = IntPolynomial(std::move(c));
    out.push_back(AlgebraicNumber::rational(Rational(0)));
  }
  for (long r : {1L, -1L}) {
    Rational q(r);
    if (!G.is_zero() && G.degree() >= 1 && eval(G, q) == 0) {
      IntPolynomial lin({Integer(-r), Integer(1)});
      G = *divide_exact(G, lin);
      out.push_back(AlgebraicNumber::rational(q));
    }
  }
  if (G.degree() >= 1) {
    auto rest = isolate_core(G, ctx);
    for (auto& a : rest) out.push_back(std::move(a));
  }
  return out;
}

std::vector<IsolatedRoot> isolate_roots(const IntPolynomial& P,
                                        const Rational& eps,
                                        const PrecisionContext& ctx) {
  if (P.is_zero()) throw Error("isolate_roots of zero polynomial");
  if (eps <= 0) throw OutOfRange("eps must be positive");
  std::vector<IsolatedRoot> out;
  if (P.degree() == 0) return out;
  auto factors = square_free_decomposition(P);
  for (const auto& [f, m] : factors) {
    for (auto& a : isolate_squarefree(f, ctx)) {
      out.push_back({std::move(a), m});
    }
  }
  // Width target.
  long eps_exp = -1;
  {
    Rational w = eps;
    while (two_pow(eps_exp) >= w) --eps_exp;
  }
  for (auto& r : out) r.number.refine_below(eps_exp, ctx);
  // Distinct roots of coprime factors (and within one factor) may still have
  // overlapping enclosures at this width; separate them.
  bool changed = true;
  int rounds = 0;
  long w = eps_exp;
  while (changed) {
    changed = false;
    for (size_t i = 0; i < out.size(); ++i) {
      for (size_t j = i + 1; j < out.size(); ++j) {
        ComplexInterval bi = out[i].number.box(ctx.bits);
        ComplexInterval bj = out[j].number.box(ctx.bits);
        if (!bi.disjoint(bj)) {
          w -= 16;
          out[i].number.refine_below(w, ctx);
          out[j].number.refine_below(w, ctx);
          changed = true;
        }
      }
    }
    if (++rounds > 64)
      throw CapExceeded("could not separate root enclosures");
  }
  return out;
}

namespace {

// Is x (enclosure of exactly one root of x.defining) equal to the exact
// rational q?  Decidable without refinement: q is x's root iff q is a root of
// the defining polynomial lying inside x's enclosure.
bool equals_rational(const AlgebraicNumber& x, const Rational& q,
                     mpfr_prec_t prec) {
  if (x.is_exact_rational()) return x.exact_value() == q;
  if (eval(x.defining(), q) != 0) return false;
  ComplexInterval box = x.box(prec);
  return box.re.contains(q) && box.im.contains(Rational(0));
}

// r encloses a root of a divisor of x's defining polynomial. Decides whether
// it is the same root as x's. x's box is held fixed; r shrinks to a point,
// which either escapes the box (distinct) or nests strictly inside it
// (identical, since the box holds exactly one root of the defining
// polynomial).
bool same_root_fixed_box(AlgebraicNumber& x, AlgebraicNumber& r,
                         const PrecisionContext& ctx) {
  x.refine_below(-64, ctx);
  mpfr_prec_t prec = std::max<mpfr_prec_t>(ctx.bits, 160);
  ComplexInterval bx = x.box(prec);
  if (r.is_exact_rational()) {
    const Rational& q = r.exact_value();
    return bx.re.contains(q) && bx.im.contains(Rational(0));
  }
  for (long w = -64;; w -= 64) {
    r.refine_below(w, ctx);
    prec = std::max<mpfr_prec_t>(ctx.bits, -w + 32);
    ComplexInterval br = r.box(prec);
    if (bx.disjoint(br)) return false;
    if (bx.re.contains(br.re) && bx.im.contains(br.im)) return true;
    if (w < -static_cast<long>(ctx.cap) * 4)
      throw UndecidableAtPrecision("root identity undecided at cap");
  }
}

}  // namespace

bool algebraic_is_root_of(AlgebraicNumber& x, const IntPolynomial& h,
                          const PrecisionContext& ctx) {
  if (h.is_zero()) return true;
  if (x.is_exact_rational()) return eval(h, x.exact_value()) == 0;
  IntPolynomial g = gcd_poly(h, x.defining());
  if (g.degree() <= 0) return false;
  for (auto& r : isolate_squarefree(g, ctx)) {
    if (same_root_fixed_box(x, r, ctx)) return true;
  }
  return false;
}

bool algebraic_equal(AlgebraicNumber& a, AlgebraicNumber& b,
                     const PrecisionContext& ctx) {
  if (a.is_exact_rational() && b.is_exact_rational())
    return a.exact_value() == b.exact_value();
  if (a.is_exact_rational())
    return equals_rational(b, a.exact_value(), ctx.bits);
  if (b.is_exact_rational())
    return equals_rational(a, b.exact_value(), ctx.bits);
  IntPolynomial g = gcd_poly(a.defining(), b.defining());
  if (g.degree() <= 0) return false;  // coprime defining polynomials
  for (auto& r : isolate_squarefree(g, ctx)) {
    AlgebraicNumber r2 = r;
    if (same_root_fixed_box(a, r, ctx) && same_root_fixed_box(b, r2, ctx))
      return true;
  }
  return false;
}

IntervalScalar algebraic_distance(AlgebraicNumber& a, AlgebraicNumber& b,
                                  long width_exp2,
                                  const PrecisionContext& ctx) {
  a.refine_below(width_exp2, ctx);
  b.refine_below(width_exp2, ctx);
  mpfr_prec_t prec = std::max<mpfr_prec_t>(ctx.bits, -width_exp2 + 32);
  return a.box(prec).distance(b.box(prec));
}

IntervalScalar mahler_measure(const IntPolynomial& P, const Rational& eps,
                              const PrecisionContext& ctx) {
  if (P.is_zero()) throw Error("Mahler measure of the zero polynomial");
  if (eps <= 0) throw OutOfRange("eps must be positive");
  Integer lead = ::abs(P.leading());
  if (P.degree() == 0)
    return IntervalScalar::from_integer(lead, ctx.bits);
  auto roots = isolate_roots(P, Rational(1, 16), ctx);

  for (long w = -48;; w -= 32) {
    mpfr_prec_t prec = std::max<mpfr_prec_t>(ctx.bits, -w + 64);
    IntervalScalar m = IntervalScalar::from_integer(lead, prec);
    Rational one(1);
    for (auto& r : roots) {
      IntervalScalar factor(prec);
      if (r.number.is_exact_rational()) {
        Rational av = r.number.exact_value();
        if (av < 0) av = -av;
        if (av <= 1) continue;
        factor = IntervalScalar::from_rational(av, prec);
      } else {
        IntervalScalar mod = r.number.modulus(prec);
        auto cmp = mod.compare(one);
        if (cmp.has_value() && *cmp < 0) continue;
        if (cmp.has_value() && *cmp > 0) {
          factor = mod;
        } else {
          // Straddles 1: honest lower bound 1.
          factor = IntervalScalar::from_endpoints(
              IntervalScalar::from_int(1, prec).lo(),
              IntervalScalar::hull(mod, IntervalScalar::from_int(1, prec))
                  .hi(),
              prec);
        }
      }
      for (int k = 0; k < r.multiplicity; ++k) m = m.mul(factor);
    }
    if (m.width().hi_rational() <= eps) return m;
    if (-w > static_cast<long>(ctx.cap))
      throw CapExceeded("Mahler measure refinement hit the precision cap");
    for (auto& r : roots) r.number.refine_below(w - 16, ctx);
  }
}

}  // namespace bcl
