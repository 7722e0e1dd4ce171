#include "bcl/poly.hpp"

#include <algorithm>
#include <sstream>

#include "bcl/errors.hpp"

namespace bcl {

void IntPolynomial::normalize() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

IntPolynomial IntPolynomial::monomial(Integer coeff, size_t k) {
  if (coeff == 0) return IntPolynomial();
  std::vector<Integer> c(k + 1, Integer(0));
  c[k] = std::move(coeff);
  return IntPolynomial(std::move(c));
}

IntPolynomial IntPolynomial::from_string(const std::string& text) {
  std::vector<Integer> c;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    // strip blanks
    size_t b = item.find_first_not_of(" \t");
    size_t e = item.find_last_not_of(" \t");
    if (b == std::string::npos) throw UsageError("empty coefficient in: " + text);
    item = item.substr(b, e - b + 1);
    Integer v;
    if (mpz_set_str(v.get_mpz_t(), item.c_str(), 10) != 0)
      throw UsageError("bad coefficient '" + item + "'");
    c.push_back(std::move(v));
  }
  if (c.empty()) throw UsageError("empty polynomial literal");
  return IntPolynomial(std::move(c));
}

const Integer& IntPolynomial::leading() const {
  if (c_.empty()) throw Error("zero polynomial has no leading coefficient");
  return c_.back();
}

std::string IntPolynomial::to_string() const {
  if (c_.empty()) return "0";
  std::string s;
  for (size_t i = 0; i < c_.size(); ++i) {
    if (i) s += ",";
    s += c_[i].get_str();
  }
  return s;
}

RatPolynomial::RatPolynomial(const IntPolynomial& p) {
  c_.reserve(p.coeffs().size());
  for (const auto& v : p.coeffs()) c_.emplace_back(v);
}

void RatPolynomial::normalize() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

const Rational& RatPolynomial::leading() const {
  if (c_.empty()) throw Error("zero polynomial has no leading coefficient");
  return c_.back();
}

std::string RatPolynomial::to_string() const {
  if (c_.empty()) return "0";
  std::string s;
  for (size_t i = 0; i < c_.size(); ++i) {
    if (i) s += ",";
    s += format_rational(c_[i]);
  }
  return s;
}

SignPolynomial::SignPolynomial(std::vector<int8_t> trits) : c_(std::move(trits)) {
  for (int8_t t : c_)
    if (t < -1 || t > 1) throw OutOfRange("sign polynomial coefficient not in {-1,0,1}");
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

std::optional<SignPolynomial> SignPolynomial::from_int_poly(
    const IntPolynomial& p) {
  std::vector<int8_t> t;
  t.reserve(p.coeffs().size());
  for (const auto& v : p.coeffs()) {
    if (v < -1 || v > 1) return std::nullopt;
    t.push_back(static_cast<int8_t>(v.get_si()));
  }
  return SignPolynomial(std::move(t));
}

SignPolynomial SignPolynomial::from_string(const std::string& text) {
  auto p = IntPolynomial::from_string(text);
  auto s = from_int_poly(p);
  if (!s) throw OutOfRange("coefficients not in {-1,0,1}: " + text);
  return *s;
}

IntPolynomial SignPolynomial::to_int_poly() const {
  std::vector<Integer> c;
  c.reserve(c_.size());
  for (int8_t t : c_) c.emplace_back(static_cast<long>(t));
  return IntPolynomial(std::move(c));
}

std::string SignPolynomial::to_string() const { return to_int_poly().to_string(); }

bool SignPolynomial::operator<(const SignPolynomial& o) const {
  return c_ < o.c_;
}

IntPolynomial add(const IntPolynomial& a, const IntPolynomial& b) {
  std::vector<Integer> c(std::max(a.coeffs().size(), b.coeffs().size()),
                         Integer(0));
  for (size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) + b.coeff(i);
  return IntPolynomial(std::move(c));
}

IntPolynomial sub(const IntPolynomial& a, const IntPolynomial& b) {
  std::vector<Integer> c(std::max(a.coeffs().size(), b.coeffs().size()),
                         Integer(0));
  for (size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) - b.coeff(i);
  return IntPolynomial(std::move(c));
}

IntPolynomial mul(const IntPolynomial& a, const IntPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return IntPolynomial();
  std::vector<Integer> c(a.coeffs().size() + b.coeffs().size() - 1, Integer(0));
  for (size_t i = 0; i < a.coeffs().size(); ++i)
    for (size_t j = 0; j < b.coeffs().size(); ++j)
      c[i + j] += a.coeffs()[i] * b.coeffs()[j];
  return IntPolynomial(std::move(c));
}

IntPolynomial neg(const IntPolynomial& a) {
  std::vector<Integer> c = a.coeffs();
  for (auto& v : c) v = -v;
  return IntPolynomial(std::move(c));
}

IntPolynomial mul_scalar(const IntPolynomial& a, const Integer& s) {
  if (s == 0) return IntPolynomial();
  std::vector<Integer> c = a.coeffs();
  for (auto& v : c) v *= s;
  return IntPolynomial(std::move(c));
}

IntPolynomial mul_xk(const IntPolynomial& a, size_t k) {
  if (a.is_zero()) return a;
  std::vector<Integer> c(a.coeffs().size() + k, Integer(0));
  for (size_t i = 0; i < a.coeffs().size(); ++i) c[i + k] = a.coeffs()[i];
  return IntPolynomial(std::move(c));
}

IntPolynomial derivative(const IntPolynomial& a) {
  if (a.degree() <= 0) return IntPolynomial();
  std::vector<Integer> c(a.coeffs().size() - 1, Integer(0));
  for (size_t i = 1; i < a.coeffs().size(); ++i)
    c[i - 1] = a.coeffs()[i] * Integer(static_cast<long>(i));
  return IntPolynomial(std::move(c));
}

IntPolynomial reverse(const IntPolynomial& a) {
  std::vector<Integer> c(a.coeffs().rbegin(), a.coeffs().rend());
  return IntPolynomial(std::move(c));
}

RatPolynomial add(const RatPolynomial& a, const RatPolynomial& b) {
  std::vector<Rational> c(std::max(a.coeffs().size(), b.coeffs().size()),
                          Rational(0));
  for (size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) + b.coeff(i);
  return RatPolynomial(std::move(c));
}

RatPolynomial sub(const RatPolynomial& a, const RatPolynomial& b) {
  std::vector<Rational> c(std::max(a.coeffs().size(), b.coeffs().size()),
                          Rational(0));
  for (size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) - b.coeff(i);
  return RatPolynomial(std::move(c));
}

RatPolynomial mul(const RatPolynomial& a, const RatPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return RatPolynomial();
  std::vector<Rational> c(a.coeffs().size() + b.coeffs().size() - 1,
                          Rational(0));
  for (size_t i = 0; i < a.coeffs().size(); ++i)
    for (size_t j = 0; j < b.coeffs().size(); ++j)
      c[i + j] += a.coeffs()[i] * b.coeffs()[j];
  return RatPolynomial(std::move(c));
}

RatPolynomial mul_scalar(const RatPolynomial& a, const Rational& s) {
  if (s == 0) return RatPolynomial();
  std::vector<Rational> c = a.coeffs();
  for (auto& v : c) v *= s;
  return RatPolynomial(std::move(c));
}

std::pair<RatPolynomial, RatPolynomial> divmod(const RatPolynomial& a,
                                               const RatPolynomial& b) {
  if (b.is_zero()) throw Error("polynomial division by zero");
  std::vector<Rational> rem = a.coeffs();
  int db = b.degree();
  int dq = a.degree() - db;
  if (dq < 0) return {RatPolynomial(), a};
  std::vector<Rational> quot(dq + 1, Rational(0));
  for (int k = dq; k >= 0; --k) {
    Rational q = (static_cast<int>(rem.size()) > db + k ? rem[db + k] : Rational(0)) /
                 b.leading();
    quot[k] = q;
    if (q == 0) continue;
    for (int i = 0; i <= db; ++i) {
      rem[i + k] -= q * b.coeffs()[i];
    }
  }
  return {RatPolynomial(std::move(quot)), RatPolynomial(std::move(rem))};
}

std::optional<IntPolynomial> divide_exact(const IntPolynomial& a,
                                          const IntPolynomial& b) {
  if (b.is_zero()) throw Error("polynomial division by zero");
  if (a.is_zero()) return IntPolynomial();
  auto [q, r] = divmod(RatPolynomial(a), RatPolynomial(b));
  if (!r.is_zero()) return std::nullopt;
  std::vector<Integer> c;
  c.reserve(q.coeffs().size());
  for (const auto& v : q.coeffs()) {
    if (v.get_den() != 1) return std::nullopt;
    c.push_back(v.get_num());
  }
  return IntPolynomial(std::move(c));
}

bool divides(const IntPolynomial& b, const IntPolynomial& a) {
  return divide_exact(a, b).has_value();
}

Integer content(const IntPolynomial& a) {
  Integer g = 0;
  for (const auto& v : a.coeffs()) {
    Integer av = ::abs(v);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), av.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

IntPolynomial primitive_part(const IntPolynomial& a) {
  if (a.is_zero()) return a;
  Integer c = content(a);
  if (a.leading() < 0) c = -c;
  std::vector<Integer> out;
  out.reserve(a.coeffs().size());
  for (const auto& v : a.coeffs()) out.push_back(v / c);
  return IntPolynomial(std::move(out));
}

namespace {

// Monic Euclidean remainder sequence over Q; returns the primitive integer
// gcd with positive leading coefficient.
IntPolynomial gcd_primitive(const IntPolynomial& a, const IntPolynomial& b) {
  RatPolynomial f(a), g(b);
  while (!g.is_zero()) {
    auto [q, r] = divmod(f, g);
    f = g;
    g = r;
    // Keep coefficients small: make g monic.
    if (!g.is_zero()) g = mul_scalar(g, 1 / g.leading());
  }
  // f is a rational multiple of the gcd; clear denominators.
  Integer den = 1;
  for (const auto& v : f.coeffs()) {
    Integer d = v.get_den();
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), d.get_mpz_t());
  }
  std::vector<Integer> c;
  c.reserve(f.coeffs().size());
  for (const auto& v : f.coeffs()) {
    Rational s = v * Rational(den);
    c.push_back(s.get_num());
  }
  return primitive_part(IntPolynomial(std::move(c)));
}

}  // namespace

IntPolynomial gcd_poly(const IntPolynomial& a, const IntPolynomial& b) {
  if (a.is_zero() && b.is_zero()) return IntPolynomial();
  if (a.is_zero()) return primitive_part(b);
  if (b.is_zero()) return primitive_part(a);
  IntPolynomial g = gcd_primitive(a, b);
  Integer cg;
  mpz_gcd(cg.get_mpz_t(), content(a).get_mpz_t(), content(b).get_mpz_t());
  return mul_scalar(g, cg);
}

IntPolynomial gcd_set(const std::vector<IntPolynomial>& members) {
  if (members.empty()) throw AllZero("gcd of an empty set");
  IntPolynomial g;
  Integer c = 0;
  bool any = false;
  for (const auto& p : members) {
    if (p.is_zero()) continue;
    any = true;
    Integer cp = content(p);
    mpz_gcd(c.get_mpz_t(), c.get_mpz_t(), cp.get_mpz_t());
    if (g.is_zero()) {
      g = primitive_part(p);
    } else if (g.degree() > 0) {
      g = gcd_poly(g, primitive_part(p));
    }
  }
  if (!any) throw AllZero("gcd of all-zero polynomial set");
  return mul_scalar(primitive_part(g), c);
}

std::vector<std::pair<IntPolynomial, int>> square_free_decomposition(
    const IntPolynomial& a) {
  if (a.is_zero()) throw Error("square-free decomposition of zero");
  std::vector<std::pair<IntPolynomial, int>> out;
  IntPolynomial p = primitive_part(a);
  if (p.degree() == 0) return out;
  // Yun's algorithm.
  IntPolynomial dp = derivative(p);
  IntPolynomial g = gcd_poly(p, dp);
  if (g.degree() == 0) {
    out.emplace_back(p, 1);
    return out;
  }
  IntPolynomial b = *divide_exact(p, g);
  IntPolynomial c = *divide_exact(dp, g);
  IntPolynomial d = sub(c, derivative(b));
  for (int mult = 1; b.degree() >= 1; ++mult) {
    IntPolynomial f = gcd_poly(b, d);
    if (f.degree() >= 1) out.emplace_back(f, mult);
    b = *divide_exact(b, f);
    c = *divide_exact(d, f);
    d = sub(c, derivative(b));
  }
  return out;
}

IntPolynomial square_free_part(const IntPolynomial& a) {
  IntPolynomial r = IntPolynomial::constant(1);
  for (const auto& [f, m] : square_free_decomposition(a)) r = mul(r, f);
  return r;
}

Integer l1_norm(const IntPolynomial& a) {
  Integer s = 0;
  for (const auto& v : a.coeffs()) s += ::abs(v);
  return s;
}

Integer naive_height(const RatPolynomial& a) {
  Integer h = 1;
  for (const auto& v : a.coeffs()) {
    Integer n = ::abs(v.get_num());
    if (n > h) h = n;
    if (v.get_den() > h) h = v.get_den();
  }
  return h;
}

Rational eval(const IntPolynomial& a, const Rational& x) {
  Rational r = 0;
  for (auto it = a.coeffs().rbegin(); it != a.coeffs().rend(); ++it)
    r = r * x + Rational(*it);
  return r;
}

Rational eval(const RatPolynomial& a, const Rational& x) {
  Rational r = 0;
  for (auto it = a.coeffs().rbegin(); it != a.coeffs().rend(); ++it)
    r = r * x + *it;
  return r;
}

int sign_at(const IntPolynomial& a, const Rational& x) {
  return sgn(eval(a, x));
}

IntervalScalar interval_eval_poly(const IntPolynomial& a,
                                  const IntervalScalar& x, mpfr_prec_t prec) {
  if (a.is_zero()) return IntervalScalar::from_int(0, prec);
  IntervalScalar r = IntervalScalar::from_integer(a.coeffs().back(), prec);
  for (auto it = a.coeffs().rbegin() + 1; it != a.coeffs().rend(); ++it) {
    r = r.mul(x).add(IntervalScalar::from_integer(*it, prec));
  }
  return r;
}

Rational cauchy_root_bound(const IntPolynomial& a) {
  if (a.is_zero()) throw Error("root bound of zero polynomial");
  Integer m = 0;
  for (const auto& v : a.coeffs()) {
    Integer av = ::abs(v);
    if (av > m) m = av;
  }
  Integer lead = ::abs(a.leading());
  Rational ratio(m, lead);
  ratio.canonicalize();
  return Rational(1) + ratio;
}

Integer signpoly_count(int d) {
  if (d < 0) throw OutOfRange("degree bound must be >= 0");
  Integer n;
  mpz_ui_pow_ui(n.get_mpz_t(), 3, static_cast<unsigned long>(d) + 1);
  return n;
}

SignPolynomial signpoly_from_index(const Integer& index, int d) {
  Integer i = index;
  std::vector<int8_t> t(static_cast<size_t>(d) + 1, 0);
  for (int j = 0; j <= d && i != 0; ++j) {
    Integer q, r;
    mpz_fdiv_qr_ui(q.get_mpz_t(), r.get_mpz_t(), i.get_mpz_t(), 3);
    t[static_cast<size_t>(j)] = static_cast<int8_t>(r.get_ui());
    i = q;
  }
  for (auto& v : t) v = static_cast<int8_t>(v - 1);
  return SignPolynomial(std::move(t));
}

SignPolyEnumerator::SignPolyEnumerator(int d, Integer begin, Integer end)
    : d_(d), next_(std::move(begin)), end_(std::move(end)) {}

std::optional<SignPolynomial> SignPolyEnumerator::next() {
  if (next_ >= end_) return std::nullopt;
  SignPolynomial p = signpoly_from_index(next_, d_);
  next_ += 1;
  return p;
}

void enumerate_signpolys(
    int d, const Integer& cap,
    const std::function<bool(const SignPolynomial&)>* filter,
    const std::function<void(const SignPolynomial&)>& fn) {
  Integer total = signpoly_count(d);
  if (total > cap && filter == nullptr)
    throw CapExceeded("sign polynomial enumeration of 3^" +
                      std::to_string(d + 1) + " items exceeds cap");
  SignPolyEnumerator en(d, 0, total);
  while (auto p = en.next()) {
    if (filter && !(*filter)(*p)) continue;
    fn(*p);
  }
}

}  // namespace bcl
