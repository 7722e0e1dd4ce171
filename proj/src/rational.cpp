#include "bcl/rational.hpp"

#include <cctype>

#include "bcl/errors.hpp"

namespace bcl {

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw UsageError("empty rational literal");
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    std::string num = text.substr(0, slash);
    std::string den = text.substr(slash + 1);
    if (num.empty() || den.empty())
      throw UsageError("bad rational literal: " + text);
    Rational q;
    if (mpq_set_str(q.get_mpq_t(), (num + "/" + den).c_str(), 10) != 0)
      throw UsageError("bad rational literal: " + text);
    if (mpz_sgn(mpq_denref(q.get_mpq_t())) == 0)
      throw UsageError("zero denominator: " + text);
    q.canonicalize();
    return q;
  }
  auto dot = text.find('.');
  if (dot != std::string::npos) {
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    size_t frac_len = text.size() - dot - 1;
    if (digits.empty() || frac_len == 0)
      throw UsageError("bad decimal literal: " + text);
    Integer num;
    if (mpz_set_str(num.get_mpz_t(), digits.c_str(), 10) != 0)
      throw UsageError("bad decimal literal: " + text);
    Integer den = 1;
    for (size_t i = 0; i < frac_len; ++i) den *= 10;
    Rational q(num, den);
    q.canonicalize();
    return q;
  }
  Rational q;
  if (mpq_set_str(q.get_mpq_t(), text.c_str(), 10) != 0)
    throw UsageError("bad integer literal: " + text);
  q.canonicalize();
  return q;
}

std::string format_rational(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string format_integer(const Integer& n) { return n.get_str(); }

Integer integer_pow(const Integer& base, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

Rational rational_pow(const Rational& base, long e) {
  if (e == 0) return Rational(1);
  unsigned long a = e > 0 ? static_cast<unsigned long>(e)
                          : static_cast<unsigned long>(-e);
  Rational r(integer_pow(base.get_num(), a), integer_pow(base.get_den(), a));
  r.canonicalize();
  if (e < 0) {
    if (r == 0) throw OutOfRange("0 raised to a negative power");
    r = 1 / r;
  }
  return r;
}

}  // namespace bcl
