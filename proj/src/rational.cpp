#include "tds/rational.hpp"

#include <cctype>
#include <ostream>

namespace tds {

namespace {

bool is_integer_literal(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

}  // namespace

Rational::Rational(long num, long den) : Rational(mpz_class(num), mpz_class(den)) {}

Rational::Rational(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw input_error("rational with zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rational Rational::parse(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) {
    if (!is_integer_literal(text)) throw input_error("bad rational: '" + text + "'");
    return Rational(mpz_class(text));
  }
  const std::string ns = text.substr(0, slash);
  const std::string ds = text.substr(slash + 1);
  if (!is_integer_literal(ns) || !is_integer_literal(ds))
    throw input_error("bad rational: '" + text + "'");
  mpz_class den(ds);
  if (den == 0) throw input_error("bad rational (zero denominator): '" + text + "'");
  return Rational(mpz_class(ns), den);
}

Rational Rational::operator/(const Rational& o) const {
  if (o.is_zero()) throw input_error("division by zero");
  return Rational(mpq_class(q_ / o.q_));
}

Rational Rational::reciprocal() const {
  if (is_zero()) throw input_error("reciprocal of zero");
  return Rational(den(), num());
}

mpz_class Rational::floor() const {
  mpz_class out;
  mpz_fdiv_q(out.get_mpz_t(), num().get_mpz_t(), den().get_mpz_t());
  return out;
}

Rational Rational::pow(unsigned long e) const {
  mpz_class n, d;
  mpz_pow_ui(n.get_mpz_t(), num().get_mpz_t(), e);
  mpz_pow_ui(d.get_mpz_t(), den().get_mpz_t(), e);
  return Rational(n, d);
}

std::string Rational::str() const {
  if (is_integer()) return num().get_str();
  return num().get_str() + "/" + den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

DiscountFactor::DiscountFactor(const Rational& value) : value_(value) {
  if (!(value > Rational(0) && value < Rational(1)))
    throw input_error("discount factor must satisfy 0 < lambda < 1, got " + value.str());
}

}  // namespace tds
