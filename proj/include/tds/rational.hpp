#pragma once

#include <gmpxx.h>

#include <compare>
#include <iosfwd>
#include <stdexcept>
#include <string>

namespace tds {

/// Raised for malformed user input (bad rational strings, bad instances, ...).
class input_error : public std::runtime_error {
 public:
  explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

/// Arbitrary-precision rational, always stored reduced with positive
/// denominator. Serialized as "num/den" ("num" alone when den == 1).
class Rational {
 public:
  Rational() : q_(0) {}
  Rational(long n) : q_(n) {}  // NOLINT: implicit by design
  Rational(long num, long den);
  Rational(const mpz_class& num, const mpz_class& den);
  explicit Rational(const mpz_class& n) : q_(n) {}
  explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

  static Rational parse(const std::string& text);

  const mpz_class& num() const { return q_.get_num(); }
  const mpz_class& den() const { return q_.get_den(); }
  const mpq_class& mpq() const { return q_; }

  bool is_zero() const { return sgn(q_) == 0; }
  bool is_negative() const { return sgn(q_) < 0; }
  bool is_positive() const { return sgn(q_) > 0; }
  bool is_integer() const { return q_.get_den() == 1; }

  Rational operator-() const { return Rational(mpq_class(-q_)); }
  Rational operator+(const Rational& o) const { return Rational(mpq_class(q_ + o.q_)); }
  Rational operator-(const Rational& o) const { return Rational(mpq_class(q_ - o.q_)); }
  Rational operator*(const Rational& o) const { return Rational(mpq_class(q_ * o.q_)); }
  Rational operator/(const Rational& o) const;

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  bool operator==(const Rational& o) const { return mpq_equal(q_.get_mpq_t(), o.q_.get_mpq_t()) != 0; }
  bool operator!=(const Rational& o) const { return !(*this == o); }
  bool operator<(const Rational& o) const { return mpq_cmp(q_.get_mpq_t(), o.q_.get_mpq_t()) < 0; }
  bool operator<=(const Rational& o) const { return mpq_cmp(q_.get_mpq_t(), o.q_.get_mpq_t()) <= 0; }
  bool operator>(const Rational& o) const { return o < *this; }
  bool operator>=(const Rational& o) const { return o <= *this; }

  Rational abs() const { return is_negative() ? -*this : *this; }
  Rational reciprocal() const;

  /// Largest integer <= *this.
  mpz_class floor() const;

  /// this^e for e >= 0.
  Rational pow(unsigned long e) const;

  std::string str() const;

 private:
  mpq_class q_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

/// Discount factor lambda = Q/P with 0 < Q < P, gcd(Q, P) = 1.
/// The exploration base is beta = 1/lambda = P/Q.
class DiscountFactor {
 public:
  explicit DiscountFactor(const Rational& value);
  static DiscountFactor parse(const std::string& text) { return DiscountFactor(Rational::parse(text)); }

  const Rational& value() const { return value_; }
  const mpz_class& q() const { return value_.num(); }
  const mpz_class& p() const { return value_.den(); }

  Rational base() const { return Rational(p(), q()); }
  Rational one_minus() const { return Rational(1) - value_; }

  /// True when lambda = 1/n: the gap state space stays over one denominator.
  bool integral_base() const { return q() == 1; }

  bool operator==(const DiscountFactor& o) const { return value_ == o.value_; }
  bool operator!=(const DiscountFactor& o) const { return !(*this == o); }

 private:
  Rational value_;
};

}  // namespace tds
