#pragma once

#include <cmath>
#include <iosfwd>
#include <string>

#include "contexture/rational.hpp"

namespace contexture {

/// Element of the quadratic extension field Q(sqrt 2), stored as
/// value = a + b*sqrt(2) with canonical Rational components.
/// Equality is componentwise; the representation is unique because
/// sqrt(2) is irrational.
class QSqrt2 {
public:
  QSqrt2() = default;
  QSqrt2(Rational a) : a_(std::move(a)) {}
  QSqrt2(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {}
  QSqrt2(long a) : a_(a) {}
  QSqrt2(long a, long b) : a_(a), b_(b) {}

  static QSqrt2 sqrt2() { return QSqrt2(0, 1); }

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }

  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }

  QSqrt2 operator-() const { return QSqrt2(-a_, -b_); }

  QSqrt2& operator+=(const QSqrt2& o) { a_ += o.a_; b_ += o.b_; return *this; }
  QSqrt2& operator-=(const QSqrt2& o) { a_ -= o.a_; b_ -= o.b_; return *this; }
  QSqrt2& operator*=(const QSqrt2& o) {
    // (a1 + b1 s)(a2 + b2 s) = a1 a2 + 2 b1 b2 + (a1 b2 + a2 b1) s
    Rational a = a_ * o.a_ + Rational(2) * b_ * o.b_;
    Rational b = a_ * o.b_ + o.a_ * b_;
    a_ = std::move(a);
    b_ = std::move(b);
    return *this;
  }

  friend QSqrt2 operator+(QSqrt2 x, const QSqrt2& y) { return x += y; }
  friend QSqrt2 operator-(QSqrt2 x, const QSqrt2& y) { return x -= y; }
  friend QSqrt2 operator*(QSqrt2 x, const QSqrt2& y) { return x *= y; }

  /// Multiply by a rational scalar.
  friend QSqrt2 operator*(const Rational& r, const QSqrt2& x) {
    return QSqrt2(r * x.a_, r * x.b_);
  }

  friend bool operator==(const QSqrt2& x, const QSqrt2& y) {
    return x.a_ == y.a_ && x.b_ == y.b_;
  }
  friend bool operator!=(const QSqrt2& x, const QSqrt2& y) { return !(x == y); }

  /// Exact sign of a + b*sqrt(2): never touches floating point.
  /// When a and b disagree in sign, the decision reduces to comparing
  /// a^2 with 2 b^2.
  int sign() const;

  double to_double() const { return a_.to_double() + b_.to_double() * std::sqrt(2.0); }

  std::string str() const;

  friend std::ostream& operator<<(std::ostream& os, const QSqrt2& x);

private:
  Rational a_;
  Rational b_;
};

/// Total order on field values (via sign of the difference), used for
/// canonical sorting of rays.
inline bool operator<(const QSqrt2& x, const QSqrt2& y) { return (x - y).sign() < 0; }

}  // namespace contexture
