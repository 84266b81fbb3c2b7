#include "contexture/qsqrt2.hpp"
#include "contexture/rational.hpp"

#include <ostream>
#include <sstream>

namespace contexture {

Rational Rational::parse(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      return Rational(mpq_class(mpz_class(s)));
    }
    mpz_class num(s.substr(0, slash));
    mpz_class den(s.substr(slash + 1));
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    mpq_class q(num, den);
    q.canonicalize();
    return Rational(q);
  } catch (const std::invalid_argument&) {
    throw std::domain_error("Rational: cannot parse '" + s + "'");
  }
}

std::string Rational::str() const {
  std::ostringstream os;
  os << *this;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  os << r.q_.get_num();
  if (r.q_.get_den() != 1) os << '/' << r.q_.get_den();
  return os;
}

int QSqrt2::sign() const {
  int sa = a_.sign();
  int sb = b_.sign();
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // Opposite signs: |a| vs |b| sqrt(2) decided by a^2 vs 2 b^2.
  Rational a2 = a_ * a_;
  Rational b2 = Rational(2) * b_ * b_;
  if (a2 == b2) return 0;  // impossible for nonzero b (sqrt 2 irrational)
  return a2 > b2 ? sa : sb;
}

std::string QSqrt2::str() const {
  std::ostringstream os;
  os << *this;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const QSqrt2& x) {
  if (x.b().is_zero()) return os << x.a();
  return os << x.a() << ':' << x.b();
}

}  // namespace contexture
