#pragma once
// Closed real intervals [lo, hi] with outward-rounded MPFR endpoints.

#include <mpfr.h>

#include <boost/multiprecision/gmp.hpp>
#include <string>

namespace retnet {

using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

class Interval {
 public:
  static constexpr mpfr_prec_t kPrecision = 256;

  Interval();
  explicit Interval(long value);
  explicit Interval(const BigInt& value);
  explicit Interval(const Rational& value);
  Interval(const Interval& other);
  Interval(Interval&& other) noexcept;
  Interval& operator=(Interval other) noexcept;
  ~Interval();

  static Interval Pi();
  static Interval E();
  static Interval Hull(const Interval& a, const Interval& b);

  friend Interval operator+(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a, const Interval& b);
  friend Interval operator*(const Interval& a, const Interval& b);
  // Throws Error(kDomain) if b contains zero.
  friend Interval operator/(const Interval& a, const Interval& b);
  Interval operator-() const;

  // Requires lo > 0.
  Interval Log() const;
  Interval Log2() const;
  Interval Exp() const;
  Interval Exp2() const;
  Interval Pow(unsigned long k) const;  // requires lo >= 0

  bool CertainlyLess(const Interval& other) const;     // hi < other.lo
  bool CertainlyLessEq(const Interval& other) const;   // hi <= other.lo
  bool Contains(const Rational& q) const;
  bool ContainsZero() const;
  bool IsExact() const;

  // Smallest integer >= every point, and largest integer <= every point.
  BigInt CeilHi() const;
  BigInt FloorLo() const;

  double lo_double() const;
  double hi_double() const;
  // Half-width, rounded up.
  double radius() const;
  // Midpoint with `digits` significant decimal digits.
  std::string MidString(int digits = 40) const;
  std::string ToString(int digits = 40) const;

 private:
  mpfr_t lo_;
  mpfr_t hi_;
};

// Certified lg(m!) and lg((2m-1)!!) for m >= 0.
Interval Log2Factorial(const BigInt& m);
Interval Log2DoubleFactorialOdd(const BigInt& m);

}  // namespace retnet
