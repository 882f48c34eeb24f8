#include "retnet/interval.hpp"

#include <gmp.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <memory>

#include "retnet/error.hpp"

namespace retnet {

namespace {

struct MpfrTemp {
  mpfr_t x;
  MpfrTemp() { mpfr_init2(x, Interval::kPrecision); }
  ~MpfrTemp() { mpfr_clear(x); }
  MpfrTemp(const MpfrTemp&) = delete;
  MpfrTemp& operator=(const MpfrTemp&) = delete;
};

std::string Format(const mpfr_t x, int digits, mpfr_rnd_t rnd) {
  char* raw = nullptr;
  mpfr_asprintf(&raw, rnd == MPFR_RNDD ? "%.*RDg" : (rnd == MPFR_RNDU ? "%.*RUg" : "%.*RNg"), digits, x);
  std::string out(raw);
  mpfr_free_str(raw);
  return out;
}

// Exact factorials are cheap up to here; beyond, Robbins' bounds are used.
constexpr unsigned long kExactFactorialLimit = 4096;

}  // namespace

Interval::Interval() {
  mpfr_init2(lo_, kPrecision);
  mpfr_init2(hi_, kPrecision);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

Interval::Interval(long value) : Interval() {
  mpfr_set_si(lo_, value, MPFR_RNDD);
  mpfr_set_si(hi_, value, MPFR_RNDU);
}

Interval::Interval(const BigInt& value) : Interval() {
  mpfr_set_z(lo_, value.backend().data(), MPFR_RNDD);
  mpfr_set_z(hi_, value.backend().data(), MPFR_RNDU);
}

Interval::Interval(const Rational& value) : Interval() {
  mpfr_set_q(lo_, value.backend().data(), MPFR_RNDD);
  mpfr_set_q(hi_, value.backend().data(), MPFR_RNDU);
}

Interval::Interval(const Interval& other) : Interval() {
  mpfr_set(lo_, other.lo_, MPFR_RNDD);
  mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& other) noexcept : Interval() {
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
}

Interval& Interval::operator=(Interval other) noexcept {
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
  return *this;
}

Interval::~Interval() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

Interval Interval::Pi() {
  Interval out;
  mpfr_const_pi(out.lo_, MPFR_RNDD);
  mpfr_const_pi(out.hi_, MPFR_RNDU);
  return out;
}

Interval Interval::Hull(const Interval& a, const Interval& b) {
  Interval out;
  mpfr_min(out.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_max(out.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return out;
}

Interval Interval::E() { return Interval(1L).Exp(); }

Interval operator+(const Interval& a, const Interval& b) {
  Interval out;
  mpfr_add(out.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_add(out.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return out;
}

Interval operator-(const Interval& a, const Interval& b) {
  Interval out;
  mpfr_sub(out.lo_, a.lo_, b.hi_, MPFR_RNDD);
  mpfr_sub(out.hi_, a.hi_, b.lo_, MPFR_RNDU);
  return out;
}

Interval Interval::operator-() const {
  Interval out;
  mpfr_neg(out.lo_, hi_, MPFR_RNDD);
  mpfr_neg(out.hi_, lo_, MPFR_RNDU);
  return out;
}

Interval operator*(const Interval& a, const Interval& b) {
  Interval out;
  MpfrTemp t;
  const std::array<std::pair<const __mpfr_struct*, const __mpfr_struct*>, 4> corners = {
      {{a.lo_, b.lo_}, {a.lo_, b.hi_}, {a.hi_, b.lo_}, {a.hi_, b.hi_}}};
  bool first = true;
  for (const auto& [x, y] : corners) {
    mpfr_mul(t.x, x, y, MPFR_RNDD);
    if (first || mpfr_less_p(t.x, out.lo_)) mpfr_set(out.lo_, t.x, MPFR_RNDD);
    mpfr_mul(t.x, x, y, MPFR_RNDU);
    if (first || mpfr_greater_p(t.x, out.hi_)) mpfr_set(out.hi_, t.x, MPFR_RNDU);
    first = false;
  }
  return out;
}

Interval operator/(const Interval& a, const Interval& b) {
  if (b.ContainsZero()) throw Error(ErrorCode::kDomain, "interval division by an interval containing 0");
  Interval inv;
  // 1/b is monotone decreasing on either sign.
  mpfr_ui_div(inv.lo_, 1, b.hi_, MPFR_RNDD);
  mpfr_ui_div(inv.hi_, 1, b.lo_, MPFR_RNDU);
  return a * inv;
}

Interval Interval::Log() const {
  if (mpfr_sgn(lo_) <= 0) throw Error(ErrorCode::kDomain, "log of a non-positive interval");
  Interval out;
  mpfr_log(out.lo_, lo_, MPFR_RNDD);
  mpfr_log(out.hi_, hi_, MPFR_RNDU);
  return out;
}

Interval Interval::Log2() const {
  if (mpfr_sgn(lo_) <= 0) throw Error(ErrorCode::kDomain, "lg of a non-positive interval");
  Interval out;
  mpfr_log2(out.lo_, lo_, MPFR_RNDD);
  mpfr_log2(out.hi_, hi_, MPFR_RNDU);
  return out;
}

Interval Interval::Exp() const {
  Interval out;
  mpfr_exp(out.lo_, lo_, MPFR_RNDD);
  mpfr_exp(out.hi_, hi_, MPFR_RNDU);
  return out;
}

Interval Interval::Exp2() const {
  Interval out;
  mpfr_exp2(out.lo_, lo_, MPFR_RNDD);
  mpfr_exp2(out.hi_, hi_, MPFR_RNDU);
  return out;
}

Interval Interval::Pow(unsigned long k) const {
  if (mpfr_sgn(lo_) < 0) throw Error(ErrorCode::kDomain, "power of an interval with negative points");
  Interval out;
  mpfr_pow_ui(out.lo_, lo_, k, MPFR_RNDD);
  mpfr_pow_ui(out.hi_, hi_, k, MPFR_RNDU);
  return out;
}

bool Interval::CertainlyLess(const Interval& other) const { return mpfr_less_p(hi_, other.lo_) != 0; }
bool Interval::CertainlyLessEq(const Interval& other) const { return mpfr_lessequal_p(hi_, other.lo_) != 0; }

bool Interval::Contains(const Rational& q) const {
  return mpfr_cmp_q(lo_, q.backend().data()) <= 0 && mpfr_cmp_q(hi_, q.backend().data()) >= 0;
}

bool Interval::ContainsZero() const { return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0; }
bool Interval::IsExact() const { return mpfr_equal_p(lo_, hi_) != 0; }

BigInt Interval::CeilHi() const {
  BigInt out;
  mpfr_get_z(out.backend().data(), hi_, MPFR_RNDU);
  return out;
}

BigInt Interval::FloorLo() const {
  BigInt out;
  mpfr_get_z(out.backend().data(), lo_, MPFR_RNDD);
  return out;
}

double Interval::lo_double() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double Interval::hi_double() const { return mpfr_get_d(hi_, MPFR_RNDU); }

double Interval::radius() const {
  MpfrTemp t;
  mpfr_sub(t.x, hi_, lo_, MPFR_RNDU);
  mpfr_div_2ui(t.x, t.x, 1, MPFR_RNDU);
  return mpfr_get_d(t.x, MPFR_RNDU);
}

std::string Interval::MidString(int digits) const {
  MpfrTemp t;
  mpfr_add(t.x, lo_, hi_, MPFR_RNDN);
  mpfr_div_2ui(t.x, t.x, 1, MPFR_RNDN);
  return Format(t.x, digits, MPFR_RNDN);
}

std::string Interval::ToString(int digits) const {
  if (IsExact()) return Format(lo_, digits, MPFR_RNDN);
  return "[" + Format(lo_, digits, MPFR_RNDD) + ", " + Format(hi_, digits, MPFR_RNDU) + "]";
}

Interval Log2Factorial(const BigInt& m) {
  if (m < 0) throw Error(ErrorCode::kDomain, "factorial of a negative number");
  if (m <= kExactFactorialLimit) {
    BigInt f;
    mpz_fac_ui(f.backend().data(), m.convert_to<unsigned long>());
    return Interval(f).Log2();
  }
  // Robbins: ln m! = ln sqrt(2 pi) + (m + 1/2) ln m - m + theta,
  // 1/(12m + 1) < theta < 1/(12m).
  const Interval mi(m);
  const Interval half(Rational(1, 2));
  Interval ln = half * (Interval(2L) * Interval::Pi()).Log() + (mi + half) * mi.Log() - mi;
  const Interval theta_lo = Interval(1L) / (Interval(12L) * mi + Interval(1L));
  const Interval theta_hi = Interval(1L) / (Interval(12L) * mi);
  const Interval lo = ln + theta_lo;
  const Interval hi = ln + theta_hi;
  return Interval::Hull(lo, hi) / Interval(2L).Log();
}

Interval Log2DoubleFactorialOdd(const BigInt& m) {
  if (m < 0) throw Error(ErrorCode::kDomain, "double factorial below (-1)!!");
  if (m <= kExactFactorialLimit) {
    if (m == 0) return Interval(0L);
    BigInt f;
    mpz_2fac_ui(f.backend().data(), 2 * m.convert_to<unsigned long>() - 1);
    return Interval(f).Log2();
  }
  // (2m-1)!! = (2m)! / (2^m m!)
  return Log2Factorial(2 * m) - Interval(m) - Log2Factorial(m);
}

}  // namespace retnet
