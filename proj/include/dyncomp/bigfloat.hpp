// Minimal RAII value type over MPFR with per-value precision.
//
// Binary operations round to the larger precision of the two operands, so a
// computation started at p bits stays at p bits without any global state.
#pragma once

#include <mpfr.h>

#include <string>

#include "dyncomp/arith.hpp"

namespace dyncomp {

class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t bits = 64);
  BigFloat(double v, mpfr_prec_t bits);
  BigFloat(long v, mpfr_prec_t bits);
  BigFloat(const BigInt& v, mpfr_prec_t bits);
  BigFloat(const BigRational& v, mpfr_prec_t bits);
  BigFloat(const BigFloat& other);
  BigFloat(BigFloat&& other) noexcept;
  BigFloat& operator=(const BigFloat& other);
  BigFloat& operator=(BigFloat&& other) noexcept;
  ~BigFloat();

  static BigFloat pi(mpfr_prec_t bits);

  mpfr_prec_t precision() const { return mpfr_get_prec(value_); }
  mpfr_srcptr get() const { return value_; }
  mpfr_ptr get() { return value_; }

  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  /// Decimal scientific notation with `digits` significant digits.
  std::string to_string(int digits = 20) const;
  BigInt floor_to_int() const;
  bool is_zero() const { return mpfr_zero_p(value_) != 0; }
  int sign() const { return mpfr_sgn(value_); }

  BigFloat& operator+=(const BigFloat& o);
  BigFloat& operator-=(const BigFloat& o);
  BigFloat& operator*=(const BigFloat& o);
  BigFloat& operator/=(const BigFloat& o);
  BigFloat operator-() const;

  friend BigFloat operator+(BigFloat a, const BigFloat& b) { return a += b; }
  friend BigFloat operator-(BigFloat a, const BigFloat& b) { return a -= b; }
  friend BigFloat operator*(BigFloat a, const BigFloat& b) { return a *= b; }
  friend BigFloat operator/(BigFloat a, const BigFloat& b) { return a /= b; }

  friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.value_, b.value_) != 0; }
  friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_greater_p(a.value_, b.value_) != 0; }
  friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_lessequal_p(a.value_, b.value_) != 0; }
  friend bool operator>=(const BigFloat& a, const BigFloat& b) { return mpfr_greaterequal_p(a.value_, b.value_) != 0; }
  friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.value_, b.value_) != 0; }

 private:
  void widen_to(mpfr_prec_t bits);
  mpfr_t value_;
};

BigFloat abs(const BigFloat& x);
BigFloat sqrt(const BigFloat& x);
BigFloat log(const BigFloat& x);
BigFloat exp(const BigFloat& x);
BigFloat max(const BigFloat& a, const BigFloat& b);
BigFloat min(const BigFloat& a, const BigFloat& b);
/// 2^e at the given precision.
BigFloat pow2(long e, mpfr_prec_t bits);
BigFloat sin(const BigFloat& x);
BigFloat cos(const BigFloat& x);

/// log Γ(x) for x > 0 by the Stirling series, after shifting x upward so the
/// asymptotic tail is below 2^-precision. Throws std::domain_error for x <= 0.
BigFloat log_gamma(const BigFloat& x);

/// Bernoulli number B_{2n}, n >= 1, exact (via tangent numbers; cached).
BigRational bernoulli_even(int n);

/// Complex number over BigFloat; just the operations the root finder needs.
struct BigComplex {
  BigFloat re;
  BigFloat im;

  explicit BigComplex(mpfr_prec_t bits = 64) : re(bits), im(bits) {}
  BigComplex(BigFloat r, BigFloat i) : re(std::move(r)), im(std::move(i)) {}

  mpfr_prec_t precision() const { return re.precision(); }

  BigComplex& operator+=(const BigComplex& o);
  BigComplex& operator-=(const BigComplex& o);
  BigComplex& operator*=(const BigComplex& o);
  BigComplex& operator/=(const BigComplex& o);

  friend BigComplex operator+(BigComplex a, const BigComplex& b) { return a += b; }
  friend BigComplex operator-(BigComplex a, const BigComplex& b) { return a -= b; }
  friend BigComplex operator*(BigComplex a, const BigComplex& b) { return a *= b; }
  friend BigComplex operator/(BigComplex a, const BigComplex& b) { return a /= b; }
};

BigFloat abs(const BigComplex& z);
BigFloat norm(const BigComplex& z);

}  // namespace dyncomp
