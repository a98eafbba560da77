#include "dyncomp/bigfloat.hpp"

#include <algorithm>
#include <cstdio>
#include <cmath>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace dyncomp {

BigFloat::BigFloat(mpfr_prec_t bits) {
  mpfr_init2(value_, bits);
  mpfr_set_zero(value_, 1);
}

BigFloat::BigFloat(double v, mpfr_prec_t bits) {
  mpfr_init2(value_, bits);
  mpfr_set_d(value_, v, MPFR_RNDN);
}

BigFloat::BigFloat(long v, mpfr_prec_t bits) {
  mpfr_init2(value_, bits);
  mpfr_set_si(value_, v, MPFR_RNDN);
}

BigFloat::BigFloat(const BigInt& v, mpfr_prec_t bits) {
  mpfr_init2(value_, bits);
  mpfr_set_z(value_, v.get_mpz_t(), MPFR_RNDN);
}

BigFloat::BigFloat(const BigRational& v, mpfr_prec_t bits) {
  mpfr_init2(value_, bits);
  mpfr_set_q(value_, v.get_mpq_t(), MPFR_RNDN);
}

BigFloat::BigFloat(const BigFloat& other) {
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(value_); }

BigFloat BigFloat::pi(mpfr_prec_t bits) {
  BigFloat r(bits);
  mpfr_const_pi(r.value_, MPFR_RNDN);
  return r;
}

void BigFloat::widen_to(mpfr_prec_t bits) {
  if (bits > precision()) mpfr_prec_round(value_, bits, MPFR_RNDN);
}

std::string BigFloat::to_string(int digits) const {
  if (mpfr_nan_p(value_)) return "nan";
  if (mpfr_inf_p(value_)) return mpfr_sgn(value_) > 0 ? "inf" : "-inf";
  char* raw = nullptr;
  mpfr_asprintf(&raw, "%.*Re", std::max(digits - 1, 0), value_);
  std::string out(raw);
  mpfr_free_str(raw);
  return out;
}

BigInt BigFloat::floor_to_int() const {
  BigInt r;
  mpfr_get_z(r.get_mpz_t(), value_, MPFR_RNDD);
  return r;
}

BigFloat& BigFloat::operator+=(const BigFloat& o) {
  widen_to(o.precision());
  mpfr_add(value_, value_, o.value_, MPFR_RNDN);
  return *this;
}

BigFloat& BigFloat::operator-=(const BigFloat& o) {
  widen_to(o.precision());
  mpfr_sub(value_, value_, o.value_, MPFR_RNDN);
  return *this;
}

BigFloat& BigFloat::operator*=(const BigFloat& o) {
  widen_to(o.precision());
  mpfr_mul(value_, value_, o.value_, MPFR_RNDN);
  return *this;
}

BigFloat& BigFloat::operator/=(const BigFloat& o) {
  widen_to(o.precision());
  mpfr_div(value_, value_, o.value_, MPFR_RNDN);
  return *this;
}

BigFloat BigFloat::operator-() const {
  BigFloat r(*this);
  mpfr_neg(r.value_, r.value_, MPFR_RNDN);
  return r;
}

BigFloat abs(const BigFloat& x) {
  BigFloat r(x);
  mpfr_abs(r.get(), r.get(), MPFR_RNDN);
  return r;
}

BigFloat sqrt(const BigFloat& x) {
  BigFloat r(x.precision());
  mpfr_sqrt(r.get(), x.get(), MPFR_RNDN);
  return r;
}

BigFloat log(const BigFloat& x) {
  BigFloat r(x.precision());
  mpfr_log(r.get(), x.get(), MPFR_RNDN);
  return r;
}

BigFloat exp(const BigFloat& x) {
  BigFloat r(x.precision());
  mpfr_exp(r.get(), x.get(), MPFR_RNDN);
  return r;
}

BigFloat sin(const BigFloat& x) {
  BigFloat r(x.precision());
  mpfr_sin(r.get(), x.get(), MPFR_RNDN);
  return r;
}

BigFloat cos(const BigFloat& x) {
  BigFloat r(x.precision());
  mpfr_cos(r.get(), x.get(), MPFR_RNDN);
  return r;
}

BigFloat max(const BigFloat& a, const BigFloat& b) { return a < b ? b : a; }
BigFloat min(const BigFloat& a, const BigFloat& b) { return b < a ? b : a; }

BigFloat pow2(long e, mpfr_prec_t bits) {
  BigFloat r(bits);
  mpfr_set_ui_2exp(r.get(), 1, e, MPFR_RNDN);
  return r;
}

namespace {

std::mutex tangent_mutex;
std::vector<BigInt> tangent_cache;  // tangent_cache[n-1] = T_n

// Brent-Harvey in-place recurrence for tangent numbers T_1..T_n.
std::vector<BigInt> tangent_numbers(int n) {
  std::vector<BigInt> t(static_cast<std::size_t>(n) + 1);
  t[1] = 1;
  for (int k = 2; k <= n; ++k) t[k] = (k - 1) * t[k - 1];
  for (int k = 2; k <= n; ++k)
    for (int j = k; j <= n; ++j) t[j] = (j - k) * t[j - 1] + (j - k + 2) * t[j];
  t.erase(t.begin());
  return t;
}

}  // namespace

BigRational bernoulli_even(int n) {
  if (n < 1) throw std::invalid_argument("bernoulli_even needs n >= 1");
  BigInt tn;
  {
    std::lock_guard lock(tangent_mutex);
    if (static_cast<int>(tangent_cache.size()) < n) tangent_cache = tangent_numbers(std::max(n, 2 * static_cast<int>(tangent_cache.size())));
    tn = tangent_cache[static_cast<std::size_t>(n - 1)];
  }
  BigInt four_n;
  mpz_ui_pow_ui(four_n.get_mpz_t(), 4, static_cast<unsigned long>(n));
  BigRational b(BigInt(2 * n) * tn, four_n * (four_n - 1));
  b.canonicalize();
  return n % 2 == 1 ? b : BigRational(-b);
}

BigFloat log_gamma(const BigFloat& x) {
  if (x.sign() <= 0) throw std::domain_error("log_gamma needs x > 0");
  const mpfr_prec_t bits = x.precision();
  const mpfr_prec_t wp = bits + 32;
  BigFloat z(wp);
  mpfr_set(z.get(), x.get(), MPFR_RNDN);

  // Shift to z >= wp: the Stirling tail then drops below 2^-wp within ~wp/12 terms.
  const double target = static_cast<double>(wp) + 10;
  BigFloat shift_product(1L, wp);
  bool shifted = false;
  while (z.to_double() < target) {
    shift_product *= z;
    z += BigFloat(1L, wp);
    shifted = true;
  }

  bernoulli_even(static_cast<int>(wp / 12) + 8);  // fill the cache once
  const BigFloat half(0.5, wp);
  BigFloat sum = (z - half) * log(z) - z + half * log(BigFloat(2L, wp) * BigFloat::pi(wp));
  const BigFloat z2 = z * z;
  BigFloat zpow = z;  // z^(2n-1)
  const BigFloat eps = pow2(-static_cast<long>(wp), wp);
  for (int n = 1;; ++n) {
    const BigFloat b(bernoulli_even(n), wp);
    BigFloat term = b / (BigFloat(static_cast<long>(2 * n) * (2 * n - 1), wp) * zpow);
    sum += term;
    if (abs(term) <= eps * max(abs(sum), BigFloat(1L, wp))) break;
    if (n > 4 * static_cast<int>(wp)) throw std::runtime_error("log_gamma series did not converge");
    zpow *= z2;
  }
  if (shifted) sum -= log(shift_product);
  BigFloat out(bits);
  mpfr_set(out.get(), sum.get(), MPFR_RNDN);
  return out;
}

BigComplex& BigComplex::operator+=(const BigComplex& o) {
  re += o.re;
  im += o.im;
  return *this;
}

BigComplex& BigComplex::operator-=(const BigComplex& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}

BigComplex& BigComplex::operator*=(const BigComplex& o) {
  BigFloat r = re * o.re - im * o.im;
  BigFloat i = re * o.im + im * o.re;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

BigComplex& BigComplex::operator/=(const BigComplex& o) {
  const BigFloat den = o.re * o.re + o.im * o.im;
  BigFloat r = (re * o.re + im * o.im) / den;
  BigFloat i = (im * o.re - re * o.im) / den;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

BigFloat norm(const BigComplex& z) { return z.re * z.re + z.im * z.im; }

BigFloat abs(const BigComplex& z) {
  BigFloat r(z.precision());
  mpfr_hypot(r.get(), z.re.get(), z.im.get(), MPFR_RNDN);
  return r;
}

}  // namespace dyncomp
