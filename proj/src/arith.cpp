#include "dyncomp/arith.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace dyncomp {

BigRational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  BigRational r(num, den);
  r.canonicalize();
  return r;
}

bool is_integer(const BigRational& x) { return x.get_den() == 1; }

BigRational binomial_coeff(const BigRational& x, unsigned long i) {
  BigRational result = 1;
  for (unsigned long j = 0; j < i; ++j) {
    result *= x - BigRational(static_cast<long>(j));
    result /= BigRational(static_cast<long>(j + 1));
  }
  return result;
}

BigInt binomial_coeff(const BigInt& n, unsigned long i) {
  if (n >= 0) {
    BigInt r;
    if (n.fits_ulong_p()) {
      mpz_bin_uiui(r.get_mpz_t(), n.get_ui(), i);
    } else {
      mpz_bin_ui(r.get_mpz_t(), n.get_mpz_t(), i);
    }
    return r;
  }
  BigInt r;
  mpz_bin_ui(r.get_mpz_t(), n.get_mpz_t(), i);
  return r;
}

// ---------------------------------------------------------------------------
// BinomialPoly

BinomialPoly::BinomialPoly(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

BigInt BinomialPoly::operator()(const BigInt& x) const {
  // C(x, i+1) = C(x, i) * (x - i) / (i + 1), division exact.
  BigInt sum = 0;
  BigInt basis = 1;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (i > 0) {
      basis *= x - static_cast<unsigned long>(i - 1);
      mpz_divexact_ui(basis.get_mpz_t(), basis.get_mpz_t(), static_cast<unsigned long>(i));
    }
    sum += coeffs_[i] * basis;
  }
  return sum;
}

BigRational BinomialPoly::operator()(const BigRational& x) const {
  if (is_integer(x)) return BigRational((*this)(BigInt(x.get_num())));
  BigRational sum = 0;
  BigRational basis = 1;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (i > 0) {
      basis *= x - BigRational(static_cast<long>(i - 1));
      basis /= BigRational(static_cast<long>(i));
    }
    sum += BigRational(coeffs_[i]) * basis;
  }
  return sum;
}

std::vector<BigInt> BinomialPoly::values(long from, long to) const {
  std::vector<BigInt> out;
  if (to < from) return out;
  out.reserve(static_cast<std::size_t>(to - from + 1));
  for (long x = from; x <= to; ++x) out.push_back((*this)(x));
  return out;
}

BinomialPoly BinomialPoly::operator+(const BinomialPoly& other) const {
  std::vector<BigInt> c(std::max(coeffs_.size(), other.coeffs_.size()), BigInt(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) c[i] += coeffs_[i];
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) c[i] += other.coeffs_[i];
  return BinomialPoly(std::move(c));
}

BinomialPoly BinomialPoly::operator-() const {
  std::vector<BigInt> c = coeffs_;
  for (auto& a : c) a = -a;
  return BinomialPoly(std::move(c));
}

BinomialPoly BinomialPoly::operator-(const BinomialPoly& other) const { return *this + (-other); }

BinomialPoly BinomialPoly::plus_constant(const BigInt& c) const {
  std::vector<BigInt> out = coeffs_;
  if (out.empty()) out.emplace_back(0);
  out[0] += c;
  return BinomialPoly(std::move(out));
}

// ---------------------------------------------------------------------------
// RationalPoly

RationalPoly::RationalPoly(std::vector<BigRational> coeffs) : coeffs_(std::move(coeffs)) {
  for (auto& c : coeffs_) c.canonicalize();
  trim();
}

void RationalPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

RationalPoly RationalPoly::constant(const BigRational& c) { return RationalPoly({c}); }

RationalPoly RationalPoly::identity() { return RationalPoly({BigRational(0), BigRational(1)}); }

BigRational RationalPoly::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(coeffs_.size())) return 0;
  return coeffs_[static_cast<std::size_t>(i)];
}

BigRational RationalPoly::operator()(const BigRational& x) const {
  if (coeffs_.empty()) return 0;
  // Integer Horner on sum n_i p^i q^(d-i) over the common denominator.
  BigInt den = 1;
  for (const auto& c : coeffs_) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  const BigInt& p = x.get_num();
  const BigInt& q = x.get_den();
  BigInt acc = coeffs_.back().get_num() * (den / coeffs_.back().get_den());
  BigInt qpow = 1;
  for (std::size_t i = coeffs_.size() - 1; i-- > 0;) {
    qpow *= q;
    acc *= p;
    if (coeffs_[i] != 0) acc += coeffs_[i].get_num() * (den / coeffs_[i].get_den()) * qpow;
  }
  return make_rational(acc, den * qpow);
}

RationalPoly& RationalPoly::operator+=(const RationalPoly& other) {
  if (coeffs_.size() < other.coeffs_.size()) coeffs_.resize(other.coeffs_.size(), BigRational(0));
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  trim();
  return *this;
}

RationalPoly& RationalPoly::operator-=(const RationalPoly& other) {
  if (coeffs_.size() < other.coeffs_.size()) coeffs_.resize(other.coeffs_.size(), BigRational(0));
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  trim();
  return *this;
}

RationalPoly RationalPoly::operator+(const RationalPoly& other) const {
  RationalPoly r = *this;
  r += other;
  return r;
}

RationalPoly RationalPoly::operator-(const RationalPoly& other) const {
  RationalPoly r = *this;
  r -= other;
  return r;
}

RationalPoly RationalPoly::operator-() const {
  RationalPoly r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

RationalPoly RationalPoly::operator*(const RationalPoly& other) const {
  if (is_zero() || other.is_zero()) return {};
  std::vector<BigRational> c(coeffs_.size() + other.coeffs_.size() - 1, BigRational(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < other.coeffs_.size(); ++j) c[i + j] += coeffs_[i] * other.coeffs_[j];
  }
  return RationalPoly(std::move(c));
}

RationalPoly RationalPoly::operator*(const BigRational& s) const {
  if (s == 0) return {};
  RationalPoly r = *this;
  for (auto& c : r.coeffs_) c *= s;
  return r;
}

RationalPoly RationalPoly::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<BigRational> c(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) c[i - 1] = coeffs_[i] * static_cast<long>(i);
  return RationalPoly(std::move(c));
}

RationalPoly RationalPoly::shift(const BigRational& s) const {
  // Taylor shift by synthetic division, O(d^2). Work over a common
  // denominator so the inner loop runs on integers.
  if (coeffs_.size() <= 1 || s == 0) return *this;
  BigInt den = 1;
  for (const auto& c : coeffs_) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  const BigInt p = s.get_num();
  const BigInt q = s.get_den();
  const std::size_t n = coeffs_.size();
  // g(y) = q^{n-1} * den * f((y + p)/q) evaluated as a polynomial in y, then
  // f(x + s) = g(q x) / (q^{n-1} den).
  std::vector<BigInt> a(n);
  BigInt qpow = 1;
  for (std::size_t i = n; i-- > 0;) {
    BigInt scaled = den / coeffs_[i].get_den() * coeffs_[i].get_num();
    a[i] = scaled * qpow;
    qpow *= q;
  }
  // a[i] = den * c_i * q^{n-1-i}; now h(y) = sum a_i y^i with y -> y + p.
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = n - 1; j-- > i;) a[j] += p * a[j + 1];
  }
  std::vector<BigRational> out(n);
  BigInt qi = 1;
  BigInt total_q = 1;
  mpz_pow_ui(total_q.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(n - 1));
  for (std::size_t i = 0; i < n; ++i) {
    // Coefficient of x^i: a[i] * q^i / (q^{n-1} den).
    out[i] = BigRational(a[i] * qi, total_q * den);
    qi *= q;
  }
  return RationalPoly(std::move(out));
}

RationalPoly RationalPoly::compose(const RationalPoly& inner) const {
  RationalPoly acc;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = acc * inner;
    acc += RationalPoly::constant(*it);
  }
  return acc;
}

RationalPoly RationalPoly::monic() const {
  if (is_zero()) return {};
  return *this * (BigRational(1) / leading());
}

PolyDivision divmod(const RationalPoly& num, const RationalPoly& den) {
  if (den.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<BigRational> rem = num.coeffs();
  const auto& d = den.coeffs();
  const int dd = den.degree();
  if (num.degree() < dd) return {RationalPoly(), num};
  std::vector<BigRational> quot(static_cast<std::size_t>(num.degree() - dd + 1), BigRational(0));
  const BigRational lead_inv = BigRational(1) / den.leading();
  for (int i = num.degree(); i >= dd; --i) {
    const BigRational c = rem[static_cast<std::size_t>(i)] * lead_inv;
    quot[static_cast<std::size_t>(i - dd)] = c;
    if (c == 0) continue;
    for (int j = 0; j <= dd; ++j) rem[static_cast<std::size_t>(i - dd + j)] -= c * d[static_cast<std::size_t>(j)];
  }
  rem.resize(static_cast<std::size_t>(dd));
  return {RationalPoly(std::move(quot)), RationalPoly(std::move(rem))};
}

namespace {

// Primitive integer polynomial with positive leading coefficient, same roots.
std::vector<BigInt> primitive_part(const RationalPoly& f) {
  BigInt den = 1;
  for (const auto& c : f.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  std::vector<BigInt> out;
  out.reserve(f.coeffs().size());
  BigInt content = 0;
  for (const auto& c : f.coeffs()) {
    out.push_back(den / c.get_den() * c.get_num());
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), out.back().get_mpz_t());
  }
  if (content == 0) return {};
  if (out.back() < 0) content = -content;
  for (auto& c : out) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), content.get_mpz_t());
  return out;
}

RationalPoly from_integers(const std::vector<BigInt>& c) {
  std::vector<BigRational> r(c.begin(), c.end());
  return RationalPoly(std::move(r));
}

}  // namespace

RationalPoly gcd(const RationalPoly& a, const RationalPoly& b) {
  // Primitive pseudo-remainder sequence: integer arithmetic with content
  // removal after every step keeps coefficient growth in check.
  std::vector<BigInt> u = primitive_part(a);
  std::vector<BigInt> v = primitive_part(b);
  if (u.size() < v.size()) std::swap(u, v);
  while (!v.empty()) {
    // r = prem(u, v)
    std::vector<BigInt> r = u;
    const BigInt& lv = v.back();
    const std::size_t dv = v.size() - 1;
    while (r.size() >= v.size()) {
      const BigInt lr = r.back();
      const std::size_t shift = r.size() - v.size();
      for (auto& c : r) c *= lv;
      for (std::size_t j = 0; j <= dv; ++j) r[shift + j] -= lr * v[j];
      while (!r.empty() && r.back() == 0) r.pop_back();
    }
    u = std::move(v);
    v = primitive_part(from_integers(r));
  }
  if (u.empty()) return {};
  return from_integers(u).monic();
}

RationalPoly squarefree_part(const RationalPoly& f) {
  if (f.degree() <= 0) return f.monic();
  const RationalPoly g = gcd(f, f.derivative());
  return divmod(f, g).quotient.monic();
}

BigRational eval(const BinomialPoly& f, const BigRational& x) { return f(x); }
BigRational eval(const RationalPoly& f, const BigRational& x) { return f(x); }
BigRational eval(const Polynomial& f, const BigRational& x) {
  return std::visit([&](const auto& p) { return eval(p, x); }, f);
}

BinomialPoly interpolate(std::span<const BigInt> values, long start) {
  // Newton coefficients at base `start`: a_i = Delta^i f(start).
  std::vector<BigInt> diff(values.begin(), values.end());
  const std::size_t n = diff.size();
  std::vector<BigInt> newton(n);
  for (std::size_t i = 0; i < n; ++i) {
    newton[i] = diff[0];
    for (std::size_t j = 0; j + 1 < n - i; ++j) diff[j] = diff[j + 1] - diff[j];
  }
  if (start == 0) return BinomialPoly(std::move(newton));
  // Vandermonde: C(x - s, i) = sum_j C(x, j) C(-s, i - j).
  std::vector<BigInt> shift_binom(n);
  for (std::size_t t = 0; t < n; ++t) shift_binom[t] = binomial_coeff(BigInt(-start), static_cast<unsigned long>(t));
  std::vector<BigInt> out(n, BigInt(0));
  for (std::size_t i = 0; i < n; ++i) {
    if (newton[i] == 0) continue;
    for (std::size_t j = 0; j <= i; ++j) out[j] += newton[i] * shift_binom[i - j];
  }
  return BinomialPoly(std::move(out));
}

RationalPoly interpolate(std::span<const BigRational> values, const BigRational& start) {
  std::vector<BigRational> diff(values.begin(), values.end());
  const std::size_t n = diff.size();
  RationalPoly result;
  // basis_i(x) = C(x - start, i) in monomial form.
  RationalPoly basis = RationalPoly::constant(1);
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) {
      const BigRational root = start + static_cast<long>(i - 1);
      basis = basis * RationalPoly({BigRational(-root), BigRational(1)});
      basis = basis * BigRational(1, static_cast<unsigned long>(i));
    }
    if (diff[0] != 0) result += basis * diff[0];
    for (std::size_t j = 0; j + 1 < n - i; ++j) diff[j] = diff[j + 1] - diff[j];
  }
  return result;
}

Polynomial interpolate_values(std::span<const BigRational> values, long start) {
  const bool integral = std::all_of(values.begin(), values.end(), [](const BigRational& v) { return is_integer(v); });
  if (integral) {
    std::vector<BigInt> ints;
    ints.reserve(values.size());
    for (const auto& v : values) ints.emplace_back(v.get_num());
    return interpolate(ints, start);
  }
  return interpolate(values, BigRational(start));
}

RationalPoly to_monomial(const BinomialPoly& f) {
  const auto& a = f.coeffs();
  if (a.empty()) return {};
  // sum a_i C(x, i) = (sum a_i (n!/i!) x(x-1)...(x-i+1)) / n!, n = deg f.
  const std::size_t n = a.size() - 1;
  BigInt scale = 1;  // n! / i!, walked down from i = n
  std::vector<BigInt> weight(n + 1);
  for (std::size_t i = n + 1; i-- > 0;) {
    weight[i] = scale;
    scale *= static_cast<unsigned long>(std::max<std::size_t>(i, 1));
  }
  const BigInt& factorial = scale;  // n! (the i = 0 step multiplied by 1)
  std::vector<BigInt> falling{1};
  std::vector<BigInt> num(n + 1, BigInt(0));
  for (std::size_t i = 0; i <= n; ++i) {
    if (i > 0) {
      // falling *= (x - (i - 1))
      falling.push_back(0);
      for (std::size_t j = falling.size() - 1; j > 0; --j) falling[j] = falling[j - 1] - static_cast<long>(i - 1) * falling[j];
      falling[0] *= -static_cast<long>(i - 1);
    }
    if (a[i] == 0) continue;
    const BigInt w = a[i] * weight[i];
    for (std::size_t j = 0; j < falling.size(); ++j) num[j] += w * falling[j];
  }
  std::vector<BigRational> out;
  out.reserve(n + 1);
  for (const auto& c : num) out.push_back(make_rational(c, factorial));
  return RationalPoly(std::move(out));
}

std::optional<BinomialPoly> to_binomial(const RationalPoly& f) {
  // Integer values on d+1 consecutive integers is equivalent to integer-valued.
  const int d = std::max(f.degree(), 0);
  std::vector<BigInt> vals;
  vals.reserve(static_cast<std::size_t>(d + 1));
  for (int x = 0; x <= d; ++x) {
    const BigRational v = f(BigRational(x));
    if (!is_integer(v)) return std::nullopt;
    vals.emplace_back(v.get_num());
  }
  return interpolate(vals, 0);
}

RationalPoly centered_difference(const RationalPoly& f) {
  const BigRational half(1, 2);
  return f.shift(half) - f.shift(-half);
}

std::string to_string(const RationalPoly& f) {
  if (f.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = f.degree(); i >= 0; --i) {
    const BigRational c = f.coeff(i);
    if (c == 0) continue;
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    const BigRational a = abs(c);
    if (i == 0 || a != 1) os << a.get_str();
    if (i > 0) os << (i == 0 || a != 1 ? "*" : "") << "x";
    if (i > 1) os << "^" << i;
    first = false;
  }
  return os.str();
}

std::string to_string(const BinomialPoly& f) {
  if (f.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i <= f.degree(); ++i) {
    const BigInt& c = f.coeffs()[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    os << BigInt(abs(c)).get_str() << "*C(x," << i << ")";
    first = false;
  }
  return os.str();
}

}  // namespace dyncomp
