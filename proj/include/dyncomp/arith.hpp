// Exact integer and rational polynomial arithmetic.
//
// Two polynomial representations are used throughout:
//   * BinomialPoly: integer coefficients a_i in the binomial basis,
//     f(x) = sum_i a_i * C(x, i). Exactly the integer-valued polynomials.
//   * RationalPoly: rational coefficients in the monomial basis. Needed for
//     constructions with half-integer shifts that leave the integer lattice.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace dyncomp {

using BigInt = mpz_class;
using BigRational = mpq_class;

/// Builds num/den in lowest terms. Throws std::invalid_argument when den == 0.
BigRational make_rational(const BigInt& num, const BigInt& den);

bool is_integer(const BigRational& x);

/// Falling-factorial binomial x(x-1)...(x-i+1)/i!, exact for rational x.
BigRational binomial_coeff(const BigRational& x, unsigned long i);

/// Integer binomial C(n, i) for any integer n (negative n allowed).
BigInt binomial_coeff(const BigInt& n, unsigned long i);

class RationalPoly;

class BinomialPoly {
 public:
  BinomialPoly() = default;
  explicit BinomialPoly(std::vector<BigInt> coeffs);

  const std::vector<BigInt>& coeffs() const { return coeffs_; }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }

  BigInt operator()(const BigInt& x) const;
  BigInt operator()(long x) const { return (*this)(BigInt(x)); }
  BigRational operator()(const BigRational& x) const;

  /// Values f(from), f(from+1), ..., f(to).
  std::vector<BigInt> values(long from, long to) const;

  BinomialPoly operator+(const BinomialPoly& other) const;
  BinomialPoly operator-(const BinomialPoly& other) const;
  BinomialPoly operator-() const;
  /// f(x) + c for an integer constant c.
  BinomialPoly plus_constant(const BigInt& c) const;

  friend bool operator==(const BinomialPoly&, const BinomialPoly&) = default;

 private:
  std::vector<BigInt> coeffs_;
};

class RationalPoly {
 public:
  RationalPoly() = default;
  explicit RationalPoly(std::vector<BigRational> coeffs);
  static RationalPoly constant(const BigRational& c);
  /// The polynomial x.
  static RationalPoly identity();

  const std::vector<BigRational>& coeffs() const { return coeffs_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const BigRational& leading() const { return coeffs_.back(); }
  BigRational coeff(int i) const;

  BigRational operator()(const BigRational& x) const;

  RationalPoly operator+(const RationalPoly& other) const;
  RationalPoly operator-(const RationalPoly& other) const;
  RationalPoly operator-() const;
  RationalPoly operator*(const RationalPoly& other) const;
  RationalPoly operator*(const BigRational& c) const;
  RationalPoly& operator+=(const RationalPoly& other);
  RationalPoly& operator-=(const RationalPoly& other);

  RationalPoly derivative() const;
  /// f(x + c).
  RationalPoly shift(const BigRational& c) const;
  /// f(g(x)).
  RationalPoly compose(const RationalPoly& inner) const;
  RationalPoly monic() const;

  friend bool operator==(const RationalPoly&, const RationalPoly&) = default;

 private:
  void trim();
  std::vector<BigRational> coeffs_;
};

struct PolyDivision {
  RationalPoly quotient;
  RationalPoly remainder;
};

/// Euclidean division over Q. Throws std::domain_error on a zero divisor.
PolyDivision divmod(const RationalPoly& num, const RationalPoly& den);

/// Monic gcd over Q; gcd(0, 0) = 0.
RationalPoly gcd(const RationalPoly& a, const RationalPoly& b);

/// f / gcd(f, f'), monic. Same roots as f, all simple.
RationalPoly squarefree_part(const RationalPoly& f);

/// Either representation, as carried by the JSON interchange format.
using Polynomial = std::variant<BinomialPoly, RationalPoly>;

BigRational eval(const BinomialPoly& f, const BigRational& x);
BigRational eval(const RationalPoly& f, const BigRational& x);
BigRational eval(const Polynomial& f, const BigRational& x);

/// Newton forward-difference interpolation of integer samples
/// f(start), ..., f(start + d), re-based so the result is in C(x, i) form.
BinomialPoly interpolate(std::span<const BigInt> values, long start = 0);

/// Interpolation through (start + i, values[i]) for a rational start.
RationalPoly interpolate(std::span<const BigRational> values, const BigRational& start);

/// Binomial form when every sample is an integer, monomial form otherwise.
Polynomial interpolate_values(std::span<const BigRational> values, long start = 0);

RationalPoly to_monomial(const BinomialPoly& f);

/// Binomial form of f, or nullopt when f is not integer-valued.
std::optional<BinomialPoly> to_binomial(const RationalPoly& f);

/// f(x + 1/2) - f(x - 1/2).
RationalPoly centered_difference(const RationalPoly& f);

std::string to_string(const RationalPoly& f);
std::string to_string(const BinomialPoly& f);

}  // namespace dyncomp
