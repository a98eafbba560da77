// Orbits, bounded preperiodic-point searches, preimage counting, and the
// common-preperiodic-point machinery for f and its integer translates.
#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "dyncomp/arith.hpp"
#include "dyncomp/bigfloat.hpp"

namespace dyncomp::dynamics {

struct Periodic {
  long preperiod = 0;
  long period = 0;
};

struct Escaped {
  long step = 0;  // index of the first certified iterate
  BigRational value;
  long prime = 0;  // 0: |value| > R; otherwise v_prime(value) is past the p-adic escape threshold
};

/// max_steps iterates produced neither a repeat nor an escape.
struct Inconclusive {
  long steps = 0;
};

struct OrbitRecord {
  BigRational start;
  std::variant<Periodic, Escaped, Inconclusive> outcome;

  bool periodic() const { return std::holds_alternative<Periodic>(outcome); }
  bool escaped() const { return std::holds_alternative<Escaped>(outcome); }
};

class InconclusiveOrbit : public std::runtime_error {
 public:
  InconclusiveOrbit(BigRational start, long steps);
  const BigRational& start() const { return start_; }

 private:
  BigRational start_;
};

/// R = max(1, (1 + Σ_{i<d} |c_i|) / |c_d|) + 1. Throws for deg f < 2.
BigRational escape_radius(const RationalPoly& f);

/// Exact iteration from x0. Throws std::invalid_argument for deg f < 2 or
/// max_steps < 1.
OrbitRecord orbit(const BinomialPoly& f, const BigRational& x0, long max_steps);

/// Integers in [-bound, bound] with finite orbit, ascending. Each orbit may
/// take up to 4 bound + 100 steps; beyond that InconclusiveOrbit is thrown.
std::vector<BigInt> preper_search(const BinomialPoly& f, long bound);

/// Rationals p/q with 1 <= q <= max_denominator and |p/q| <= bound.
std::vector<BigRational> preper_search_rational(const BinomialPoly& f, long bound, long max_denominator);

struct PreimageCount {
  int degree = 0;
  long n = 0;
  std::vector<long> per_fiber;  // distinct roots of f - q, q = 1..n
  long ramification_deficit = 0;
  long total = 0;
};

/// Throws for deg f < 2 or n < 1.
PreimageCount preimage_count_exact(const BinomialPoly& f, long n);

struct CommonBound {
  long count = 0;
  long floor = 0;  // d n - d + 1
};

/// Requires a strict window f([m]) ⊆ [n]; throws std::invalid_argument otherwise.
CommonBound common_preper_bound(const BinomialPoly& f, long m, long n);

struct DepthLayer {
  int a = 0;
  int c = 0;
  int roots = 0;     // distinct roots of f^(a+c) - f^a
  int retained = 0;  // of those, kept by the g-orbit test
};

struct DepthSearchResult {
  long count = 0;
  std::vector<BigComplex> points;
  std::vector<DepthLayer> layers;
  bool heuristic = true;  // tolerance-based, not certified
};

struct DepthSearchOptions {
  int max_pre = 2;
  int max_per = 3;
  mpfr_prec_t precision_bits = 128;
  double tol = 1e-20;
  long degree_cap = 1L << 14;
};

class RootFindingError : public std::runtime_error {
 public:
  RootFindingError(int a, int c);
  int a() const { return a_; }
  int c() const { return c_; }

 private:
  int a_;
  int c_;
};

/// Complex roots of f^(a+c)(x) - f^a(x), 0 <= a <= max_pre, 1 <= c <= max_per,
/// deduplicated within tol, kept when their g-orbit stays inside g's escape
/// radius and comes back within tol of an earlier iterate.
/// Throws RootFindingError on non-convergence and std::invalid_argument on
/// bad options or deg f^(max_pre+max_per) above the cap.
DepthSearchResult common_preper_depth_search(const BinomialPoly& f, const BinomialPoly& g,
                                             const DepthSearchOptions& options);

/// Simple roots of a squarefree polynomial by Aberth iteration, accurate to
/// about target_bits; nullopt when the iteration does not settle. Works at
/// target_bits + root_guard_bits(p) and returns values at that precision.
std::optional<std::vector<BigComplex>> aberth_roots(const RationalPoly& p, mpfr_prec_t target_bits);

/// Extra bits covering the coefficient scale of p on its root disk.
mpfr_prec_t root_guard_bits(const RationalPoly& p);

}  // namespace dyncomp::dynamics
