// The interpolation map L_{d,k}, its norms and singular values, and the
// volume of the ellipsoid E_{d,k,ell} used by the Minkowski argument.
#pragma once

#include <optional>
#include <vector>

#include "dyncomp/arith.hpp"
#include "dyncomp/bigfloat.hpp"
#include "dyncomp/lattice.hpp"

namespace dyncomp::geometry {

using lattice::IntMatrix;

/// Row r (0-based) maps (g(0), ..., g(d)) to g(d + 1 + r).
struct InterpolationMatrix {
  int d = 0;
  int k = 0;
  IntMatrix entries;  // (k-1) x (d+1)
};

/// Throws std::invalid_argument for d < 2 or k < 2.
InterpolationMatrix build_interpolation_matrix(int d, int k);

/// A_{d,k} with entries C(d + r, i), 1 <= r <= k-1, 0 <= i <= d.
IntMatrix newton_evaluation_matrix(int d, int k);
/// B_d with entries (-1)^(i-j) C(i, j): values at 0..d to forward differences.
IntMatrix forward_difference_matrix(int d);
IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);

struct MatrixNorms {
  BigFloat frobenius;
  BigInt max;
  BigFloat spectral;
};

/// Default working precision 2 (rows + cols) bits, at least 64.
MatrixNorms matrix_norms(const IntMatrix& m, std::optional<mpfr_prec_t> bits = std::nullopt);

/// Singular values, nonincreasing, min(rows, cols) of them. Computed by
/// Jacobi on the exact Gram matrix; precision is doubled until the
/// eigenvalue product and sum agree with the exact determinant and trace.
std::vector<BigFloat> singular_values(const IntMatrix& m, mpfr_prec_t bits);

struct EllipsoidSpec {
  int d = 0;
  int k = 0;
  int ell = 0;
  std::vector<BigFloat> sigmas;     // k-1 values
  std::vector<BigFloat> log_radii;  // d+1 values
};

/// Throws std::invalid_argument unless 2 <= ell <= k and bits >= 64.
EllipsoidSpec ellipsoid_spec(int d, int k, int ell, mpfr_prec_t bits);

/// Natural log of Vol(E) for the given radii: (n/2) log pi - log Γ(n/2 + 1) + Σ log r_i.
BigFloat ellipsoid_log_volume(const std::vector<BigFloat>& log_radii, mpfr_prec_t bits);
BigFloat ellipsoid_log_volume(const EllipsoidSpec& spec, mpfr_prec_t bits);
BigFloat ellipsoid_log_volume(int d, int k, int ell, mpfr_prec_t bits);

/// 2 (d + k) bits, the default for E_{d,k,ell}.
mpfr_prec_t default_precision(int d, int k);

struct MinkowskiResult {
  int d = 0;
  int k = 0;
  int ell = 0;
  bool holds = false;
  BigFloat log_volume;
  BigFloat log_threshold;  // log((d + ell + 4) 2^d)
  BigInt pairs;            // floor(Vol / 2^(d+1))
  std::vector<BigFloat> sigmas;
};

/// floor(log_16 d), exactly.
int minkowski_k(int d);

/// Uses k = floor(log_16 d). Throws std::invalid_argument when that k < ell.
MinkowskiResult minkowski_check(int d, int ell, std::optional<mpfr_prec_t> bits = std::nullopt);

/// Same test at an explicit k (>= ell); for small-d diagnostics.
MinkowskiResult minkowski_check_unchecked(int d, int k, int ell, std::optional<mpfr_prec_t> bits = std::nullopt);

struct DStarResult {
  int d_star = 0;
  std::vector<int> sampled;  // degrees in [d_star, 4 d_star] that were checked
};

/// Smallest D found by bisection on [lo, hi] with minkowski_check holding,
/// then confirmed on `samples` evenly spaced degrees of [D, 4D]; a failing
/// sample moves D past it and the confirmation repeats. Uses k = max(ell,
/// floor(log_16 d)) so degrees below 256 are admissible. nullopt if none.
std::optional<DStarResult> find_d_star(int ell, int lo, int hi, int samples);

}  // namespace dyncomp::geometry
