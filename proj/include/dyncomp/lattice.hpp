// The value lattice of integer-valued polynomials and its LLL reduction.
//
// Lambda_{d,k} ⊂ Z^{d+k} is spanned by u_i = (C(1,i), ..., C(d+k,i)),
// 0 <= i <= d. Its points are exactly the value vectors (f(1), ..., f(d+k))
// of integer-valued polynomials of degree <= d, so a short vector whose
// coordinates fit in a narrow band is a compression window.
#pragma once

#include <optional>
#include <vector>

#include "dyncomp/arith.hpp"
#include "dyncomp/compression.hpp"

namespace dyncomp::lattice {

using IntVector = std::vector<BigInt>;
using IntMatrix = std::vector<IntVector>;

struct LatticeBasis {
  int d = 0;
  int k = 0;
  IntMatrix vectors;  // d+1 rows of length d+k
};

struct ReducedBasis {
  int d = 0;
  int k = 0;
  IntMatrix vectors;
  BigRational delta;
  IntMatrix transform;  // vectors = transform * original
};

/// Throws std::invalid_argument for d < 2 or k < 1.
LatticeBasis build_lattice(int d, int k);

/// The classical LLL parameter 3/4.
BigRational default_delta();

struct LllResult {
  IntMatrix basis;
  IntMatrix transform;
};

/// Exact LLL on linearly independent integer rows. Runs the fraction-free
/// (integral Gram-Schmidt) variant, so every decision is exact.
/// Throws std::invalid_argument for delta outside (1/4, 1) or dependent rows.
LllResult lll_reduce(const IntMatrix& rows, const BigRational& delta);

ReducedBasis lll_reduce(const LatticeBasis& basis, const BigRational& delta);

/// Rational Gram-Schmidt check of size reduction and the Lovász condition.
bool is_lll_reduced(const IntMatrix& rows, const BigRational& delta);

/// Coordinates c with c * rows = target, or nullopt when target is not in
/// the rational span. Exact.
std::optional<std::vector<BigRational>> solve_coordinates(const IntMatrix& rows, const IntVector& target);

/// Exact determinant of a square integer matrix (Bareiss).
BigInt determinant(const IntMatrix& square);

/// Candidates: basis vectors, pairwise sums and differences, and negations.
/// Each is shifted by a multiple of u_0 so its minimum is 1 and accepted when
/// max <= d+k and the polynomial has degree >= 2. Windows with n == d+k are
/// returned flagged non-strict. Sorted by (n, coefficients), duplicates removed.
std::vector<CompressionWitness> harvest(const ReducedBasis& reduced);

/// build_lattice + lll_reduce + harvest.
std::vector<CompressionWitness> search(int d, int k, const BigRational& delta);

struct ScheduleHit {
  int k = 0;
  CompressionWitness witness;
};

/// Default largest k tried for degree d: floor(log2 d) + 8.
int default_k_max(int d);

/// Tries k = k_max, k_max - 1, ..., 2 and returns the best witness at the
/// first k that yields one (smallest n, strict preferred by construction).
std::optional<ScheduleHit> search_schedule(int d, int k_max, const BigRational& delta);

/// Best of a harvested list: smallest n, ties broken by coefficient order.
const CompressionWitness* best_of(const std::vector<CompressionWitness>& witnesses);

}  // namespace dyncomp::lattice
