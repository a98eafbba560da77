// Explicit polynomial families with long compression windows.
//
// rho(m, d) is the doubly periodic sign pattern generated by the row
// (1, 1, 0, -1, -1, 0) at d = 0. The polynomials s_d interpolate rho along
// the half-integer grid m - (d+1)/2, and r_d shifts s_d so that
// r_d([d+6]) lies in [d+5] (d even) or [d+4] (d odd).
#pragma once

#include <array>
#include <vector>

#include "dyncomp/arith.hpp"

namespace dyncomp::families {

/// rho(m, 0) for m mod 6.
inline constexpr std::array<int, 6> kRhoBaseRow = {1, 1, 0, -1, -1, 0};

/// Defined on all of Z^2.
int rho(long m, long d);

/// c_{2k} = prod_{j<=k} (x^2 - (2j-1)^2/4) / (2k)!,
/// c_{2k+1} = x prod_{j<=k} (x^2 - j^2) / (2k+1)!.
RationalPoly c_poly(int d);

/// All of c_0, ..., c_max_d in one incremental pass.
std::vector<RationalPoly> c_polys_upto(int max_d);

/// s_d = c_d - c_{d-2} + c_{d-4} - ...
RationalPoly s_poly(int d);

/// r_d = s_d(x - 3 - (d+1)/2) + 2 for even d,
///       s_d(x - 3 - (d+1)/2) - x + d + 6 for odd d.
RationalPoly r_poly(int d);

/// r_d in the binomial basis, obtained by interpolating its values on [1, d+1].
BinomialPoly r_binomial(int d);

/// Upper end of the r_d window: d+5 for even d, d+4 for odd d.
inline long r_window_n(int d) { return d % 2 == 0 ? d + 5 : d + 4; }

}  // namespace dyncomp::families
