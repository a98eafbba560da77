// Compression windows f([m]) ⊆ [n] and their symmetries.
#pragma once

#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "dyncomp/arith.hpp"

namespace dyncomp {

/// A verified containment f([m]) ⊆ [n] for a polynomial of degree >= 2.
/// Windows with m > n are strict; check_window also reports m == n
/// containments, flagged non-strict.
struct CompressionWitness {
  BinomialPoly poly;
  long m = 0;
  long n = 0;
  std::vector<BigInt> values;  // f(1), ..., f(m)

  bool strict() const { return m > n; }
  friend bool operator==(const CompressionWitness&, const CompressionWitness&) = default;
};

struct WindowRefutation {
  enum class Reason {
    kValueOutOfRange,  // some f(i) outside [1, n]
    kDegreeTooLow,     // deg f < 2
    kNotCompressing,   // containment holds but m < n
  };
  Reason reason;
  std::optional<long> index;  // first failing i, for kValueOutOfRange
  std::optional<BigInt> value;
};

const char* to_string(WindowRefutation::Reason reason);

using WindowCheck = std::variant<CompressionWitness, WindowRefutation>;

/// Throws std::invalid_argument unless m >= 1 and n >= 1.
WindowCheck check_window(const BinomialPoly& f, long m, long n);

/// Largest m <= m_cap with f([m]) ⊆ [max f([m])] and m > max f([m]).
std::optional<CompressionWitness> best_window(const BinomialPoly& f, long m_cap);

enum class Reflection { kDomain, kRange };

/// kDomain: x -> f(m + 1 - x); kRange: x -> n + 1 - f(x). Both keep (m, n).
CompressionWitness reflect(const CompressionWitness& w, Reflection mode);

/// f_v(x) = g_v(x - 1) + floor((d + ell - 1)/2) + 1 where g_v interpolates
/// v at 0..d. `k` only documents the intended window [d + k].
BinomialPoly build_fv(std::span<const BigInt> v, int d, int k, int ell);

/// The constant floor((d + ell - 1)/2) + 1 used by build_fv.
long fv_offset(int d, int ell);

}  // namespace dyncomp
