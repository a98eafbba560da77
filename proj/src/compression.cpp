#include "dyncomp/compression.hpp"

#include <stdexcept>

namespace dyncomp {

const char* to_string(WindowRefutation::Reason reason) {
  switch (reason) {
    case WindowRefutation::Reason::kValueOutOfRange: return "value_out_of_range";
    case WindowRefutation::Reason::kDegreeTooLow: return "degree_too_low";
    case WindowRefutation::Reason::kNotCompressing: return "not_compressing";
  }
  return "unknown";
}

WindowCheck check_window(const BinomialPoly& f, long m, long n) {
  if (m < 1 || n < 1) throw std::invalid_argument("window bounds must be positive");
  std::vector<BigInt> values;
  values.reserve(static_cast<std::size_t>(m));
  for (long i = 1; i <= m; ++i) {
    BigInt v = f(i);
    if (v < 1 || v > n) return WindowRefutation{WindowRefutation::Reason::kValueOutOfRange, i, std::move(v)};
    values.push_back(std::move(v));
  }
  if (f.degree() < 2) return WindowRefutation{WindowRefutation::Reason::kDegreeTooLow, std::nullopt, std::nullopt};
  if (m < n) return WindowRefutation{WindowRefutation::Reason::kNotCompressing, std::nullopt, std::nullopt};
  return CompressionWitness{f, m, n, std::move(values)};
}

std::optional<CompressionWitness> best_window(const BinomialPoly& f, long m_cap) {
  if (m_cap < 2) throw std::invalid_argument("m_cap must be at least 2");
  if (f.degree() < 2) return std::nullopt;
  std::vector<BigInt> values;
  std::optional<long> best_m;
  BigInt best_n;
  BigInt lo, hi;
  for (long m = 1; m <= m_cap; ++m) {
    values.push_back(f(m));
    const BigInt& v = values.back();
    if (m == 1) {
      lo = v;
      hi = v;
    } else {
      if (v < lo) lo = v;
      if (v > hi) hi = v;
    }
    if (lo < 1) break;  // every longer prefix fails as well
    if (m >= 2 && hi < m) {
      best_m = m;
      best_n = hi;
    }
  }
  if (!best_m) return std::nullopt;
  values.resize(static_cast<std::size_t>(*best_m));
  return CompressionWitness{f, *best_m, best_n.get_si(), std::move(values)};
}

CompressionWitness reflect(const CompressionWitness& w, Reflection mode) {
  CompressionWitness out;
  out.m = w.m;
  out.n = w.n;
  if (mode == Reflection::kRange) {
    out.poly = (-w.poly).plus_constant(BigInt(w.n + 1));
    out.values.reserve(w.values.size());
    for (const auto& v : w.values) out.values.push_back(BigInt(w.n + 1) - v);
    return out;
  }
  // x -> m + 1 - x; resample on d+1 points and re-interpolate at base 0.
  const int d = std::max(w.poly.degree(), 0);
  std::vector<BigInt> samples;
  samples.reserve(static_cast<std::size_t>(d + 1));
  for (long x = 0; x <= d; ++x) samples.push_back(w.poly(w.m + 1 - x));
  out.poly = interpolate(samples, 0);
  out.values.assign(w.values.rbegin(), w.values.rend());
  return out;
}

long fv_offset(int d, int ell) {
  const long s = d + ell - 1;
  return (s >= 0 ? s / 2 : -((-s + 1) / 2)) + 1;
}

BinomialPoly build_fv(std::span<const BigInt> v, int d, int k, int ell) {
  if (ell < 2) throw std::invalid_argument("ell must be at least 2");
  if (k < 1) throw std::invalid_argument("k must be positive");
  if (v.size() != static_cast<std::size_t>(d + 1)) throw std::invalid_argument("vector length must be d + 1");
  const BigInt offset = fv_offset(d, ell);
  std::vector<BigInt> shifted;
  shifted.reserve(v.size());
  for (const auto& x : v) shifted.push_back(x + offset);
  // f_v(i + 1) = v_i + offset, so interpolate on 1..d+1.
  return interpolate(shifted, 1);
}

}  // namespace dyncomp
