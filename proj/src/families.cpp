#include "dyncomp/families.hpp"

#include <mutex>
#include <stdexcept>

namespace dyncomp::families {

namespace {

long floor_mod(long a, long b) {
  const long r = a % b;
  return r < 0 ? r + b : r;
}

void require_nonnegative(int d) {
  if (d < 0) throw std::invalid_argument("degree must be nonnegative");
}

}  // namespace

int rho(long m, long d) {
  const int base = kRhoBaseRow[static_cast<std::size_t>(floor_mod(m + d, 6))];
  return floor_mod(d, 2) == 0 ? base : -base;
}

namespace {

// c_d and s_d grow incrementally and are shared across calls.
struct FamilyCache {
  std::mutex mutex;
  std::vector<RationalPoly> c;
  std::vector<RationalPoly> s;

  void extend(int max_d) {
    while (static_cast<int>(c.size()) <= max_d) {
      const int d = static_cast<int>(c.size());
      if (d == 0) c.push_back(RationalPoly::constant(1));
      else if (d == 1) c.push_back(RationalPoly::identity());
      else {
        // c_d = c_{d-2} * (x^2 - r^2) / (d (d-1)) with r = (d-1)/2 for either parity.
        const BigRational r = make_rational(d - 1, 2);
        const BigRational scale(1, static_cast<unsigned long>(d) * (d - 1));
        const auto& prev = c[static_cast<std::size_t>(d - 2)].coeffs();
        std::vector<BigRational> next(prev.size() + 2, BigRational(0));
        const BigRational r2 = r * r;
        for (std::size_t j = 0; j < prev.size(); ++j) {
          next[j + 2] += prev[j] * scale;
          next[j] -= prev[j] * r2 * scale;
        }
        c.emplace_back(std::move(next));
      }
      // s_d = c_d - s_{d-2}
      s.push_back(d < 2 ? c.back() : c.back() - s[static_cast<std::size_t>(d - 2)]);
    }
  }
};

FamilyCache& cache() {
  static FamilyCache instance;
  return instance;
}

}  // namespace

std::vector<RationalPoly> c_polys_upto(int max_d) {
  require_nonnegative(max_d);
  auto& fc = cache();
  std::lock_guard lock(fc.mutex);
  fc.extend(max_d);
  return {fc.c.begin(), fc.c.begin() + max_d + 1};
}

RationalPoly c_poly(int d) {
  require_nonnegative(d);
  auto& fc = cache();
  std::lock_guard lock(fc.mutex);
  fc.extend(d);
  return fc.c[static_cast<std::size_t>(d)];
}

RationalPoly s_poly(int d) {
  require_nonnegative(d);
  auto& fc = cache();
  std::lock_guard lock(fc.mutex);
  fc.extend(d);
  return fc.s[static_cast<std::size_t>(d)];
}

RationalPoly r_poly(int d) {
  require_nonnegative(d);
  const RationalPoly shifted = s_poly(d).shift(make_rational(-(d + 7), 2));
  if (d % 2 == 0) return shifted + RationalPoly::constant(2);
  return shifted + RationalPoly({BigRational(d + 6), BigRational(-1)});
}

BinomialPoly r_binomial(int d) {
  const RationalPoly r = r_poly(d);
  std::vector<BigInt> values;
  values.reserve(static_cast<std::size_t>(d + 1));
  for (long x = 1; x <= d + 1; ++x) {
    const BigRational v = r(BigRational(x));
    if (!is_integer(v)) throw std::logic_error("r_d took a non-integer value");
    values.emplace_back(v.get_num());
  }
  return interpolate(values, 1);
}

}  // namespace dyncomp::families
