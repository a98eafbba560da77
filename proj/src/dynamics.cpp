#include "dyncomp/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <tuple>
#include <unordered_map>

#include "dyncomp/compression.hpp"

namespace dyncomp::dynamics {

namespace {

struct RationalHash {
  static std::size_t limbs(mpz_srcptr z) {
    std::size_t h = static_cast<std::size_t>(mpz_sgn(z)) * 0x9e3779b97f4a7c15ULL;
    const std::size_t n = mpz_size(z);
    for (std::size_t i = 0; i < n; ++i) h = (h ^ static_cast<std::size_t>(mpz_getlimbn(z, static_cast<mp_size_t>(i)))) * 0x100000001b3ULL;
    return h;
  }
  std::size_t operator()(const BigRational& q) const {
    return limbs(q.get_num_mpz_t()) * 31 + limbs(q.get_den_mpz_t());
  }
};

void require_degree(int deg) {
  if (deg < 2) throw std::invalid_argument("polynomial degree must be at least 2");
}

// Prime factors of |n| > 0 by trial division; n is a coefficient or start
// denominator, so its primes are small.
void add_primes(BigInt n, std::vector<unsigned long>& out) {
  n = abs(n);
  for (unsigned long p = 2; n > 1; ++p) {
    if (BigInt(p) * p > n) {
      if (n.fits_ulong_p()) out.push_back(n.get_ui());
      break;
    }
    if (mpz_divisible_ui_p(n.get_mpz_t(), p) == 0) continue;
    out.push_back(p);
    while (mpz_divisible_ui_p(n.get_mpz_t(), p) != 0) n /= p;
  }
}

long valuation(const BigInt& n, unsigned long p) {
  if (n == 0) return std::numeric_limits<long>::max();
  BigInt m = n;
  long v = 0;
  while (mpz_divisible_ui_p(m.get_mpz_t(), p) != 0) {
    m /= p;
    ++v;
  }
  return v;
}

long valuation(const BigRational& q, unsigned long p) {
  if (q == 0) return std::numeric_limits<long>::max();
  return valuation(q.get_num(), p) - valuation(q.get_den(), p);
}

// With e = -v_p(x) > 0, the leading term dominates when (d-i) e > v_p(a_d) - v_p(a_i)
// for every i < d, and then v_p(f(x)) = v_p(a_d) - d e. If also (d-1) e > v_p(a_d)
// the valuation strictly drops and keeps dropping, so the orbit is infinite.
bool p_adic_escape(const RationalPoly& f, const BigRational& x, unsigned long p) {
  const long e = -valuation(x, p);
  if (e <= 0) return false;
  const int d = f.degree();
  const long vd = valuation(f.leading(), p);
  if ((d - 1) * e <= vd) return false;
  for (int i = 0; i < d; ++i) {
    const BigRational& a = f.coeffs()[i];
    if (a == 0) continue;
    if ((d - i) * e <= vd - valuation(a, p)) return false;
  }
  return true;
}

OrbitRecord run_orbit(const RationalPoly& f, const BigRational& radius, const BigRational& x0, long max_steps) {
  std::unordered_map<BigRational, long, RationalHash> seen;
  // Denominators of iterates only involve these primes.
  std::vector<unsigned long> primes;
  if (x0.get_den() != 1) {
    add_primes(x0.get_den(), primes);
    for (const auto& c : f.coeffs()) add_primes(c.get_den(), primes);
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  }
  BigRational x = x0;
  for (long i = 0; i <= max_steps; ++i) {
    if (abs(x) > radius) return {x0, Escaped{i, x, 0}};
    if (x.get_den() != 1)
      for (unsigned long p : primes)
        if (p_adic_escape(f, x, p)) return {x0, Escaped{i, x, static_cast<long>(p)}};
    auto [it, inserted] = seen.emplace(x, i);
    if (!inserted) return {x0, Periodic{it->second, i - it->second}};
    if (i == max_steps) break;
    x = f(x);
  }
  return {x0, Inconclusive{max_steps}};
}

BigComplex to_complex(const BigRational& q, mpfr_prec_t bits) { return {BigFloat(q, bits), BigFloat(bits)}; }

std::vector<BigComplex> complex_coeffs(const RationalPoly& p, mpfr_prec_t bits) {
  std::vector<BigComplex> out;
  out.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) out.push_back(to_complex(c, bits));
  return out;
}

BigComplex horner(const std::vector<BigComplex>& coeffs, const BigComplex& z) {
  BigComplex acc = coeffs.back();
  for (std::size_t i = coeffs.size() - 1; i-- > 0;) acc = acc * z + coeffs[i];
  return acc;
}

}  // namespace

InconclusiveOrbit::InconclusiveOrbit(BigRational start, long steps)
    : std::runtime_error("orbit of " + start.get_str() + " undecided after " + std::to_string(steps) + " steps"),
      start_(std::move(start)) {}

RootFindingError::RootFindingError(int a, int c)
    : std::runtime_error("root finding did not converge for (a, c) = (" + std::to_string(a) + ", " + std::to_string(c) +
                         "); raise the precision"),
      a_(a),
      c_(c) {}

BigRational escape_radius(const RationalPoly& f) {
  require_degree(f.degree());
  BigRational lower = 1;
  for (int i = 0; i < f.degree(); ++i) lower += abs(f.coeff(i));
  BigRational r = lower / abs(f.leading());
  if (r < 1) r = 1;
  return r + 1;
}

OrbitRecord orbit(const BinomialPoly& f, const BigRational& x0, long max_steps) {
  require_degree(f.degree());
  if (max_steps < 1) throw std::invalid_argument("max_steps must be positive");
  const RationalPoly mono = to_monomial(f);
  return run_orbit(mono, escape_radius(mono), x0, max_steps);
}

std::vector<BigInt> preper_search(const BinomialPoly& f, long bound) {
  std::vector<BigInt> out;
  for (const auto& q : preper_search_rational(f, bound, 1)) out.push_back(q.get_num());
  return out;
}

std::vector<BigRational> preper_search_rational(const BinomialPoly& f, long bound, long max_denominator) {
  require_degree(f.degree());
  if (bound < 0) throw std::invalid_argument("bound must be nonnegative");
  if (max_denominator < 1) throw std::invalid_argument("max_denominator must be positive");
  const RationalPoly mono = to_monomial(f);
  const BigRational radius = escape_radius(mono);
  const long cap = 4 * bound + 100;
  std::vector<BigRational> out;
  for (long q = 1; q <= max_denominator; ++q) {
    for (long p = -bound * q; p <= bound * q; ++p) {
      if (std::gcd(p, q) != 1) continue;
      const BigRational x = make_rational(p, q);
      const auto rec = run_orbit(mono, radius, x, cap);
      if (std::holds_alternative<Inconclusive>(rec.outcome)) throw InconclusiveOrbit(x, cap);
      if (rec.periodic()) out.push_back(x);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

PreimageCount preimage_count_exact(const BinomialPoly& f, long n) {
  require_degree(f.degree());
  if (n < 1) throw std::invalid_argument("n must be positive");
  const RationalPoly mono = to_monomial(f);
  const RationalPoly deriv = mono.derivative();
  PreimageCount out;
  out.degree = mono.degree();
  out.n = n;
  for (long q = 1; q <= n; ++q) {
    const RationalPoly fiber = mono - RationalPoly::constant(BigRational(q));
    const long distinct = out.degree - std::max(gcd(fiber, deriv).degree(), 0);
    out.per_fiber.push_back(distinct);
    out.ramification_deficit += out.degree - distinct;
  }
  out.total = out.degree * n - out.ramification_deficit;
  return out;
}

CommonBound common_preper_bound(const BinomialPoly& f, long m, long n) {
  if (m < 1 || n < 1) throw std::invalid_argument("window bounds must be positive");
  const auto check = check_window(f, m, n);
  const auto* w = std::get_if<CompressionWitness>(&check);
  if (w == nullptr || !w->strict()) throw std::invalid_argument("f([m]) ⊆ [n] with m > n does not hold");
  const long d = f.degree();
  return {preimage_count_exact(f, n).total, d * n - d + 1};
}

mpfr_prec_t root_guard_bits(const RationalPoly& p) {
  const int n = p.degree();
  if (n < 1) return 0;
  const RationalPoly monic = p.monic();
  // Horner's rounding error at |z| <= r is about 2^-bits Σ |a_i| r^i, while
  // |p'| at a root can be small; the guard covers the coefficient scale.
  double radius = 1;
  for (int i = 1; i <= n; ++i) {
    const BigRational& a = monic.coeff(n - i);
    if (a != 0) radius = std::max(radius, 2 * std::exp(log(BigFloat(abs(a), 64)).to_double() / i));
  }
  double log2_scale = 0;
  for (int i = 0; i <= n; ++i) {
    const BigRational& a = monic.coeff(i);
    if (a == 0) continue;
    const double term = log(BigFloat(abs(a), 64)).to_double() / std::log(2.0) + i * std::log2(radius);
    log2_scale = std::max(log2_scale, term);
  }
  return static_cast<mpfr_prec_t>(std::ceil(log2_scale + std::log2(n + 1.0))) + 32;
}

std::optional<std::vector<BigComplex>> aberth_roots_monic(const std::vector<BigComplex>& coeffs, mpfr_prec_t bits) {
  const int n = static_cast<int>(coeffs.size()) - 1;
  if (n < 1) return std::vector<BigComplex>{};
  std::vector<BigComplex> dcoeffs;
  for (int i = 1; i <= n; ++i) dcoeffs.push_back(coeffs[static_cast<std::size_t>(i)] * BigComplex(BigFloat(static_cast<long>(i), bits), BigFloat(bits)));
  std::vector<BigFloat> abs_coeffs;
  for (const auto& c : coeffs) abs_coeffs.push_back(abs(c));

  // Fujiwara-type radius: every root lies within 2 max |a_{n-i}|^(1/i).
  double radius = 0;
  for (int i = 1; i <= n; ++i) {
    const BigFloat& a = abs_coeffs[static_cast<std::size_t>(n - i)];
    if (a.is_zero()) continue;
    radius = std::max(radius, std::exp(log(a).to_double() / i));
  }
  if (radius == 0) radius = 1;
  std::vector<BigComplex> z;
  const BigFloat two_pi = BigFloat(2L, bits) * BigFloat::pi(bits);
  for (int k = 0; k < n; ++k) {
    const BigFloat angle = two_pi * BigFloat(static_cast<long>(k), bits) / BigFloat(static_cast<long>(n), bits) + BigFloat(0.4, bits);
    const BigFloat r(radius, bits);
    z.emplace_back(r * cos(angle), r * sin(angle));
  }

  const BigFloat one(1L, bits);
  const BigFloat eps = pow2(-static_cast<long>(bits) + 12, bits);
  const BigFloat noise_scale = pow2(-static_cast<long>(bits) + 4, bits) * BigFloat(static_cast<long>(n), bits);
  const BigComplex unit(one, BigFloat(bits));
  const int max_iter = 200 + 20 * n;
  for (int iter = 0; iter < max_iter; ++iter) {
    bool settled = true;
    for (int i = 0; i < n; ++i) {
      auto& zi = z[static_cast<std::size_t>(i)];
      const BigComplex pv = horner(coeffs, zi);
      if (pv.re.is_zero() && pv.im.is_zero()) continue;
      // |p(z)| at the rounding-noise level of Horner: z is a root to working precision.
      BigFloat noise = abs_coeffs.back();
      const BigFloat az = abs(zi);
      for (std::size_t t = abs_coeffs.size() - 1; t-- > 0;) noise = noise * az + abs_coeffs[t];
      const bool at_noise = abs(pv) <= noise * noise_scale;
      const BigComplex dv = horner(dcoeffs, zi);
      const BigComplex ratio = pv / dv;
      BigComplex s(bits);
      for (int j = 0; j < n; ++j)
        if (j != i) s += unit / (zi - z[static_cast<std::size_t>(j)]);
      const BigComplex w = ratio / (unit - ratio * s);
      zi -= w;
      if (!at_noise && abs(w) > eps * max(one, abs(zi))) settled = false;
    }
    if (settled) return z;
  }
  return std::nullopt;
}

std::optional<std::vector<BigComplex>> aberth_roots(const RationalPoly& p, mpfr_prec_t target_bits) {
  if (p.degree() < 1) return std::vector<BigComplex>{};
  const mpfr_prec_t bits = target_bits + root_guard_bits(p);
  return aberth_roots_monic(complex_coeffs(p.monic(), bits), bits);
}

DepthSearchResult common_preper_depth_search(const BinomialPoly& f, const BinomialPoly& g,
                                             const DepthSearchOptions& options) {
  require_degree(f.degree());
  require_degree(g.degree());
  if (options.max_pre < 0 || options.max_per < 1) throw std::invalid_argument("need max_pre >= 0 and max_per >= 1");
  if (options.precision_bits < 64) throw std::invalid_argument("precision must be at least 64 bits");
  if (!(options.tol > 0)) throw std::invalid_argument("tol must be positive");
  const int depth = options.max_pre + options.max_per;
  const double top_degree = std::pow(static_cast<double>(f.degree()), depth);
  if (top_degree > static_cast<double>(options.degree_cap)) throw std::invalid_argument("iterate degree exceeds the cap");

  const RationalPoly fm = to_monomial(f);
  const RationalPoly gm = to_monomial(g);
  RationalPoly top = RationalPoly::identity();
  for (int i = 0; i < options.max_per; ++i) top = fm.compose(top);
  // One working precision for every layer: the target plus the guard of the
  // largest periodic-point polynomial, plus slack for the preimage steps.
  const mpfr_prec_t work = options.precision_bits + root_guard_bits(top - RationalPoly::identity()) + 16 * (options.max_pre + 1);

  const BigFloat tol(options.tol, work);
  // A revisit must also sit at rounding level: orbits drawn into an
  // attracting cycle come within any fixed tol without ever landing on it.
  const BigFloat revisit_tol = min(tol, pow2(-static_cast<long>(work) / 2, work));
  const BigFloat g_radius(escape_radius(gm), work);
  const auto g_coeffs = complex_coeffs(gm, work);
  const auto f_monic = complex_coeffs(fm.monic(), work);
  const BigComplex f_lead_inv = to_complex(BigRational(1) / fm.leading(), work);
  const int steps = 4 * depth + 20;

  auto g_preperiodic = [&](const BigComplex& z0) {
    std::vector<BigComplex> orbit_pts{z0};
    for (int s = 0; s < steps; ++s) {
      BigComplex next = horner(g_coeffs, orbit_pts.back());
      if (abs(next) > g_radius) return false;
      for (const auto& prev : orbit_pts)
        if (abs(next - prev) < revisit_tol) return true;
      orbit_pts.push_back(std::move(next));
    }
    return false;
  };

  auto dedup = [&](std::vector<BigComplex> pts) {
    std::vector<BigComplex> out;
    for (auto& z : pts) {
      bool seen = false;
      for (const auto& w : out)
        if (abs(z - w) < tol) {
          seen = true;
          break;
        }
      if (!seen) out.push_back(std::move(z));
    }
    return out;
  };

  // Roots of f^(a+c) - f^a are f^-a(Per_c): periodic points of period
  // dividing c, pulled back a times by solving f(x) = y.
  DepthSearchResult out;
  std::vector<BigComplex> distinct;
  std::vector<bool> kept;
  RationalPoly fc = RationalPoly::identity();
  for (int c = 1; c <= options.max_per; ++c) {
    fc = fm.compose(fc);
    auto periodic = aberth_roots_monic(complex_coeffs(squarefree_part(fc - RationalPoly::identity()), work), work);
    if (!periodic) throw RootFindingError(0, c);
    std::vector<BigComplex> layer_pts = dedup(std::move(*periodic));
    for (int a = 0; a <= options.max_pre; ++a) {
      if (a > 0) {
        std::vector<BigComplex> pulled;
        for (const auto& y : layer_pts) {
          auto coeffs = f_monic;
          coeffs.front() -= y * f_lead_inv;
          auto pre = aberth_roots_monic(coeffs, work);
          if (!pre) throw RootFindingError(a, c);
          for (auto& z : *pre) pulled.push_back(std::move(z));
        }
        layer_pts = dedup(std::move(pulled));
      }
      DepthLayer layer{a, c, static_cast<int>(layer_pts.size()), 0};
      for (const auto& z : layer_pts) {
        std::optional<std::size_t> match;
        for (std::size_t i = 0; i < distinct.size() && !match; ++i)
          if (abs(z - distinct[i]) < tol) match = i;
        if (!match) {
          distinct.push_back(z);
          kept.push_back(g_preperiodic(z));
          match = distinct.size() - 1;
        }
        if (kept[*match]) ++layer.retained;
      }
      out.layers.push_back(layer);
    }
  }
  std::sort(out.layers.begin(), out.layers.end(),
            [](const DepthLayer& x, const DepthLayer& y) { return std::tie(x.a, x.c) < std::tie(y.a, y.c); });
  for (std::size_t i = 0; i < distinct.size(); ++i)
    if (kept[i]) out.points.push_back(distinct[i]);
  out.count = static_cast<long>(out.points.size());
  return out;
}

}  // namespace dyncomp::dynamics
