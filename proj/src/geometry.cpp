#include "dyncomp/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dyncomp::geometry {

namespace {

BigFloat to_float(const BigInt& v, mpfr_prec_t bits) { return BigFloat(v, bits); }

// Eigenvalues of a small symmetric matrix by cyclic Jacobi rotations.
std::vector<BigFloat> jacobi_eigenvalues(std::vector<std::vector<BigFloat>> a, mpfr_prec_t bits) {
  const std::size_t n = a.size();
  const BigFloat one(1L, bits);
  BigFloat scale(bits);
  for (const auto& row : a)
    for (const auto& x : row) scale += x * x;
  const BigFloat eps = pow2(-static_cast<long>(bits) - 8, bits) * sqrt(scale);

  for (int sweep = 0; sweep < 100; ++sweep) {
    BigFloat off(bits);
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
    if (sqrt(off) <= eps) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (a[p][q].is_zero()) continue;
        const BigFloat theta = (a[q][q] - a[p][p]) / (BigFloat(2L, bits) * a[p][q]);
        BigFloat t = one / (abs(theta) + sqrt(theta * theta + one));
        if (theta.sign() < 0) t = -t;
        const BigFloat c = one / sqrt(t * t + one);
        const BigFloat s = t * c;
        for (std::size_t r = 0; r < n; ++r) {
          const BigFloat arp = a[r][p];
          const BigFloat arq = a[r][q];
          a[r][p] = c * arp - s * arq;
          a[r][q] = s * arp + c * arq;
        }
        for (std::size_t r = 0; r < n; ++r) {
          const BigFloat apr = a[p][r];
          const BigFloat aqr = a[q][r];
          a[p][r] = c * apr - s * aqr;
          a[q][r] = s * apr + c * aqr;
        }
      }
    }
  }
  std::vector<BigFloat> eig;
  eig.reserve(n);
  for (std::size_t i = 0; i < n; ++i) eig.push_back(a[i][i]);
  return eig;
}

IntMatrix gram(const IntMatrix& m) {
  const std::size_t rows = m.size();
  const std::size_t cols = m.front().size();
  const bool by_rows = rows <= cols;
  const std::size_t n = by_rows ? rows : cols;
  const std::size_t len = by_rows ? cols : rows;
  IntMatrix g(n, lattice::IntVector(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      BigInt acc = 0;
      for (std::size_t t = 0; t < len; ++t)
        acc += by_rows ? m[i][t] * m[j][t] : m[t][i] * m[t][j];
      g[i][j] = acc;
      g[j][i] = acc;
    }
  }
  return g;
}

bool agrees(const BigFloat& computed, const BigInt& exact, mpfr_prec_t bits) {
  const BigFloat e(exact, bits);
  const BigFloat tol = pow2(-static_cast<long>(bits) / 2, bits);
  return abs(computed - e) <= tol * abs(e);
}

void require_matrix(const IntMatrix& m) {
  if (m.empty() || m.front().empty()) throw std::invalid_argument("matrix must be nonempty");
  for (const auto& row : m)
    if (row.size() != m.front().size()) throw std::invalid_argument("matrix rows differ in length");
}

}  // namespace

InterpolationMatrix build_interpolation_matrix(int d, int k) {
  if (d < 2) throw std::invalid_argument("d must be at least 2");
  if (k < 2) throw std::invalid_argument("k must be at least 2");
  InterpolationMatrix out{d, k, {}};
  out.entries.reserve(static_cast<std::size_t>(k - 1));
  // Lagrange weights at x = d + 1 + r: (-1)^(d-j) C(x, j) C(x-j-1, d-j).
  for (int r = 0; r < k - 1; ++r) {
    const long x = d + 1 + r;
    std::vector<BigInt> tail(static_cast<std::size_t>(d + 1));
    tail[static_cast<std::size_t>(d)] = 1;  // C(x-d-1, 0)
    for (int j = d - 1; j >= 0; --j) {
      // C(x-j-1, d-j) = C(x-j-2, d-j-1) (x-j-1) / (d-j)
      BigInt v = tail[static_cast<std::size_t>(j + 1)] * (x - j - 1);
      mpz_divexact_ui(v.get_mpz_t(), v.get_mpz_t(), static_cast<unsigned long>(d - j));
      tail[static_cast<std::size_t>(j)] = std::move(v);
    }
    lattice::IntVector row(static_cast<std::size_t>(d + 1));
    BigInt head = 1;  // C(x, j)
    for (int j = 0; j <= d; ++j) {
      BigInt v = head * tail[static_cast<std::size_t>(j)];
      if ((d - j) % 2 != 0) v = -v;
      row[static_cast<std::size_t>(j)] = std::move(v);
      head *= x - j;
      mpz_divexact_ui(head.get_mpz_t(), head.get_mpz_t(), static_cast<unsigned long>(j + 1));
    }
    out.entries.push_back(std::move(row));
  }
  return out;
}

IntMatrix newton_evaluation_matrix(int d, int k) {
  IntMatrix a;
  for (int r = 1; r <= k - 1; ++r) {
    lattice::IntVector row;
    for (int i = 0; i <= d; ++i) row.push_back(binomial_coeff(BigInt(d + r), i));
    a.push_back(std::move(row));
  }
  return a;
}

IntMatrix forward_difference_matrix(int d) {
  IntMatrix b(static_cast<std::size_t>(d + 1), lattice::IntVector(static_cast<std::size_t>(d + 1)));
  for (int i = 0; i <= d; ++i)
    for (int j = 0; j <= i; ++j) {
      BigInt v = binomial_coeff(BigInt(i), j);
      b[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = (i - j) % 2 == 0 ? v : BigInt(-v);
    }
  return b;
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  if (a.empty() || b.empty() || a.front().size() != b.size()) throw std::invalid_argument("shape mismatch");
  IntMatrix c(a.size(), lattice::IntVector(b.front().size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t t = 0; t < b.size(); ++t) {
      if (a[i][t] == 0) continue;
      for (std::size_t j = 0; j < b.front().size(); ++j) c[i][j] += a[i][t] * b[t][j];
    }
  return c;
}

std::vector<BigFloat> singular_values(const IntMatrix& m, mpfr_prec_t bits) {
  require_matrix(m);
  const IntMatrix g = gram(m);
  BigInt trace = 0;
  for (std::size_t i = 0; i < g.size(); ++i) trace += g[i][i];
  const BigInt det = lattice::determinant(g);

  for (mpfr_prec_t p = std::max<mpfr_prec_t>(bits, 64); p <= 16 * std::max<mpfr_prec_t>(bits, 64); p *= 2) {
    std::vector<std::vector<BigFloat>> a;
    for (const auto& row : g) {
      std::vector<BigFloat> r;
      for (const auto& x : row) r.push_back(to_float(x, p));
      a.push_back(std::move(r));
    }
    auto eig = jacobi_eigenvalues(std::move(a), p);
    BigFloat sum(p), prod(1L, p);
    for (const auto& e : eig) {
      sum += e;
      prod *= e;
    }
    if (trace != 0 && !agrees(sum, trace, p)) continue;
    if (det != 0 && !agrees(prod, det, p)) continue;
    std::vector<BigFloat> sigmas;
    for (auto& e : eig) {
      BigFloat s = e.sign() > 0 ? sqrt(e) : BigFloat(p);
      BigFloat out(bits);
      mpfr_set(out.get(), s.get(), MPFR_RNDN);
      sigmas.push_back(std::move(out));
    }
    std::sort(sigmas.begin(), sigmas.end(), [](const BigFloat& x, const BigFloat& y) { return x > y; });
    return sigmas;
  }
  throw std::runtime_error("singular values did not stabilize; raise the precision");
}

MatrixNorms matrix_norms(const IntMatrix& m, std::optional<mpfr_prec_t> bits) {
  require_matrix(m);
  const mpfr_prec_t p = bits.value_or(std::max<mpfr_prec_t>(64, 2 * static_cast<mpfr_prec_t>(m.size() + m.front().size())));
  BigInt sum_sq = 0;
  BigInt mx = 0;
  for (const auto& row : m)
    for (const auto& x : row) {
      sum_sq += x * x;
      const BigInt a = abs(x);
      if (a > mx) mx = a;
    }
  MatrixNorms out{sqrt(BigFloat(sum_sq, p)), mx, BigFloat(p)};
  if (sum_sq != 0) out.spectral = singular_values(m, p).front();
  return out;
}

mpfr_prec_t default_precision(int d, int k) { return std::max<mpfr_prec_t>(64, 2 * static_cast<mpfr_prec_t>(d + k)); }

EllipsoidSpec ellipsoid_spec(int d, int k, int ell, mpfr_prec_t bits) {
  if (ell < 2) throw std::invalid_argument("ell must be at least 2");
  if (ell > k) throw std::invalid_argument("ell must not exceed k");
  if (bits < 64) throw std::invalid_argument("precision must be at least 64 bits");
  const auto l = build_interpolation_matrix(d, k);
  EllipsoidSpec spec{d, k, ell, singular_values(l.entries, bits), {}};
  while (static_cast<int>(spec.sigmas.size()) < k - 1) spec.sigmas.emplace_back(bits);
  const BigFloat one(1L, bits);
  const BigFloat base = log(BigFloat(make_rational(d + ell - 1, 2), bits));
  for (int i = 0; i <= d; ++i) {
    if (i < k - 1) spec.log_radii.push_back(base - log(max(spec.sigmas[static_cast<std::size_t>(i)], one)));
    else spec.log_radii.push_back(base);
  }
  return spec;
}

BigFloat ellipsoid_log_volume(const std::vector<BigFloat>& log_radii, mpfr_prec_t bits) {
  const long n = static_cast<long>(log_radii.size());
  const BigFloat half_n(make_rational(n, 2), bits);
  BigFloat out = half_n * log(BigFloat::pi(bits)) - log_gamma(half_n + BigFloat(1L, bits));
  for (const auto& r : log_radii) out += r;
  return out;
}

BigFloat ellipsoid_log_volume(const EllipsoidSpec& spec, mpfr_prec_t bits) { return ellipsoid_log_volume(spec.log_radii, bits); }

BigFloat ellipsoid_log_volume(int d, int k, int ell, mpfr_prec_t bits) {
  return ellipsoid_log_volume(ellipsoid_spec(d, k, ell, bits), bits);
}

int minkowski_k(int d) {
  if (d < 1) throw std::invalid_argument("d must be positive");
  int k = 0;
  for (long p = 16; p <= d; p *= 16) ++k;
  return k;
}

MinkowskiResult minkowski_check_unchecked(int d, int k, int ell, std::optional<mpfr_prec_t> bits) {
  const mpfr_prec_t p = bits.value_or(default_precision(d, k));
  auto spec = ellipsoid_spec(d, k, ell, p);
  MinkowskiResult out;
  out.d = d;
  out.k = k;
  out.ell = ell;
  out.log_volume = ellipsoid_log_volume(spec, p);
  const BigFloat log2v = log(BigFloat(2L, p));
  out.log_threshold = log(BigFloat(static_cast<long>(d + ell + 4), p)) + BigFloat(static_cast<long>(d), p) * log2v;
  out.holds = out.log_volume >= out.log_threshold;
  const BigFloat log_pairs = out.log_volume - BigFloat(static_cast<long>(d + 1), p) * log2v;
  out.pairs = log_pairs.sign() < 0 ? BigInt(0) : exp(log_pairs).floor_to_int();
  out.sigmas = std::move(spec.sigmas);
  return out;
}

MinkowskiResult minkowski_check(int d, int ell, std::optional<mpfr_prec_t> bits) {
  const int k = minkowski_k(d);
  if (k < ell) throw std::invalid_argument("d too small: floor(log16 d) < ell");
  return minkowski_check_unchecked(d, k, ell, bits);
}

std::optional<DStarResult> find_d_star(int ell, int lo, int hi, int samples) {
  if (lo < 2 || hi < lo || samples < 2) throw std::invalid_argument("bad D* search range");
  auto holds = [ell](int d) { return minkowski_check_unchecked(d, std::max(ell, minkowski_k(d)), ell).holds; };
  if (!holds(hi)) return std::nullopt;
  int a = lo, b = hi;
  if (holds(a)) b = a;
  while (b - a > 1) {
    const int mid = a + (b - a) / 2;
    if (holds(mid)) b = mid;
    else a = mid;
  }
  int d_star = b;
  for (int round = 0; round < 64; ++round) {
    DStarResult out{d_star, {}};
    std::optional<int> failed;
    for (int i = 0; i < samples; ++i) {
      const int d = d_star + static_cast<int>((3L * d_star * i) / (samples - 1));
      out.sampled.push_back(d);
      if (!holds(d)) {
        failed = d;
        break;
      }
    }
    if (!failed) return out;
    d_star = *failed + 1;
  }
  return std::nullopt;
}

}  // namespace dyncomp::geometry
