#include "dyncomp/lattice.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <stdexcept>

namespace dyncomp::lattice {

namespace {

BigInt dot(const IntVector& a, const IntVector& b) {
  BigInt s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void axpy(IntVector& target, const BigInt& q, const IntVector& source) {
  // target -= q * source
  for (std::size_t i = 0; i < target.size(); ++i) mpz_submul(target[i].get_mpz_t(), q.get_mpz_t(), source[i].get_mpz_t());
}

void check_delta(const BigRational& delta) {
  if (!(delta > BigRational(1, 4) && delta < 1)) throw std::invalid_argument("LLL delta must lie in (1/4, 1)");
}

// Fraction-free LLL state (Cohen, integral variant). Indices are 1-based to
// keep the recurrences readable; slot 0 of `d` holds the constant 1.
class IntegralLll {
 public:
  IntegralLll(IntMatrix rows, const BigRational& delta)
      : n_(rows.size()), p_(delta.get_num()), q_(delta.get_den()), b_(n_ + 1), h_(n_ + 1), d_(n_ + 1), lam_(n_ + 1) {
    for (std::size_t i = 1; i <= n_; ++i) {
      b_[i] = std::move(rows[i - 1]);
      h_[i].assign(n_, BigInt(0));
      h_[i][i - 1] = 1;
      lam_[i].assign(n_ + 1, BigInt(0));
    }
  }

  void run() {
    if (n_ == 0) return;
    d_[0] = 1;
    d_[1] = dot(b_[1], b_[1]);
    if (d_[1] == 0) throw std::invalid_argument("LLL input rows are linearly dependent");
    std::size_t k = 2;
    std::size_t kmax = 1;
    while (k <= n_) {
      if (k > kmax) {
        kmax = k;
        extend_gram_schmidt(k);
      }
      reduce(k, k - 1);
      if (lovasz_fails(k)) {
        swap(k, kmax);
        k = std::max<std::size_t>(2, k - 1);
        continue;
      }
      for (std::size_t l = k - 1; l-- > 1;) reduce(k, l);
      ++k;
    }
  }

  LllResult result() && {
    LllResult out;
    out.basis.reserve(n_);
    out.transform.reserve(n_);
    for (std::size_t i = 1; i <= n_; ++i) {
      out.basis.push_back(std::move(b_[i]));
      out.transform.push_back(std::move(h_[i]));
    }
    return out;
  }

 private:
  void extend_gram_schmidt(std::size_t k) {
    for (std::size_t j = 1; j <= k; ++j) {
      BigInt u = dot(b_[k], b_[j]);
      for (std::size_t i = 1; i < j; ++i) {
        u = d_[i] * u - lam_[k][i] * lam_[j][i];
        mpz_divexact(u.get_mpz_t(), u.get_mpz_t(), d_[i - 1].get_mpz_t());
      }
      if (j < k) {
        lam_[k][j] = std::move(u);
      } else {
        if (u == 0) throw std::invalid_argument("LLL input rows are linearly dependent");
        d_[k] = std::move(u);
      }
    }
  }

  void reduce(std::size_t k, std::size_t l) {
    BigInt twice = 2 * lam_[k][l];
    if (abs(twice) <= d_[l]) return;
    // nearest integer to lam / d_l
    BigInt r = twice + d_[l];
    BigInt den = 2 * d_[l];
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_mpz_t(), den.get_mpz_t());
    axpy(b_[k], q, b_[l]);
    axpy(h_[k], q, h_[l]);
    mpz_submul(lam_[k][l].get_mpz_t(), q.get_mpz_t(), d_[l].get_mpz_t());
    for (std::size_t i = 1; i < l; ++i) mpz_submul(lam_[k][i].get_mpz_t(), q.get_mpz_t(), lam_[l][i].get_mpz_t());
  }

  bool lovasz_fails(std::size_t k) const {
    // delta * B_{k-1} > B_k + mu^2 B_{k-1}, cleared of denominators.
    const BigInt lhs = q_ * (d_[k] * d_[k - 2] + lam_[k][k - 1] * lam_[k][k - 1]);
    const BigInt rhs = p_ * d_[k - 1] * d_[k - 1];
    return lhs < rhs;
  }

  void swap(std::size_t k, std::size_t kmax) {
    std::swap(b_[k], b_[k - 1]);
    std::swap(h_[k], h_[k - 1]);
    for (std::size_t j = 1; j + 1 < k; ++j) std::swap(lam_[k][j], lam_[k - 1][j]);
    const BigInt lambda = lam_[k][k - 1];
    BigInt big_b = d_[k - 2] * d_[k] + lambda * lambda;
    mpz_divexact(big_b.get_mpz_t(), big_b.get_mpz_t(), d_[k - 1].get_mpz_t());
    for (std::size_t i = k + 1; i <= kmax; ++i) {
      const BigInt t = lam_[i][k];
      BigInt a = d_[k] * lam_[i][k - 1] - lambda * t;
      mpz_divexact(a.get_mpz_t(), a.get_mpz_t(), d_[k - 1].get_mpz_t());
      lam_[i][k] = std::move(a);
      BigInt c = big_b * t + lambda * lam_[i][k];
      mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), d_[k].get_mpz_t());
      lam_[i][k - 1] = std::move(c);
    }
    d_[k - 1] = std::move(big_b);
  }

  std::size_t n_;
  BigInt p_, q_;
  std::vector<IntVector> b_;
  std::vector<IntVector> h_;
  std::vector<BigInt> d_;
  std::vector<std::vector<BigInt>> lam_;
};

}  // namespace

LatticeBasis build_lattice(int d, int k) {
  if (d < 2) throw std::invalid_argument("lattice degree must be at least 2");
  if (k < 1) throw std::invalid_argument("lattice extension k must be at least 1");
  LatticeBasis basis{d, k, {}};
  basis.vectors.reserve(static_cast<std::size_t>(d + 1));
  for (int i = 0; i <= d; ++i) {
    IntVector u;
    u.reserve(static_cast<std::size_t>(d + k));
    for (int j = 1; j <= d + k; ++j) u.push_back(binomial_coeff(BigInt(j), static_cast<unsigned long>(i)));
    basis.vectors.push_back(std::move(u));
  }
  return basis;
}

BigRational default_delta() { return BigRational(3, 4); }

LllResult lll_reduce(const IntMatrix& rows, const BigRational& delta) {
  check_delta(delta);
  if (!rows.empty()) {
    const auto width = rows.front().size();
    for (const auto& r : rows)
      if (r.size() != width) throw std::invalid_argument("LLL rows must have equal length");
  }
  IntegralLll state(rows, delta);
  state.run();
  return std::move(state).result();
}

ReducedBasis lll_reduce(const LatticeBasis& basis, const BigRational& delta) {
  auto r = lll_reduce(basis.vectors, delta);
  return ReducedBasis{basis.d, basis.k, std::move(r.basis), delta, std::move(r.transform)};
}

bool is_lll_reduced(const IntMatrix& rows, const BigRational& delta) {
  const std::size_t n = rows.size();
  if (n == 0) return true;
  const std::size_t m = rows.front().size();
  std::vector<std::vector<BigRational>> star(n, std::vector<BigRational>(m));
  std::vector<BigRational> norms(n);
  std::vector<std::vector<BigRational>> mu(n, std::vector<BigRational>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t t = 0; t < m; ++t) star[i][t] = rows[i][t];
    for (std::size_t j = 0; j < i; ++j) {
      BigRational ip = 0;
      for (std::size_t t = 0; t < m; ++t) ip += BigRational(rows[i][t]) * star[j][t];
      mu[i][j] = ip / norms[j];
      if (abs(mu[i][j]) > BigRational(1, 2)) return false;
      for (std::size_t t = 0; t < m; ++t) star[i][t] -= mu[i][j] * star[j][t];
    }
    norms[i] = 0;
    for (std::size_t t = 0; t < m; ++t) norms[i] += star[i][t] * star[i][t];
    if (norms[i] == 0) return false;
    if (i > 0 && norms[i] < (delta - mu[i][i - 1] * mu[i][i - 1]) * norms[i - 1]) return false;
  }
  return true;
}

std::optional<std::vector<BigRational>> solve_coordinates(const IntMatrix& rows, const IntVector& target) {
  // Solve sum_i c_i rows[i] = target: m equations, n unknowns.
  const std::size_t n = rows.size();
  const std::size_t m = target.size();
  std::vector<std::vector<BigRational>> a(m, std::vector<BigRational>(n + 1));
  for (std::size_t t = 0; t < m; ++t) {
    for (std::size_t i = 0; i < n; ++i) a[t][i] = rows[i][t];
    a[t][n] = target[t];
  }
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    std::size_t piv = r;
    while (piv < m && a[piv][c] == 0) ++piv;
    if (piv == m) continue;
    std::swap(a[piv], a[r]);
    const BigRational inv = BigRational(1) / a[r][c];
    for (auto& x : a[r]) x *= inv;
    for (std::size_t t = 0; t < m; ++t) {
      if (t == r || a[t][c] == 0) continue;
      const BigRational f = a[t][c];
      for (std::size_t j = c; j <= n; ++j) a[t][j] -= f * a[r][j];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (std::size_t t = r; t < m; ++t)
    if (a[t][n] != 0) return std::nullopt;
  std::vector<BigRational> coords(n, BigRational(0));
  for (std::size_t i = 0; i < r; ++i) coords[pivot_col[i]] = a[i][n];
  return coords;
}

BigInt determinant(const IntMatrix& square) {
  const std::size_t n = square.size();
  if (n == 0) return 1;
  IntMatrix a = square;
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && a[swap_row][k] == 0) ++swap_row;
      if (swap_row == n) return 0;
      std::swap(a[k], a[swap_row]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        BigInt v = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        a[i][j] = std::move(v);
      }
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

namespace {

bool coeff_less(const BinomialPoly& a, const BinomialPoly& b) {
  const auto& x = a.coeffs();
  const auto& y = b.coeffs();
  if (x.size() != y.size()) return x.size() < y.size();
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] != y[i]) return x[i] < y[i];
  return false;
}

bool witness_less(const CompressionWitness& a, const CompressionWitness& b) {
  if (a.n != b.n) return a.n < b.n;
  return coeff_less(a.poly, b.poly);
}

std::optional<CompressionWitness> accept_candidate(const IntVector& w, int d, int k) {
  const auto [lo_it, hi_it] = std::minmax_element(w.begin(), w.end());
  const BigInt spread = *hi_it - *lo_it;
  const long m = d + k;
  if (spread + 1 > m) return std::nullopt;
  const BigInt shift = 1 - *lo_it;
  std::vector<BigInt> values;
  values.reserve(w.size());
  for (const auto& x : w) values.push_back(x + shift);
  const std::span<const BigInt> head(values.data(), static_cast<std::size_t>(d + 1));
  BinomialPoly f = interpolate(head, 1);
  if (f.degree() < 2) return std::nullopt;
  // Lattice points are determined by their first d+1 values; the tail must agree.
  for (long x = d + 2; x <= m; ++x)
    if (f(x) != values[static_cast<std::size_t>(x - 1)]) throw std::logic_error("candidate is not a lattice point");
  auto check = check_window(f, m, BigInt(spread + 1).get_si());
  if (auto* wit = std::get_if<CompressionWitness>(&check)) return std::move(*wit);
  throw std::logic_error("harvested candidate failed window re-verification");
}

}  // namespace

std::vector<CompressionWitness> harvest(const ReducedBasis& reduced) {
  const auto& b = reduced.vectors;
  std::vector<IntVector> candidates;
  auto push_pair = [&](IntVector v) {
    IntVector neg = v;
    for (auto& x : neg) x = -x;
    candidates.push_back(std::move(v));
    candidates.push_back(std::move(neg));
  };
  for (std::size_t i = 0; i < b.size(); ++i) push_pair(b[i]);
  for (std::size_t i = 0; i < b.size(); ++i) {
    for (std::size_t j = i + 1; j < b.size(); ++j) {
      IntVector sum = b[i], diff = b[i];
      for (std::size_t t = 0; t < sum.size(); ++t) {
        sum[t] += b[j][t];
        diff[t] -= b[j][t];
      }
      push_pair(std::move(sum));
      push_pair(std::move(diff));
    }
  }
  std::vector<CompressionWitness> out;
  for (const auto& c : candidates) {
    if (auto w = accept_candidate(c, reduced.d, reduced.k)) out.push_back(std::move(*w));
  }
  std::sort(out.begin(), out.end(), witness_less);
  out.erase(std::unique(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.poly == y.poly; }), out.end());
  return out;
}

std::vector<CompressionWitness> search(int d, int k, const BigRational& delta) {
  return harvest(lll_reduce(build_lattice(d, k), delta));
}

int default_k_max(int d) { return static_cast<int>(std::bit_width(static_cast<unsigned>(std::max(d, 1)))) - 1 + 8; }

const CompressionWitness* best_of(const std::vector<CompressionWitness>& witnesses) {
  if (witnesses.empty()) return nullptr;
  return &*std::min_element(witnesses.begin(), witnesses.end(), witness_less);
}

std::optional<ScheduleHit> search_schedule(int d, int k_max, const BigRational& delta) {
  for (int k = k_max; k >= 2; --k) {
    const auto found = search(d, k, delta);
    if (const auto* best = best_of(found)) return ScheduleHit{k, *best};
  }
  return std::nullopt;
}

}  // namespace dyncomp::lattice
