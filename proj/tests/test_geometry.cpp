#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "dyncomp/geometry.hpp"

using namespace dyncomp;
using namespace dyncomp::geometry;

namespace {

constexpr mpfr_prec_t kBits = 200;

double rel_err(const BigFloat& a, const BigFloat& b) {
  const BigFloat scale = max(abs(b), BigFloat(1L, a.precision()));
  return (abs(a - b) / scale).to_double();
}

BigFloat mpfr_lgamma_oracle(const BigFloat& x) {
  BigFloat out(x.precision());
  int sign = 0;
  mpfr_lgamma(out.get(), &sign, x.get(), MPFR_RNDN);
  return out;
}

IntMatrix transpose(const IntMatrix& m) {
  IntMatrix t(m[0].size(), lattice::IntVector(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[0].size(); ++j) t[j][i] = m[i][j];
  return t;
}

}  // namespace

TEST(Interpolation, Golden) {
  const auto l = build_interpolation_matrix(2, 2);
  EXPECT_EQ(l.entries, (IntMatrix{{1, -3, 3}}));
  EXPECT_THROW(build_interpolation_matrix(1, 3), std::invalid_argument);
  EXPECT_THROW(build_interpolation_matrix(3, 1), std::invalid_argument);
}

TEST(Interpolation, ClosedFormEqualsNewtonTimesDifference) {
  for (int d = 2; d <= 20; ++d)
    for (int k = 2; k <= 6; ++k)
      ASSERT_EQ(build_interpolation_matrix(d, k).entries, multiply(newton_evaluation_matrix(d, k), forward_difference_matrix(d)))
          << d << "," << k;
}

TEST(Interpolation, ExactOnRandomPolynomials) {
  std::mt19937_64 rng(37);
  for (int d = 2; d <= 20; ++d)
    for (int k = 2; k <= 6; ++k) {
      const auto l = build_interpolation_matrix(d, k);
      for (int t = 0; t < 50; ++t) {
        std::vector<BigInt> c(d + 1);
        for (auto& x : c) x = static_cast<long>(rng() % 61) - 30;
        const BinomialPoly g(c);
        const auto v = g.values(0, d);
        for (int r = 0; r < k - 1; ++r) {
          BigInt s = 0;
          for (int j = 0; j <= d; ++j) s += l.entries[r][j] * v[j];
          ASSERT_EQ(s, g(static_cast<long>(d + 1 + r)));
        }
      }
    }
}

TEST(Norms, RankOneGolden) {
  const auto n = matrix_norms(IntMatrix{{1, -3, 3}}, kBits);
  EXPECT_EQ(n.max, 3);
  EXPECT_LT(rel_err(n.frobenius, sqrt(BigFloat(19L, kBits))), 1e-50);
  EXPECT_LT(rel_err(n.spectral, n.frobenius), 1e-50);
}

TEST(Norms, ChainOnInterpolationMatrices) {
  for (int d = 2; d <= 16; ++d)
    for (int k = 2; k <= 6; ++k) {
      const auto& m = build_interpolation_matrix(d, k).entries;
      const auto n = matrix_norms(m, kBits);
      const BigFloat mx(n.max, kBits);
      const BigFloat slack(1.0 + 1e-40, kBits);
      const long rank = std::min<long>(k - 1, d + 1);
      ASSERT_LE(mx, n.spectral * slack);
      ASSERT_LE(n.spectral, n.frobenius * slack);
      ASSERT_LE(n.frobenius, sqrt(BigFloat(rank, kBits)) * n.spectral * slack);
      ASSERT_LE(n.frobenius, sqrt(BigFloat(static_cast<long>((k - 1) * (d + 1)), kBits)) * mx * slack);
    }
}

TEST(SingularValues, TraceAndTransposeInvariance) {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 20; ++t) {
    const int r = 1 + rng() % 5, c = 1 + rng() % 6;
    IntMatrix m(r, lattice::IntVector(c));
    BigInt fro2 = 0;
    for (auto& row : m)
      for (auto& x : row) {
        x = static_cast<long>(rng() % 41) - 20;
        fro2 += x * x;
      }
    const auto s = singular_values(m, kBits);
    ASSERT_EQ(s.size(), static_cast<std::size_t>(std::min(r, c)));
    BigFloat sum(kBits);
    for (std::size_t i = 0; i < s.size(); ++i) {
      sum += s[i] * s[i];
      if (i > 0) EXPECT_LE(s[i], s[i - 1]);
    }
    EXPECT_LT(rel_err(sum, BigFloat(fro2, kBits)), 1e-40);
    const auto st = singular_values(transpose(m), kBits);
    for (std::size_t i = 0; i < s.size(); ++i) EXPECT_LT((abs(s[i] - st[i])).to_double(), 1e-30);
  }
}

TEST(SingularValues, DiagonalMatrix) {
  const auto s = singular_values(IntMatrix{{0, -5, 0}, {2, 0, 0}}, kBits);
  ASSERT_EQ(s.size(), 2u);
  EXPECT_LT(rel_err(s[0], BigFloat(5L, kBits)), 1e-50);
  EXPECT_LT(rel_err(s[1], BigFloat(2L, kBits)), 1e-50);
}

TEST(LogGamma, MatchesMpfrAndFactorials) {
  for (double x : {0.001, 0.5, 1.0, 1.5, 2.0, 3.7, 10.25, 57.5, 1000.0, 123456.789}) {
    const BigFloat bx(x, kBits);
    EXPECT_LT(rel_err(log_gamma(bx), mpfr_lgamma_oracle(bx)), 1e-55) << x;
  }
  BigFloat logfact(kBits);
  for (long n = 1; n <= 60; ++n) {
    EXPECT_LT(rel_err(log_gamma(BigFloat(n, kBits)), logfact), 1e-55) << n;
    logfact += log(BigFloat(n, kBits));
  }
  // Γ(1/2) = √π.
  EXPECT_LT(rel_err(log_gamma(BigFloat(0.5, kBits)), log(sqrt(BigFloat::pi(kBits)))), 1e-55);
  EXPECT_THROW(log_gamma(BigFloat(0L, kBits)), std::domain_error);
  EXPECT_THROW(log_gamma(BigFloat(-1.5, kBits)), std::domain_error);
}

TEST(LogGamma, BernoulliNumbers) {
  EXPECT_EQ(bernoulli_even(1), BigRational(1, 6));
  EXPECT_EQ(bernoulli_even(2), BigRational(-1, 30));
  EXPECT_EQ(bernoulli_even(3), BigRational(1, 42));
  EXPECT_EQ(bernoulli_even(6), BigRational(-691, 2730));
  EXPECT_EQ(bernoulli_even(7), BigRational(7, 6));
}

TEST(Ellipsoid, UnitBallVolumes) {
  // V_0 = 1, V_1 = 2, V_n = 2 pi / n V_{n-2}.
  std::vector<BigFloat> v{BigFloat(1L, kBits), BigFloat(2L, kBits)};
  for (int n = 2; n <= 51; ++n) v.push_back(v[n - 2] * BigFloat::pi(kBits) * BigFloat(2L, kBits) / BigFloat(static_cast<long>(n), kBits));
  for (int n = 1; n <= 51; ++n) {
    const std::vector<BigFloat> zeros(n, BigFloat(kBits));
    EXPECT_LT(rel_err(ellipsoid_log_volume(zeros, kBits), log(v[n])), 1e-50) << n;
  }
}

TEST(Ellipsoid, SmallestCase) {
  const auto spec = ellipsoid_spec(2, 2, 2, kBits);
  ASSERT_EQ(spec.sigmas.size(), 1u);
  ASSERT_EQ(spec.log_radii.size(), 3u);
  const BigFloat expect = log(BigFloat(9L, kBits) * BigFloat::pi(kBits) / BigFloat(2L, kBits) / sqrt(BigFloat(19L, kBits)));
  EXPECT_LT(rel_err(ellipsoid_log_volume(spec, kBits), expect), 1e-50);
  EXPECT_NEAR(exp(ellipsoid_log_volume(2, 2, 2, kBits)).to_double(), 3.24, 1e-2);
  EXPECT_THROW(ellipsoid_spec(2, 2, 3, kBits), std::invalid_argument);
  EXPECT_THROW(ellipsoid_spec(2, 2, 1, kBits), std::invalid_argument);
  EXPECT_THROW(ellipsoid_spec(2, 2, 2, 32), std::invalid_argument);
}

TEST(Minkowski, KAndSmallDegreeDiagnostic) {
  EXPECT_EQ(minkowski_k(15), 0);
  EXPECT_EQ(minkowski_k(16), 1);
  EXPECT_EQ(minkowski_k(255), 1);
  EXPECT_EQ(minkowski_k(256), 2);
  EXPECT_EQ(minkowski_k(4095), 2);
  EXPECT_EQ(minkowski_k(4096), 3);
  EXPECT_THROW(minkowski_check(100, 2), std::invalid_argument);
  const auto r = minkowski_check_unchecked(2, 2, 2);
  EXPECT_FALSE(r.holds);
  EXPECT_NEAR(exp(r.log_volume).to_double(), 3.2432885, 1e-3);
  EXPECT_NEAR(exp(r.log_threshold).to_double(), 32.0, 1e-9);
}

TEST(Minkowski, HoldsAt256) {
  const auto r = minkowski_check(256, 2);
  EXPECT_EQ(r.k, 2);
  EXPECT_TRUE(r.holds);
  EXPECT_GT(r.pairs, 0);
}
