#include <gtest/gtest.h>

#include <random>

#include "dyncomp/compression.hpp"
#include "dyncomp/dynamics.hpp"
#include "dyncomp/families.hpp"
#include "dyncomp/tables.hpp"

using namespace dyncomp;
using namespace dyncomp::dynamics;

namespace {

const BinomialPoly kQuadratic({11, -4, 1});

BinomialPoly random_binomial(std::mt19937_64& rng, int min_deg, int max_deg, long max_coeff) {
  const int d = min_deg + static_cast<int>(rng() % (max_deg - min_deg + 1));
  std::vector<BigInt> a(d + 1);
  for (auto& x : a) x = static_cast<long>(rng() % (2 * max_coeff + 1)) - max_coeff;
  if (a.back() == 0) a.back() = 1;
  return BinomialPoly(a);
}

// Distinct complex roots of f - q: the degree of its squarefree part.
long distinct_roots(const BinomialPoly& f, long q) {
  return squarefree_part(to_monomial(f) - RationalPoly::constant(q)).degree();
}

}  // namespace

TEST(Orbit, ReferenceQuadratic) {
  const auto o1 = orbit(kQuadratic, 1, 100);
  ASSERT_TRUE(o1.periodic());
  EXPECT_EQ(std::get<Periodic>(o1.outcome).preperiod, 0);
  EXPECT_EQ(std::get<Periodic>(o1.outcome).period, 3);
  const auto o2 = orbit(kQuadratic, 2, 100);
  ASSERT_TRUE(o2.periodic());
  EXPECT_EQ(std::get<Periodic>(o2.outcome).preperiod, 1);
  EXPECT_EQ(std::get<Periodic>(o2.outcome).period, 3);
  const auto o9 = orbit(kQuadratic, 9, 100);
  ASSERT_TRUE(o9.escaped());
  EXPECT_EQ(std::get<Escaped>(o9.outcome).value, 154);
  EXPECT_THROW(orbit(BinomialPoly({1, 1}), 0, 10), std::invalid_argument);
  EXPECT_THROW(orbit(kQuadratic, 1, 0), std::invalid_argument);
}

TEST(Orbit, InconclusiveWhenStepsRunOut) {
  const auto slow = orbit(kQuadratic, 2, 1);
  EXPECT_TRUE(std::holds_alternative<Inconclusive>(slow.outcome));
}

TEST(EscapeRadius, SoundOnRandomPolynomials) {
  std::mt19937_64 rng(43);
  for (int t = 0; t < 40; ++t) {
    const auto f = to_monomial(random_binomial(rng, 2, 6, 20));
    const auto r = escape_radius(f);
    for (int s = 0; s < 20; ++s) {
      BigRational x = r + make_rational(static_cast<long>(rng() % 1000), 1 + static_cast<long>(rng() % 50));
      if (rng() % 2) x = -x;
      ASSERT_GT(abs(f(x)), abs(x));
    }
  }
  EXPECT_THROW(escape_radius(RationalPoly({BigRational(1), BigRational(2)})), std::invalid_argument);
}

TEST(PreperSearch, Golden) {
  const auto q = preper_search(kQuadratic, 100);
  std::vector<BigInt> expect;
  for (long i = 1; i <= 8; ++i) expect.emplace_back(i);
  EXPECT_EQ(q, expect);
  EXPECT_TRUE(preper_search(BinomialPoly({1, 1, 2}), 100).empty());  // x^2 + 1
  const auto r3 = preper_search(families::r_binomial(3), 100);
  for (long i = 1; i <= 9; ++i) EXPECT_NE(std::find(r3.begin(), r3.end(), BigInt(i)), r3.end());
}

TEST(PreperSearch, RationalIncludesIntegers) {
  const auto rats = preper_search_rational(kQuadratic, 10, 3);
  for (long i = 1; i <= 8; ++i) EXPECT_NE(std::find(rats.begin(), rats.end(), BigRational(i)), rats.end());
  for (const auto& x : rats) EXPECT_TRUE(orbit(kQuadratic, x, 1000).periodic());
}

TEST(Orbit, PAdicEscapeIsSound) {
  const auto half = orbit(kQuadratic, BigRational(1, 2), 10);
  ASSERT_TRUE(half.escaped());
  EXPECT_EQ(std::get<Escaped>(half.outcome).prime, 2);
  // Once certified, the denominator keeps growing along the orbit.
  std::mt19937_64 rng(53);
  for (int t = 0; t < 30; ++t) {
    const auto f = random_binomial(rng, 2, 5, 9);
    const BigRational x0 = make_rational(static_cast<long>(rng() % 41) - 20, 2 + static_cast<long>(rng() % 6));
    const auto rec = orbit(f, x0, 50);
    const auto* e = std::get_if<Escaped>(&rec.outcome);
    if (e == nullptr || e->prime == 0) continue;
    BigRational x = e->value;
    BigInt den = x.get_den();
    for (int s = 0; s < 3; ++s) {
      x = f(x);
      ASSERT_GT(abs(x.get_den()), abs(den));
      ASSERT_TRUE(mpz_divisible_ui_p(x.get_den_mpz_t(), e->prime));
      den = x.get_den();
    }
  }
}

TEST(PreimageCount, Golden) {
  EXPECT_EQ(preimage_count_exact(kQuadratic, 7).total, 14);
  // (x-1)^2 + 1: the fiber over 1 is fully ramified.
  const auto sq = preimage_count_exact(BinomialPoly({2, -1, 2}), 1);
  EXPECT_EQ(sq.total, 1);
  EXPECT_EQ(sq.ramification_deficit, 1);
  EXPECT_EQ(preimage_count_exact(BinomialPoly({1, -1, 2}), 1).total, 2);  // (x-1)^2 = 1 at 0 and 2
  EXPECT_EQ(preimage_count_exact(BinomialPoly({0, 1, 2}), 2).total, 4);  // x^2
  EXPECT_THROW(preimage_count_exact(BinomialPoly({0, 1}), 3), std::invalid_argument);
  EXPECT_THROW(preimage_count_exact(kQuadratic, 0), std::invalid_argument);
}

TEST(PreimageCount, BoundsOnRandomPolynomials) {
  std::mt19937_64 rng(47);
  for (int t = 0; t < 50; ++t) {
    const auto f = random_binomial(rng, 2, 8, 20);
    const long n = 1 + rng() % 12;
    const long d = f.degree();
    const auto pc = preimage_count_exact(f, n);
    ASSERT_LE(d * n - d + 1, pc.total);
    ASSERT_LE(pc.total, d * n);
    long sum = 0;
    for (long q = 1; q <= n; ++q) {
      ASSERT_EQ(pc.per_fiber[q - 1], distinct_roots(f, q));
      sum += pc.per_fiber[q - 1];
    }
    ASSERT_EQ(sum, pc.total);
    ASSERT_EQ(pc.ramification_deficit, d * n - pc.total);
  }
}

TEST(CommonBound, Golden) {
  const auto b = common_preper_bound(kQuadratic, 8, 7);
  EXPECT_EQ(b.count, 14);
  EXPECT_EQ(b.floor, 13);
  const auto& sextic = tables::table1()[4];
  EXPECT_EQ(common_preper_bound(tables::record_binomial(sextic), 14, 10).floor, 55);
  const auto t10 = tables::record_binomial(tables::table3()[0]);
  const auto w = best_window(t10, tables::kWindowCap);
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(common_preper_bound(t10, w->m, w->m - 1).count, 190);
  EXPECT_THROW(common_preper_bound(kQuadratic, 9, 7), std::invalid_argument);
  EXPECT_THROW(common_preper_bound(kQuadratic, 7, 7), std::invalid_argument);
}

TEST(AberthRoots, SimpleQuadratic) {
  const auto roots = aberth_roots(RationalPoly({BigRational(-2), BigRational(0), BigRational(1)}), 128);
  ASSERT_TRUE(roots.has_value());
  ASSERT_EQ(roots->size(), 2u);
  for (const auto& z : *roots) {
    EXPECT_LT(abs(z.im).to_double(), 1e-30);
    EXPECT_NEAR(std::abs(z.re.to_double()), std::sqrt(2.0), 1e-15);
  }
}

TEST(DepthSearch, CoprimeFixedPointsGiveNothing) {
  DepthSearchOptions opt;
  opt.max_pre = 0;
  opt.max_per = 1;
  const BinomialPoly f({0, 1, 2});  // x^2, fixed points 0 and 1
  const BinomialPoly g({1, 1, 2});  // x^2 + 1, fixed points off the real line
  EXPECT_EQ(common_preper_depth_search(f, g, opt).count, 0);
}

TEST(DepthSearch, BadOptionsRejected) {
  DepthSearchOptions opt;
  opt.max_per = 0;
  EXPECT_THROW(common_preper_depth_search(kQuadratic, kQuadratic.plus_constant(1), opt), std::invalid_argument);
  opt.max_per = 3;
  opt.max_pre = 20;
  EXPECT_THROW(common_preper_depth_search(kQuadratic, kQuadratic.plus_constant(1), opt), std::invalid_argument);
}

TEST(DepthSearch, StableUnderPrecisionDoubling) {
  DepthSearchOptions opt;
  const auto a = common_preper_depth_search(kQuadratic, kQuadratic.plus_constant(1), opt);
  EXPECT_TRUE(a.heuristic);
  opt.precision_bits *= 2;
  opt.tol = opt.tol * opt.tol;
  const auto b = common_preper_depth_search(kQuadratic, kQuadratic.plus_constant(1), opt);
  EXPECT_EQ(a.count, b.count);
  EXPECT_EQ(a.count, static_cast<long>(a.points.size()));
  // The 14 certified points of the (8, 7) window are all found.
  EXPECT_GE(a.count, 14);
  long layer_sum = 0;
  for (const auto& l : a.layers) {
    EXPECT_LE(l.retained, l.roots);
    layer_sum += l.retained;
  }
  EXPECT_GE(layer_sum, a.count);
}

TEST(DepthSearch, RootFindingErrorNamesLayer) {
  const RootFindingError e(2, 3);
  EXPECT_EQ(e.a(), 2);
  EXPECT_EQ(e.c(), 3);
  EXPECT_NE(std::string(e.what()).find('2'), std::string::npos);
}
