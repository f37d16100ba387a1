#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <random>

#include "test_support.hpp"
#include "zerodist/generate.hpp"
#include "zerodist/product.hpp"

namespace zerodist {
namespace {

using testing::dist;
using testing::reals;

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
const double kLnSqrt2 = 0.5 * std::log(2.0);

// Oracle: ln|prod (1 - z/z_k) e^{z/z_k}| computed with complex arithmetic.
double naive_log_modulus(const PointDistribution& zeros, std::complex<double> z) {
  std::complex<double> prod = 1.0;
  double exp_part = 0.0;
  for (const auto& e : zeros.entries()) {
    const auto u = z / e.point.value();
    for (Multiplicity m = 0; m < e.mult; ++m) {
      prod *= (1.0 - u);
      exp_part += u.real();
    }
  }
  return std::log(std::abs(prod)) + exp_part;
}

TEST(LogModulus, Examples) {
  const CanonicalProduct one_zero(reals({1.0}));
  EXPECT_NEAR(log_modulus(one_zero, {0.0, 1.0}), kLnSqrt2, 1e-15);
  EXPECT_NEAR(kLnSqrt2, 0.34657, 1e-5);
  EXPECT_EQ(log_modulus(one_zero, {1.0, 0.0}), kNegInf);

  const CanonicalProduct unit;
  EXPECT_EQ(log_modulus(unit, {3.0, -7.0}), 0.0);
}

TEST(LogModulus, OriginAndExponentialFactors) {
  const CanonicalProduct zm(PointDistribution{}, 2, {0.5, 0.0});
  EXPECT_EQ(log_modulus(zm, {0.0, 0.0}), kNegInf);
  EXPECT_NEAR(log_modulus(zm, {2.0, 0.0}), 2.0 * std::log(2.0) + 1.0, 1e-15);

  // origin zeros in the distribution move into the z^m factor
  const CanonicalProduct moved(dist({{0, 0, 3}, {2, 0, 1}}));
  EXPECT_EQ(moved.origin_mult(), 3u);
  EXPECT_EQ(moved.zeros(), reals({2.0}));
  EXPECT_EQ(moved.zero_set(), dist({{0, 0, 3}, {2, 0, 1}}));
}

TEST(LogModulus, MatchesNaiveProduct) {
  const auto zeros = generate({Family::sector, 30, 1.0, 50.0, 1.2, 4});
  const CanonicalProduct p(zeros);
  std::mt19937_64 rng(9);
  for (int i = 0; i < 100; ++i) {
    const double re = 40.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5);
    const double im = 40.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5);
    const double want = naive_log_modulus(zeros, {re, im});
    EXPECT_NEAR(log_modulus(p, {re, im}), want, 1e-10 * (1.0 + std::abs(want)));
  }
}

TEST(LogModulus, SmallArgumentIsAccurate) {
  // ln|1-u| + Re u = -|u|^2/2 + O(|u|^3) for real u: cancellation-free
  const CanonicalProduct p(reals({1e6}));
  const double v = log_modulus(p, {1e-2, 0.0});
  const double u = 1e-8;
  EXPECT_NEAR(v, std::log1p(-u) + u, 1e-30);
  EXPECT_LT(v, 0.0);
}

TEST(LogModulus, NearZeroIsFiniteAndVeryNegative) {
  const CanonicalProduct p(dist({{1, 0, 1}, {-2, 0, 1}, {0, 3, 1}, {1, -1, 2}}));
  for (const auto& e : p.zeros().entries()) {
    const auto z = e.point.value() + std::complex<double>(1e-8, 0.0);
    const double v = log_modulus(p, z);
    EXPECT_TRUE(std::isfinite(v));
    EXPECT_LE(v, -10.0);
  }
}

TEST(LogModulus, NearZeroSplitsOffTheLocalFactor) {
  // Large zero sets: the other factors may be large, but the local factor
  // still contributes mult * (ln|1 - z/z_k| + Re(z/z_k)) without overflow.
  const auto zeros = generate({Family::symmetric, 20, 1.0, 100.0, 1.0, 5});
  const CanonicalProduct p(zeros);
  for (const auto& e : zeros.entries()) {
    const auto z = e.point.value() + std::complex<double>(1e-8, 0.0);
    const double v = log_modulus(p, z);
    ASSERT_TRUE(std::isfinite(v));
    std::vector<Entry> rest;
    for (const auto& o : zeros.entries()) {
      if (!(o.point == e.point)) rest.push_back(o);
    }
    const double others = log_modulus(CanonicalProduct{PointDistribution(rest)}, z);
    const auto u = z / e.point.value();
    const double local = static_cast<double>(e.mult) * (std::log(std::abs(1.0 - u)) + u.real());
    EXPECT_NEAR(v, others + local, 1e-6 * (1.0 + std::abs(others)));
    EXPECT_LT(local, -10.0);
  }
}

class ProductProperty : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(ProductProperty, SymmetryAdditivityScaling) {
  const std::uint64_t seed = GetParam();
  const auto half = generate({Family::sector, 16, 1.0, 64.0, 1.0, seed});
  std::vector<Entry> sym;
  for (const auto& e : half.entries()) {
    sym.push_back(e);
    sym.push_back({{e.point.re, -e.point.im}, e.mult});
  }
  const PointDistribution symmetric(sym);
  const CanonicalProduct ps(symmetric);

  const auto other = generate({Family::lattice, 12, 1.0, 30.0, 1.0, seed + 77});
  const CanonicalProduct pa(half, 1, {0.25, -0.5});
  const CanonicalProduct pb(other, 2, {0.0, 0.5});
  const CanonicalProduct pab(union_of(half, other), 3, {0.25, 0.0});

  std::vector<Entry> doubled;
  for (const auto& e : half.entries()) doubled.push_back({e.point, 2 * e.mult});
  const CanonicalProduct p1(half);
  const CanonicalProduct p2{PointDistribution(doubled)};

  std::mt19937_64 rng(seed);
  for (int i = 0; i < 50; ++i) {
    const double re = 80.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5);
    const double im = 80.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5);
    const std::complex<double> z{re, im};
    const double s = log_modulus(ps, z);
    EXPECT_NEAR(log_modulus(ps, std::conj(z)), s, 1e-12 * (1.0 + std::abs(s)));

    const double ab = log_modulus(pab, z);
    EXPECT_NEAR(log_modulus(pa, z) + log_modulus(pb, z), ab, 1e-12 * (1.0 + std::abs(ab)));

    const double one = log_modulus(p1, z);
    EXPECT_NEAR(log_modulus(p2, z), 2.0 * one, 1e-12 * (1.0 + std::abs(one)));
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, ProductProperty, ::testing::Range<std::uint64_t>(1, 11));

TEST(ImagAxisTrace, Examples) {
  const std::vector<double> ys{-3.0, 0.0, 1.0, 2.5};
  for (double v : imag_axis_trace(CanonicalProduct{}, ys)) EXPECT_EQ(v, 0.0);
  const std::vector<double> y1{1.0};
  EXPECT_NEAR(imag_axis_trace(CanonicalProduct(reals({1.0})), y1)[0], kLnSqrt2, 1e-15);
  EXPECT_EQ(imag_axis_trace(CanonicalProduct(dist({{0, 1, 1}})), y1)[0], kNegInf);
}

TEST(TypeEstimate, Examples) {
  const std::vector<double> radii{1.0, 10.0, 100.0};
  EXPECT_EQ(type_estimate(CanonicalProduct{}, radii, 16).value, 0.0);

  const CanonicalProduct ez(PointDistribution{}, 0, {1.0, 0.0});
  const auto t = type_estimate(ez, radii, 16);
  EXPECT_NEAR(t.value, 1.0, 1e-15);

  EXPECT_THROW(type_estimate(ez, std::vector<double>{}, 8), DomainError);
  EXPECT_THROW(type_estimate(ez, std::vector<double>{-1.0}, 8), DomainError);
}

TEST(TypeEstimate, PerturbsRadiiThatHitZeroModuli) {
  const CanonicalProduct p(reals({2.0}));
  const auto t = type_estimate(p, std::vector<double>{2.0}, 4);
  ASSERT_EQ(t.sample_radii.size(), 1u);
  EXPECT_GT(t.sample_radii[0], 2.0);
  EXPECT_TRUE(std::isfinite(t.value));
}

TEST(TypeEstimate, DyadicZerosAgreeWithDenseSampling) {
  std::vector<Entry> e;
  for (int k = 1; k <= 10; ++k) {
    e.push_back({{std::ldexp(1.0, k), 0.0}, 1});
    e.push_back({{-std::ldexp(1.0, k), 0.0}, 1});
  }
  const CanonicalProduct p{PointDistribution(e)};
  for (const std::vector<double>& radii :
       {std::vector<double>{3.0, 6.0, 12.0, 24.0}, std::vector<double>{300.0, 600.0, 1200.0, 2400.0}}) {
    const auto coarse = type_estimate(p, radii, 64);
    // dense oracle: direct maximisation with 4096 angles per circle
    double dense = 0.0;
    for (double r : radii) {
      for (int j = 0; j < 4096; ++j) {
        const double theta = 2.0 * std::numbers::pi * j / 4096.0;
        dense = std::max(dense, naive_log_modulus(p.zeros(), std::polar(r, theta)) / r);
      }
    }
    EXPECT_GT(coarse.value, 0.0);
    EXPECT_NEAR(coarse.value, dense, 0.1 * dense);
  }
}

TEST(Dominance, Examples) {
  const std::vector<double> ys{-4.0, -1.0, 1.0, 2.0, 8.0};
  const CanonicalProduct f(reals({1.0}));
  const CanonicalProduct unit;
  EXPECT_TRUE(dominance_check(f, f, ys, 0.0).empty());

  const auto v = dominance_check(f, unit, ys, 0.0);
  ASSERT_EQ(v.size(), ys.size());
  for (const auto& d : v) EXPECT_NEAR(d.excess, 0.5 * std::log1p(d.y * d.y), 1e-14);
  EXPECT_NEAR(v[2].excess, 0.34657, 1e-5);

  EXPECT_TRUE(dominance_check(unit, f, ys, 0.0).empty());
  // eps |y| absorbs ln sqrt(1 + y^2) once eps is large enough
  EXPECT_TRUE(dominance_check(f, unit, ys, 0.5).empty());
  EXPECT_THROW(dominance_check(f, unit, ys, -1.0), DomainError);
}

TEST(Dominance, ZerosOnTheAxis) {
  const CanonicalProduct g(dist({{0, 2, 1}}));
  const CanonicalProduct unit;
  const std::vector<double> ys{2.0};
  const auto v = dominance_check(unit, g, ys, 0.0);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].excess, std::numeric_limits<double>::infinity());
  EXPECT_TRUE(dominance_check(g, unit, ys, 0.0).empty());
}

}  // namespace
}  // namespace zerodist
