#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "rmtlens/errors.hpp"
#include "rmtlens/polyroots.hpp"

using rmtlens::poly::cplx;
using rmtlens::poly::PolyCoeffs;

namespace {

PolyCoeffs real_poly(std::vector<double> c) { return PolyCoeffs::from_real(c); }

}  // namespace

TEST(Roots, UnitQuadratic) {
  const auto rs = rmtlens::poly::roots(real_poly({1.0, 0.0, 1.0}));
  ASSERT_EQ(rs.size(), 2u);
  EXPECT_NEAR(std::abs(rs[0] - cplx(0, -1)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(rs[1] - cplx(0, 1)), 0.0, 1e-14);
}

TEST(Roots, ZeroPolynomialIsRejected) {
  EXPECT_THROW(rmtlens::poly::roots(PolyCoeffs{}), rmtlens::DomainError);
  EXPECT_THROW(rmtlens::poly::roots(real_poly({0.0, 0.0})), rmtlens::DomainError);
}

TEST(Roots, DegreeAboveSixteenIsRejected) {
  std::vector<double> c(18, 1.0);
  EXPECT_THROW(rmtlens::poly::roots(real_poly(c)), rmtlens::DomainError);
}

TEST(Roots, TripleRootsOfCubedQuadratic) {
  // (2z^2 - 1)^3 = 8z^6 - 12z^4 + 6z^2 - 1
  const PolyCoeffs p = real_poly({-1.0, 0.0, 6.0, 0.0, -12.0, 0.0, 8.0});
  const auto clusters = rmtlens::poly::clustered_roots(p, 1e-4);
  ASSERT_EQ(clusters.size(), 2u);
  for (const auto& cl : clusters) {
    EXPECT_EQ(cl.multiplicity, 3);
    // A triple root is only resolved to about eps^(1/3) per root.
    EXPECT_NEAR(std::abs(cl.value.real()), 1.0 / std::sqrt(2.0), 1e-5);
    EXPECT_NEAR(cl.value.imag(), 0.0, 1e-5);
  }
}

TEST(Roots, ModulusCubicResidual) {
  // -2 a x^3 + (4a^2 + 1) x^2 - 2a(a^2 + b^2 + 1) x + a^2 at a = b = 0.3
  const double a = 0.3;
  const double b = 0.3;
  const PolyCoeffs p = real_poly({a * a, -2.0 * a * (a * a + b * b + 1.0), 4.0 * a * a + 1.0, -2.0 * a});
  const auto rs = rmtlens::poly::roots(p);
  ASSERT_EQ(rs.size(), 3u);
  for (const cplx& r : rs) EXPECT_LT(std::abs(p(r)), 1e-12);
}

TEST(Roots, OrderingIsByRealThenImaginary) {
  const auto rs = rmtlens::poly::roots(PolyCoeffs(oracle::expand({{2, 0}, {-1, 1}, {-1, -1}, {0.5, 0}})));
  ASSERT_EQ(rs.size(), 4u);
  for (std::size_t i = 1; i < rs.size(); ++i) {
    EXPECT_TRUE(rs[i - 1].real() < rs[i].real() ||
                (rs[i - 1].real() == rs[i].real() && rs[i - 1].imag() <= rs[i].imag()));
  }
}

TEST(Roots, ExactZerosAreKept) {
  const auto rs = rmtlens::poly::roots(real_poly({0.0, 0.0, -4.0, 0.0, 1.0}));
  ASSERT_EQ(rs.size(), 4u);
  EXPECT_EQ(std::count(rs.begin(), rs.end(), cplx{}), 2);
}

TEST(Roots, RandomPolynomialsMeetResidualBound) {
  std::mt19937 rng(20240611);
  std::uniform_real_distribution<double> coef(-10.0, 10.0);
  std::uniform_int_distribution<int> deg(1, 8);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<double> c(static_cast<std::size_t>(deg(rng)) + 1);
    for (double& v : c) v = coef(rng);
    if (c.back() == 0.0) c.back() = 1.0;
    const PolyCoeffs p = real_poly(c);
    const auto rs = rmtlens::poly::roots(p);
    ASSERT_EQ(static_cast<int>(rs.size()), p.degree());
    for (const cplx& r : rs) {
      EXPECT_TRUE(rmtlens::poly::satisfies_residual_bound(p, r)) << "trial " << trial;
    }
    // Real roots are a filtered subset of all roots.
    for (double x : rmtlens::poly::real_roots_in(p, -20.0, 20.0)) {
      const bool matched = std::any_of(rs.begin(), rs.end(), [&](cplx r) {
        return std::abs(r.imag()) < 1e-9 * std::max(1.0, std::abs(r)) && std::abs(r.real() - x) < 1e-7;
      });
      EXPECT_TRUE(matched) << "trial " << trial << " x=" << x;
    }
  }
}

TEST(RealRootsIn, CubicOnSymmetricInterval) {
  const auto xs = rmtlens::poly::real_roots_in(real_poly({0.0, -1.0, 0.0, 1.0}), -2.0, 2.0);
  ASSERT_EQ(xs.size(), 3u);
  EXPECT_NEAR(xs[0], -1.0, 1e-14);
  EXPECT_NEAR(xs[1], 0.0, 1e-14);
  EXPECT_NEAR(xs[2], 1.0, 1e-14);
}

TEST(RealRootsIn, TwoCutDimImageAgainstBisection) {
  const double m = 1.0;
  const double t = -1.45;
  const double a = std::sqrt(std::sqrt(2.0) - t);
  const double b = std::sqrt(-std::sqrt(2.0) - t);
  const auto xs = rmtlens::poly::real_roots_in(real_poly({m * t - 1.0, 0.0, m}), b, a);
  ASSERT_EQ(xs.size(), 1u);
  const double ref = oracle::bisect([&](double x) { return m * (x * x + t) - 1.0; }, b, a);
  EXPECT_NEAR(xs[0], ref, 1e-12);
  EXPECT_NEAR(xs[0], 1.56525, 1e-5);
}

TEST(RealRootsIn, NoRealRoots) {
  EXPECT_TRUE(rmtlens::poly::real_roots_in(real_poly({1.0, 0.0, 1.0}), -5.0, 5.0).empty());
}

TEST(RealRootsIn, Errors) {
  EXPECT_THROW(rmtlens::poly::real_roots_in(real_poly({0.0, 1.0}), 1.0, -1.0), rmtlens::DomainError);
  EXPECT_THROW(rmtlens::poly::real_roots_in(PolyCoeffs({cplx(0, 1), cplx(1, 0)}), -1.0, 1.0),
               rmtlens::DomainError);
}

TEST(RealRootsIn, DoubleRootIsMerged) {
  const auto xs = rmtlens::poly::real_roots_in(real_poly({1.0, -2.0, 1.0}), 0.0, 2.0);
  ASSERT_EQ(xs.size(), 1u);
  EXPECT_NEAR(xs[0], 1.0, 1e-7);
}

TEST(PolyCoeffs, ArithmeticAndDerivative) {
  const PolyCoeffs p = real_poly({1.0, 2.0});
  const PolyCoeffs q = real_poly({-1.0, 0.0, 3.0});
  const PolyCoeffs prod = p * q;
  EXPECT_EQ(prod.degree(), 3);
  EXPECT_NEAR(std::abs(prod(cplx(0.7, -0.2)) - p(cplx(0.7, -0.2)) * q(cplx(0.7, -0.2))), 0.0, 1e-14);
  EXPECT_EQ((p - p).degree(), -1);
  const PolyCoeffs d = q.derivative();
  EXPECT_DOUBLE_EQ(d(2.0), 12.0);
}
