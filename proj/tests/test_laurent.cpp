#include <complex>
#include <map>
#include <random>
#include <stdexcept>

#include <gtest/gtest.h>

#include "minlab/laurent.hpp"

namespace {

using minlab::Complex;
using minlab::LaurentPoly;

LaurentPoly random_poly(std::mt19937_64& rng, int lo, int hi) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<std::pair<int, Complex>> t;
  for (int k = lo; k <= hi; ++k) t.emplace_back(k, Complex(u(rng), u(rng)));
  return LaurentPoly::from_pairs(t);
}

TEST(Laurent, ZeroCoefficientsAreNeverStored) {
  const LaurentPoly p = LaurentPoly::from_pairs({{2, 1.0}, {0, 0.0}, {-1, 3.0}});
  EXPECT_EQ(p.terms().size(), 2u);
  const LaurentPoly q = p - p;
  EXPECT_TRUE(q.is_zero());
  EXPECT_FALSE(q.min_exponent().has_value());
  EXPECT_TRUE(LaurentPoly(0.0).is_zero());
}

TEST(Laurent, DuplicateExponentsRejected) {
  EXPECT_THROW(LaurentPoly::from_pairs({{1, 1.0}, {1, 2.0}}), std::invalid_argument);
}

TEST(Laurent, ProductMatchesPointwiseProduct) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const LaurentPoly p = random_poly(rng, -3, 2);
    const LaurentPoly q = random_poly(rng, -1, 4);
    const LaurentPoly pq = p * q;
    for (Complex z : {Complex(0.7, 0.2), Complex(-1.3, 0.5), Complex(0.1, -2.0)}) {
      EXPECT_LT(std::abs(pq(z) - p(z) * q(z)), 1e-11 * (1.0 + std::abs(p(z) * q(z))));
    }
  }
}

TEST(Laurent, ProductMatchesConvolutionOracle) {
  const LaurentPoly g = LaurentPoly::monomial(1);
  const LaurentPoly omega = LaurentPoly::from_pairs({{0, 1.0}, {-4, -1.0}});
  // g * omega for the m = 1 Henneberg data: z - z^-3.
  EXPECT_EQ(g * omega, LaurentPoly::from_pairs({{1, 1.0}, {-3, -1.0}}));
  std::map<int, Complex> conv;
  const LaurentPoly a = LaurentPoly::from_pairs({{-2, {1, 2}}, {1, {0, -1}}, {3, 2.0}});
  const LaurentPoly b = LaurentPoly::from_pairs({{-1, 3.0}, {2, {1, 1}}});
  for (const auto& [i, x] : a.terms()) {
    for (const auto& [j, y] : b.terms()) conv[i + j] += x * y;
  }
  const LaurentPoly ab = a * b;
  for (const auto& [k, c] : conv) EXPECT_LT(std::abs(ab.coeff(k) - c), 1e-15);
}

TEST(Laurent, DerivativeAndAntiderivative) {
  const LaurentPoly p = LaurentPoly::from_pairs({{-3, 2.0}, {-1, 5.0}, {0, 1.0}, {2, {0, 1}}});
  const LaurentPoly dp = p.derivative();
  EXPECT_EQ(dp, LaurentPoly::from_pairs({{-4, -6.0}, {-2, -5.0}, {1, {0, 2}}}));
  const LaurentPoly P = p.antiderivative_without_log();
  EXPECT_EQ(P.coeff(-1), Complex(0.0));  // the z^-1 term has no Laurent antiderivative
  EXPECT_EQ(P.derivative() + LaurentPoly::monomial(-1, p.residue()), p);
  EXPECT_EQ(p.residue(), Complex(5.0));
}

TEST(Laurent, PoleOrders) {
  const LaurentPoly p = LaurentPoly::from_pairs({{-4, 1.0}, {2, 1.0}});
  EXPECT_EQ(p.pole_order_at_zero(), 4);
  // z^2 dz has a pole of order 4 at infinity.
  EXPECT_EQ(p.form_pole_order_at_infinity(), 4);
  EXPECT_EQ(LaurentPoly(1.0).form_pole_order_at_infinity(), 2);
  EXPECT_EQ(LaurentPoly::monomial(-2).form_pole_order_at_infinity(), 0);
  EXPECT_EQ(LaurentPoly::monomial(3).pole_order_at_zero(), 0);
}

TEST(Laurent, ShiftedCoefficients) {
  const LaurentPoly p = LaurentPoly::from_pairs({{-2, 1.0}, {1, 4.0}});
  const auto c = p.shifted_coefficients();
  ASSERT_EQ(c.size(), 4u);
  EXPECT_EQ(c[0], Complex(1.0));
  EXPECT_EQ(c[3], Complex(4.0));
  EXPECT_EQ(c[1], Complex(0.0));
}

TEST(Laurent, IntegerPowerMatchesStdPow) {
  for (int n : {-7, -1, 0, 1, 5}) {
    const Complex z(0.8, -0.6);
    EXPECT_LT(std::abs(minlab::integer_power(z, n) - std::pow(z, n)), 1e-13);
  }
}

TEST(Laurent, ToStringIsReadable) {
  EXPECT_FALSE(LaurentPoly::monomial(-2).to_string().empty());
  EXPECT_EQ(LaurentPoly().to_string(), "0");
}

}  // namespace
