#include <gtest/gtest.h>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/expint.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <numbers>
#include <random>

#include "effrate/errors.hpp"
#include "effrate/special_functions.hpp"

using namespace effrate;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

// ---------------------------------------------------------------- log-gamma

TEST(LogGamma, RealAnchors) {
  EXPECT_NEAR(std::abs(log_gamma_complex(1.0)), 0.0, 1e-15);
  EXPECT_NEAR(log_gamma_complex(0.5).real(), 0.57236494292470008707, 1e-15);
  EXPECT_NEAR(log_gamma_complex(0.5).imag(), 0.0, 1e-15);
}

// Reference values from a 40-digit arbitrary precision evaluation.
TEST(LogGamma, ComplexOracle) {
  struct Case {
    complex z, ref;
  };
  const Case cases[] = {
      {{3, 4}, {-1.7566267846037841105, 4.7426644380346579282}},
      {{-2.5, 0.5}, {-0.93508562129827747868, -8.8709628852474591986}},
      {{0.1, 30}, {-47.565423555699172694, 71.406325063462139443}},
      {{-40.3, 7}, {-130.98786859143240273, -102.18199283457668891}},
      {{150, -120}, {556.01888476457678537, -611.83150966178049502}},
  };
  for (const auto& c : cases) {
    const complex v = log_gamma_complex(c.z);
    EXPECT_LE(std::abs(v - c.ref), 1e-12 * std::abs(c.ref)) << c.z;
  }
}

TEST(LogGamma, MatchesRealLgamma) {
  for (double x : {0.01, 0.3, 1.7, 9.5, 33.3, 171.0}) {
    EXPECT_NEAR(log_gamma_complex(x).real(), std::lgamma(x), 1e-13 * std::max(1.0, std::abs(std::lgamma(x))));
  }
}

TEST(LogGamma, RecurrenceOnRandomGrid) {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> re(-50.0, 199.0), im(-200.0, 200.0);
  for (int i = 0; i < 500; ++i) {
    const complex z(re(gen), im(gen));
    const complex lhs = log_gamma_complex(z + 1.0);
    const complex rhs = log_gamma_complex(z) + std::log(z);
    EXPECT_LE(std::abs(lhs - rhs), 1e-12 * std::max(1.0, std::abs(lhs))) << z;
  }
}

TEST(LogGamma, PolesThrow) {
  EXPECT_THROW(log_gamma_complex(0.0), PoleError);
  EXPECT_THROW(log_gamma_complex(-3.0), PoleError);
  EXPECT_NO_THROW(log_gamma_complex(complex(-3.0, 1e-3)));
}

// ---------------------------------------------------------------- Tricomi U

TEST(Tricomi, ExponentialIntegralIdentity) {
  // U(1; 1; z) = e^z E1(z)
  for (double z : {0.05, 1.0, 10.0, 80.0}) {
    const double ref = std::exp(z) * boost::math::expint(1, z);
    EXPECT_LE(rel(tricomi_u(1.0, 1.0, z), ref), 1e-12) << z;
  }
  EXPECT_NEAR(tricomi_u(1.0, 1.0, 1.0), 0.59634736232319407434, 1e-12);
  EXPECT_NEAR(tricomi_u(1.0, 1.0, 10.0), 0.091563333939788081876, 1e-12);
}

TEST(Tricomi, PowerIdentity) {
  EXPECT_NEAR(tricomi_u(2.0, 3.0, 4.0), 0.0625, 1e-14);
  for (double a : {0.2, 1.0, 2.5, 7.0, 30.0})
    for (double z : {0.01, 0.5, 4.0, 100.0}) {
      EXPECT_LE(std::abs(log_tricomi_u(a, a + 1.0, z) + a * std::log(z)), 1e-10 * std::max(1.0, a * std::abs(std::log(z))))
          << "a=" << a << " z=" << z;
    }
}

// Reference values from a 40-digit arbitrary precision evaluation.
TEST(Tricomi, Oracle) {
  struct Case {
    double a, b, z, ref;
  };
  const Case cases[] = {
      {0.5, 1.7, 0.3, 2.1315891573966894822},   {2.5, 0.2, 5.0, 0.0060181284389693114855},
      {3.3, 2.0, 50.0, 2.1447819499551730434e-6}, {4.0, 1.5, 0.05, 0.60327079884108633977},
      {7.5, 3.2, 2.0, 5.8086602001129466295e-6},
  };
  for (const auto& c : cases) EXPECT_LE(rel(tricomi_u(c.a, c.b, c.z), c.ref), 1e-10) << c.a << ' ' << c.b << ' ' << c.z;
}

TEST(Tricomi, MatchesDirectQuadrature) {
  boost::math::quadrature::exp_sinh<double> es;
  for (double a : {0.5, 1.3, 4.0})
    for (double b : {-1.5, 0.7, 3.0})
      for (double z : {0.2, 2.0, 15.0}) {
        auto f = [&](double t) { return std::exp(-z * t + (a - 1) * std::log(t) + (b - a - 1) * std::log1p(t)); };
        const double ref = es.integrate(f, 1e-15) / std::tgamma(a);
        EXPECT_LE(rel(tricomi_u(a, b, z), ref), 1e-10) << a << ' ' << b << ' ' << z;
      }
}

TEST(Tricomi, DomainErrors) {
  EXPECT_THROW(tricomi_u(0.0, 1.0, 1.0), DomainError);
  EXPECT_THROW(tricomi_u(1.0, 1.0, 0.0), DomainError);
  EXPECT_THROW(tricomi_u(1.0, 1.0, -2.0), DomainError);
}

// ---------------------------------------------------------------- Fox-H

TEST(FoxH, ExponentialIdentity) {
  const FoxHSpec spec(1, 0, {}, {{0.0, 1.0}});
  EXPECT_NEAR(fox_h(spec, 1.0), 0.3678794411714423216, 1e-12);
  for (double x : {0.1, 1.0, 5.0, 20.0}) EXPECT_LE(rel(fox_h(spec, x), std::exp(-x)), 1e-8) << x;
}

TEST(FoxH, PowerIdentity) {
  for (double w : {-0.5, -1.5, -2.0, -3.0}) {
    const FoxHSpec spec(1, 1, {{w + 1.0, 1.0}}, {{0.0, 1.0}});
    for (double x : {0.1, 1.0, 10.0}) {
      const double v = fox_h(spec, x) / std::tgamma(-w);
      EXPECT_LE(rel(v, std::pow(1 + x, w)), 1e-8) << "w=" << w << " x=" << x;
    }
  }
}

TEST(FoxH, NonUnitScaleCoefficient) {
  // Gamma(2s) kernel: H = exp(-sqrt(x)) / 2.
  const FoxHSpec spec(1, 0, {}, {{0.0, 2.0}});
  for (double x : {0.3, 2.0, 9.0}) EXPECT_LE(rel(fox_h(spec, x), 0.5 * std::exp(-std::sqrt(x))), 1e-10) << x;
}

TEST(FoxH, LogArgumentMatchesDirect) {
  const FoxHSpec spec(2, 1, {{1.0, 0.4}}, {{2.0, 1.0}, {0.5, 0.4}});
  for (double x : {0.01, 1.0, 30.0}) EXPECT_LE(rel(fox_h_log_arg(spec, std::log(x)), fox_h(spec, x)), 1e-14);
}

TEST(FoxH, StripAndContour) {
  // Left poles of Gamma(1 + 2s) at s = -1/2 - k/2, right poles of Gamma(1 - 0.3 - s) at 0.7 + k.
  const FoxHSpec spec(1, 1, {{0.3, 1.0}}, {{1.0, 2.0}});
  EXPECT_DOUBLE_EQ(spec.strip().first, -0.5);
  EXPECT_DOUBLE_EQ(spec.strip().second, 0.7);
  EXPECT_DOUBLE_EQ(spec.contour(), 0.1);
  const FoxHSpec half(1, 0, {}, {{0.0, 1.0}});
  EXPECT_DOUBLE_EQ(half.contour(), 1.0);
}

TEST(FoxH, InfeasibleSpecsRejected) {
  EXPECT_THROW(FoxHSpec(1, 1, {{2.0, 1.0}}, {{0.0, 1.0}}), ContourError);  // strip (0, -1)
  EXPECT_THROW(FoxHSpec(2, 0, {}, {{0.0, 1.0}}), DomainError);              // m > q
  EXPECT_THROW(FoxHSpec(1, 0, {}, {{0.0, -1.0}}), DomainError);             // negative scale
  const FoxHSpec ok(1, 0, {}, {{0.0, 1.0}});
  EXPECT_THROW(fox_h(ok, 0.0), DomainError);
}

// ---------------------------------------------------------------- Meijer-G

TEST(MeijerG, ExponentialIdentity) {
  EXPECT_NEAR(meijer_g({1, 0, {}, {0.0}}, 2.0), 0.1353352832366127, 1e-13);
}

// Reference values from a 40-digit arbitrary precision evaluation.
TEST(MeijerG, Oracle) {
  EXPECT_LE(rel(meijer_g({2, 1, {0.3}, {0.5, 1.2}}, 2.5), 0.26215440758346999462), 1e-10);
  EXPECT_LE(rel(meijer_g({3, 0, {}, {0.0, 0.25, 0.5}}, 1.7), 0.09328575873599534623), 1e-10);
}

TEST(MeijerG, TranslationMatchesFoxH) {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> u(-1.0, 2.0), zd(0.05, 20.0);
  int tested = 0;
  while (tested < 20) {
    MeijerGSpec g{2, 1, {u(gen), u(gen)}, {u(gen), u(gen), u(gen)}};
    try {
      to_fox_h(g);
    } catch (const ContourError&) {
      continue;
    }
    const double z = zd(gen);
    EXPECT_DOUBLE_EQ(meijer_g(g, z), fox_h(to_fox_h(g), z));
    ++tested;
  }
}

TEST(MeijerG, DeltaBlock) {
  const auto d = delta_block(4, 1.0);
  ASSERT_EQ(d.size(), 4u);
  EXPECT_DOUBLE_EQ(d[0], 0.25);
  EXPECT_DOUBLE_EQ(d[3], 1.0);
}
