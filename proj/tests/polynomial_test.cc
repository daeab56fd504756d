/*
 * Copyright 2026 The frenet_avoid Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "frenet_avoid/polynomial.h"

#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>

#include "frenet_avoid/error.h"
#include "test_support.h"

namespace frenet_avoid::planner {
namespace {

using testing::CodeOf;
using testing::Gen;

// Row of d^order/dt^order [1 t t^2 ... t^degree].
Eigen::RowVectorXd BasisRow(int degree, double t, int order) {
  Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(degree + 1);
  for (int i = order; i <= degree; ++i) {
    double f = 1.0;
    for (int k = 0; k < order; ++k) f *= i - k;
    row(i) = f * std::pow(t, i - order);
  }
  return row;
}

Eigen::VectorXd QuinticOracle(double x0, double v0, double a0, double x1,
                              double v1, double a1, double T) {
  Eigen::MatrixXd m(6, 6);
  m << BasisRow(5, 0, 0), BasisRow(5, 0, 1), BasisRow(5, 0, 2),
      BasisRow(5, T, 0), BasisRow(5, T, 1), BasisRow(5, T, 2);
  Eigen::VectorXd b(6);
  b << x0, v0, a0, x1, v1, a1;
  return m.fullPivLu().solve(b);
}

Eigen::VectorXd QuarticOracle(double x0, double v0, double a0, double v1,
                              double a1, double T) {
  Eigen::MatrixXd m(5, 5);
  m << BasisRow(4, 0, 0), BasisRow(4, 0, 1), BasisRow(4, 0, 2),
      BasisRow(4, T, 1), BasisRow(4, T, 2);
  Eigen::VectorXd b(5);
  b << x0, v0, a0, v1, a1;
  return m.fullPivLu().solve(b);
}

TEST(SolveQuintic, UnitExample) {
  const auto q = SolveQuintic(0, 0, 0, 1, 0, 0, 1);
  const double expected[] = {0, 0, 0, 10, -15, 6};
  for (int i = 0; i < 6; ++i) EXPECT_NEAR(q.coefficients()[i], expected[i], 1e-12);
  EXPECT_NEAR(q.Value(0.5), 0.5, 1e-12);
  EXPECT_NEAR(q.Jerk(0.0), 60.0, 1e-9);
}

TEST(SolveQuartic, UnitExample) {
  const auto q = SolveQuartic(0, 0, 0, 1, 0, 1);
  const double expected[] = {0, 0, 0, 1, -0.5};
  for (int i = 0; i < 5; ++i) EXPECT_NEAR(q.coefficients()[i], expected[i], 1e-12);
}

TEST(Solve, NonPositiveHorizon) {
  EXPECT_EQ(CodeOf([] { SolveQuintic(0, 0, 0, 1, 0, 0, 0.0); }),
            ErrorCode::kNonPositiveHorizon);
  EXPECT_EQ(CodeOf([] { SolveQuartic(0, 0, 0, 1, 0, -1.0); }),
            ErrorCode::kNonPositiveHorizon);
}

TEST(Solve, MatchesLinearSystem) {
  Gen gen(2);
  for (int i = 0; i < 300; ++i) {
    const double T = gen.Uniform(0.5, 8.0);
    const double x0 = gen.Uniform(-5, 5), v0 = gen.Uniform(-3, 3),
                 a0 = gen.Uniform(-2, 2), x1 = gen.Uniform(-5, 5),
                 v1 = gen.Uniform(-3, 3), a1 = gen.Uniform(-2, 2);
    const auto quintic = SolveQuintic(x0, v0, a0, x1, v1, a1, T);
    const Eigen::VectorXd oracle5 = QuinticOracle(x0, v0, a0, x1, v1, a1, T);
    for (int k = 0; k < 6; ++k) {
      EXPECT_NEAR(quintic.coefficients()[k], oracle5(k),
                  1e-9 * std::max(1.0, std::abs(oracle5(k))));
    }
    const auto quartic = SolveQuartic(x0, v0, a0, v1, a1, T);
    const Eigen::VectorXd oracle4 = QuarticOracle(x0, v0, a0, v1, a1, T);
    for (int k = 0; k < 5; ++k) {
      EXPECT_NEAR(quartic.coefficients()[k], oracle4(k),
                  1e-9 * std::max(1.0, std::abs(oracle4(k))));
    }
  }
}

TEST(SolveProperties, BoundaryResiduals) {
  Gen gen(6);
  for (int i = 0; i < 1000; ++i) {
    const double T = gen.Uniform(1.0, 6.0);
    const double x0 = gen.Uniform(-4, 4), v0 = gen.Uniform(-3, 3),
                 a0 = gen.Uniform(-2, 2), x1 = gen.Uniform(-4, 4),
                 v1 = gen.Uniform(-3, 3), a1 = gen.Uniform(-2, 2);
    const auto q = SolveQuintic(x0, v0, a0, x1, v1, a1, T);
    EXPECT_LE(std::abs(q.Value(0) - x0), 1e-9);
    EXPECT_LE(std::abs(q.Velocity(0) - v0), 1e-9);
    EXPECT_LE(std::abs(q.Acceleration(0) - a0), 1e-9);
    EXPECT_LE(std::abs(q.Value(T) - x1), 1e-9);
    EXPECT_LE(std::abs(q.Velocity(T) - v1), 1e-9);
    EXPECT_LE(std::abs(q.Acceleration(T) - a1), 1e-9);
    const auto r = SolveQuartic(x0, v0, a0, v1, a1, T);
    EXPECT_LE(std::abs(r.Value(0) - x0), 1e-9);
    EXPECT_LE(std::abs(r.Velocity(0) - v0), 1e-9);
    EXPECT_LE(std::abs(r.Acceleration(0) - a0), 1e-9);
    EXPECT_LE(std::abs(r.Velocity(T) - v1), 1e-9);
    EXPECT_LE(std::abs(r.Acceleration(T) - a1), 1e-9);
  }
}

TEST(TimePolynomialProperties, DerivativesMatchFiniteDifferences) {
  Gen gen(10);
  for (int i = 0; i < 300; ++i) {
    QuinticPolynomial::Coefficients c;
    for (double& v : c) v = gen.Uniform(-2, 2);
    const QuinticPolynomial p(c);
    const double t = gen.Uniform(0, 3), h = 1e-4;
    EXPECT_NEAR((p.Value(t + h) - p.Value(t - h)) / (2 * h), p.Velocity(t),
                1e-3);
    EXPECT_NEAR((p.Velocity(t + h) - p.Velocity(t - h)) / (2 * h),
                p.Acceleration(t), 1e-3);
    EXPECT_NEAR((p.Acceleration(t + h) - p.Acceleration(t - h)) / (2 * h),
                p.Jerk(t), 1e-3);
    EXPECT_DOUBLE_EQ(p.Derivative(t, 6), 0.0);
  }
}

TEST(Solve, TrivialBoundaries) {
  const auto zero = SolveQuintic(0, 0, 0, 0, 0, 0, 2.0);
  for (double c : zero.coefficients()) EXPECT_EQ(c, 0.0);
  const auto constant = SolveQuintic(1, 0, 0, 1, 0, 0, 3.0);
  EXPECT_NEAR(constant.coefficients()[0], 1.0, 1e-15);
  for (int i = 1; i < 6; ++i) EXPECT_NEAR(constant.coefficients()[i], 0.0, 1e-15);
  const auto cruise = SolveQuartic(0, 10, 0, 10, 0, 4.0);
  EXPECT_NEAR(cruise.coefficients()[1], 10.0, 1e-12);
  for (int i : {0, 2, 3, 4}) EXPECT_NEAR(cruise.coefficients()[i], 0.0, 1e-12);
}

TEST(TimePolynomialProperties, JerkMatchesDifferencedAcceleration) {
  Gen gen(12);
  for (int i = 0; i < 200; ++i) {
    const double T = gen.Uniform(1, 6);
    const auto q = SolveQuintic(gen.Uniform(-3, 3), gen.Uniform(-2, 2),
                                gen.Uniform(-1, 1), gen.Uniform(-3, 3), 0, 0, T);
    for (double t = 0.0; t + 0.001 <= T; t += 0.01) {
      const double fd = (q.Acceleration(t + 0.001) - q.Acceleration(t)) / 0.001;
      const double mid = q.Jerk(t + 0.0005);
      EXPECT_NEAR(fd, mid, 1e-3 * std::max(1.0, std::abs(mid)));
    }
  }
}

}  // namespace
}  // namespace frenet_avoid::planner
