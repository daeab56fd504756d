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

#ifndef FRENET_AVOID_POLYNOMIAL_H_
#define FRENET_AVOID_POLYNOMIAL_H_

#include <array>
#include <cstddef>

namespace frenet_avoid::planner {

// Polynomial in time with coefficients a0 + a1 t + ... + aN t^N.
template <std::size_t Degree>
class TimePolynomial {
 public:
  using Coefficients = std::array<double, Degree + 1>;

  TimePolynomial() { coeffs_.fill(0.0); }
  explicit TimePolynomial(const Coefficients& coeffs) : coeffs_(coeffs) {}

  const Coefficients& coefficients() const { return coeffs_; }

  // Value of the `order`-th derivative at t.
  double Derivative(double t, int order) const {
    double result = 0.0;
    for (std::size_t i = Degree + 1; i-- > static_cast<std::size_t>(order);) {
      double factor = 1.0;
      for (int k = 0; k < order; ++k) factor *= static_cast<double>(i - k);
      result = result * t + factor * coeffs_[i];
    }
    return result;
  }

  double Value(double t) const { return Derivative(t, 0); }
  double Velocity(double t) const { return Derivative(t, 1); }
  double Acceleration(double t) const { return Derivative(t, 2); }
  double Jerk(double t) const { return Derivative(t, 3); }

 private:
  Coefficients coeffs_;
};

using QuinticPolynomial = TimePolynomial<5>;
using QuarticPolynomial = TimePolynomial<4>;

// Degree-5 polynomial matching position, velocity and acceleration at t = 0
// and t = horizon. Throws kNonPositiveHorizon unless horizon > 0.
QuinticPolynomial SolveQuintic(double x0, double v0, double a0, double x1,
                               double v1, double a1, double horizon);

// Degree-4 polynomial matching position, velocity and acceleration at t = 0
// and velocity and acceleration at t = horizon; terminal position is free.
QuarticPolynomial SolveQuartic(double x0, double v0, double a0, double v1,
                               double a1, double horizon);

}  // namespace frenet_avoid::planner

#endif  // FRENET_AVOID_POLYNOMIAL_H_
