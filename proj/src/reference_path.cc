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

#include "frenet_avoid/reference_path.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "frenet_avoid/error.h"
#include "frenet_avoid/geometry.h"

namespace frenet_avoid::path {
namespace {

constexpr double kTableSpacing = 0.01;
constexpr double kCoarseSpacing = 0.5;
constexpr double kRangeTolerance = 1e-9;
constexpr double kEndTolerance = 1e-6;
constexpr double kAmbiguityRatio = 0.01;
constexpr double kAmbiguitySeparation = 5.0;

// 5-point Gauss-Legendre nodes and weights on [-1, 1].
constexpr std::array<double, 5> kGaussNodes = {
    0.0, -0.5384693101056831, 0.5384693101056831, -0.9061798459386640,
    0.9061798459386640};
constexpr std::array<double, 5> kGaussWeights = {
    0.5688888888888889, 0.4786286704993665, 0.4786286704993665,
    0.2369268850561891, 0.2369268850561891};

// Second derivatives of the natural cubic spline through (knots, values).
std::vector<double> NaturalSplineMoments(const std::vector<double>& h,
                                         const std::vector<double>& values) {
  const std::size_t n = values.size();
  std::vector<double> m(n, 0.0);
  if (n < 3) return m;
  // Thomas algorithm on the interior rows.
  const std::size_t rows = n - 2;
  std::vector<double> diag(rows), upper(rows), rhs(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    const std::size_t i = r + 1;
    diag[r] = 2.0 * (h[i - 1] + h[i]);
    upper[r] = h[i];
    rhs[r] = 6.0 * ((values[i + 1] - values[i]) / h[i] -
                    (values[i] - values[i - 1]) / h[i - 1]);
  }
  for (std::size_t r = 1; r < rows; ++r) {
    const double lower = h[r];  // h[i-1] for i = r + 1
    const double w = lower / diag[r - 1];
    diag[r] -= w * upper[r - 1];
    rhs[r] -= w * rhs[r - 1];
  }
  m[rows] = rhs[rows - 1] / diag[rows - 1];
  for (std::size_t r = rows - 1; r-- > 0;) {
    m[r + 1] = (rhs[r] - upper[r] * m[r + 2]) / diag[r];
  }
  return m;
}

Eigen::Vector4d SegmentCoefficients(double y0, double y1, double m0, double m1,
                                    double h) {
  return Eigen::Vector4d(y0, (y1 - y0) / h - h * (2.0 * m0 + m1) / 6.0,
                         0.5 * m0, (m1 - m0) / (6.0 * h));
}

Eigen::Vector2d LeftNormal(double heading) {
  return Eigen::Vector2d(-std::sin(heading), std::cos(heading));
}

Eigen::Vector2d Tangent(double heading) {
  return Eigen::Vector2d(std::cos(heading), std::sin(heading));
}

}  // namespace

ReferencePath ReferencePath::Build(std::span<const Eigen::Vector2d> waypoints) {
  ReferencePath path;
  for (const Eigen::Vector2d& p : waypoints) {
    if (!p.allFinite()) {
      throw Error(ErrorCode::kDegenerateWaypoints, "non-finite waypoint");
    }
    if (path.waypoints_.empty() || (p - path.waypoints_.back()).norm() > 1e-9) {
      path.waypoints_.push_back(p);
    }
  }
  if (path.waypoints_.size() < 2) {
    throw Error(ErrorCode::kDegenerateWaypoints,
                "need at least two distinct waypoints");
  }

  const auto& pts = path.waypoints_;
  const std::size_t n = pts.size();
  std::vector<double> h(n - 1), xs(n), ys(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = pts[i].x();
    ys[i] = pts[i].y();
    if (i + 1 < n) h[i] = (pts[i + 1] - pts[i]).norm();
  }
  const std::vector<double> mx = NaturalSplineMoments(h, xs);
  const std::vector<double> my = NaturalSplineMoments(h, ys);

  double s = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    Segment seg;
    seg.x = SegmentCoefficients(xs[i], xs[i + 1], mx[i], mx[i + 1], h[i]);
    seg.y = SegmentCoefficients(ys[i], ys[i + 1], my[i], my[i + 1], h[i]);
    seg.h = h[i];
    seg.s_start = s;
    path.segments_.push_back(seg);
    const std::size_t index = path.segments_.size() - 1;

    // Dense table: integrate in ~1 cm parameter steps.
    const double approx = path.ArcLength(index, 0.0, seg.h);
    const auto steps = static_cast<std::size_t>(
        std::max(1.0, std::ceil(approx / kTableSpacing)));
    const double du = seg.h / static_cast<double>(steps);
    double s_local = 0.0;
    for (std::size_t k = 0; k < steps; ++k) {
      const double u = du * static_cast<double>(k);
      path.table_.push_back({s + s_local, index, u});
      s_local += path.ArcLength(index, u, u + du);
    }
    s += s_local;
  }
  path.length_ = s;
  return path;
}

ReferencePath::Derivatives ReferencePath::Evaluate(std::size_t segment,
                                                   double u) const {
  const Segment& seg = segments_[segment];
  const auto value = [u](const Eigen::Vector4d& c) {
    return ((c[3] * u + c[2]) * u + c[1]) * u + c[0];
  };
  const auto first = [u](const Eigen::Vector4d& c) {
    return (3.0 * c[3] * u + 2.0 * c[2]) * u + c[1];
  };
  const auto second = [u](const Eigen::Vector4d& c) {
    return 6.0 * c[3] * u + 2.0 * c[2];
  };
  Derivatives d;
  d.p = {value(seg.x), value(seg.y)};
  d.d1 = {first(seg.x), first(seg.y)};
  d.d2 = {second(seg.x), second(seg.y)};
  d.d3 = {6.0 * seg.x[3], 6.0 * seg.y[3]};
  return d;
}

double ReferencePath::ArcLength(std::size_t segment, double u0,
                                double u1) const {
  // Composite Gauss-Legendre; pieces no longer than 0.25 in parameter.
  const double span = u1 - u0;
  if (span == 0.0) return 0.0;
  const int pieces =
      std::max(1, static_cast<int>(std::ceil(std::abs(span) / 0.25)));
  const double step = span / pieces;
  double total = 0.0;
  for (int p = 0; p < pieces; ++p) {
    const double mid = u0 + (p + 0.5) * step;
    for (std::size_t k = 0; k < kGaussNodes.size(); ++k) {
      const double u = mid + 0.5 * step * kGaussNodes[k];
      total += kGaussWeights[k] * Evaluate(segment, u).d1.norm();
    }
  }
  return 0.5 * step * total;
}

std::pair<std::size_t, double> ReferencePath::Locate(double s) const {
  auto it = std::upper_bound(
      table_.begin(), table_.end(), s,
      [](double value, const TableEntry& e) { return value < e.s; });
  if (it != table_.begin()) --it;
  const TableEntry& entry = *it;
  const double h = segments_[entry.segment].h;
  const double target = s - entry.s;
  double u = entry.u + target / Evaluate(entry.segment, entry.u).d1.norm();
  for (int iter = 0; iter < 4; ++iter) {
    u = std::clamp(u, 0.0, h);
    const double residual = ArcLength(entry.segment, entry.u, u) - target;
    const double speed = Evaluate(entry.segment, u).d1.norm();
    const double step = residual / speed;
    u -= step;
    if (std::abs(step) < 1e-14) break;
  }
  return {entry.segment, std::clamp(u, 0.0, h)};
}

PathSample ReferencePath::Sample(double s) const {
  if (!(s >= -kRangeTolerance && s <= length_ + kRangeTolerance)) {
    throw Error(ErrorCode::kOutOfRange,
                "arc length " + std::to_string(s) + " outside [0, " +
                    std::to_string(length_) + "]");
  }
  const auto [segment, u] = Locate(std::clamp(s, 0.0, length_));
  const Derivatives d = Evaluate(segment, u);
  const double q = d.d1.squaredNorm();
  const double speed = std::sqrt(q);
  const double cross = d.d1.x() * d.d2.y() - d.d1.y() * d.d2.x();
  const double cross_rate = d.d1.x() * d.d3.y() - d.d1.y() * d.d3.x();
  const double q_rate = 2.0 * d.d1.dot(d.d2);

  PathSample out;
  out.position = d.p;
  out.heading = std::atan2(d.d1.y(), d.d1.x());
  out.curvature = cross / (q * speed);
  const double dkappa_du =
      cross_rate / (q * speed) - 1.5 * cross * q_rate / (q * q * speed);
  out.curvature_rate = dkappa_du / speed;
  return out;
}

Projection ReferencePath::Project(const Eigen::Vector2d& point,
                                  std::optional<SearchWindow> window) const {
  double lo = 0.0;
  double hi = length_;
  if (window) {
    lo = std::clamp(std::min(window->s_min, window->s_max), 0.0, length_);
    hi = std::clamp(std::max(window->s_min, window->s_max), 0.0, length_);
  }
  const auto squared = [&](double s) {
    return (Position(s) - point).squaredNorm();
  };

  const int n = std::max(1, static_cast<int>(std::ceil((hi - lo) /
                                                       kCoarseSpacing)));
  std::vector<double> grid(n + 1), dist(n + 1);
  for (int k = 0; k <= n; ++k) {
    grid[k] = (k == n) ? hi : lo + (hi - lo) * k / n;
    dist[k] = squared(grid[k]);
  }

  struct Minimum {
    double s;
    double distance;
  };
  std::vector<Minimum> minima;
  for (int k = 0; k <= n; ++k) {
    const bool left_ok = k == 0 || dist[k] <= dist[k - 1];
    const bool right_ok = k == n || dist[k] <= dist[k + 1];
    if (!left_ok || !right_ok) continue;
    // Golden-section search over the neighboring grid cells.
    double a = grid[std::max(k - 1, 0)];
    double b = grid[std::min(k + 1, n)];
    constexpr double kInvPhi = 0.6180339887498949;
    double c = b - kInvPhi * (b - a);
    double d = a + kInvPhi * (b - a);
    double fc = squared(c);
    double fd = squared(d);
    for (int iter = 0; iter < 60 && (b - a) > 1e-12; ++iter) {
      if (fc < fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - kInvPhi * (b - a);
        fc = squared(c);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + kInvPhi * (b - a);
        fd = squared(d);
      }
    }
    const double bracket_lo = grid[std::max(k - 1, 0)];
    const double bracket_hi = grid[std::min(k + 1, n)];
    double best_s = 0.5 * (a + b);
    // Newton polish on the tangential residual; golden section alone stalls
    // near sqrt(machine epsilon) on the flat squared distance.
    for (int iter = 0; iter < 3; ++iter) {
      const PathSample at = Sample(best_s);
      const Eigen::Vector2d offset = point - at.position;
      const double denom =
          1.0 - at.curvature * offset.dot(LeftNormal(at.heading));
      if (denom <= 1e-6) break;
      const double next = std::clamp(
          best_s + offset.dot(Tangent(at.heading)) / denom, bracket_lo,
          bracket_hi);
      if (squared(next) > squared(best_s)) break;
      best_s = next;
    }
    double best_f = squared(best_s);
    for (const double edge : {bracket_lo, bracket_hi}) {
      const double f = squared(edge);
      if (f < best_f) {
        best_f = f;
        best_s = edge;
      }
    }
    minima.push_back({best_s, std::sqrt(best_f)});
  }

  std::sort(minima.begin(), minima.end(),
            [](const Minimum& x, const Minimum& y) {
              return x.distance < y.distance ||
                     (x.distance == y.distance && x.s < y.s);
            });
  const Minimum best = minima.front();
  for (std::size_t i = 1; i < minima.size(); ++i) {
    const Minimum& other = minima[i];
    if (std::abs(other.s - best.s) <= kAmbiguitySeparation) continue;
    if (other.distance - best.distance <= kAmbiguityRatio * other.distance) {
      throw Error(ErrorCode::kProjectionAmbiguous,
                  "point projects onto s=" + std::to_string(best.s) +
                      " and s=" + std::to_string(other.s));
    }
  }

  const PathSample at = Sample(best.s);
  Projection out;
  out.s = best.s;
  out.d = (point - at.position).dot(LeftNormal(at.heading));
  out.distance = best.distance;
  return out;
}

FrenetState CartesianToFrenet(const ReferencePath& path,
                              const CartesianState& state,
                              std::optional<SearchWindow> window) {
  const Projection proj = path.Project(state.position, window);
  const PathSample ref = path.Sample(proj.s);
  const double along = (state.position - ref.position).dot(Tangent(ref.heading));
  if ((proj.s <= kRangeTolerance && along < -kEndTolerance) ||
      (proj.s >= path.length() - kRangeTolerance && along > kEndTolerance)) {
    throw Error(ErrorCode::kOutOfRange, "point projects beyond the path ends");
  }

  const double d = proj.d;
  const double one_minus = 1.0 - ref.curvature * d;
  if (one_minus <= 0.0) {
    throw Error(ErrorCode::kFoldOver,
                "point lies beyond the path's center of curvature");
  }
  const double delta = geometry::NormalizeAngle(state.heading - ref.heading);
  const double cos_delta = std::cos(delta);
  if (std::abs(cos_delta) < 1e-9) {
    throw Error(ErrorCode::kInvalidArgument,
                "heading is perpendicular to the path");
  }
  const double tan_delta = std::tan(delta);

  const double d_prime = one_minus * tan_delta;
  const double kappa_d_prime = ref.curvature_rate * d + ref.curvature * d_prime;
  const double delta_prime =
      one_minus / cos_delta * state.curvature - ref.curvature;
  const double d_pprime = -kappa_d_prime * tan_delta +
                          one_minus / (cos_delta * cos_delta) * delta_prime;

  FrenetState fs;
  fs.s = proj.s;
  fs.d = d;
  fs.s_dot = state.speed * cos_delta / one_minus;
  fs.s_ddot = (state.accel * cos_delta -
               fs.s_dot * fs.s_dot * (d_prime * delta_prime - kappa_d_prime)) /
              one_minus;
  fs.d_dot = d_prime * fs.s_dot;
  fs.d_ddot = d_pprime * fs.s_dot * fs.s_dot + d_prime * fs.s_ddot;
  return fs;
}

CartesianState FrenetToCartesian(const ReferencePath& path,
                                 const FrenetState& fs) {
  const PathSample ref = path.Sample(fs.s);
  if (std::abs(fs.d * ref.curvature) >= 1.0) {
    throw Error(ErrorCode::kFoldOver,
                "lateral offset " + std::to_string(fs.d) +
                    " folds over curvature " + std::to_string(ref.curvature));
  }
  const double one_minus = 1.0 - ref.curvature * fs.d;
  const double delta = std::atan2(fs.d_dot, fs.s_dot * one_minus);
  const double cos_delta = std::cos(delta);
  const double tan_delta = std::tan(delta);
  const double d_prime = one_minus * tan_delta;
  const double d_pprime =
      std::abs(fs.s_dot) > 1e-9
          ? (fs.d_ddot - d_prime * fs.s_ddot) / (fs.s_dot * fs.s_dot)
          : 0.0;
  const double kappa_d_prime =
      ref.curvature_rate * fs.d + ref.curvature * d_prime;

  CartesianState out;
  out.position = ref.position + fs.d * LeftNormal(ref.heading);
  out.heading = geometry::NormalizeAngle(ref.heading + delta);
  out.speed = std::hypot(fs.s_dot * one_minus, fs.d_dot);
  if (std::abs(cos_delta) < 1e-9) {
    // Purely lateral motion; only reachable from rest.
    out.curvature = 0.0;
    out.accel = fs.d_ddot;
    return out;
  }
  out.curvature = ((d_pprime + kappa_d_prime * tan_delta) * cos_delta *
                       cos_delta / one_minus +
                   ref.curvature) *
                  cos_delta / one_minus;
  const double delta_prime =
      one_minus / cos_delta * out.curvature - ref.curvature;
  out.accel = fs.s_ddot * one_minus / cos_delta +
              fs.s_dot * fs.s_dot / cos_delta *
                  (d_prime * delta_prime - kappa_d_prime);
  return out;
}

}  // namespace frenet_avoid::path
