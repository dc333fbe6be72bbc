#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace multlab {

enum class NumericMode { exact, approximate };

inline const char* to_string(NumericMode mode) {
  return mode == NumericMode::exact ? "exact" : "approx";
}

// Squared distances below this are treated as coincident points in approximate mode.
inline constexpr double kDegeneracyFloor = 1e-12;

struct Coordinate {
  std::variant<Rational, double> value;

  Coordinate(Rational v) : value(std::move(v)) {}
  Coordinate(double v) : value(v) {}

  NumericMode mode() const {
    return std::holds_alternative<Rational>(value) ? NumericMode::exact : NumericMode::approximate;
  }
};

struct Point {
  Coordinate x;
  Coordinate y;
};

struct ExactPoint {
  Rational x;
  Rational y;

  friend bool operator==(const ExactPoint&, const ExactPoint&) = default;
};

struct ApproxPoint {
  double x = 0.0;
  double y = 0.0;
};

// Diagonal quadratic form: squared distance = wx*dx^2 + wy*dy^2. Exact mode only.
// The identity metric is plain Euclidean; positive weights keep orientation intact.
struct Metric {
  Rational wx{1};
  Rational wy{1};

  bool is_euclidean() const { return wx == 1 && wy == 1; }
  friend bool operator==(const Metric&, const Metric&) = default;
};

class PointSet {
 public:
  using Metadata = std::map<std::string, std::string>;

  static PointSet exact(std::vector<ExactPoint> points, std::string label = {}, Metric metric = {}) {
    if (metric.wx <= 0 || metric.wy <= 0) throw InvalidArgument("metric weights must be positive");
    PointSet s;
    s.mode_ = NumericMode::exact;
    s.exact_ = std::move(points);
    s.metric_ = std::move(metric);
    s.label = std::move(label);
    s.validate();
    return s;
  }

  static PointSet approximate(std::vector<ApproxPoint> points, std::string label = {}) {
    PointSet s;
    s.mode_ = NumericMode::approximate;
    s.approx_ = std::move(points);
    s.label = std::move(label);
    s.validate();
    return s;
  }

  // Rejects any mixing of exact and approximate coordinates.
  static PointSet from_coordinates(const std::vector<Point>& points, std::string label = {}) {
    if (points.empty()) throw DegeneratePointSet("point set must contain at least one point");
    const NumericMode mode = points.front().x.mode();
    for (const auto& p : points)
      if (p.x.mode() != mode || p.y.mode() != mode)
        throw ModeMismatch("point set mixes exact and approximate coordinates");
    if (mode == NumericMode::exact) {
      std::vector<ExactPoint> pts;
      pts.reserve(points.size());
      for (const auto& p : points)
        pts.push_back({std::get<Rational>(p.x.value), std::get<Rational>(p.y.value)});
      return exact(std::move(pts), std::move(label));
    }
    std::vector<ApproxPoint> pts;
    pts.reserve(points.size());
    for (const auto& p : points) pts.push_back({std::get<double>(p.x.value), std::get<double>(p.y.value)});
    return approximate(std::move(pts), std::move(label));
  }

  NumericMode mode() const { return mode_; }
  bool is_exact() const { return mode_ == NumericMode::exact; }
  std::size_t size() const { return is_exact() ? exact_.size() : approx_.size(); }
  const Metric& metric() const { return metric_; }

  const std::vector<ExactPoint>& exact_points() const {
    if (!is_exact()) throw ModeMismatch("point set is approximate");
    return exact_;
  }
  const std::vector<ApproxPoint>& approx_points() const {
    if (is_exact()) throw ModeMismatch("point set is exact");
    return approx_;
  }

  Point point(std::size_t i) const {
    if (is_exact()) return {Coordinate(exact_.at(i).x), Coordinate(exact_.at(i).y)};
    return {Coordinate(approx_.at(i).x), Coordinate(approx_.at(i).y)};
  }

  // Floating view of the coordinates, with the metric folded in (used for plotting and
  // approximate predicates only).
  ApproxPoint as_double(std::size_t i) const {
    if (!is_exact()) return approx_.at(i);
    return {exact_.at(i).x.get_d() * std::sqrt(metric_.wx.get_d()),
            exact_.at(i).y.get_d() * std::sqrt(metric_.wy.get_d())};
  }

  PointSet subset(std::span<const std::size_t> indices) const {
    PointSet s;
    s.mode_ = mode_;
    s.metric_ = metric_;
    s.label = label;
    s.metadata = metadata;
    if (is_exact()) {
      for (auto i : indices) s.exact_.push_back(exact_.at(i));
    } else {
      for (auto i : indices) s.approx_.push_back(approx_.at(i));
    }
    s.validate();
    return s;
  }

  std::string label;
  Metadata metadata;

 private:
  PointSet() = default;

  void validate() const {
    if (size() == 0) throw DegeneratePointSet("point set must contain at least one point");
    if (is_exact()) {
      std::vector<const ExactPoint*> order;
      order.reserve(exact_.size());
      for (const auto& p : exact_) order.push_back(&p);
      std::sort(order.begin(), order.end(), [](const ExactPoint* a, const ExactPoint* b) {
        return a->x < b->x || (a->x == b->x && a->y < b->y);
      });
      for (std::size_t i = 1; i < order.size(); ++i)
        if (*order[i] == *order[i - 1]) throw DegeneratePointSet("duplicate point in exact point set");
      return;
    }
    for (const auto& p : approx_)
      if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw InvalidArgument("non-finite coordinate");
    // sweep in x; only neighbours within the floor can collide
    const double window = std::sqrt(kDegeneracyFloor);
    std::vector<std::size_t> order(approx_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return approx_[a].x < approx_[b].x; });
    for (std::size_t a = 0; a < order.size(); ++a) {
      for (std::size_t b = a + 1; b < order.size(); ++b) {
        const auto& p = approx_[order[a]];
        const auto& q = approx_[order[b]];
        if (q.x - p.x > window) break;
        const double dx = p.x - q.x, dy = p.y - q.y;
        if (dx * dx + dy * dy < kDegeneracyFloor)
          throw DegeneratePointSet("points closer than the degeneracy floor");
      }
    }
  }

  NumericMode mode_ = NumericMode::exact;
  std::vector<ExactPoint> exact_;
  std::vector<ApproxPoint> approx_;
  Metric metric_;
};

}  // namespace multlab
