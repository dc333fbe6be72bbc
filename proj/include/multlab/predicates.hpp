#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "point_set.hpp"
#include "rational.hpp"

namespace multlab {

// Orientation guard for approximate mode, applied to coordinates normalized to unit extent.
inline constexpr double kOrientationGuard = 1e-12;

namespace detail {

// Exact coordinates rescaled by the lcm of all denominators.
struct IntegerFrame {
  std::vector<std::int64_t> x;
  std::vector<std::int64_t> y;
  Integer denominator;
  std::int64_t max_abs = 0;
};

inline std::optional<IntegerFrame> integer_frame(const PointSet& s, unsigned max_bits = 61) {
  const auto& pts = s.exact_points();
  Integer den = 1;
  for (const auto& p : pts) {
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), p.x.get_den_mpz_t());
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), p.y.get_den_mpz_t());
    if (mpz_sizeinbase(den.get_mpz_t(), 2) > max_bits) return std::nullopt;
  }
  const Integer limit = Integer(1) << max_bits;
  IntegerFrame f;
  f.denominator = den;
  f.x.reserve(pts.size());
  f.y.reserve(pts.size());
  for (const auto& p : pts) {
    Integer xs = p.x.get_num() * (den / p.x.get_den());
    Integer ys = p.y.get_num() * (den / p.y.get_den());
    if (abs(xs) >= limit || abs(ys) >= limit) return std::nullopt;
    f.x.push_back(xs.get_si());
    f.y.push_back(ys.get_si());
    f.max_abs = std::max({f.max_abs, std::abs(f.x.back()), std::abs(f.y.back())});
  }
  return f;
}

inline int sign_of(int128 v) { return (v > 0) - (v < 0); }

struct IntegerKernel {
  const IntegerFrame* f;

  int orient(std::size_t a, std::size_t b, std::size_t c) const {
    const int128 abx = f->x[b] - f->x[a], aby = f->y[b] - f->y[a];
    const int128 acx = f->x[c] - f->x[a], acy = f->y[c] - f->y[a];
    return sign_of(abx * acy - aby * acx);
  }
  bool less(std::size_t a, std::size_t b) const {
    return f->x[a] < f->x[b] || (f->x[a] == f->x[b] && f->y[a] < f->y[b]);
  }
  // Projection of (p - a) onto (b - a), unnormalized.
  int128 along(std::size_t a, std::size_t b, std::size_t p) const {
    return int128(f->x[b] - f->x[a]) * (f->x[p] - f->x[a]) + int128(f->y[b] - f->y[a]) * (f->y[p] - f->y[a]);
  }
};

struct RationalKernel {
  const std::vector<ExactPoint>* pts;

  int orient(std::size_t a, std::size_t b, std::size_t c) const {
    const auto& A = (*pts)[a];
    const auto& B = (*pts)[b];
    const auto& C = (*pts)[c];
    Rational v = (B.x - A.x) * (C.y - A.y) - (B.y - A.y) * (C.x - A.x);
    return sgn(v);
  }
  bool less(std::size_t a, std::size_t b) const {
    const auto& A = (*pts)[a];
    const auto& B = (*pts)[b];
    return A.x < B.x || (A.x == B.x && A.y < B.y);
  }
  Rational along(std::size_t a, std::size_t b, std::size_t p) const {
    const auto& A = (*pts)[a];
    const auto& B = (*pts)[b];
    const auto& P = (*pts)[p];
    return Rational((B.x - A.x) * (P.x - A.x) + (B.y - A.y) * (P.y - A.y));
  }
};

struct FloatKernel {
  std::vector<double> x, y;

  explicit FloatKernel(const std::vector<ApproxPoint>& pts) {
    double lo_x = std::numeric_limits<double>::infinity(), hi_x = -lo_x, lo_y = lo_x, hi_y = -lo_x;
    for (const auto& p : pts) {
      lo_x = std::min(lo_x, p.x);
      hi_x = std::max(hi_x, p.x);
      lo_y = std::min(lo_y, p.y);
      hi_y = std::max(hi_y, p.y);
    }
    const double scale = std::max({hi_x - lo_x, hi_y - lo_y, std::numeric_limits<double>::min()});
    const double cx = 0.5 * (lo_x + hi_x), cy = 0.5 * (lo_y + hi_y);
    for (const auto& p : pts) {
      x.push_back((p.x - cx) / scale);
      y.push_back((p.y - cy) / scale);
    }
  }

  int orient(std::size_t a, std::size_t b, std::size_t c) const {
    const double v = (x[b] - x[a]) * (y[c] - y[a]) - (y[b] - y[a]) * (x[c] - x[a]);
    if (std::abs(v) <= kOrientationGuard) return 0;
    return v > 0 ? 1 : -1;
  }
  bool less(std::size_t a, std::size_t b) const { return x[a] < x[b] || (x[a] == x[b] && y[a] < y[b]); }
  double along(std::size_t a, std::size_t b, std::size_t p) const {
    return (x[b] - x[a]) * (x[p] - x[a]) + (y[b] - y[a]) * (y[p] - y[a]);
  }
};

// Calls fn with the cheapest kernel that is exact for the input.
template <class Fn>
decltype(auto) with_kernel(const PointSet& s, Fn&& fn) {
  if (s.is_exact()) {
    if (auto frame = integer_frame(s, 61)) return fn(IntegerKernel{&*frame});
    return fn(RationalKernel{&s.exact_points()});
  }
  return fn(FloatKernel(s.approx_points()));
}

template <class Kernel>
std::optional<std::size_t> first_off_line(const Kernel& k, std::size_t n) {
  for (std::size_t c = 2; c < n; ++c)
    if (k.orient(0, 1, c) != 0) return c;
  return std::nullopt;
}

}  // namespace detail

inline bool is_collinear(const PointSet& s) {
  if (s.size() <= 2) return true;
  return detail::with_kernel(s, [&](const auto& k) { return !detail::first_off_line(k, s.size()).has_value(); });
}

// True iff one circle (in the set's metric) passes through every point.
inline bool is_cocircular(const PointSet& s) {
  const std::size_t n = s.size();
  if (n <= 2) return true;
  auto third = detail::with_kernel(s, [&](const auto& k) { return detail::first_off_line(k, n); });
  if (!third) return false;
  const std::size_t a = 0, b = 1, c = *third;
  if (s.is_exact()) {
    const auto& p = s.exact_points();
    const auto& w = s.metric();
    auto lift = [&](std::size_t i) { return Rational(w.wx * p[i].x * p[i].x + w.wy * p[i].y * p[i].y); };
    auto incircle = [&](std::size_t d) {
      Rational m[3][3];
      const std::size_t rows[3] = {b, c, d};
      for (int r = 0; r < 3; ++r) {
        m[r][0] = p[rows[r]].x - p[a].x;
        m[r][1] = p[rows[r]].y - p[a].y;
        m[r][2] = lift(rows[r]) - lift(a);
      }
      Rational det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                     m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                     m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
      return sgn(det);
    };
    for (std::size_t d = 0; d < n; ++d)
      if (d != a && d != b && d != c && incircle(d) != 0) return false;
    return true;
  }
  detail::FloatKernel k(s.approx_points());
  // circumcenter of a, b, c in normalized coordinates
  const double ax = k.x[a], ay = k.y[a], bx = k.x[b], by = k.y[b], cx = k.x[c], cy = k.y[c];
  const double d = 2 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by));
  const double ux = ((ax * ax + ay * ay) * (by - cy) + (bx * bx + by * by) * (cy - ay) + (cx * cx + cy * cy) * (ay - by)) / d;
  const double uy = ((ax * ax + ay * ay) * (cx - bx) + (bx * bx + by * by) * (ax - cx) + (cx * cx + cy * cy) * (bx - ax)) / d;
  const double r2 = (ax - ux) * (ax - ux) + (ay - uy) * (ay - uy);
  for (std::size_t i = 0; i < n; ++i) {
    const double d2 = (k.x[i] - ux) * (k.x[i] - ux) + (k.y[i] - uy) * (k.y[i] - uy);
    if (std::abs(d2 - r2) > 1e-9 * std::max(1.0, r2)) return false;
  }
  return true;
}

}  // namespace multlab
