#pragma once

// Brute-force references used by the tests. Nothing here calls the library's analysis code.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include <gmpxx.h>

#include "multlab/point_set.hpp"

namespace oracle {

// every pair, mpq squared distance, sorted and grouped
inline std::map<mpq_class, std::size_t> exact_pairs(const multlab::PointSet& s) {
  const auto& p = s.exact_points();
  const mpq_class wx = s.metric().wx, wy = s.metric().wy;
  std::vector<mpq_class> d;
  d.reserve(p.size() * (p.size() - 1) / 2);
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j) {
      mpq_class dx = p[i].x - p[j].x, dy = p[i].y - p[j].y;
      d.push_back(wx * dx * dx + wy * dy * dy);
    }
  std::sort(d.begin(), d.end());
  std::map<mpq_class, std::size_t> out;
  for (std::size_t i = 0; i < d.size();) {
    std::size_t j = i;
    while (j < d.size() && d[j] == d[i]) ++j;
    out[d[i]] = j - i;
    i = j;
  }
  return out;
}

// long double pairs, grouped where consecutive sorted keys differ by less than tol relative
inline std::vector<std::pair<long double, std::size_t>> approx_pairs(const multlab::PointSet& s, long double tol = 1e-7L) {
  const auto& p = s.approx_points();
  std::vector<long double> d;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j) {
      long double dx = (long double)p[i].x - p[j].x, dy = (long double)p[i].y - p[j].y;
      d.push_back(dx * dx + dy * dy);
    }
  std::sort(d.begin(), d.end());
  std::vector<std::pair<long double, std::size_t>> out;
  for (std::size_t i = 0; i < d.size();) {
    std::size_t j = i + 1;
    while (j < d.size() && d[j] - d[j - 1] <= tol * d[j]) ++j;
    out.push_back({d[i], j - i});
    i = j;
  }
  return out;
}

inline std::vector<std::size_t> sorted_desc(std::vector<std::size_t> v) {
  std::sort(v.rbegin(), v.rend());
  return v;
}

template <class Map>
std::vector<std::size_t> counts(const Map& m) {
  std::vector<std::size_t> v;
  for (const auto& kv : m) v.push_back(kv.second);
  return sorted_desc(v);
}

inline int orient(const multlab::ExactPoint& a, const multlab::ExactPoint& b, const multlab::ExactPoint& c) {
  mpq_class v = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
  return sgn(v);
}

// p is on the hull boundary of pts iff some line through p and another point has
// everything on one closed side
inline bool on_boundary(const std::vector<multlab::ExactPoint>& pts, std::size_t p) {
  if (pts.size() <= 2) return true;
  for (std::size_t q = 0; q < pts.size(); ++q) {
    if (q == p) continue;
    bool pos = false, neg = false;
    for (std::size_t r = 0; r < pts.size(); ++r) {
      const int o = orient(pts[p], pts[q], pts[r]);
      pos |= o > 0;
      neg |= o < 0;
    }
    if (!(pos && neg)) return true;
  }
  return false;
}

// peeling by the boundary test; layers as sorted index sets
inline std::vector<std::set<std::size_t>> peel(const multlab::PointSet& s) {
  std::vector<std::size_t> alive(s.size());
  for (std::size_t i = 0; i < alive.size(); ++i) alive[i] = i;
  std::vector<std::set<std::size_t>> layers;
  while (!alive.empty()) {
    std::vector<multlab::ExactPoint> pts;
    for (auto i : alive) pts.push_back(s.exact_points()[i]);
    std::set<std::size_t> layer;
    std::vector<std::size_t> rest;
    for (std::size_t t = 0; t < alive.size(); ++t) {
      if (on_boundary(pts, t)) layer.insert(alive[t]);
      else rest.push_back(alive[t]);
    }
    layers.push_back(layer);
    alive = rest;
  }
  return layers;
}

// R(n) for all n <= limit by tallying a <= b
inline std::vector<std::uint32_t> r2_table(std::uint64_t limit) {
  std::vector<std::uint32_t> t(limit + 1, 0);
  for (std::uint64_t a = 0; 2 * a * a <= limit; ++a)
    for (std::uint64_t b = a; a * a + b * b <= limit; ++b) ++t[a * a + b * b];
  return t;
}

inline std::uint64_t r2_single(std::uint64_t n) {
  std::uint64_t c = 0;
  for (std::uint64_t a = 0; 2 * a * a <= n; ++a) {
    const std::uint64_t rest = n - a * a;
    auto b = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(rest)));
    while (b * b > rest) --b;
    while ((b + 1) * (b + 1) <= rest) ++b;
    if (b * b == rest) ++c;
  }
  return c;
}

// multiplicity of q = dx^2 + dy^2 in the s x s grid by listing every pair
inline std::map<std::uint64_t, std::uint64_t> grid_pairs(std::size_t s) {
  std::vector<std::uint64_t> hist(2 * s * s + 1, 0);
  const std::size_t n = s * s;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const long dx = static_cast<long>(i % s) - static_cast<long>(j % s);
      const long dy = static_cast<long>(i / s) - static_cast<long>(j / s);
      ++hist[static_cast<std::size_t>(dx * dx + dy * dy)];
    }
  std::map<std::uint64_t, std::uint64_t> out;
  for (std::size_t q = 0; q < hist.size(); ++q)
    if (hist[q]) out[q] = hist[q];
  return out;
}

}  // namespace oracle
