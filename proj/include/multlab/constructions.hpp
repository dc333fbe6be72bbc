#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "convex_layers.hpp"
#include "errors.hpp"
#include "point_set.hpp"
#include "predicates.hpp"
#include "spectrum.hpp"

namespace multlab {

using json = nlohmann::json;

// A named predicate over a generated set, checked later with the analysis modules only.
// Keys are JSON strings ("p/q") in exact mode and numbers in approximate mode.
struct ExpectedFact {
  std::string name;
  json params;
};

inline void to_json(json& j, const ExpectedFact& f) { j = json{{"fact", f.name}, {"params", f.params}}; }
inline void from_json(const json& j, ExpectedFact& f) {
  j.at("fact").get_to(f.name);
  f.params = j.value("params", json::object());
}

struct ConstructionResult {
  PointSet points;
  std::vector<ExpectedFact> facts;
};

inline json key_to_json(const SquaredDistance& k) {
  if (const auto* r = std::get_if<Rational>(&k)) return format_rational(*r);
  return std::get<double>(k);
}

inline SquaredDistance key_from_json(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number()) return j.get<double>();
  throw InvalidArgument("squared-distance key must be a string or a number");
}

struct FactResult {
  std::string name;
  bool holds = false;
  json observed;
};

namespace detail {

inline bool approx_equal_rel(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

}  // namespace detail

inline FactResult evaluate_fact(const ExpectedFact& fact, const PointSet& s, const DistanceSpectrum& sp) {
  FactResult r;
  r.name = fact.name;
  const json& p = fact.params;
  const std::string& f = fact.name;
  if (f == "spectrum") {
    const auto want = p.at("a").get<std::vector<std::size_t>>();
    r.observed = sp.multiplicities();
    r.holds = sp.multiplicities() == want;
  } else if (f == "class_count") {
    r.observed = sp.m();
    r.holds = sp.m() == p.at("value").get<std::size_t>();
  } else if (f == "multiplicity" || f == "multiplicity_at_least") {
    const auto mu = multiplicity_of(sp, key_from_json(p.at("key")));
    r.observed = mu;
    const auto want = p.at("value").get<std::size_t>();
    r.holds = f == "multiplicity" ? mu == want : mu >= want;
  } else if (f == "full_staircase") {
    r.observed = is_full_staircase(sp);
    r.holds = r.observed.get<bool>() == p.at("value").get<bool>();
  } else if (f == "distinct_multiplicities") {
    r.observed = multiplicities_pairwise_distinct(sp);
    r.holds = r.observed.get<bool>() == p.at("value").get<bool>();
  } else if (f == "collinear") {
    r.observed = is_collinear(s);
    r.holds = r.observed.get<bool>() == p.at("value").get<bool>();
  } else if (f == "cocircular") {
    r.observed = is_cocircular(s);
    r.holds = r.observed.get<bool>() == p.at("value").get<bool>();
  } else if (f == "smallest_key" || f == "second_largest_key") {
    const auto ext = extremal_distances(sp);
    const bool smallest = f == "smallest_key";
    if (!smallest && !ext.second_largest) {
      r.observed = nullptr;
      r.holds = false;
    } else {
      const SquaredDistance& got = smallest ? ext.smallest : *ext.second_largest;
      r.observed = key_to_json(got);
      const auto cls = find_class(sp, key_from_json(p.at("key")));
      const auto got_cls = find_class(sp, got);
      r.holds = cls && got_cls && *cls == *got_cls;
    }
  } else if (f == "chord_classes") {
    // combinatorial classes vs clustered classes, matched in ascending key order
    std::vector<std::pair<double, std::size_t>> want;
    for (const auto& c : p.at("classes")) want.push_back({c.at("key").get<double>(), c.at("multiplicity").get<std::size_t>()});
    std::sort(want.begin(), want.end());
    std::vector<std::pair<double, std::size_t>> got;
    for (const auto& c : sp.classes) got.push_back({key_to_double(c.key), c.multiplicity});
    std::sort(got.begin(), got.end());
    r.holds = want.size() == got.size();
    for (std::size_t i = 0; r.holds && i < want.size(); ++i)
      r.holds = want[i].second == got[i].second && detail::approx_equal_rel(want[i].first, got[i].first, kClusterRelTol);
    r.observed = json{{"classes", sp.m()}, {"expected_classes", want.size()}};
  } else if (f == "max_multiplicity_excluding") {
    std::vector<std::size_t> excluded;
    for (const auto& k : p.at("keys"))
      if (auto c = find_class(sp, key_from_json(k))) excluded.push_back(*c);
    std::size_t worst = 0;
    for (std::size_t c = 0; c < sp.classes.size(); ++c)
      if (std::find(excluded.begin(), excluded.end(), c) == excluded.end())
        worst = std::max(worst, sp.classes[c].multiplicity);
    r.observed = worst;
    r.holds = worst <= p.at("value").get<std::size_t>();
  } else if (f == "top_classes") {
    std::vector<std::size_t> want;
    for (const auto& k : p.at("keys")) {
      auto c = find_class(sp, key_from_json(k));
      want.push_back(c ? *c : sp.classes.size());
    }
    std::sort(want.begin(), want.end());
    // equal multiplicities at the cut make the top set ambiguous; compare multiplicities there
    bool ok = want.size() <= sp.classes.size();
    for (std::size_t i = 0; ok && i < want.size(); ++i)
      ok = want[i] < sp.classes.size() && sp.classes[want[i]].multiplicity == sp.classes[i].multiplicity;
    if (ok && want.size() < sp.classes.size() && !want.empty())
      ok = sp.classes[want.size()].multiplicity < sp.classes[want.size() - 1].multiplicity;
    r.observed = json(want);
    r.holds = ok;
  } else {
    throw InvalidArgument("unknown expected fact '" + f + "'");
  }
  return r;
}

inline std::vector<FactResult> evaluate_facts(const ConstructionResult& c) {
  std::vector<FactResult> out;
  DistanceSpectrum sp;
  try {
    sp = distance_spectrum(c.points);
  } catch (const UnreliableClustering& e) {
    for (const auto& f : c.facts) out.push_back({f.name, false, json{{"error", e.what()}}});
    return out;
  }
  for (const auto& f : c.facts) {
    try {
      out.push_back(evaluate_fact(f, c.points, sp));
    } catch (const UnreliableClustering& e) {
      out.push_back({f.name, false, json{{"error", e.what()}}});
    }
  }
  return out;
}

namespace detail {

inline ExpectedFact fact(std::string name, json params) { return {std::move(name), std::move(params)}; }

inline std::vector<std::size_t> sorted_desc(std::vector<std::size_t> v) {
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

inline std::vector<std::size_t> staircase(std::size_t n) {
  std::vector<std::size_t> a;
  for (std::size_t k = n - 1; k >= 1; --k) a.push_back(k);
  return a;
}

inline ApproxPoint on_unit_circle(double angle) { return {std::cos(angle), std::sin(angle)}; }

inline std::string fmt(double v) { return format_double(v); }

// chord classes of a regular n-gon restricted to vertices 0..count-1
inline json chord_classes(std::size_t n, std::size_t count) {
  std::vector<std::size_t> mults(n / 2 + 1, 0);
  for (std::size_t a = 0; a < count; ++a)
    for (std::size_t b = a + 1; b < count; ++b) ++mults[std::min(b - a, n - (b - a))];
  json classes = json::array();
  for (std::size_t j = 1; 2 * j <= n; ++j) {
    const std::size_t mult = mults[j];
    if (mult == 0) continue;
    const double half = std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
    classes.push_back({{"key", 4 * std::sin(half) * std::sin(half)}, {"multiplicity", mult}});
  }
  return classes;
}

inline std::vector<std::size_t> chord_spectrum(const json& classes) {
  std::vector<std::size_t> a;
  for (const auto& c : classes) a.push_back(c.at("multiplicity").get<std::size_t>());
  return sorted_desc(a);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Regular polygons
// ---------------------------------------------------------------------------

inline ConstructionResult regular_ngon(std::size_t n) {
  if (n < 3) throw InvalidArgument("regular n-gon needs n >= 3");
  std::vector<ApproxPoint> pts;
  for (std::size_t i = 0; i < n; ++i)
    pts.push_back(detail::on_unit_circle(2 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n)));
  ConstructionResult r{PointSet::approximate(std::move(pts), "regular-ngon"), {}};
  r.points.metadata["n"] = std::to_string(n);
  std::vector<std::size_t> a(n / 2, n);
  if (n % 2 == 0) a.back() = n / 2;
  r.facts.push_back(detail::fact("spectrum", {{"a", a}}));
  r.facts.push_back(detail::fact("chord_classes", {{"classes", detail::chord_classes(n, n)}}));
  return r;
}

inline ConstructionResult ngon_minus_vertex(std::size_t n) {
  if (n < 3) throw InvalidArgument("regular n-gon needs n >= 3");
  std::vector<ApproxPoint> pts;
  for (std::size_t i = 0; i + 1 < n; ++i)
    pts.push_back(detail::on_unit_circle(2 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n)));
  ConstructionResult r{PointSet::approximate(std::move(pts), "ngon-minus-vertex"), {}};
  r.points.metadata["n"] = std::to_string(n);
  const json classes = detail::chord_classes(n, n - 1);
  // j < n/2 loses the two chords through the deleted vertex, j = n/2 loses one
  std::vector<std::size_t> a((n - 1) / 2, n - 2);
  if (n % 2 == 0) a.push_back(n / 2 - 1);
  a = detail::sorted_desc(a);
  if (a.back() == 0) a.pop_back();
  r.facts.push_back(detail::fact("spectrum", {{"a", a}}));
  r.facts.push_back(detail::fact("chord_classes", {{"classes", classes}}));
  return r;
}

// ---------------------------------------------------------------------------
// Staircase sets
// ---------------------------------------------------------------------------

inline ConstructionResult equidistant_line(std::size_t n) {
  if (n < 2) throw InvalidArgument("equidistant line needs n >= 2");
  std::vector<ExactPoint> pts;
  for (std::size_t i = 0; i < n; ++i) pts.push_back({Rational(static_cast<unsigned long>(i)), Rational(0)});
  ConstructionResult r{PointSet::exact(std::move(pts), "equidistant-line"), {}};
  r.points.metadata["n"] = std::to_string(n);
  r.facts.push_back(detail::fact("spectrum", {{"a", detail::staircase(n)}}));
  r.facts.push_back(detail::fact("full_staircase", {{"value", true}}));
  r.facts.push_back(detail::fact("collinear", {{"value", true}}));
  return r;
}

inline constexpr double kDefaultCircleArcDegrees = 100.0;

// n equally spaced points on an arc of the unit circle; the arc must stay below a half circle.
inline ConstructionResult equidistant_circle(std::size_t n, double arc_degrees = kDefaultCircleArcDegrees) {
  if (n < 2) throw InvalidArgument("equidistant circle needs n >= 2");
  if (!(arc_degrees > 0.0 && arc_degrees < 180.0)) throw AngleOutOfRange("arc must lie strictly between 0 and 180 degrees");
  const double arc = arc_degrees * std::numbers::pi / 180.0;
  std::vector<ApproxPoint> pts;
  for (std::size_t i = 0; i < n; ++i)
    pts.push_back(detail::on_unit_circle(arc * static_cast<double>(i) / static_cast<double>(n - 1)));
  ConstructionResult r{PointSet::approximate(std::move(pts), "equidistant-circle"), {}};
  r.points.metadata["n"] = std::to_string(n);
  r.points.metadata["arc_degrees"] = detail::fmt(arc_degrees);
  r.facts.push_back(detail::fact("spectrum", {{"a", detail::staircase(n)}}));
  r.facts.push_back(detail::fact("full_staircase", {{"value", true}}));
  if (n >= 3) r.facts.push_back(detail::fact("collinear", {{"value", false}}));
  r.facts.push_back(detail::fact("cocircular", {{"value", true}}));
  return r;
}

// Center of the unit circle plus n-1 equally spaced points on an arc of the given angle.
inline ConstructionResult arc_with_center(std::size_t n, double angle) {
  if (n < 3) throw InvalidArgument("arc with center needs n >= 3");
  if (!(angle > 0.0 && angle < std::numbers::pi / 3)) throw AngleOutOfRange("arc angle must lie in (0, pi/3)");
  std::vector<ApproxPoint> pts{{0.0, 0.0}};
  for (std::size_t i = 0; i + 1 < n; ++i)
    pts.push_back(detail::on_unit_circle(angle * static_cast<double>(i) / static_cast<double>(n - 2)));
  ConstructionResult r{PointSet::approximate(std::move(pts), "arc-with-center"), {}};
  r.points.metadata["n"] = std::to_string(n);
  r.points.metadata["angle"] = detail::fmt(angle);
  r.facts.push_back(detail::fact("spectrum", {{"a", detail::staircase(n)}}));
  r.facts.push_back(detail::fact("full_staircase", {{"value", true}}));
  r.facts.push_back(detail::fact("multiplicity", {{"key", 1.0}, {"value", n - 1}}));
  r.facts.push_back(detail::fact("collinear", {{"value", false}}));
  // three points off a line are always concyclic
  if (n >= 4) r.facts.push_back(detail::fact("cocircular", {{"value", false}}));
  return r;
}

// ---------------------------------------------------------------------------
// Three groups: m-gon, inner points u_i, triangular lattice
// ---------------------------------------------------------------------------

struct ThreeGroupInfo {
  std::size_t m = 0, n = 0, m3 = 0;
  double delta = 0, delta2 = 0, diameter = 0;
  std::size_t mu_delta = 0;
  std::size_t mu_delta2 = 0;
  long long boundary_deficit = 0;  // B(n) = 3 m3 + m - mu(delta)
  std::size_t lattice_outside = 0;  // lattice points outside circle C
};

namespace detail {

struct ThreeGroupGeometry {
  std::vector<ApproxPoint> v, u, lattice;
  double delta = 0, delta2 = 0, diameter = 0;
};

inline ThreeGroupGeometry three_group_geometry(std::size_t m, std::size_t m3) {
  ThreeGroupGeometry g;
  const double pi = std::numbers::pi;
  const double md = static_cast<double>(m);
  for (std::size_t i = 0; i < m; ++i) g.v.push_back(on_unit_circle(2 * pi * static_cast<double>(i) / md));
  const double j_max = std::floor(md / 2);
  g.diameter = 2 * std::sin(pi * j_max / md);
  g.delta2 = 2 * std::sin(pi * (j_max - 1) / md);
  const double side = 2 * std::sin(pi / md);
  const double h2 = g.delta2 * g.delta2 - side * side / 4;
  if (!(h2 > 0)) throw InfeasibleGeometry("circles of radius Delta2 around adjacent vertices do not meet");
  const double h = std::sqrt(h2);
  for (std::size_t i = 0; i < m; ++i) {
    const auto& a = g.v[i];
    const auto& b = g.v[(i + 1) % m];
    const ApproxPoint mid{(a.x + b.x) / 2, (a.y + b.y) / 2};
    const double len = std::hypot(mid.x, mid.y);
    const ApproxPoint u{mid.x - h * mid.x / len, mid.y - h * mid.y / len};
    if (!(std::hypot(u.x, u.y) < 1.0)) throw InfeasibleGeometry("inner intersection point is not inside C");
    g.u.push_back(u);
  }
  g.delta = std::hypot(g.u[0].x - g.u[1].x, g.u[0].y - g.u[1].y);

  // lattice a*(delta,0) + b*(delta/2, delta*sqrt3/2), filled by exact norm a^2+ab+b^2 then angle
  struct Cand {
    long long norm;
    double angle;
    ApproxPoint p;
  };
  std::vector<Cand> cands;
  const long long reach = 2 * static_cast<long long>(std::ceil(std::sqrt(static_cast<double>(m3)))) + 3;
  for (long long a = -reach; a <= reach; ++a)
    for (long long b = -reach; b <= reach; ++b) {
      const ApproxPoint p{g.delta * (static_cast<double>(a) + static_cast<double>(b) / 2),
                          g.delta * static_cast<double>(b) * std::sqrt(3.0) / 2};
      double ang = std::atan2(p.y, p.x);
      if (ang < 0) ang += 2 * pi;
      cands.push_back({a * a + a * b + b * b, (a == 0 && b == 0) ? 0.0 : ang, p});
    }
  std::sort(cands.begin(), cands.end(), [](const Cand& x, const Cand& y) {
    return x.norm < y.norm || (x.norm == y.norm && x.angle < y.angle);
  });
  for (std::size_t i = 0; i < m3; ++i) g.lattice.push_back(cands[i].p);
  return g;
}

}  // namespace detail

inline ConstructionResult three_group(std::size_t m, std::size_t n, ThreeGroupInfo* info_out = nullptr) {
  if (m < 5) throw InvalidArgument("three-group construction needs m >= 5");
  if (2 * m > n) throw InvalidArgument("three-group construction needs 2m <= n");
  const std::size_t m3 = n - 2 * m;
  const auto g = detail::three_group_geometry(m, m3);
  std::vector<ApproxPoint> pts = g.v;
  pts.insert(pts.end(), g.u.begin(), g.u.end());
  pts.insert(pts.end(), g.lattice.begin(), g.lattice.end());
  ConstructionResult r{PointSet::approximate(std::move(pts), "three-group"), {}};

  ThreeGroupInfo info;
  info.m = m;
  info.n = n;
  info.m3 = m3;
  info.delta = g.delta;
  info.delta2 = g.delta2;
  info.diameter = g.diameter;
  for (const auto& p : g.lattice)
    if (std::hypot(p.x, p.y) >= 1.0) ++info.lattice_outside;
  const auto sp = distance_spectrum(r.points);
  info.mu_delta = multiplicity_of(sp, g.delta * g.delta);
  info.mu_delta2 = multiplicity_of(sp, g.delta2 * g.delta2);
  info.boundary_deficit = static_cast<long long>(3 * m3 + m) - static_cast<long long>(info.mu_delta);

  auto& md = r.points.metadata;
  md["m"] = std::to_string(m);
  md["n"] = std::to_string(n);
  md["delta"] = detail::fmt(g.delta);
  md["Delta2"] = detail::fmt(g.delta2);
  md["B"] = std::to_string(info.boundary_deficit);
  md["radius"] = "1";

  const double d2 = g.delta2 * g.delta2, d1 = g.delta * g.delta;
  r.facts.push_back(detail::fact("multiplicity_at_least", {{"key", d2}, {"value", 3 * m}}));
  const long long floor_delta = static_cast<long long>(3 * m3 + m) - info.boundary_deficit;
  r.facts.push_back(detail::fact("multiplicity_at_least", {{"key", d1}, {"value", std::max(0LL, floor_delta)}}));
  r.facts.push_back(detail::fact("second_largest_key", {{"key", d2}}));
  r.facts.push_back(detail::fact("smallest_key", {{"key", d1}}));
  if (info_out) *info_out = info;
  return r;
}

// ---------------------------------------------------------------------------
// Integer grids
// ---------------------------------------------------------------------------

inline ConstructionResult grid_section(std::size_t w, std::size_t h) {
  if (w < 1 || h < 1) throw InvalidArgument("grid dimensions must be positive");
  std::vector<ExactPoint> pts;
  pts.reserve(w * h);
  for (std::size_t y = 0; y < h; ++y)
    for (std::size_t x = 0; x < w; ++x)
      pts.push_back({Rational(static_cast<unsigned long>(x)), Rational(static_cast<unsigned long>(y))});
  ConstructionResult r{PointSet::exact(std::move(pts), "grid"), {}};
  r.points.metadata["w"] = std::to_string(w);
  r.points.metadata["h"] = std::to_string(h);
  const std::size_t n = w * h;
  if (n >= 2 && (w == 1 || h == 1)) r.facts.push_back(detail::fact("full_staircase", {{"value", true}}));
  if (w == h && w >= 4) {
    const std::size_t k = w;
    r.facts.push_back(detail::fact("multiplicity", {{"key", std::to_string((k - 1) * (k - 1) + (k - 2) * (k - 2))}, {"value", 8}}));
    r.facts.push_back(detail::fact("multiplicity", {{"key", std::to_string(2 * (k - 2) * (k - 2))}, {"value", 8}}));
  }
  return r;
}

struct ExactEightReport {
  std::size_t k = 0;
  std::uint64_t key1 = 0, key2 = 0;
  std::size_t count1 = 0, count2 = 0;
  // other (a, b), 0 <= a <= b <= k-1, with a^2 + b^2 equal to key1 or key2
  std::vector<std::pair<std::uint64_t, std::uint64_t>> extra1, extra2;

  bool extra_representation() const { return !extra1.empty() || !extra2.empty(); }
  bool passes() const { return count1 == 8 && count2 == 8; }
};

inline ExactEightReport exact_eight_check(std::size_t k) {
  if (k < 4) throw InvalidArgument("exactly-eight check needs k >= 4");
  ExactEightReport r;
  r.k = k;
  r.key1 = (k - 1) * (k - 1) + (k - 2) * (k - 2);
  r.key2 = 2 * (k - 2) * (k - 2);
  const auto sp = distance_spectrum(grid_section(k, k).points);
  r.count1 = multiplicity_of(sp, Rational(static_cast<unsigned long>(r.key1)));
  r.count2 = multiplicity_of(sp, Rational(static_cast<unsigned long>(r.key2)));
  for (std::uint64_t a = 0; a < k; ++a)
    for (std::uint64_t b = a; b < k; ++b) {
      const std::uint64_t q = a * a + b * b;
      if (q == r.key1 && !(a == k - 2 && b == k - 1)) r.extra1.push_back({a, b});
      if (q == r.key2 && !(a == k - 2 && b == k - 2)) r.extra2.push_back({a, b});
    }
  return r;
}

// ---------------------------------------------------------------------------
// Two-row hexagonal strip
// ---------------------------------------------------------------------------

// Point i sits at half-step i on row i mod 2; the metric (1/4, 3/4) turns these integer
// coordinates into unit-side hexagonal-lattice distances.
inline ConstructionResult hex_two_row(std::size_t n) {
  if (n < 2) throw InvalidArgument("hex two-row needs n >= 2");
  std::vector<ExactPoint> pts;
  for (std::size_t i = 0; i < n; ++i)
    pts.push_back({Rational(static_cast<unsigned long>(i)), Rational(static_cast<unsigned long>(i % 2))});
  ConstructionResult r{PointSet::exact(std::move(pts), "hex-two-row", Metric{Rational(1, 4), Rational(3, 4)}), {}};
  r.points.metadata["n"] = std::to_string(n);
  if (n % 2 == 1) {
    const std::size_t k = n / 2;
    auto sq = [](std::size_t v) { return std::to_string(v); };
    r.facts.push_back(detail::fact("multiplicity", {{"key", "1"}, {"value", 4 * k - 1}}));
    for (std::size_t j = 2; j <= k; ++j)
      r.facts.push_back(detail::fact("multiplicity", {{"key", sq(j * j)}, {"value", 2 * (k - j) + 1}}));
    for (std::size_t j = 1; j + 1 <= k; ++j)
      r.facts.push_back(detail::fact("multiplicity", {{"key", sq(j * j + j + 1)}, {"value", 2 * (k - j)}}));
  }
  r.facts.push_back(detail::fact("distinct_multiplicities", {{"value", true}}));
  if (n >= 4) r.facts.push_back(detail::fact("full_staircase", {{"value", false}}));
  return r;
}

// ---------------------------------------------------------------------------
// Translate cascade
// ---------------------------------------------------------------------------

struct CascadeSpec {
  std::size_t k = 1;
  std::vector<double> prescribed{1.0};
  std::size_t rounds = 0;
  std::uint64_t seed = 0;
  std::size_t retry_budget = 256;
};

inline constexpr std::size_t kCascadeMaxRounds = 16;

struct CascadeInfo {
  std::vector<double> angles;
  std::vector<std::size_t> distance_index;  // which d_i each round used
  std::vector<std::size_t> mu;              // expected multiplicity of each d_i
  std::size_t attempts = 0;
};

inline void validate_cascade(const CascadeSpec& spec) {
  if (spec.k < 1) throw InvalidArgument("cascade needs k >= 1");
  if (spec.prescribed.size() != spec.k) throw InvalidArgument("cascade needs exactly k prescribed distances");
  if (spec.rounds > kCascadeMaxRounds) throw RangeExceeded("cascade limited to 16 rounds");
  for (std::size_t i = 0; i < spec.k; ++i) {
    const double d = spec.prescribed[i];
    if (!(d > 0) || !std::isfinite(d)) throw InvalidArgument("prescribed distances must be positive");
    for (std::size_t j = 0; j < i; ++j)
      if (std::abs(d - spec.prescribed[j]) <= 1e-6 * std::max(d, spec.prescribed[j]))
        throw InvalidArgument("prescribed distances must be pairwise distinct");
  }
}

namespace detail {

// Classes of difference vectors sum c_i t_i, c canonical in {-1,0,1}^r. Valid iff every
// class is either a group of single translations of one prescribed length or a lone vector,
// with clear separation from its neighbours.
inline bool cascade_vectors_valid(const std::vector<ApproxPoint>& t, const std::vector<std::size_t>& which,
                                  double total_length) {
  const std::size_t r = t.size();
  struct Vec {
    double key;
    int support;         // nonzero coefficients
    std::size_t single;  // distance index when support == 1
  };
  std::vector<Vec> vecs;
  std::size_t total = 1;
  for (std::size_t i = 0; i < r; ++i) total *= 3;
  vecs.reserve(total / 2);
  std::vector<int> c(r, 0);
  for (std::size_t code = 1; code < total; ++code) {
    std::size_t v = code;
    int first = 0, support = 0;
    std::size_t single = 0;
    double x = 0, y = 0;
    for (std::size_t i = 0; i < r; ++i, v /= 3) {
      const int ci = static_cast<int>(v % 3) - 1;
      c[i] = ci;
      if (ci != 0) {
        if (first == 0) first = ci;
        ++support;
        single = which[i];
        x += ci * t[i].x;
        y += ci * t[i].y;
      }
    }
    if (first != 1) continue;
    vecs.push_back({x * x + y * y, support, single});
  }
  std::sort(vecs.begin(), vecs.end(), [](const Vec& a, const Vec& b) { return a.key < b.key; });
  // float error bound on pair keys recomputed from coordinates
  const double coord_err = static_cast<double>(r + 1) * total_length * kMachineEpsilon;
  const double min_gap = kAuditSafety * 8 * total_length * coord_err;
  double min_single = std::numeric_limits<double>::infinity();
  for (const auto& v : vecs)
    if (v.support == 1) min_single = std::min(min_single, v.key);
  const double floor = 1e-8 * min_single;

  std::size_t b = 0;
  while (b < vecs.size()) {
    std::size_t e = b + 1;
    while (e < vecs.size() && vecs[e].key - vecs[e - 1].key <= kClusterRelTol * vecs[e].key) ++e;
    if (vecs[b].key < floor) return false;
    if (e - b > 1) {
      for (std::size_t i = b; i < e; ++i)
        if (vecs[i].support != 1 || vecs[i].single != vecs[b].single) return false;
    }
    if (e < vecs.size() && vecs[e].key - vecs[e - 1].key < min_gap) return false;
    b = e;
  }
  return true;
}

}  // namespace detail

inline ConstructionResult translate_cascade(const CascadeSpec& spec, CascadeInfo* info_out = nullptr) {
  validate_cascade(spec);
  std::mt19937_64 rng(spec.seed);
  std::vector<ApproxPoint> pts{{0.0, 0.0}};
  std::vector<ApproxPoint> translations;
  CascadeInfo info;
  info.mu.assign(spec.k, 0);
  double total_length = 0;
  for (std::size_t step = 0; step < spec.rounds; ++step) {
    const std::size_t which = step % spec.k;
    const double d = spec.prescribed[which];
    info.distance_index.push_back(which);
    bool accepted = false;
    for (std::size_t attempt = 0; attempt < spec.retry_budget; ++attempt) {
      ++info.attempts;
      const double angle = static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2 * std::numbers::pi;
      translations.push_back({d * std::cos(angle), d * std::sin(angle)});
      if (detail::cascade_vectors_valid(translations, info.distance_index, total_length + d)) {
        info.angles.push_back(angle);
        accepted = true;
        break;
      }
      translations.pop_back();
    }
    if (!accepted) throw RetryBudgetExhausted("no valid direction within the retry budget at step " + std::to_string(step + 1));
    total_length += d;
    const auto& t = translations.back();
    const std::size_t size = pts.size();
    for (std::size_t i = 0; i < size; ++i) pts.push_back({pts[i].x + t.x, pts[i].y + t.y});
  }
  const std::size_t n = pts.size();
  ConstructionResult r{PointSet::approximate(std::move(pts), "translate-cascade"), {}};
  auto& md = r.points.metadata;
  md["k"] = std::to_string(spec.k);
  md["rounds"] = std::to_string(spec.rounds);
  md["seed"] = std::to_string(spec.seed);

  if (spec.rounds > 0) {
    for (auto w : info.distance_index) info.mu[w] += n / 2;
    json keys = json::array();
    for (std::size_t i = 0; i < spec.k; ++i) {
      if (info.mu[i] == 0) continue;
      const double key = spec.prescribed[i] * spec.prescribed[i];
      keys.push_back(key);
      r.facts.push_back(detail::fact("multiplicity", {{"key", key}, {"value", info.mu[i]}}));
      // (n / 2k) log2 n, rounded up
      const std::size_t bound = (n * spec.rounds + 2 * spec.k - 1) / (2 * spec.k);
      if (spec.rounds % spec.k == 0) r.facts.push_back(detail::fact("multiplicity_at_least", {{"key", key}, {"value", bound}}));
    }
    r.facts.push_back(detail::fact("max_multiplicity_excluding", {{"keys", keys}, {"value", n}}));
    r.facts.push_back(detail::fact("top_classes", {{"keys", keys}}));
  }
  if (info_out) *info_out = std::move(info);
  return r;
}

}  // namespace multlab

namespace multlab {

// ---------------------------------------------------------------------------
// Seeded random inputs
// ---------------------------------------------------------------------------

// n distinct points with coordinates p/q, q in 1..max_den, |p/q| <= span.
inline PointSet random_exact_set(std::size_t n, std::uint64_t seed, long span = 20, long max_den = 4) {
  if (n < 1) throw InvalidArgument("random set needs n >= 1");
  if (span < 1 || max_den < 1) throw InvalidArgument("random set needs span >= 1 and max_den >= 1");
  {
    std::set<Rational> values;
    for (long q = 1; q <= max_den && values.size() * values.size() < n; ++q)
      for (long p = -span * q; p <= span * q; ++p) {
        Rational r(p, q);
        r.canonicalize();
        values.insert(r);
      }
    if (values.size() * values.size() < n) throw InvalidArgument("random set: too few lattice points for n");
  }
  std::mt19937_64 rng(seed);
  std::set<std::pair<Rational, Rational>> seen;
  std::vector<ExactPoint> pts;
  auto coord = [&] {
    const long q = 1 + static_cast<long>(rng() % static_cast<std::uint64_t>(max_den));
    const long p = static_cast<long>(rng() % static_cast<std::uint64_t>(2 * span * q + 1)) - span * q;
    Rational r(p, q);
    r.canonicalize();
    return r;
  };
  while (pts.size() < n) {
    ExactPoint p{coord(), coord()};
    if (seen.insert({p.x, p.y}).second) pts.push_back(std::move(p));
  }
  PointSet s = PointSet::exact(std::move(pts), "random-exact");
  s.metadata["seed"] = std::to_string(seed);
  return s;
}

// n distinct rational points on the unit circle ((1-t^2)/(1+t^2), 2t/(1+t^2)): convex position.
inline PointSet random_convex_exact(std::size_t n, std::uint64_t seed) {
  if (n < 1) throw InvalidArgument("random set needs n >= 1");
  std::mt19937_64 rng(seed);
  std::set<Rational> ts;
  while (ts.size() < n) {
    const long q = 1 + static_cast<long>(rng() % 1000);
    const long p = static_cast<long>(rng() % 4001) - 2000;
    Rational t(p, q);
    t.canonicalize();
    ts.insert(t);
  }
  std::vector<ExactPoint> pts;
  for (const auto& t : ts) {
    const Rational d = 1 + t * t;
    pts.push_back({Rational((1 - t * t) / d), Rational(2 * t / d)});
  }
  PointSet s = PointSet::exact(std::move(pts), "random-convex");
  s.metadata["seed"] = std::to_string(seed);
  return s;
}

}  // namespace multlab
