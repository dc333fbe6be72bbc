#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "errors.hpp"
#include "point_set.hpp"
#include "predicates.hpp"
#include "rational.hpp"

namespace multlab {

// Squared distances are the class keys; exact rationals in exact mode.
using SquaredDistance = std::variant<Rational, double>;

// Approximate-mode clustering policy.
inline constexpr double kClusterRelTol = 1e-9;
inline constexpr double kAuditSafety = 1e3;
inline constexpr double kMachineEpsilon = std::numeric_limits<double>::epsilon();

inline Rational squared_distance(const ExactPoint& p, const ExactPoint& q, const Metric& metric = {}) {
  Rational dx = p.x - q.x, dy = p.y - q.y;
  if (metric.is_euclidean()) return Rational(dx * dx + dy * dy);
  return Rational(metric.wx * dx * dx + metric.wy * dy * dy);
}

inline double squared_distance(const ApproxPoint& p, const ApproxPoint& q) {
  const double dx = p.x - q.x, dy = p.y - q.y;
  return dx * dx + dy * dy;
}

inline SquaredDistance squared_distance(const Point& p, const Point& q) {
  const auto mode = p.x.mode();
  if (p.y.mode() != mode || q.x.mode() != mode || q.y.mode() != mode)
    throw ModeMismatch("squared_distance on points of different numeric modes");
  if (mode == NumericMode::exact)
    return squared_distance(ExactPoint{std::get<Rational>(p.x.value), std::get<Rational>(p.y.value)},
                            ExactPoint{std::get<Rational>(q.x.value), std::get<Rational>(q.y.value)});
  return squared_distance(ApproxPoint{std::get<double>(p.x.value), std::get<double>(p.y.value)},
                          ApproxPoint{std::get<double>(q.x.value), std::get<double>(q.y.value)});
}

inline NumericMode mode_of(const SquaredDistance& k) {
  return std::holds_alternative<Rational>(k) ? NumericMode::exact : NumericMode::approximate;
}

inline double key_to_double(const SquaredDistance& k) {
  return std::holds_alternative<Rational>(k) ? std::get<Rational>(k).get_d() : std::get<double>(k);
}

inline int compare_keys(const SquaredDistance& a, const SquaredDistance& b) {
  if (a.index() != b.index()) throw ModeMismatch("comparing exact and approximate distance keys");
  if (std::holds_alternative<Rational>(a)) return cmp(std::get<Rational>(a), std::get<Rational>(b));
  const double x = std::get<double>(a), y = std::get<double>(b);
  return (x > y) - (x < y);
}

inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string format_key(const SquaredDistance& k) {
  if (std::holds_alternative<Rational>(k)) return format_rational(std::get<Rational>(k));
  return format_double(std::get<double>(k));
}

struct IndexPair {
  std::uint32_t i = 0;
  std::uint32_t j = 0;
  friend bool operator==(const IndexPair&, const IndexPair&) = default;
};

struct DistanceClass {
  SquaredDistance key;
  std::size_t multiplicity = 0;
  std::vector<IndexPair> members;  // empty unless requested
  double lo = 0.0;                 // cluster extent (approximate mode)
  double hi = 0.0;
};

// Spreads and gaps are absolute; the machine-epsilon floor is scaled by the largest key so
// the margin is invariant under uniform scaling.
struct ClusteringAudit {
  double max_intra_spread = 0.0;
  double min_inter_gap = std::numeric_limits<double>::infinity();
  double scale = 0.0;
  bool reliable = true;

  double spread_floor() const { return std::max(max_intra_spread, kMachineEpsilon * scale); }
  double margin() const {
    const double floor = spread_floor();
    return floor > 0 ? min_inter_gap / floor : std::numeric_limits<double>::infinity();
  }
};

struct DistanceSpectrum {
  NumericMode mode = NumericMode::exact;
  std::size_t n = 0;
  std::vector<DistanceClass> classes;  // descending multiplicity, ties by descending key
  std::optional<ClusteringAudit> audit;

  std::size_t m() const { return classes.size(); }
  bool reliable() const { return !audit || audit->reliable; }

  std::vector<std::size_t> multiplicities() const {
    std::vector<std::size_t> a;
    a.reserve(classes.size());
    for (const auto& c : classes) a.push_back(c.multiplicity);
    return a;
  }

  std::size_t pair_count() const {
    std::size_t total = 0;
    for (const auto& c : classes) total += c.multiplicity;
    return total;
  }
};

struct SpectrumOptions {
  bool keep_members = false;
  bool allow_unreliable = false;
};

// Contiguous runs [begin, end) of a sorted value sequence, split where the gap to the
// previous value exceeds kClusterRelTol * value.
template <class Values>
std::vector<std::pair<std::size_t, std::size_t>> cluster_runs(const Values& sorted) {
  std::vector<std::pair<std::size_t, std::size_t>> runs;
  const std::size_t count = std::size(sorted);
  std::size_t begin = 0;
  for (std::size_t i = 1; i <= count; ++i) {
    if (i == count || sorted[i] - sorted[i - 1] > kClusterRelTol * sorted[i]) {
      runs.emplace_back(begin, i);
      begin = i;
    }
  }
  if (count == 0) runs.clear();
  return runs;
}

template <class Values>
ClusteringAudit audit_runs(const Values& sorted, const std::vector<std::pair<std::size_t, std::size_t>>& runs) {
  ClusteringAudit audit;
  for (std::size_t r = 0; r < runs.size(); ++r) {
    const double lo = sorted[runs[r].first], hi = sorted[runs[r].second - 1];
    audit.max_intra_spread = std::max(audit.max_intra_spread, hi - lo);
    audit.scale = std::max(audit.scale, hi);
    if (r > 0) audit.min_inter_gap = std::min(audit.min_inter_gap, lo - sorted[runs[r - 1].second - 1]);
  }
  audit.reliable = audit.min_inter_gap >= kAuditSafety * audit.spread_floor();
  return audit;
}

namespace detail {

template <class Key>
struct PairEntry {
  Key key;
  std::uint32_t i;
  std::uint32_t j;
};

template <class Key>
bool entry_less(const PairEntry<Key>& a, const PairEntry<Key>& b) {
  if (a.key != b.key) return a.key < b.key;
  if (a.i != b.i) return a.i < b.i;
  return a.j < b.j;
}

inline void order_classes(std::vector<DistanceClass>& classes) {
  std::stable_sort(classes.begin(), classes.end(), [](const DistanceClass& a, const DistanceClass& b) {
    if (a.multiplicity != b.multiplicity) return a.multiplicity > b.multiplicity;
    return compare_keys(a.key, b.key) > 0;
  });
}

// Groups equal keys of a sorted entry list; make_key converts the grouped key.
template <class Key, class MakeKey>
std::vector<DistanceClass> group_exact(const std::vector<PairEntry<Key>>& entries, bool keep, MakeKey make_key) {
  std::vector<DistanceClass> classes;
  std::size_t begin = 0;
  for (std::size_t i = 1; i <= entries.size(); ++i) {
    if (i == entries.size() || entries[i].key != entries[begin].key) {
      DistanceClass c;
      c.key = make_key(entries[begin].key);
      c.multiplicity = i - begin;
      if (keep)
        for (std::size_t t = begin; t < i; ++t) c.members.push_back({entries[t].i, entries[t].j});
      classes.push_back(std::move(c));
      begin = i;
    }
  }
  return classes;
}

inline std::vector<DistanceClass> exact_classes(const PointSet& s, bool keep) {
  const std::size_t n = s.size();
  const Metric& metric = s.metric();
  Integer weight_den;
  mpz_lcm(weight_den.get_mpz_t(), metric.wx.get_den_mpz_t(), metric.wy.get_den_mpz_t());
  const Integer wx = metric.wx.get_num() * (weight_den / metric.wx.get_den());
  const Integer wy = metric.wy.get_num() * (weight_den / metric.wy.get_den());
  const Integer limit30 = Integer(1) << 30;

  if (auto frame = integer_frame(s, 31); frame && wx < limit30 && wy < limit30) {
    // |dx| < 2^32 and weights < 2^30 keep every key below 2^95.
    const Integer scale = weight_den * frame->denominator * frame->denominator;
    const uint128 WX = static_cast<uint128>(wx.get_ui()), WY = static_cast<uint128>(wy.get_ui());
    std::vector<PairEntry<uint128>> entries;
    entries.reserve(n * (n - 1) / 2);
    for (std::uint32_t i = 0; i < n; ++i)
      for (std::uint32_t j = i + 1; j < n; ++j) {
        const std::int64_t dx = frame->x[i] - frame->x[j], dy = frame->y[i] - frame->y[j];
        const uint128 ax = static_cast<uint128>(dx < 0 ? -dx : dx), ay = static_cast<uint128>(dy < 0 ? -dy : dy);
        entries.push_back({WX * ax * ax + WY * ay * ay, i, j});
      }
    std::sort(entries.begin(), entries.end(), entry_less<uint128>);
    return group_exact(entries, keep, [&](uint128 k) {
      Rational r(to_integer(k), scale);
      r.canonicalize();
      return SquaredDistance(std::move(r));
    });
  }

  // general rationals: common-denominator integer keys in GMP
  Integer den = 1;
  for (const auto& p : s.exact_points()) {
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), p.x.get_den_mpz_t());
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), p.y.get_den_mpz_t());
  }
  std::vector<Integer> xs, ys;
  for (const auto& p : s.exact_points()) {
    xs.push_back(p.x.get_num() * (den / p.x.get_den()));
    ys.push_back(p.y.get_num() * (den / p.y.get_den()));
  }
  const Integer scale = weight_den * den * den;
  std::vector<PairEntry<Integer>> entries;
  entries.reserve(n * (n - 1) / 2);
  Integer dx, dy;
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = i + 1; j < n; ++j) {
      dx = xs[i] - xs[j];
      dy = ys[i] - ys[j];
      entries.push_back({Integer(wx * dx * dx + wy * dy * dy), i, j});
    }
  std::sort(entries.begin(), entries.end(), entry_less<Integer>);
  return group_exact(entries, keep, [&](const Integer& k) {
    Rational r(k, scale);
    r.canonicalize();
    return SquaredDistance(std::move(r));
  });
}

inline std::vector<DistanceClass> approx_classes(const PointSet& s, bool keep, ClusteringAudit& audit) {
  const auto& pts = s.approx_points();
  const std::size_t n = pts.size();
  std::vector<PairEntry<double>> entries;
  entries.reserve(n * (n - 1) / 2);
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = i + 1; j < n; ++j) entries.push_back({squared_distance(pts[i], pts[j]), i, j});
  std::sort(entries.begin(), entries.end(), entry_less<double>);

  struct KeyView {
    const std::vector<PairEntry<double>>* e;
    double operator[](std::size_t i) const { return (*e)[i].key; }
    std::size_t size() const { return e->size(); }
  } view{&entries};
  const auto runs = cluster_runs(view);
  audit = audit_runs(view, runs);

  std::vector<DistanceClass> classes;
  classes.reserve(runs.size());
  for (const auto& [b, e] : runs) {
    DistanceClass c;
    c.key = entries[b + (e - b) / 2].key;
    c.multiplicity = e - b;
    c.lo = entries[b].key;
    c.hi = entries[e - 1].key;
    if (keep)
      for (std::size_t t = b; t < e; ++t) c.members.push_back({entries[t].i, entries[t].j});
    classes.push_back(std::move(c));
  }
  return classes;
}

}  // namespace detail

// The multiplicity spectrum a(X): every unordered pair lands in exactly one class.
inline DistanceSpectrum distance_spectrum(const PointSet& s, SpectrumOptions options = {}) {
  DistanceSpectrum spectrum;
  spectrum.mode = s.mode();
  spectrum.n = s.size();
  if (s.is_exact()) {
    spectrum.classes = detail::exact_classes(s, options.keep_members);
  } else {
    ClusteringAudit audit;
    spectrum.classes = detail::approx_classes(s, options.keep_members, audit);
    spectrum.audit = audit;
    if (!audit.reliable && !options.allow_unreliable)
      throw UnreliableClustering("clustering audit failed: min gap " + format_double(audit.min_inter_gap) +
                                 " vs max spread " + format_double(audit.max_intra_spread));
  }
  detail::order_classes(spectrum.classes);
  return spectrum;
}

struct ExtremalDistances {
  SquaredDistance diameter;
  std::optional<SquaredDistance> second_largest;
  SquaredDistance smallest;
};

inline void require_reliable(const DistanceSpectrum& s) {
  if (!s.reliable()) throw UnreliableClustering("operation needs exact class identity but the audit failed");
}

// Class indices sorted by ascending key.
inline std::vector<std::size_t> classes_by_key(const DistanceSpectrum& s) {
  std::vector<std::size_t> order(s.classes.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return compare_keys(s.classes[a].key, s.classes[b].key) < 0; });
  return order;
}

inline ExtremalDistances extremal_distances(const DistanceSpectrum& s) {
  if (s.m() == 0) throw InvalidArgument("extremal distances need at least one distance class");
  require_reliable(s);
  const auto order = classes_by_key(s);
  ExtremalDistances e{s.classes[order.back()].key, std::nullopt, s.classes[order.front()].key};
  if (order.size() >= 2) e.second_largest = s.classes[order[order.size() - 2]].key;
  return e;
}

// Index of the class containing key, if any.
inline std::optional<std::size_t> find_class(const DistanceSpectrum& s, const SquaredDistance& key) {
  if (mode_of(key) != s.mode) throw ModeMismatch("key mode differs from spectrum mode");
  if (s.mode == NumericMode::exact) {
    const auto& k = std::get<Rational>(key);
    for (std::size_t c = 0; c < s.classes.size(); ++c)
      if (std::get<Rational>(s.classes[c].key) == k) return c;
    return std::nullopt;
  }
  require_reliable(s);
  const double k = std::get<double>(key);
  std::optional<std::size_t> hit;
  double nearest = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < s.classes.size(); ++c) {
    const auto& cl = s.classes[c];
    const double d = k < cl.lo ? cl.lo - k : (k > cl.hi ? k - cl.hi : 0.0);
    const double rel = d / std::max(std::abs(k), std::numeric_limits<double>::min());
    if (rel <= kClusterRelTol) {
      if (hit) throw UnreliableClustering("key " + format_double(k) + " matches two classes");
      hit = c;
    }
    nearest = std::min(nearest, rel);
  }
  // neither clearly inside nor clearly outside a class
  if (!hit && nearest < kAuditSafety * kClusterRelTol)
    throw UnreliableClustering("key " + format_double(k) + " falls in an ambiguous gap");
  return hit;
}

inline std::size_t multiplicity_of(const DistanceSpectrum& s, const SquaredDistance& key) {
  auto c = find_class(s, key);
  return c ? s.classes[*c].multiplicity : 0;
}

// a(X) = (n-1, n-2, ..., 1)
inline bool is_full_staircase(const DistanceSpectrum& s) {
  if (s.n == 0 || s.m() != s.n - 1) return false;
  for (std::size_t i = 0; i < s.m(); ++i)
    if (s.classes[i].multiplicity != s.n - 1 - i) return false;
  return true;
}

inline bool multiplicities_pairwise_distinct(const DistanceSpectrum& s) {
  for (std::size_t i = 1; i < s.m(); ++i)
    if (s.classes[i].multiplicity == s.classes[i - 1].multiplicity) return false;
  return true;
}

}  // namespace multlab
