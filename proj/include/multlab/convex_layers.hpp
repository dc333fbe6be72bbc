#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <deque>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "errors.hpp"
#include "point_set.hpp"
#include "predicates.hpp"
#include "spectrum.hpp"

namespace multlab {

namespace detail {

// Counterclockwise hull boundary of the given indices. Points lying on a hull edge are
// included, ordered along the edge.
template <class Kernel>
std::vector<std::size_t> hull_of(const Kernel& k, std::vector<std::size_t> idx) {
  if (idx.size() <= 1) return idx;
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return k.less(a, b); });

  // strict monotone chain
  std::vector<std::size_t> hull(2 * idx.size());
  std::size_t h = 0;
  for (std::size_t p : idx) {
    while (h >= 2 && k.orient(hull[h - 2], hull[h - 1], p) <= 0) --h;
    hull[h++] = p;
  }
  for (std::size_t t = idx.size() - 1, lower = h + 1; t-- > 0;) {
    const std::size_t p = idx[t];
    while (h >= lower && k.orient(hull[h - 2], hull[h - 1], p) <= 0) --h;
    hull[h++] = p;
  }
  hull.resize(h - 1);
  if (hull.size() == 1) hull.push_back(idx.back());  // all points collinear

  const bool segment = hull.size() == 2;
  const std::size_t edges = segment ? 1 : hull.size();
  std::vector<std::size_t> out;
  std::vector<std::size_t> on_edge;
  for (std::size_t e = 0; e < edges; ++e) {
    const std::size_t a = hull[e], b = hull[(e + 1) % hull.size()];
    out.push_back(a);
    on_edge.clear();
    for (std::size_t p : idx) {
      if (p == a || p == b || k.orient(a, b, p) != 0) continue;
      if (k.along(a, b, p) > 0 && k.along(b, a, p) > 0) on_edge.push_back(p);
    }
    std::sort(on_edge.begin(), on_edge.end(),
              [&](std::size_t p, std::size_t q) { return k.along(a, b, p) < k.along(a, b, q); });
    out.insert(out.end(), on_edge.begin(), on_edge.end());
  }
  if (segment) out.push_back(hull[1]);
  return out;
}

}  // namespace detail

inline std::vector<std::size_t> convex_hull(const PointSet& s, std::span<const std::size_t> subset) {
  std::vector<std::size_t> idx(subset.begin(), subset.end());
  return detail::with_kernel(s, [&](const auto& k) { return detail::hull_of(k, std::move(idx)); });
}

inline std::vector<std::size_t> convex_hull(const PointSet& s) {
  std::vector<std::size_t> all(s.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  return convex_hull(s, all);
}

struct ConvexLayers {
  std::vector<std::vector<std::size_t>> layers;  // L1, L2, ... each counterclockwise

  std::size_t layer_size(std::size_t i) const { return i < layers.size() ? layers[i].size() : 0; }
  std::size_t l1() const { return layer_size(0); }
  std::size_t l2() const { return layer_size(1); }

  // Layer index of each point.
  std::vector<std::size_t> membership(std::size_t n) const {
    std::vector<std::size_t> of(n, layers.size());
    for (std::size_t l = 0; l < layers.size(); ++l)
      for (auto p : layers[l]) of[p] = l;
    return of;
  }
};

// Onion decomposition by repeated hull peeling.
inline ConvexLayers onion_layers(const PointSet& s) {
  ConvexLayers result;
  detail::with_kernel(s, [&](const auto& k) {
    std::vector<std::size_t> remaining(s.size());
    std::iota(remaining.begin(), remaining.end(), std::size_t{0});
    while (!remaining.empty()) {
      auto layer = detail::hull_of(k, remaining);
      std::vector<char> taken(s.size(), 0);
      for (auto p : layer) taken[p] = 1;
      std::erase_if(remaining, [&](std::size_t p) { return taken[p] != 0; });
      result.layers.push_back(std::move(layer));
    }
    return 0;
  });
  return result;
}

struct SecondDistanceGraph {
  SquaredDistance key;                 // Delta_2 squared
  std::vector<std::size_t> l1, l2;     // vertex parts, sorted
  std::vector<IndexPair> edges;        // all Delta_2 pairs of X
  std::vector<IndexPair> outside;      // Delta_2 pairs not inside L1 u L2 (expected empty)
  std::vector<std::size_t> pruned;     // in removal order
  std::vector<std::size_t> l1_core, l2_core;
  std::vector<IndexPair> core_edges;

  std::size_t mu() const { return edges.size(); }
};

namespace detail {

inline SecondDistanceGraph build_second_distance_graph(const PointSet& s, const DistanceSpectrum& spectrum,
                                                       const ConvexLayers& layers) {
  const auto ext = extremal_distances(spectrum);
  if (!ext.second_largest) throw NoSecondDistance("point set determines a single distance");
  const auto cls = find_class(spectrum, *ext.second_largest);
  SecondDistanceGraph g;
  g.key = *ext.second_largest;
  const auto& members = spectrum.classes.at(*cls).members;
  if (members.size() != spectrum.classes[*cls].multiplicity)
    throw InvalidArgument("second distance graph needs a spectrum with retained members");

  const std::size_t n = s.size();
  std::vector<int> tag(n, 0);  // 1 = L1, 2 = L2
  if (!layers.layers.empty())
    for (auto p : layers.layers[0]) tag[p] = 1;
  if (layers.layers.size() > 1)
    for (auto p : layers.layers[1]) tag[p] = 2;
  for (std::size_t p = 0; p < n; ++p) {
    if (tag[p] == 1) g.l1.push_back(p);
    if (tag[p] == 2) g.l2.push_back(p);
  }

  std::vector<std::vector<std::size_t>> adj(n);
  for (const auto& e : members) {
    g.edges.push_back(e);
    if (tag[e.i] == 0 || tag[e.j] == 0) {
      g.outside.push_back(e);
      continue;
    }
    adj[e.i].push_back(e.j);
    adj[e.j].push_back(e.i);
  }

  // iterated removal of degree < 2 vertices, smallest index first
  std::vector<std::size_t> degree(n, 0);
  std::vector<char> alive(n, 0);
  for (std::size_t p = 0; p < n; ++p)
    if (tag[p] != 0) {
      alive[p] = 1;
      degree[p] = adj[p].size();
    }
  std::set<std::size_t> queue;
  for (std::size_t p = 0; p < n; ++p)
    if (alive[p] && degree[p] < 2) queue.insert(p);
  while (!queue.empty()) {
    const std::size_t p = *queue.begin();
    queue.erase(queue.begin());
    alive[p] = 0;
    g.pruned.push_back(p);
    for (auto q : adj[p])
      if (alive[q] && --degree[q] < 2) queue.insert(q);
  }
  for (std::size_t p = 0; p < n; ++p) {
    if (!alive[p]) continue;
    (tag[p] == 1 ? g.l1_core : g.l2_core).push_back(p);
  }
  for (const auto& e : g.edges)
    if (tag[e.i] != 0 && tag[e.j] != 0 && alive[e.i] && alive[e.j]) g.core_edges.push_back(e);
  return g;
}

}  // namespace detail

inline SecondDistanceGraph second_distance_graph(const PointSet& s) {
  const auto spectrum = distance_spectrum(s, {.keep_members = true});
  if (spectrum.m() < 2) throw NoSecondDistance("point set determines fewer than two distances");
  return detail::build_second_distance_graph(s, spectrum, onion_layers(s));
}

// Structural facts about the pruned graph G' (and G) that the dense-case bound relies on.
struct GraphObservations {
  bool edges_touch_l1 = true;           // every Delta_2 edge has an endpoint in L1
  bool edges_within_layers = true;      // every Delta_2 edge lies in L1 u L2
  bool core_min_degree_two = true;
  bool l2_core_independent = true;      // (3)
  bool l2_core_degree_two = true;       // (4)
  bool l1_core_at_most_two_l2 = true;   // (5)
  bool three_l1_implies_one_l2 = true;  // (6)
  bool four_l1_implies_no_l2 = true;    // (7)
  bool l1_core_at_most_four_l1 = true;  // (8)
  bool pruning_inequality = true;       // e(G) <= |L1\L1'| + |L2\L2'| + e(G')

  bool all() const {
    return edges_touch_l1 && edges_within_layers && core_min_degree_two && l2_core_independent &&
           l2_core_degree_two && l1_core_at_most_two_l2 && three_l1_implies_one_l2 && four_l1_implies_no_l2 &&
           l1_core_at_most_four_l1 && pruning_inequality;
  }
};

inline GraphObservations check_observations(const SecondDistanceGraph& g, std::size_t n) {
  GraphObservations obs;
  std::vector<int> tag(n, 0);
  for (auto p : g.l1) tag[p] = 1;
  for (auto p : g.l2) tag[p] = 2;
  std::vector<char> core(n, 0);
  for (auto p : g.l1_core) core[p] = 1;
  for (auto p : g.l2_core) core[p] = 1;

  for (const auto& e : g.edges)
    if (tag[e.i] != 1 && tag[e.j] != 1) obs.edges_touch_l1 = false;
  obs.edges_within_layers = g.outside.empty();

  std::vector<std::size_t> deg1(n, 0), deg2(n, 0);
  for (const auto& e : g.core_edges) {
    if (tag[e.i] == 2 && tag[e.j] == 2) obs.l2_core_independent = false;
    (tag[e.j] == 1 ? deg1 : deg2)[e.i]++;
    (tag[e.i] == 1 ? deg1 : deg2)[e.j]++;
  }
  for (std::size_t p = 0; p < n; ++p) {
    if (!core[p]) continue;
    const std::size_t d = deg1[p] + deg2[p];
    if (d < 2) obs.core_min_degree_two = false;
    if (tag[p] == 2 && d != 2) obs.l2_core_degree_two = false;
    if (tag[p] == 1) {
      if (deg2[p] > 2) obs.l1_core_at_most_two_l2 = false;
      if (deg1[p] == 3 && deg2[p] > 1) obs.three_l1_implies_one_l2 = false;
      if (deg1[p] == 4 && deg2[p] > 0) obs.four_l1_implies_no_l2 = false;
      if (deg1[p] > 4) obs.l1_core_at_most_four_l1 = false;
    }
  }
  const std::size_t removed = g.pruned.size();
  obs.pruning_inequality = g.edges.size() - g.outside.size() <= removed + g.core_edges.size();
  return obs;
}

// min{3/2 (|L1|+|L2|), 4/3 |L1| + 2|L2|, 2|L1| + |L2|}
inline Rational dense_bound(std::size_t l1, std::size_t l2) {
  const Rational a(static_cast<unsigned long>(l1)), b(static_cast<unsigned long>(l2));
  Rational first = Rational(3, 2) * (a + b);
  Rational second = Rational(4, 3) * a + 2 * b;
  Rational third = 2 * a + b;
  return std::min({first, second, third});
}

inline Rational dense_bound(const ConvexLayers& layers) { return dense_bound(layers.l1(), layers.l2()); }

struct DenseTheoremReport {
  std::size_t n = 0;
  std::size_t l1 = 0, l2 = 0;
  Rational bound;
  std::size_t mu2 = 0;        // multiplicity of Delta_2 via the spectrum
  std::size_t graph_mu2 = 0;  // edges of G
  bool bound_le_n = false;
  bool holds = false;  // mu2 <= bound, and mu2 <= n whenever bound <= n
  GraphObservations observations;
};

inline DenseTheoremReport check_dense_theorem(const PointSet& s) {
  const auto spectrum = distance_spectrum(s, {.keep_members = true});
  if (spectrum.m() < 2) throw NoSecondDistance("point set determines fewer than two distances");
  const auto layers = onion_layers(s);
  const auto graph = detail::build_second_distance_graph(s, spectrum, layers);

  DenseTheoremReport r;
  r.n = s.size();
  r.l1 = layers.l1();
  r.l2 = layers.l2();
  r.bound = dense_bound(layers);
  r.mu2 = multiplicity_of(spectrum, graph.key);
  r.graph_mu2 = graph.mu();
  r.bound_le_n = r.bound <= Rational(static_cast<unsigned long>(r.n));
  r.holds = Rational(static_cast<unsigned long>(r.mu2)) <= r.bound && (!r.bound_le_n || r.mu2 <= r.n);
  r.observations = check_observations(graph, r.n);
  return r;
}

struct DiameterRatioReport {
  bool applies = false;
  bool undecided = false;  // pi bracket too coarse to decide applicability
  bool holds = false;
  std::size_t mu2 = 0;
  double ratio = 0.0;      // Delta / delta
  double threshold = 0.0;  // n / (3 pi)
};

// Delta <= n/(3 pi) * delta implies mu(X, Delta_2) <= n.
inline DiameterRatioReport check_diameter_ratio_corollary(const PointSet& s) {
  DiameterRatioReport r;
  const std::size_t n = s.size();
  r.threshold = static_cast<double>(n) / (3.0 * M_PI);
  if (n < 2) return r;
  const auto spectrum = distance_spectrum(s);
  const auto ext = extremal_distances(spectrum);
  r.ratio = std::sqrt(key_to_double(ext.diameter) / key_to_double(ext.smallest));
  if (!ext.second_largest) return r;

  auto exact_key = [](const SquaredDistance& k) {
    return std::holds_alternative<Rational>(k) ? std::get<Rational>(k) : Rational(std::get<double>(k));
  };
  const Rational big = exact_key(ext.diameter), small = exact_key(ext.smallest);
  Rational pi_lo(Integer("314159265358979"), Integer("100000000000000"));
  Rational pi_hi(Integer("314159265358980"), Integer("100000000000000"));
  pi_lo.canonicalize();
  pi_hi.canonicalize();
  const Rational rhs = Rational(static_cast<unsigned long>(n * n)) * small;
  const bool surely = 9 * pi_hi * pi_hi * big <= rhs;
  const bool possibly = 9 * pi_lo * pi_lo * big <= rhs;
  r.applies = surely;
  r.undecided = possibly && !surely;
  r.mu2 = multiplicity_of(spectrum, *ext.second_largest);
  r.holds = !r.applies || r.mu2 <= n;
  return r;
}

}  // namespace multlab
