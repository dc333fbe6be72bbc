#include <gtest/gtest.h>

#include <random>

#include "multlab/multlab.hpp"
#include "oracles.hpp"

using namespace multlab;

namespace {

std::vector<ExactPoint> transform(const std::vector<ExactPoint>& pts, const Rational& c, const Rational& s,
                                  const Rational& scale, const Rational& tx, const Rational& ty) {
  std::vector<ExactPoint> out;
  for (const auto& p : pts) {
    Rational x = scale * (c * p.x - s * p.y) + tx;
    Rational y = scale * (s * p.x + c * p.y) + ty;
    x.canonicalize();
    y.canonicalize();
    out.push_back({x, y});
  }
  return out;
}

void expect_matches_oracle(const PointSet& s) {
  const auto sp = distance_spectrum(s);
  const auto ref = oracle::exact_pairs(s);
  ASSERT_EQ(sp.m(), ref.size());
  for (const auto& c : sp.classes) ASSERT_EQ(ref.at(std::get<Rational>(c.key)), c.multiplicity);
  EXPECT_EQ(sp.pair_count(), s.size() * (s.size() - 1) / 2);
}

}  // namespace

TEST(Property, RandomSetsMatchOracle) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) expect_matches_oracle(random_exact_set(2 + seed * 3, seed));
  // coarse coordinates force many coincident distances
  for (std::uint64_t seed = 0; seed < 30; ++seed) expect_matches_oracle(random_exact_set(40, seed, 3, 1));
}

TEST(Property, LargeSetsMatchOracle) {
  expect_matches_oracle(random_exact_set(500, 1));
  expect_matches_oracle(random_exact_set(500, 2, 12, 1));
}

TEST(Property, WideCoordinatesUseFallback) {
  // coordinates near 2^70 leave the 64-bit frame
  std::vector<ExactPoint> pts;
  std::mt19937_64 rng(4);
  const Integer big = Integer(1) << 70;
  for (int i = 0; i < 30; ++i)
    pts.push_back({Rational(big * static_cast<long>(rng() % 7) + static_cast<long>(rng() % 5)),
                   Rational(big * static_cast<long>(rng() % 7), 3 + static_cast<long>(rng() % 4))});
  std::sort(pts.begin(), pts.end(), [](const ExactPoint& a, const ExactPoint& b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  expect_matches_oracle(PointSet::exact(pts));
}

TEST(Property, RigidMotionAndScaling) {
  // rotations with rational cosine: (3/5, 4/5), (5/13, 12/13), (8/17, 15/17)
  const std::vector<std::pair<Rational, Rational>> rot{{Rational(3, 5), Rational(4, 5)},
                                                       {Rational(5, 13), Rational(12, 13)},
                                                       {Rational(8, 17), Rational(-15, 17)}};
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto s = random_exact_set(25, seed, 10, 3);
    const auto base = distance_spectrum(s);
    const auto& [c, sn] = rot[seed % rot.size()];
    Rational scale(static_cast<long>(seed % 4) + 1, 3);
    scale.canonicalize();
    const auto t = PointSet::exact(transform(s.exact_points(), c, sn, scale, Rational(7, 2), Rational(-11, 3)));
    const auto sp = distance_spectrum(t);
    ASSERT_EQ(sp.m(), base.m());
    EXPECT_EQ(sp.multiplicities(), base.multiplicities());
    for (std::size_t i = 0; i < sp.m(); ++i)
      EXPECT_EQ(std::get<Rational>(sp.classes[i].key), scale * scale * std::get<Rational>(base.classes[i].key));
  }
}

TEST(Property, ApproximateMatchesLongDoubleOracle) {
  std::vector<PointSet> sets{regular_ngon(17).points, ngon_minus_vertex(20).points, equidistant_circle(30).points,
                             arc_with_center(25, 0.8).points, three_group(7, 21).points, hex_two_row(15).points};
  for (std::size_t i = 0; i < sets.size(); ++i) {
    const auto& s = sets[i];
    if (s.is_exact()) continue;
    const auto sp = distance_spectrum(s);
    const auto ref = oracle::approx_pairs(s);
    ASSERT_EQ(sp.m(), ref.size()) << s.label;
    std::vector<std::size_t> r;
    for (auto& [k, c] : ref) r.push_back(c);
    EXPECT_EQ(sp.multiplicities(), oracle::sorted_desc(r)) << s.label;
  }
}

TEST(Property, ExtremalMultiplicityBounds) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto s = random_exact_set(3 + seed % 60, 500 + seed, 5, 2);
    const auto sp = distance_spectrum(s);
    const auto e = extremal_distances(sp);
    const std::size_t n = s.size();
    EXPECT_LE(multiplicity_of(sp, e.diameter), n);
    if (e.second_largest) EXPECT_LE(2 * multiplicity_of(sp, *e.second_largest), 3 * n);
  }
}

TEST(Property, LayersPartitionAndIdempotent) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto s = random_exact_set(10 + seed * 2, seed, 8, 2);
    const auto l = onion_layers(s);
    std::vector<int> seen(s.size(), 0);
    for (const auto& layer : l.layers)
      for (auto p : layer) ++seen[p];
    for (auto v : seen) EXPECT_EQ(v, 1);
    // the hull of what remains after removing earlier layers is the next layer
    std::vector<std::size_t> rest(s.size());
    std::iota(rest.begin(), rest.end(), std::size_t{0});
    for (const auto& layer : l.layers) {
      auto h = convex_hull(s, rest);
      EXPECT_EQ(std::set<std::size_t>(h.begin(), h.end()), std::set<std::size_t>(layer.begin(), layer.end()));
      std::set<std::size_t> drop(layer.begin(), layer.end());
      std::erase_if(rest, [&](std::size_t p) { return drop.count(p) > 0; });
    }
  }
}

TEST(Property, GraphConsistency) {
  std::vector<PointSet> sets;
  for (std::uint64_t seed = 0; seed < 60; ++seed) sets.push_back(random_exact_set(4 + seed % 50, 900 + seed, 4, 1));
  for (std::size_t s = 2; s <= 9; ++s) sets.push_back(grid_section(s, s + 1).points);
  sets.push_back(regular_ngon(11).points);
  sets.push_back(three_group(10, 30).points);
  for (const auto& x : sets) {
    const auto sp = distance_spectrum(x);
    if (sp.m() < 2) continue;
    const auto g = second_distance_graph(x);
    EXPECT_EQ(g.mu(), multiplicity_of(sp, *extremal_distances(sp).second_largest));
    const auto obs = check_observations(g, x.size());
    EXPECT_TRUE(obs.all()) << x.label;
    EXPECT_LE(g.edges.size(), g.pruned.size() + g.core_edges.size());
  }
}
