#include <gtest/gtest.h>

#include <random>

#include "multlab/multlab.hpp"
#include "oracles.hpp"

using namespace multlab;

namespace {

PointSet grid(std::size_t w, std::size_t h) { return grid_section(w, h).points; }

PointSet exact_of(std::initializer_list<std::pair<long, long>> pts) {
  std::vector<ExactPoint> v;
  for (auto [x, y] : pts) v.push_back({Rational(x), Rational(y)});
  return PointSet::exact(std::move(v));
}

Rational q(long p, long d = 1) {
  Rational r(p, d);
  r.canonicalize();
  return r;
}

}  // namespace

TEST(Rational, ParsesFractionsAndDecimals) {
  EXPECT_EQ(parse_rational("3/4"), q(3, 4));
  EXPECT_EQ(parse_rational("-6/8"), q(-3, 4));
  EXPECT_EQ(parse_rational("0.125"), q(1, 8));
  EXPECT_EQ(parse_rational("17"), q(17));
  EXPECT_THROW(parse_rational("1/0"), Error);
  EXPECT_THROW(parse_rational("abc"), Error);
  EXPECT_EQ(format_rational(q(6, 4)), "3/2");
}

TEST(PointSetTest, RejectsDuplicates) {
  EXPECT_THROW(exact_of({{1, 1}, {1, 1}}), DegeneratePointSet);
  EXPECT_THROW(PointSet::approximate({{0.0, 0.0}, {0.0, 1e-14}}), DegeneratePointSet);
  EXPECT_THROW(PointSet::exact({}), DegeneratePointSet);
}

TEST(PointSetTest, MixedModesRejected) {
  std::vector<Point> pts{{Coordinate(Rational(0)), Coordinate(Rational(0))}, {Coordinate(1.0), Coordinate(Rational(1))}};
  EXPECT_THROW(PointSet::from_coordinates(pts), ModeMismatch);
  const auto a = PointSet::approximate({{0, 0}, {1, 0}});
  EXPECT_THROW(a.exact_points(), ModeMismatch);
}

TEST(SquaredDistance, Basics) {
  EXPECT_EQ(squared_distance(ExactPoint{q(0), q(0)}, ExactPoint{q(3), q(4)}), q(25));
  EXPECT_EQ(squared_distance(ExactPoint{q(1), q(1)}, ExactPoint{q(1), q(1)}), q(0));
  const long k = 4;
  EXPECT_EQ(squared_distance(ExactPoint{q(0), q(0)}, ExactPoint{q(k - 1), q(k - 2)}), q(13));
  EXPECT_DOUBLE_EQ(squared_distance(ApproxPoint{0, 0}, ApproxPoint{3, 4}), 25.0);
  const Point ex{Coordinate(Rational(0)), Coordinate(Rational(0))};
  const Point ap{Coordinate(1.0), Coordinate(1.0)};
  EXPECT_THROW(squared_distance(ex, ap), ModeMismatch);
}

TEST(Spectrum, SmallExamples) {
  EXPECT_EQ(distance_spectrum(regular_ngon(5).points).multiplicities(), (std::vector<std::size_t>{5, 5}));
  EXPECT_EQ(distance_spectrum(ngon_minus_vertex(7).points).multiplicities(), (std::vector<std::size_t>{5, 5, 5}));
  EXPECT_EQ(distance_spectrum(grid(2, 2)).multiplicities(), (std::vector<std::size_t>{4, 2}));
}

TEST(Spectrum, Grid4x4MatchesOracle) {
  const auto g = grid(4, 4);
  const auto sp = distance_spectrum(g);
  const auto ref = oracle::exact_pairs(g);
  ASSERT_EQ(sp.m(), ref.size());
  for (const auto& c : sp.classes) EXPECT_EQ(ref.at(std::get<Rational>(c.key)), c.multiplicity);
  EXPECT_EQ(sp.pair_count(), 120u);
  EXPECT_FALSE(sp.audit.has_value());
}

TEST(Spectrum, TieBreakDescendingKey) {
  const auto sp = distance_spectrum(grid(4, 4));
  // 5 and 1 both occur 24 times
  EXPECT_EQ(std::get<Rational>(sp.classes[0].key), q(5));
  EXPECT_EQ(std::get<Rational>(sp.classes[1].key), q(1));
  for (std::size_t i = 1; i < sp.m(); ++i) {
    EXPECT_GE(sp.classes[i - 1].multiplicity, sp.classes[i].multiplicity);
    if (sp.classes[i - 1].multiplicity == sp.classes[i].multiplicity)
      EXPECT_GT(compare_keys(sp.classes[i - 1].key, sp.classes[i].key), 0);
  }
}

TEST(Spectrum, KeepMembers) {
  const auto sp = distance_spectrum(grid(3, 3), {.keep_members = true});
  for (const auto& c : sp.classes) EXPECT_EQ(c.members.size(), c.multiplicity);
}

TEST(Spectrum, SinglePointIsEmpty) {
  const auto sp = distance_spectrum(exact_of({{0, 0}}));
  EXPECT_EQ(sp.m(), 0u);
  EXPECT_EQ(sp.pair_count(), 0u);
}

TEST(Spectrum, ApproximateAuditReliable) {
  const auto sp = distance_spectrum(regular_ngon(12).points);
  ASSERT_TRUE(sp.audit.has_value());
  EXPECT_TRUE(sp.audit->reliable);
  EXPECT_GE(sp.audit->margin(), kAuditSafety);
  EXPECT_EQ(sp.multiplicities(), (std::vector<std::size_t>{12, 12, 12, 12, 12, 6}));
}

TEST(Spectrum, ApproximateAuditFailsLoudly) {
  // two keys 1 and 1 + 1e-8: too close to separate, too far to merge
  const auto s = PointSet::approximate({{0, 0}, {1, 0}, {0, 1.000000005}, {5, 5}});
  EXPECT_THROW(distance_spectrum(s), UnreliableClustering);
  const auto sp = distance_spectrum(s, {.allow_unreliable = true});
  ASSERT_TRUE(sp.audit.has_value());
  EXPECT_FALSE(sp.audit->reliable);
}

TEST(Extremal, Examples) {
  auto e = extremal_distances(distance_spectrum(grid(2, 2)));
  EXPECT_EQ(std::get<Rational>(e.diameter), q(2));
  EXPECT_EQ(std::get<Rational>(*e.second_largest), q(1));
  EXPECT_EQ(std::get<Rational>(e.smallest), q(1));

  e = extremal_distances(distance_spectrum(equidistant_line(3).points));
  EXPECT_EQ(std::get<Rational>(e.diameter), q(4));
  EXPECT_EQ(std::get<Rational>(*e.second_largest), q(1));
  EXPECT_EQ(std::get<Rational>(e.smallest), q(1));

  e = extremal_distances(distance_spectrum(grid(4, 4)));
  EXPECT_EQ(std::get<Rational>(e.diameter), q(18));
  EXPECT_EQ(std::get<Rational>(*e.second_largest), q(13));
  EXPECT_EQ(std::get<Rational>(e.smallest), q(1));
}

TEST(MultiplicityOf, Grid) {
  const auto sp = distance_spectrum(grid(4, 4));
  EXPECT_EQ(multiplicity_of(sp, q(13)), 8u);
  EXPECT_EQ(multiplicity_of(sp, q(8)), 8u);
  EXPECT_EQ(multiplicity_of(sp, q(19)), 0u);
  EXPECT_THROW(multiplicity_of(sp, SquaredDistance(13.0)), ModeMismatch);
}

TEST(MultiplicityOf, ApproximateAmbiguousGap) {
  const auto sp = distance_spectrum(regular_ngon(8).points);
  EXPECT_EQ(multiplicity_of(sp, 4.0), 4u);
  EXPECT_EQ(multiplicity_of(sp, 4.0 * (1 + 1e-12)), 4u);
  EXPECT_THROW(multiplicity_of(sp, 4.0 * (1 + 1e-7)), UnreliableClustering);
  EXPECT_EQ(multiplicity_of(sp, 3.0), 0u);
}

TEST(Staircase, Examples) {
  EXPECT_TRUE(is_full_staircase(distance_spectrum(equidistant_line(7).points)));
  EXPECT_FALSE(is_full_staircase(distance_spectrum(grid(2, 2))));
  EXPECT_TRUE(is_full_staircase(distance_spectrum(arc_with_center(7, 50 * std::numbers::pi / 180).points)));
}

TEST(Predicates, CollinearCocircular) {
  EXPECT_TRUE(is_collinear(equidistant_line(7).points));
  EXPECT_FALSE(is_collinear(grid(2, 2)));
  EXPECT_TRUE(is_cocircular(grid(2, 2)));
  EXPECT_FALSE(is_cocircular(grid(3, 3)));
  EXPECT_TRUE(is_cocircular(regular_ngon(9).points));
  EXPECT_FALSE(is_cocircular(equidistant_line(4).points));
  EXPECT_TRUE(is_cocircular(random_convex_exact(12, 5)));
}

TEST(Metric, HexWeights) {
  const auto h = hex_two_row(3).points;
  const auto sp = distance_spectrum(h);
  // unit-side triangle plus its base
  EXPECT_EQ(multiplicity_of(sp, q(1)), 3u);
  EXPECT_EQ(sp.m(), 1u);
}

TEST(Io, TextRoundTripExact) {
  auto g = hex_two_row(9).points;
  g.metadata["source"] = "test";
  const auto back = parse_point_set_text(point_set_to_text(g));
  EXPECT_EQ(back.metric(), g.metric());
  EXPECT_EQ(back.metadata, g.metadata);
  EXPECT_EQ(back.label, g.label);
  const auto a = distance_spectrum(g), b = distance_spectrum(back);
  ASSERT_EQ(a.m(), b.m());
  for (std::size_t i = 0; i < a.m(); ++i) {
    EXPECT_EQ(std::get<Rational>(a.classes[i].key), std::get<Rational>(b.classes[i].key));
    EXPECT_EQ(a.classes[i].multiplicity, b.classes[i].multiplicity);
  }
}

TEST(Io, TextRoundTripApproxBitExact) {
  const auto s = regular_ngon(11).points;
  const auto back = parse_point_set_text(point_set_to_text(s));
  ASSERT_EQ(back.size(), s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    EXPECT_EQ(back.approx_points()[i].x, s.approx_points()[i].x);
    EXPECT_EQ(back.approx_points()[i].y, s.approx_points()[i].y);
  }
}

TEST(Io, JsonRoundTrip) {
  const auto s = random_exact_set(30, 9);
  const auto back = point_set_from_json(point_set_to_json(s));
  EXPECT_EQ(back.exact_points(), s.exact_points());
  const auto a = regular_ngon(6).points;
  const auto b = point_set_from_json(point_set_to_json(a));
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(b.approx_points()[i].x, a.approx_points()[i].x);
    EXPECT_EQ(b.approx_points()[i].y, a.approx_points()[i].y);
  }
}

TEST(Io, ParseErrors) {
  EXPECT_THROW(parse_point_set_text("0 0\n1 1\n"), ParseError);
  EXPECT_THROW(parse_point_set_text("mode: exact\n0 0 0\n"), ParseError);
  EXPECT_THROW(parse_point_set_text("mode: fuzzy\n"), ParseError);
  EXPECT_THROW(parse_point_set_text("mode: approx\nmetric: 1 3\n0 0\n"), ParseError);
  try {
    parse_point_set_text("mode: exact\n# c\n0 0\n1 x\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4u);
  }
  const auto s = parse_point_set_text("mode: exact # header\n\n1/2 3\n-1 0.5\n");
  EXPECT_EQ(s.size(), 2u);
  EXPECT_EQ(s.exact_points()[0].x, q(1, 2));
}

TEST(Io, CsvAndJsonSpectrum) {
  const auto sp = distance_spectrum(grid(4, 4));
  const auto csv = spectrum_to_csv(sp);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "squared_distance,multiplicity");
  std::size_t rows = std::count(csv.begin(), csv.end(), '\n') - 1;
  EXPECT_EQ(rows, sp.m());
  const auto j = spectrum_to_json(sp);
  EXPECT_EQ(j["n"], 16);
  EXPECT_EQ(j["classes"][0]["squared_distance"], "5");
  const auto ja = spectrum_to_json(distance_spectrum(regular_ngon(5).points));
  EXPECT_TRUE(ja.contains("clustering_audit"));
  EXPECT_TRUE(ja["clustering_audit"]["reliable"].get<bool>());
  EXPECT_NE(spectrum_to_text(distance_spectrum(regular_ngon(5).points)).find("clustering audit"), std::string::npos);
}
