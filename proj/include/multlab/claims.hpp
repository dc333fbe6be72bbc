#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "constructions.hpp"
#include "convex_layers.hpp"
#include "detail/parallel.hpp"
#include "io.hpp"
#include "spectrum.hpp"
#include "sum2squares.hpp"

namespace multlab {

enum class Verdict { pass, fail, reported };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::reported: return "reported";
  }
  return "?";
}

struct ClaimReport {
  std::string claim_id;
  json inputs = json::object();
  Verdict verdict = Verdict::reported;
  json evidence = json::object();
};

inline void to_json(json& j, const ClaimReport& r) {
  j = json{{"claim", r.claim_id}, {"inputs", r.inputs}, {"verdict", to_string(r.verdict)}, {"evidence", r.evidence}};
}

inline Verdict verdict_of(bool ok) { return ok ? Verdict::pass : Verdict::fail; }

// ---------------------------------------------------------------------------
// Per-input verifiers
// ---------------------------------------------------------------------------

namespace detail {

struct SecondDistanceFacts {
  std::size_t diameter_mult = 0;
  std::optional<std::size_t> min_other;  // smallest multiplicity among non-diameter classes
};

inline SecondDistanceFacts second_distance_facts(const DistanceSpectrum& sp) {
  SecondDistanceFacts f;
  const auto ext = extremal_distances(sp);
  const auto diam = find_class(sp, ext.diameter);
  for (std::size_t c = 0; c < sp.classes.size(); ++c) {
    if (diam && c == *diam) {
      f.diameter_mult = sp.classes[c].multiplicity;
      continue;
    }
    f.min_other = std::min(f.min_other.value_or(sp.classes[c].multiplicity), sp.classes[c].multiplicity);
  }
  return f;
}

}  // namespace detail

// Some distance other than the diameter occurs at most n times (any planar set, n >= 5).
inline ClaimReport verify_conjecture_second(const PointSet& x) {
  const std::size_t n = x.size();
  if (n < 5) throw TooSmall("the statement needs n >= 5 (a rhombus of two unit triangles fails at n = 4)");
  const auto sp = distance_spectrum(x);
  const auto f = detail::second_distance_facts(sp);
  ClaimReport r;
  r.claim_id = "conj:second";
  r.inputs = {{"label", x.label}, {"n", n}};
  const bool holds = f.min_other && *f.min_other <= n;
  r.evidence = {{"a", sp.multiplicities()}, {"diameter_multiplicity", f.diameter_mult}, {"holds", holds}};
  if (f.min_other) r.evidence["min_non_diameter_multiplicity"] = *f.min_other;
  r.verdict = verdict_of(holds);
  return r;
}

inline ClaimReport verify_convex_second_distance(const PointSet& x) {
  const std::size_t n = x.size();
  if (n < 5) throw TooSmall("the statement needs n >= 5 (a rhombus of two unit triangles fails at n = 4)");
  const auto layers = onion_layers(x);
  if (layers.l1() != n) throw NotConvex("point set is not in convex position");
  const auto sp = distance_spectrum(x);
  const auto f = detail::second_distance_facts(sp);
  const std::size_t half = n / 2;
  const std::size_t m = sp.m();
  const bool holds = f.min_other && *f.min_other <= n;
  const bool distinct_lower_bound = m >= half;

  ClaimReport r;
  r.claim_id = "thm:second";
  r.inputs = {{"label", x.label}, {"n", n}};
  r.evidence = {{"a", sp.multiplicities()},
                {"m", m},
                {"floor_n_over_2", half},
                {"at_least_floor_n_over_2_distances", distinct_lower_bound},
                {"diameter_multiplicity", f.diameter_mult},
                {"holds", holds}};
  if (f.min_other) r.evidence["min_non_diameter_multiplicity"] = *f.min_other;
  bool counting_ok = true;
  if (m > half) {
    const std::size_t lhs = half * (n + 1) + 1, rhs = n * (n - 1) / 2;
    counting_ok = lhs > rhs;
    r.evidence["branch"] = "counting";
    r.evidence["counting_lhs"] = lhs;
    r.evidence["pairs"] = rhs;
    r.evidence["counting_inequality"] = counting_ok;
  } else {
    r.evidence["branch"] = "extremal";
  }
  r.verdict = verdict_of(holds && distinct_lower_bound && counting_ok);
  return r;
}

inline json dense_report_json(const DenseTheoremReport& d) {
  const auto& o = d.observations;
  return {{"n", d.n},
          {"L1", d.l1},
          {"L2", d.l2},
          {"bound", format_rational(d.bound)},
          {"bound_le_n", d.bound_le_n},
          {"mu_Delta2", d.mu2},
          {"graph_edges", d.graph_mu2},
          {"holds", d.holds},
          {"observations",
           {{"edges_touch_L1", o.edges_touch_l1},
            {"edges_within_L1_L2", o.edges_within_layers},
            {"core_min_degree_2", o.core_min_degree_two},
            {"L2_core_independent", o.l2_core_independent},
            {"L2_core_degree_2", o.l2_core_degree_two},
            {"L1_core_at_most_2_L2", o.l1_core_at_most_two_l2},
            {"three_L1_one_L2", o.three_l1_implies_one_l2},
            {"four_L1_no_L2", o.four_l1_implies_no_l2},
            {"L1_core_at_most_4_L1", o.l1_core_at_most_four_l1},
            {"pruning_inequality", o.pruning_inequality}}}};
}

inline ClaimReport verify_dense(const PointSet& x) {
  const auto d = check_dense_theorem(x);
  ClaimReport r;
  r.claim_id = "thm:dense";
  r.inputs = {{"label", x.label}, {"n", x.size()}};
  r.evidence = dense_report_json(d);
  r.verdict = verdict_of(d.holds && d.observations.all() && d.mu2 == d.graph_mu2);
  return r;
}

inline ClaimReport verify_diameter_ratio(const PointSet& x) {
  const auto c = check_diameter_ratio_corollary(x);
  ClaimReport r;
  r.claim_id = "cor:dense";
  r.inputs = {{"label", x.label}, {"n", x.size()}};
  r.evidence = {{"applies", c.applies}, {"undecided", c.undecided}, {"holds", c.holds},
                {"mu_Delta2", c.mu2},   {"ratio", c.ratio},         {"threshold", c.threshold}};
  // an applicable instance that violates the bound is a genuine failure
  r.verdict = (c.applies && !c.holds) ? Verdict::fail : Verdict::reported;
  return r;
}

inline ClaimReport verify_three_group(std::size_t m, std::size_t n) {
  ThreeGroupInfo info;
  const auto c = three_group(m, n, &info);
  const auto sp = distance_spectrum(c.points, {.keep_members = true});
  const auto ext = extremal_distances(sp);
  const double d2 = info.delta2 * info.delta2, d1 = info.delta * info.delta;
  const auto cls2 = find_class(sp, d2);
  const auto cls1 = find_class(sp, d1);
  const bool second_ok = ext.second_largest && cls2 && find_class(sp, *ext.second_largest) == cls2;
  const bool smallest_ok = cls1 && find_class(sp, ext.smallest) == cls1;

  std::size_t vv = 0, vu = 0, other = 0;
  if (cls2)
    for (const auto& e : sp.classes[*cls2].members) {
      const bool vi = e.i < m, vj = e.j < m;
      const bool ui = e.i >= m && e.i < 2 * m, uj = e.j >= m && e.j < 2 * m;
      if (vi && vj) ++vv;
      else if ((vi && uj) || (ui && vj)) ++vu;
      else ++other;
    }

  ClaimReport r;
  r.claim_id = "thm:cons";
  r.inputs = {{"m", m}, {"n", n}};
  const bool mu2_ok = info.mu_delta2 >= 3 * m;
  r.evidence = {{"Delta2", info.delta2},
                {"delta", info.delta},
                {"mu_Delta2", info.mu_delta2},
                {"three_m", 3 * m},
                {"mu_Delta2_ok", mu2_ok},
                {"Delta2_is_second_largest", second_ok},
                {"Delta2_edges", {{"v_v", vv}, {"v_u", vu}, {"other", other}}},
                {"mu_delta", info.mu_delta},
                {"three_n_minus_five_m", 3 * n - 5 * m},
                {"B", info.boundary_deficit},
                {"B_over_n", static_cast<double>(info.boundary_deficit) / static_cast<double>(n)},
                {"delta_is_smallest", smallest_ok},
                {"smallest_key", key_to_json(ext.smallest)},
                {"lattice_points_outside_C", info.lattice_outside},
                {"clustering_audit", audit_to_json(*sp.audit)}};
  r.verdict = verdict_of(mu2_ok && second_ok);
  return r;
}

// T(n) = 2^k T(n / 2^k) + n/2 unrolled: the number of rounds that used d_i, times n/2.
inline ClaimReport verify_cascade(const CascadeSpec& spec) {
  if (spec.rounds > 14) throw RangeExceeded("cascade verification limited to 14 rounds");
  CascadeInfo info;
  const auto c = translate_cascade(spec, &info);
  const std::size_t n = c.points.size();
  ClaimReport r;
  r.claim_id = "thm:diff";
  r.inputs = {{"k", spec.k}, {"rounds", spec.rounds}, {"seed", spec.seed}, {"prescribed", spec.prescribed}};
  r.evidence = {{"n", n}, {"attempts", info.attempts}, {"expected_mu", info.mu}};
  bool ok = true;
  if (n <= 4096) {
    const auto sp = distance_spectrum(c.points);
    json facts = json::array();
    for (const auto& f : c.facts) {
      const auto res = evaluate_fact(f, c.points, sp);
      ok = ok && res.holds;
      facts.push_back({{"fact", res.name}, {"holds", res.holds}, {"observed", res.observed}});
    }
    const auto a = sp.multiplicities();
    r.evidence["spectrum_method"] = "pairs";
    r.evidence["facts"] = facts;
    r.evidence["m"] = sp.m();
    r.evidence["a_head"] = std::vector<std::size_t>(a.begin(), a.begin() + std::min<std::size_t>(a.size(), spec.k + 2));
    if (a.size() > spec.k) r.evidence["gap"] = static_cast<long long>(a[spec.k - 1]) - static_cast<long long>(a[spec.k]);
    r.evidence["clustering_audit"] = audit_to_json(*sp.audit);
  } else {
    r.evidence["spectrum_method"] = "difference-vector classes";
  }
  r.verdict = verdict_of(ok);
  return r;
}

inline ClaimReport verify_staircase(const PointSet& x) {
  const auto sp = distance_spectrum(x);
  ClaimReport r;
  r.claim_id = "staircase";
  r.inputs = {{"label", x.label}, {"n", x.size()}};
  r.evidence = {{"a", sp.multiplicities()},
                {"full_staircase", is_full_staircase(sp)},
                {"distinct_multiplicities", multiplicities_pairwise_distinct(sp)},
                {"collinear", is_collinear(x)},
                {"cocircular", is_cocircular(x)}};
  if (sp.audit) r.evidence["clustering_audit"] = audit_to_json(*sp.audit);
  return r;
}

inline json facts_json(const std::vector<FactResult>& res, bool& ok) {
  json facts = json::array();
  ok = true;
  for (const auto& f : res) {
    ok = ok && f.holds;
    facts.push_back({{"fact", f.name}, {"holds", f.holds}, {"observed", f.observed}});
  }
  return facts;
}

inline ClaimReport verify_construction_facts(const std::string& claim, const ConstructionResult& c, json inputs) {
  ClaimReport r;
  r.claim_id = claim;
  r.inputs = std::move(inputs);
  bool ok = true;
  r.evidence["facts"] = facts_json(evaluate_facts(c), ok);
  r.verdict = verdict_of(ok);
  return r;
}

inline ClaimReport verify_grid8(std::size_t k) {
  const auto e = exact_eight_check(k);
  ClaimReport r;
  r.claim_id = "obs:grid8";
  r.inputs = {{"k", k}};
  r.evidence = {{std::to_string(e.key1), e.count1}, {std::to_string(e.key2), e.count2},
                {"extra_representation", e.extra_representation()}};
  if (e.extra_representation()) {
    json extra = json::array();
    for (auto [a, b] : e.extra1) extra.push_back({a, b});
    for (auto [a, b] : e.extra2) extra.push_back({a, b});
    r.evidence["extra_vectors"] = extra;
  }
  r.verdict = verdict_of(e.passes());
  return r;
}

inline ClaimReport verify_lemma_many(std::size_t k) {
  const auto c = lemma_many_construct(k);
  ClaimReport r;
  r.claim_id = "lem:many";
  r.inputs = {{"k", k}};
  const std::size_t expected = std::size_t{1} << (k - 1);
  bool legs_ok = true;
  for (std::size_t j = 0; j < k; ++j)
    legs_ok = legs_ok && c.legs[j].first * c.legs[j].first + c.legs[j].second * c.legs[j].second == c.primes[j];
  json flagged = json::array();
  for (const auto& s : c.rich)
    if (!s.unordered_bound) flagged.push_back({{"primes", s.primes}, {"unordered_count", s.unordered_count}});
  r.evidence = {{"primes", c.primes},
                {"n", to_string(c.n)},
                {"subsets", c.rich.size()},
                {"expected_subsets", expected},
                {"subsets_with_half_or_more", c.subsets_at_least_half},
                {"products_distinct", c.products_distinct},
                {"legs_ok", legs_ok},
                {"gaussian_bound_all", c.gaussian_bound_all()},
                {"unordered_below_bound", flagged}};
  r.verdict = verdict_of(c.rich.size() == expected && c.products_distinct && legs_ok && c.gaussian_bound_all());
  return r;
}

// n^{1 + c/ln ln n} with the exponent c reported alongside
inline double rich_threshold(double n, double c) { return std::pow(n, 1.0 + c / std::log(std::log(n))); }

inline ClaimReport report_grid_trend(const std::vector<std::size_t>& sides, double c) {
  ClaimReport r;
  r.claim_id = "thm:many";
  r.inputs = {{"sides", sides}, {"c", c}};
  json rows = json::array();
  for (auto s : sides) {
    const double n = static_cast<double>(s) * static_cast<double>(s);
    const auto thr = static_cast<std::uint64_t>(std::ceil(rich_threshold(n, c)));
    const auto rep = grid_rich_distances(s, thr);
    const auto twice = grid_rich_distances(s, 2 * static_cast<std::uint64_t>(n));
    rows.push_back({{"s", s},
                    {"n", rep.n},
                    {"m", rep.m},
                    {"threshold", thr},
                    {"rich_count", rep.rich_count},
                    {"target_count", std::pow(n, c / std::log(std::log(n)))},
                    {"rich_at_2n", twice.rich_count},
                    {"max_multiplicity", rep.max_multiplicity}});
  }
  r.evidence["trend"] = rows;
  r.verdict = Verdict::reported;
  return r;
}

inline ClaimReport report_grid_sections(const std::vector<std::size_t>& sides) {
  ClaimReport r;
  r.claim_id = "thm:m/9";
  r.inputs = {{"sides", sides}};
  json rows = json::array();
  for (std::size_t divisor : {3, 4, 5})
    for (auto s : sides) {
      if (s % divisor) continue;
      const auto g = grid_section_ratios(s, divisor);
      rows.push_back({{"s", s},
                      {"divisor", divisor},
                      {"threshold", format_rational(g.threshold)},
                      {"m", g.m},
                      {"m_small", g.m_small},
                      {"meeting", g.meeting},
                      {"fraction_of_m", g.fraction()},
                      {"target_fraction", 1.0 / static_cast<double>(divisor * divisor)},
                      {"all_subgrid_classes_meet", g.all_meet()},
                      {"non_diagonal_meet", g.all_nondiagonal_meet()}});
    }
  r.evidence["trend"] = rows;
  r.verdict = Verdict::reported;
  return r;
}

// ---------------------------------------------------------------------------
// Registry
// ---------------------------------------------------------------------------

using ClaimRunner = std::function<std::vector<ClaimReport>(const json& params, std::uint64_t seed)>;

struct ClaimEntry {
  std::string id;
  std::string kind;
  std::string summary;
  bool in_scope = true;
  std::string note;  // why out of scope, or what stands in for it
  ClaimRunner run;
};

namespace detail {

inline std::size_t param(const json& p, const char* key, std::size_t fallback) {
  return p.contains(key) ? p.at(key).get<std::size_t>() : fallback;
}

inline std::vector<std::size_t> range_param(const json& p, const char* single, const char* lo, const char* hi,
                                            std::size_t def_lo, std::size_t def_hi) {
  if (p.contains(single)) return {p.at(single).get<std::size_t>()};
  std::vector<std::size_t> out;
  for (std::size_t v = param(p, lo, def_lo); v <= param(p, hi, def_hi); ++v) out.push_back(v);
  return out;
}

inline PointSet rhombus() {
  const double h = std::sqrt(3.0) / 2;
  return PointSet::approximate({{0, 0}, {1, 0}, {0.5, h}, {0.5, -h}}, "rhombus");
}

inline std::vector<ClaimReport> run_second(const json& p, std::uint64_t seed) {
  std::vector<ClaimReport> out;
  if (p.contains("n")) {
    out.push_back(verify_convex_second_distance(regular_ngon(p.at("n").get<std::size_t>()).points));
    return out;
  }
  for (std::size_t n = 5; n <= 30; ++n) out.push_back(verify_convex_second_distance(regular_ngon(n).points));
  for (std::size_t n = 6; n <= 30; ++n) out.push_back(verify_convex_second_distance(ngon_minus_vertex(n + 1).points));
  for (std::uint64_t t = 0; t < 20; ++t) out.push_back(verify_convex_second_distance(random_convex_exact(20, seed + t)));
  return out;
}

inline std::vector<ClaimReport> run_conjecture(const json& p, std::uint64_t seed) {
  std::vector<ClaimReport> out;
  const std::size_t count = param(p, "count", 50);
  const std::size_t n = param(p, "n", 30);
  for (std::uint64_t t = 0; t < count; ++t) out.push_back(verify_conjecture_second(random_exact_set(n, seed + t, 4, 1)));
  ClaimReport small;
  small.claim_id = "conj:second";
  small.inputs = {{"label", "rhombus"}, {"n", 4}};
  const auto sp = distance_spectrum(rhombus());
  small.evidence = {{"a", sp.multiplicities()}, {"note", "n = 4 is below the range of the statement"}};
  small.verdict = Verdict::reported;
  out.push_back(small);
  return out;
}

inline std::vector<ClaimReport> run_dense(const json& p, std::uint64_t seed) {
  std::vector<ClaimReport> out;
  const std::size_t count = param(p, "count", 100);
  const std::size_t n_max = param(p, "n_max", 60);
  for (std::uint64_t t = 0; t < count; ++t) {
    const std::size_t n = 3 + static_cast<std::size_t>((seed + t) % (n_max - 2));
    out.push_back(verify_dense(random_exact_set(n, seed + t)));
  }
  for (std::size_t s = 2; s <= param(p, "grid_max", 12); ++s) out.push_back(verify_dense(grid_section(s, s).points));
  out.push_back(verify_dense(three_group(7, 21).points));
  return out;
}

inline std::vector<ClaimReport> run_cor_dense(const json& p, std::uint64_t) {
  std::vector<ClaimReport> out;
  for (std::size_t s : std::vector<std::size_t>{10, 20, param(p, "s", 40)}) out.push_back(verify_diameter_ratio(grid_section(s, s).points));
  out.push_back(verify_diameter_ratio(regular_ngon(10).points));
  return out;
}

inline std::vector<ClaimReport> run_cons(const json& p, std::uint64_t) {
  if (p.contains("m") && p.contains("n"))
    return {verify_three_group(p.at("m").get<std::size_t>(), p.at("n").get<std::size_t>())};
  return {verify_three_group(37, 100), verify_three_group(150, 400)};
}

inline std::vector<ClaimReport> run_diff(const json& p, std::uint64_t seed) {
  const std::vector<double> lengths{1.0, std::sqrt(3.0), std::sqrt(7.0), std::sqrt(11.0), std::sqrt(13.0)};
  std::vector<ClaimReport> out;
  auto one = [&](std::size_t k, std::size_t rounds) {
    if (k < 1 || k > lengths.size()) throw InvalidArgument("cascade k must be in 1..5");
    CascadeSpec spec;
    spec.k = k;
    spec.prescribed.assign(lengths.begin(), lengths.begin() + static_cast<long>(k));
    spec.rounds = rounds;
    spec.seed = seed;
    out.push_back(verify_cascade(spec));
  };
  if (p.contains("k") || p.contains("rounds")) {
    const std::size_t k = param(p, "k", 1);
    one(k, param(p, "rounds", 3 * k));
    return out;
  }
  for (std::size_t k = 1; k <= 3; ++k)
    for (std::size_t rounds : {k, 2 * k, 3 * k}) one(k, rounds);
  return out;
}

inline std::vector<ClaimReport> run_cor_diff(const json& p, std::uint64_t seed) {
  ClaimReport r;
  r.claim_id = "cor:diff";
  json rows = json::array();
  for (std::size_t rounds = 1; rounds <= param(p, "rounds", 10); ++rounds) {
    CascadeSpec spec;
    spec.rounds = rounds;
    spec.seed = seed;
    const auto sp = distance_spectrum(translate_cascade(spec).points);
    const auto a = sp.multiplicities();
    const double n = static_cast<double>(sp.n);
    const long long diff = static_cast<long long>(a[0]) - (a.size() > 1 ? static_cast<long long>(a[1]) : 0);
    rows.push_back({{"n", sp.n}, {"a1_minus_a2", diff}, {"per_n_log2_n", static_cast<double>(diff) / (n * std::log2(n))}});
  }
  r.inputs = {{"k", 1}, {"seed", seed}};
  r.evidence["trend"] = rows;
  r.verdict = Verdict::reported;
  return {r};
}

inline std::vector<ClaimReport> run_simple(const json& p, std::uint64_t) {
  std::vector<ClaimReport> out;
  const double deg = p.contains("angle") ? p.at("angle").get<double>() : 50.0;
  for (std::size_t n : std::vector<std::size_t>{4, 5, 7, 12, 40, param(p, "n", 100)}) {
    auto r = verify_staircase(arc_with_center(n, deg * std::numbers::pi / 180.0).points);
    r.claim_id = "obs:simple";
    r.inputs["angle_degrees"] = deg;
    const auto& e = r.evidence;
    const bool cocircular_ok = n < 4 || !e["cocircular"].get<bool>();
    r.verdict = verdict_of(e["full_staircase"].get<bool>() && !e["collinear"].get<bool>() && cocircular_ok);
    out.push_back(std::move(r));
  }
  return out;
}

inline std::vector<ClaimReport> run_equidistant(const json& p, std::uint64_t) {
  std::vector<ClaimReport> out;
  for (std::size_t n : std::vector<std::size_t>{2, 5, 7, param(p, "n", 50)}) {
    auto r = verify_staircase(equidistant_line(n).points);
    r.claim_id = "q4:equidistant";
    r.verdict = verdict_of(r.evidence["full_staircase"].get<bool>());
    out.push_back(std::move(r));
  }
  for (std::size_t n : std::vector<std::size_t>{3, 7, param(p, "n", 50)}) {
    auto r = verify_staircase(equidistant_circle(n).points);
    r.claim_id = "q4:equidistant";
    r.verdict = verdict_of(r.evidence["full_staircase"].get<bool>());
    out.push_back(std::move(r));
  }
  return out;
}

inline std::vector<ClaimReport> run_distinct(const json& p, std::uint64_t) {
  std::vector<ClaimReport> out;
  for (auto n : range_param(p, "n", "n_min", "n_max", 2, 40))
    out.push_back(verify_construction_facts("prop:distinct-mu", hex_two_row(n), {{"n", n}}));
  return out;
}

inline std::vector<ClaimReport> run_grid8(const json& p, std::uint64_t) {
  std::vector<ClaimReport> out;
  for (auto k : range_param(p, "k", "k_min", "k_max", 4, 30)) out.push_back(verify_grid8(k));
  return out;
}

inline std::vector<ClaimReport> run_lemma(const json& p, std::uint64_t) {
  std::vector<ClaimReport> out;
  for (auto k : range_param(p, "k", "k_min", "k_max", 1, 6)) out.push_back(verify_lemma_many(k));
  return out;
}

inline std::vector<ClaimReport> run_many(const json& p, std::uint64_t) {
  std::vector<std::size_t> sides{10, 20, 50, 100, 200, 500, param(p, "s_max", 1000)};
  return {report_grid_trend(sides, p.contains("c") ? p.at("c").get<double>() : 0.5)};
}

inline std::vector<ClaimReport> run_sections(const json& p, std::uint64_t) {
  std::vector<std::size_t> sides{12, 24, 48, 60, 120, param(p, "s", 240)};
  return {report_grid_sections(sides)};
}

inline std::vector<ClaimReport> run_invariants(const std::string& id, const json& p, std::uint64_t seed) {
  std::vector<ClaimReport> out;
  const std::size_t count = param(p, "count", 50);
  for (std::uint64_t t = 0; t < count; ++t) {
    const auto x = random_exact_set(2 + static_cast<std::size_t>((seed + t) % 80), seed + t);
    const auto sp = distance_spectrum(x);
    const auto ext = extremal_distances(sp);
    const std::size_t n = x.size();
    ClaimReport r;
    r.claim_id = id;
    r.inputs = {{"label", x.label}, {"n", n}, {"seed", seed + t}};
    if (id == "inv:hopf-pannwitz") {
      const auto mu = multiplicity_of(sp, ext.diameter);
      r.evidence = {{"mu_Delta", mu}};
      r.verdict = verdict_of(mu <= n);
    } else {
      const auto mu = ext.second_largest ? multiplicity_of(sp, *ext.second_largest) : 0;
      r.evidence = {{"mu_Delta2", mu}, {"bound", 3 * n / 2}};
      r.verdict = verdict_of(mu <= 3 * n / 2);
    }
    out.push_back(std::move(r));
  }
  return out;
}

inline ClaimEntry out_of_scope(std::string id, std::string kind, std::string summary, std::string note) {
  return {std::move(id), std::move(kind), std::move(summary), false, std::move(note), nullptr};
}

}  // namespace detail

inline const std::vector<ClaimEntry>& claim_registry() {
  static const std::vector<ClaimEntry> registry = [] {
    using namespace detail;
    std::vector<ClaimEntry> r;
    r.push_back({"conj:second", "conjecture", "some non-diameter distance occurs at most n times (n >= 5)", true,
                 "checked per input only", run_conjecture});
    r.push_back({"thm:second", "theorem", "convex n >= 5: some non-diameter distance occurs at most n times", true, "",
                 run_second});
    r.push_back({"thm:dense", "theorem", "mu(Delta2) <= n when the convex-layer bound is at most n", true, "", run_dense});
    r.push_back({"cor:dense", "corollary", "Delta <= n delta / (3 pi) implies mu(Delta2) <= n", true,
                 "reported; fails only on an applicable violation", run_cor_dense});
    r.push_back({"thm:cons", "proposition", "mu(Delta2) >= 3m and mu(delta) >= 3n - 5m + o(m)", true,
                 "delta part carries an o(m) term and is reported", run_cons});
    r.push_back({"problem:limsup", "problem", "limsup of min{mu(Delta2), mu(delta)} / n", false,
                 "open problem; documented only", nullptr});
    r.push_back({"thm:many", "theorem", "n^{c/loglog n} grid distances with multiplicity n^{1+c/loglog n}", true,
                 "asymptotic; trend table only", run_many});
    r.push_back({"thm:m/9", "proposition", "(1-eps) m/9, m/16, m/25 grid distances reach 16n/9, 9n/4, 64n/25", true,
                 "asymptotic; trend table only", run_sections});
    r.push_back({"lem:many", "lemma", "products of primes 1 mod 4 have many two-square representations", true, "",
                 run_lemma});
    r.push_back({"thm:diff", "theorem", "a_k - a_{k+1} = Omega(n log n / k) with prescribed top distances", true, "",
                 run_diff});
    r.push_back({"cor:diff", "corollary", "max a_1 - a_2 = Omega(n log n)", true, "asymptotic; trend table only",
                 run_cor_diff});
    r.push_back({"problem:a1-a2", "problem", "a_1 - a_2 >= n^{1+c/loglog n}?", false, "open problem; documented only",
                 nullptr});
    r.push_back({"obs:simple", "observation", "arc plus center gives a(X) = (n-1, ..., 1) off any line or circle",
                 true, "", run_simple});
    r.push_back({"q4:equidistant", "question", "equidistant points on a line or circular arc give (n-1, ..., 1)",
                 true, "", run_equidistant});
    r.push_back({"problem:staircase-uniqueness", "problem", "are the arc examples the only staircase sets?", false,
                 "open problem; partially answered by prop:distinct-mu", nullptr});
    r.push_back({"prop:distinct-mu", "proposition", "two-row hexagonal strip: distinct multiplicities, no staircase",
                 true, "", run_distinct});
    r.push_back({"obs:grid8", "observation", "the k x k grid has two distances occurring exactly 8 times", true, "",
                 run_grid8});
    r.push_back({"inv:hopf-pannwitz", "invariant", "the diameter occurs at most n times", true,
                 "external theorem used as a test invariant",
                 [](const json& p, std::uint64_t s) { return run_invariants("inv:hopf-pannwitz", p, s); }});
    r.push_back({"inv:vesztergombi", "invariant", "the second largest distance occurs at most 3n/2 times", true,
                 "external theorem used as a test invariant",
                 [](const json& p, std::uint64_t s) { return run_invariants("inv:vesztergombi", p, s); }});
    r.push_back(out_of_scope("q1:non-diameter", "question", "can every non-diameter distance occur more than n times?",
                             "answered per input by conj:second and thm:second"));
    r.push_back(out_of_scope("q2:many-rich", "question", "many distances of multiplicity cn or superlinear?",
                             "measured by thm:many and thm:m/9"));
    r.push_back(out_of_scope("q3:gaps", "question", "estimate max a_k - a_{k+1}", "measured by thm:diff and cor:diff"));
    r.push_back(out_of_scope("ext:altman", "external", "convex n-gons determine at least floor(n/2) distances",
                             "cited; its conclusion is reported inside thm:second"));
    r.push_back(out_of_scope("ext:fishburn", "external", "even-n convex sets with n/2 distances",
                             "cited; thm:second checks the conclusion per input"));
    r.push_back(out_of_scope("ext:guth-katz", "external", "sum of squared multiplicities O(n^3 log n)",
                             "cited background"));
    r.push_back(out_of_scope("ext:spencer-szemeredi-trotter", "external", "unit distances O(n^{4/3})",
                             "cited background"));
    return r;
  }();
  return registry;
}

inline std::string normalize_claim_id(std::string_view id) {
  static const std::vector<std::pair<std::string_view, std::string_view>> aliases{
      {"grid8", "obs:grid8"},           {"dense", "thm:dense"},         {"second", "thm:second"},
      {"conjecture", "conj:second"},    {"cons", "thm:cons"},           {"three-group", "thm:cons"},
      {"diff", "thm:diff"},             {"cascade", "thm:diff"},        {"simple", "obs:simple"},
      {"staircase", "obs:simple"},      {"distinct-mu", "prop:distinct-mu"}, {"hex", "prop:distinct-mu"},
      {"many", "thm:many"},             {"m/9", "thm:m/9"},             {"grid-ratios", "thm:m/9"},
      {"lemma", "lem:many"},            {"lem-many", "lem:many"},       {"equidistant", "q4:equidistant"},
      {"hopf-pannwitz", "inv:hopf-pannwitz"}, {"vesztergombi", "inv:vesztergombi"}, {"diameter-ratio", "cor:dense"}};
  for (const auto& [a, full] : aliases)
    if (a == id) return std::string(full);
  return std::string(id);
}

inline const ClaimEntry* find_claim(std::string_view id) {
  const std::string full = normalize_claim_id(id);
  for (const auto& e : claim_registry())
    if (e.id == full) return &e;
  return nullptr;
}

inline std::vector<ClaimReport> verify_claim(std::string_view id, const json& params = json::object(),
                                             std::uint64_t seed = 0) {
  const ClaimEntry* e = find_claim(id);
  if (!e) throw InvalidArgument("unknown claim '" + std::string(id) + "'");
  if (!e->in_scope) {
    ClaimReport r;
    r.claim_id = e->id;
    r.evidence = {{"out_of_scope", e->note}};
    return {r};
  }
  return e->run(params, seed);
}

inline std::vector<std::string> default_suite() {
  std::vector<std::string> ids;
  for (const auto& e : claim_registry())
    if (e.in_scope) ids.push_back(e.id);
  return ids;
}

// Claims run concurrently; reports come back in selection order.
inline std::vector<ClaimReport> verify_all(const std::vector<std::string>& selection, std::uint64_t seed = 0,
                                           const json& params = json::object()) {
  auto per_claim = detail::parallel_map<std::vector<ClaimReport>>(
      selection.size(), [&](std::size_t i) { return verify_claim(selection[i], params, seed); });
  std::vector<ClaimReport> out;
  for (auto& v : per_claim)
    for (auto& r : v) out.push_back(std::move(r));
  return out;
}

inline bool any_failed(const std::vector<ClaimReport>& reports) {
  return std::any_of(reports.begin(), reports.end(), [](const ClaimReport& r) { return r.verdict == Verdict::fail; });
}

}  // namespace multlab
