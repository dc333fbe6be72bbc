#include <cstdint>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "multlab/multlab.hpp"

namespace {

using multlab::json;

struct Options {
  std::string in, out, expected, format = "text", mode;
  std::uint64_t seed = 0;
  bool as_json = false, as_csv = false;

  std::string fmt() const { return as_json ? "json" : as_csv ? "csv" : format; }
};

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

multlab::PointSet load(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw multlab::InvalidArgument("cannot open '" + path + "'");
  if (ends_with(path, ".json")) return multlab::point_set_from_json(json::parse(f));
  return multlab::read_point_set_text(f);
}

multlab::PointSet with_mode(multlab::PointSet s, const std::string& mode) {
  if (mode.empty() || mode == multlab::to_string(s.mode())) return s;
  multlab::PointSet out = [&] {
    if (mode == "approx") {
      if (!s.metric().is_euclidean()) throw multlab::ModeMismatch("metric point sets cannot be made approximate");
      std::vector<multlab::ApproxPoint> pts;
      for (const auto& p : s.exact_points()) pts.push_back({p.x.get_d(), p.y.get_d()});
      return multlab::PointSet::approximate(std::move(pts), s.label);
    }
    if (mode == "exact") {
      std::vector<multlab::ExactPoint> pts;
      for (const auto& p : s.approx_points()) pts.push_back({multlab::Rational(p.x), multlab::Rational(p.y)});
      return multlab::PointSet::exact(std::move(pts), s.label);
    }
    throw multlab::InvalidArgument("mode must be exact or approx");
  }();
  out.metadata = s.metadata;
  return out;
}

void emit_json(const json& j) { std::cout << j.dump(2) << "\n"; }

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw multlab::InvalidArgument("cannot write '" + path + "'");
  f << text;
}

// ---------------------------------------------------------------------------

struct GenerateArgs {
  std::string name;
  std::size_t n = 7, m = 7, w = 4, h = 4, k = 1, rounds = 3, retry = 256;
  double angle = 50.0, arc = multlab::kDefaultCircleArcDegrees;
  std::vector<double> distances;
};

multlab::ConstructionResult build(const GenerateArgs& g, std::uint64_t seed) {
  using namespace multlab;
  if (g.name == "regular-ngon") return regular_ngon(g.n);
  if (g.name == "ngon-minus-vertex") return ngon_minus_vertex(g.n);
  if (g.name == "equidistant-line") return equidistant_line(g.n);
  if (g.name == "equidistant-circle") return equidistant_circle(g.n, g.arc);
  if (g.name == "arc-with-center") return arc_with_center(g.n, g.angle * std::numbers::pi / 180.0);
  if (g.name == "three-group") return three_group(g.m, g.n);
  if (g.name == "grid" || g.name == "grid-section") return grid_section(g.w, g.h);
  if (g.name == "hex-two-row") return hex_two_row(g.n);
  if (g.name == "translate-cascade") {
    CascadeSpec spec;
    spec.k = g.k;
    spec.prescribed = g.distances;
    if (spec.prescribed.empty()) {
      for (std::size_t i = 0; i < g.k; ++i) spec.prescribed.push_back(std::sqrt(static_cast<double>(1 + 2 * i)));
    }
    spec.rounds = g.rounds;
    spec.seed = seed;
    spec.retry_budget = g.retry;
    return translate_cascade(spec);
  }
  if (g.name == "random-exact") return {random_exact_set(g.n, seed), {}};
  if (g.name == "random-convex") return {random_convex_exact(g.n, seed), {}};
  throw InvalidArgument("unknown construction '" + g.name + "'");
}

int run_generate(const GenerateArgs& g, const Options& o) {
  const auto c = build(g, o.seed);
  const json facts = c.facts;
  if (o.out.empty()) {
    if (o.fmt() == "json") emit_json({{"points", multlab::point_set_to_json(c.points)}, {"expected", facts}});
    else std::cout << multlab::point_set_to_text(c.points);
    return 0;
  }
  if (ends_with(o.out, ".json")) write_file(o.out, multlab::point_set_to_json(c.points).dump(2) + "\n");
  else write_file(o.out, multlab::point_set_to_text(c.points));
  const std::string exp = o.expected.empty() ? o.out + ".expected.json" : o.expected;
  write_file(exp, json{{"construction", g.name}, {"expected", facts}}.dump(2) + "\n");
  std::cerr << "wrote " << o.out << " (" << c.points.size() << " points) and " << exp << "\n";
  return 0;
}

int run_spectrum(const Options& o) {
  const auto s = with_mode(load(o.in), o.mode);
  const auto sp = multlab::distance_spectrum(s);
  const std::string f = o.fmt();
  if (f == "json") emit_json(multlab::spectrum_to_json(sp));
  else if (f == "csv") std::cout << multlab::spectrum_to_csv(sp);
  else std::cout << multlab::spectrum_to_text(sp);
  return 0;
}

int run_check(const Options& o) {
  const auto s = with_mode(load(o.in), o.mode);
  std::ifstream f(o.expected);
  if (!f) throw multlab::InvalidArgument("cannot open '" + o.expected + "'");
  const json doc = json::parse(f);
  multlab::ConstructionResult c{s, doc.at("expected").get<std::vector<multlab::ExpectedFact>>()};
  bool ok = true;
  const json facts = multlab::facts_json(multlab::evaluate_facts(c), ok);
  if (o.fmt() == "json") emit_json({{"all_hold", ok}, {"facts", facts}});
  else
    for (const auto& fr : facts)
      std::cout << (fr["holds"].get<bool>() ? "hold " : "FAIL ") << fr["fact"].get<std::string>() << " "
                << fr["observed"].dump() << "\n";
  return ok ? 0 : 1;
}

int run_layers(const Options& o) {
  const auto s = with_mode(load(o.in), o.mode);
  const auto layers = multlab::onion_layers(s);
  json j;
  j["n"] = s.size();
  j["layers"] = layers.layers;
  j["convex"] = layers.l1() == s.size();
  try {
    j["dense"] = multlab::dense_report_json(multlab::check_dense_theorem(s));
  } catch (const multlab::NoSecondDistance&) {
    j["dense"] = nullptr;
  }
  if (o.fmt() == "json") {
    emit_json(j);
    return 0;
  }
  std::cout << "n=" << s.size() << " layers=" << layers.layers.size() << "\n";
  for (std::size_t i = 0; i < layers.layers.size(); ++i) {
    std::cout << "L" << i + 1 << " (" << layers.layers[i].size() << "):";
    for (auto p : layers.layers[i]) std::cout << " " << p;
    std::cout << "\n";
  }
  if (!j["dense"].is_null()) {
    const auto& d = j["dense"];
    std::cout << "bound=" << d["bound"].get<std::string>() << " mu(Delta2)=" << d["mu_Delta2"] << " holds="
              << d["holds"] << "\n";
  }
  return 0;
}

int run_r2(std::uint64_t n, const Options& o) {
  const auto r = multlab::count_representations(n);
  const std::string f = o.fmt();
  if (f == "json") {
    json reps = json::array();
    for (auto [a, b] : r.reps) reps.push_back({a, b});
    emit_json({{"n", n}, {"count", r.count}, {"reps", reps}, {"r2_signed_ordered", r.ordered_signed}});
  } else if (f == "csv") {
    std::cout << "a,b\n";
    for (auto [a, b] : r.reps) std::cout << a << "," << b << "\n";
  } else {
    std::cout << "R(" << n << ") = " << r.count << "\n";
    for (auto [a, b] : r.reps) std::cout << a << "^2 + " << b << "^2\n";
  }
  return 0;
}

int run_lemma(std::size_t k, const Options& o) {
  const auto c = multlab::lemma_many_construct(k);
  if (o.fmt() == "json") {
    json subsets = json::array();
    for (const auto& s : c.rich)
      subsets.push_back({{"primes", s.primes},
                         {"n_prime", multlab::to_string(s.product)},
                         {"gaussian_count", s.gaussian_count},
                         {"unordered_count", s.unordered_count},
                         {"gaussian_bound", s.gaussian_bound},
                         {"unordered_bound", s.unordered_bound}});
    emit_json({{"k", k}, {"primes", c.primes}, {"n", multlab::to_string(c.n)}, {"subsets", subsets},
               {"subsets_with_half_or_more", c.subsets_at_least_half}});
    return 0;
  }
  if (o.fmt() == "csv") {
    std::cout << "n_prime,size,gaussian_count,unordered_count\n";
    for (const auto& s : c.rich)
      std::cout << multlab::to_string(s.product) << "," << s.primes.size() << "," << s.gaussian_count << ","
                << s.unordered_count << "\n";
    return 0;
  }
  std::cout << "k=" << k << " n=" << multlab::to_string(c.n) << " subsets=" << c.rich.size() << "\n";
  for (const auto& s : c.rich)
    std::cout << multlab::to_string(s.product) << " |K'|=" << s.primes.size() << " gaussian=" << s.gaussian_count
              << " unordered=" << s.unordered_count << (s.unordered_bound ? "" : " (below 2^{k/2} unordered)")
              << "\n";
  return 0;
}

int run_grid_rich(std::size_t s, std::uint64_t threshold, const Options& o) {
  const auto r = multlab::grid_rich_distances(s, threshold);
  if (o.fmt() == "json") {
    json ex = json::array();
    for (auto [q, mu] : r.examples) ex.push_back({{"squared_distance", q}, {"multiplicity", mu}});
    emit_json({{"s", s}, {"n", r.n}, {"threshold", threshold}, {"m", r.m}, {"rich_count", r.rich_count},
               {"max_multiplicity", r.max_multiplicity}, {"examples", ex}});
  } else if (o.fmt() == "csv") {
    std::cout << "squared_distance,multiplicity\n";
    for (auto [q, mu] : r.examples) std::cout << q << "," << mu << "\n";
  } else {
    std::cout << "s=" << s << " n=" << r.n << " m=" << r.m << " rich(>=" << threshold << ")=" << r.rich_count << "\n";
    for (auto [q, mu] : r.examples) std::cout << q << "\t" << mu << "\n";
  }
  return 0;
}

int run_grid_ratios(std::size_t s, std::size_t divisor, const Options& o) {
  const auto r = multlab::grid_section_ratios(s, divisor);
  if (o.fmt() == "json") {
    json cls = json::array();
    for (const auto& c : r.classes)
      cls.push_back({{"squared_distance", c.q}, {"multiplicity", c.multiplicity}, {"diagonal_only", c.diagonal_only},
                     {"meets", c.meets}});
    emit_json({{"s", s}, {"divisor", divisor}, {"n", r.n}, {"threshold", multlab::format_rational(r.threshold)},
               {"m", r.m}, {"m_small", r.m_small}, {"meeting", r.meeting}, {"fraction", r.fraction()},
               {"fraction_small", r.fraction_small()}, {"classes", cls}});
  } else if (o.fmt() == "csv") {
    std::cout << "squared_distance,multiplicity,diagonal_only,meets\n";
    for (const auto& c : r.classes)
      std::cout << c.q << "," << c.multiplicity << "," << c.diagonal_only << "," << c.meets << "\n";
  } else {
    std::cout << "s=" << s << " divisor=" << divisor << " threshold=" << multlab::format_rational(r.threshold)
              << " m=" << r.m << " subgrid classes=" << r.m_small << " meeting=" << r.meeting
              << " fraction=" << r.fraction() << "\n";
    for (const auto& c : r.classes)
      std::cout << c.q << "\t" << c.multiplicity << (c.diagonal_only ? "\tdiagonal" : "\t") << (c.meets ? "\tmeets" : "\tbelow")
                << "\n";
  }
  return 0;
}

int run_verify(const std::string& id, const json& params, const Options& o) {
  const std::vector<std::string> selection =
      id == "all" ? multlab::default_suite() : std::vector<std::string>{id};
  const auto reports = multlab::verify_all(selection, o.seed, params);
  const std::string f = o.fmt();
  if (f == "json") {
    emit_json(reports);
  } else if (f == "csv") {
    std::cout << "claim,verdict,inputs\n";
    for (const auto& r : reports) {
      std::string in = r.inputs.dump();
      for (auto& ch : in)
        if (ch == '"') ch = '\'';
      std::cout << r.claim_id << "," << to_string(r.verdict) << ",\"" << in << "\"\n";
    }
  } else {
    for (const auto& r : reports)
      std::cout << to_string(r.verdict) << "\t" << r.claim_id << "\t" << r.inputs.dump() << "\t" << r.evidence.dump()
                << "\n";
  }
  return multlab::any_failed(reports) ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multlab: distance multiplicities of planar point sets"};
  app.set_help_flag("--help", "print help");
  app.require_subcommand(1);
  Options o;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "json|csv|text")->check(CLI::IsMember({"json", "csv", "text"}));
    sub->add_flag("--json", o.as_json, "same as --format json");
    sub->add_flag("--csv", o.as_csv, "same as --format csv");
    sub->add_option("--seed", o.seed, "random seed");
  };

  GenerateArgs g;
  auto* gen = app.add_subcommand("generate", "write a construction and its expected facts");
  gen->add_option("name", g.name, "construction")->required();
  gen->add_option("--n", g.n);
  gen->add_option("--m", g.m);
  gen->add_option("--w", g.w);
  gen->add_option("--h", g.h);
  gen->add_option("--k", g.k);
  gen->add_option("--rounds", g.rounds);
  gen->add_option("--retry", g.retry);
  gen->add_option("--angle", g.angle, "arc angle in degrees (arc-with-center)");
  gen->add_option("--arc", g.arc, "arc in degrees (equidistant-circle)");
  gen->add_option("--distances", g.distances, "prescribed lengths (translate-cascade)");
  gen->add_option("--out", o.out);
  gen->add_option("--expected", o.expected);
  add_common(gen);

  auto* spec = app.add_subcommand("spectrum", "distance multiplicity spectrum of a point set");
  spec->add_option("--in", o.in)->required();
  spec->add_option("--mode", o.mode)->check(CLI::IsMember({"exact", "approx"}));
  add_common(spec);

  auto* check = app.add_subcommand("check", "evaluate an expected-facts file against a point set");
  check->add_option("--in", o.in)->required();
  check->add_option("--expected", o.expected)->required();
  check->add_option("--mode", o.mode)->check(CLI::IsMember({"exact", "approx"}));
  add_common(check);

  auto* lay = app.add_subcommand("layers", "convex layers and the second-distance bound");
  lay->add_option("--in", o.in)->required();
  lay->add_option("--mode", o.mode)->check(CLI::IsMember({"exact", "approx"}));
  add_common(lay);

  std::uint64_t r2n = 0;
  auto* r2 = app.add_subcommand("r2", "representations as a sum of two squares");
  r2->add_option("n", r2n)->required();
  add_common(r2);

  std::size_t lk = 0;
  auto* lem = app.add_subcommand("lemma-many", "prime-product representation counts");
  lem->add_option("k", lk)->required();
  add_common(lem);

  std::size_t gs = 0;
  std::uint64_t gthr = 0;
  auto* rich = app.add_subcommand("grid-rich", "grid distances above a multiplicity threshold");
  rich->add_option("s", gs)->required();
  rich->add_option("threshold", gthr)->required();
  add_common(rich);

  std::size_t rs = 0, rdiv = 0;
  auto* ratios = app.add_subcommand("grid-ratios", "subgrid classes meeting c2 n in the full grid");
  ratios->add_option("s", rs)->required();
  ratios->add_option("divisor", rdiv)->required();
  add_common(ratios);

  std::string vid;
  std::size_t vk = 0, vm = 0, vn = 0, vrounds = 0;
  auto* ver = app.add_subcommand("verify", "run claim verifiers");
  ver->add_option("claim", vid, "claim id, alias, or 'all'")->required();
  auto* ok_k = ver->add_option("--k", vk);
  auto* ok_m = ver->add_option("--m", vm);
  auto* ok_n = ver->add_option("--n", vn);
  auto* ok_r = ver->add_option("--rounds", vrounds);
  add_common(ver);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return 2;
  }

  try {
    if (*gen) return run_generate(g, o);
    if (*spec) return run_spectrum(o);
    if (*check) return run_check(o);
    if (*lay) return run_layers(o);
    if (*r2) return run_r2(r2n, o);
    if (*lem) return run_lemma(lk, o);
    if (*rich) return run_grid_rich(gs, gthr, o);
    if (*ratios) return run_grid_ratios(rs, rdiv, o);
    if (*ver) {
      json params = json::object();
      if (*ok_k) params["k"] = vk;
      if (*ok_m) params["m"] = vm;
      if (*ok_n) params["n"] = vn;
      if (*ok_r) params["rounds"] = vrounds;
      if (vid != "all" && !multlab::find_claim(vid)) throw multlab::InvalidArgument("unknown claim '" + vid + "'");
      return run_verify(vid, params, o);
    }
  } catch (const multlab::ParseError& e) {
    std::cerr << "error: " << e.what() << " (line " << e.line() << ")\n";
    return 2;
  } catch (const multlab::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
