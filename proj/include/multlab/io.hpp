#pragma once

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "errors.hpp"
#include "point_set.hpp"
#include "rational.hpp"
#include "spectrum.hpp"

namespace multlab {

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    const std::size_t b = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
    if (i > b) out.push_back(s.substr(b, i - b));
  }
  return out;
}

inline double parse_double_token(std::string_view tok) {
  if (tok.find('/') != std::string_view::npos) return to_double(parse_rational(tok));
  double v = 0;
  const auto* first = tok.data();
  const auto* last = tok.data() + tok.size();
  if (!tok.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) throw InvalidArgument("bad number '" + std::string(tok) + "'");
  return v;
}

inline bool starts_with_key(std::string_view line, std::string_view key, std::string_view& rest) {
  if (line.size() < key.size() + 1 || line.substr(0, key.size()) != key || line[key.size()] != ':') return false;
  rest = trim(line.substr(key.size() + 1));
  return true;
}

}  // namespace detail

// Text format: `mode: exact|approx` header, optional `metric: wx wy`, `label: ...` and
// `meta: key=value` lines, then one `x y` point per line. `#` starts a comment.
inline PointSet read_point_set_text(std::istream& in) {
  std::string raw;
  std::size_t line_no = 0;
  std::optional<NumericMode> mode;
  Metric metric;
  std::string label;
  PointSet::Metadata meta;
  std::vector<ExactPoint> exact;
  std::vector<ApproxPoint> approx;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    std::string_view rest;
    try {
      if (detail::starts_with_key(line, "mode", rest)) {
        if (mode) throw ParseError("duplicate mode header", line_no);
        if (rest == "exact") mode = NumericMode::exact;
        else if (rest == "approx" || rest == "approximate") mode = NumericMode::approximate;
        else throw ParseError("mode must be exact or approx", line_no);
        continue;
      }
      if (!mode) throw ParseError("missing 'mode: exact|approx' header", line_no);
      if (detail::starts_with_key(line, "metric", rest)) {
        const auto toks = detail::split_ws(rest);
        if (toks.size() != 2) throw ParseError("metric needs two weights", line_no);
        metric = Metric{parse_rational(toks[0]), parse_rational(toks[1])};
        continue;
      }
      if (detail::starts_with_key(line, "label", rest)) {
        label = std::string(rest);
        continue;
      }
      if (detail::starts_with_key(line, "meta", rest)) {
        const auto eq = rest.find('=');
        if (eq == std::string_view::npos) throw ParseError("meta needs key=value", line_no);
        meta[std::string(detail::trim(rest.substr(0, eq)))] = std::string(detail::trim(rest.substr(eq + 1)));
        continue;
      }
      const auto toks = detail::split_ws(line);
      if (toks.size() != 2) throw ParseError("expected two coordinates", line_no);
      if (*mode == NumericMode::exact)
        exact.push_back({parse_rational(toks[0]), parse_rational(toks[1])});
      else
        approx.push_back({detail::parse_double_token(toks[0]), detail::parse_double_token(toks[1])});
    } catch (const ParseError& e) {
      if (e.line() != 0) throw;
      throw ParseError(e.what(), line_no);
    } catch (const Error& e) {
      throw ParseError(e.what(), line_no);
    }
  }
  if (!mode) throw ParseError("missing 'mode: exact|approx' header", line_no);
  if (*mode == NumericMode::approximate && !metric.is_euclidean())
    throw ParseError("metric weights require exact mode", line_no);
  PointSet s = *mode == NumericMode::exact ? PointSet::exact(std::move(exact), label, metric)
                                           : PointSet::approximate(std::move(approx), label);
  s.metadata = std::move(meta);
  return s;
}

inline PointSet parse_point_set_text(const std::string& text) {
  std::istringstream in(text);
  return read_point_set_text(in);
}

inline void write_point_set_text(std::ostream& out, const PointSet& s) {
  out << "mode: " << to_string(s.mode()) << "\n";
  if (!s.metric().is_euclidean())
    out << "metric: " << format_rational(s.metric().wx) << " " << format_rational(s.metric().wy) << "\n";
  if (!s.label.empty()) out << "label: " << s.label << "\n";
  for (const auto& [k, v] : s.metadata) out << "meta: " << k << "=" << v << "\n";
  if (s.is_exact()) {
    for (const auto& p : s.exact_points()) out << format_rational(p.x) << " " << format_rational(p.y) << "\n";
  } else {
    for (const auto& p : s.approx_points()) out << format_double(p.x) << " " << format_double(p.y) << "\n";
  }
}

inline std::string point_set_to_text(const PointSet& s) {
  std::ostringstream out;
  write_point_set_text(out, s);
  return out.str();
}

inline nlohmann::json point_set_to_json(const PointSet& s) {
  nlohmann::json j;
  j["label"] = s.label;
  j["mode"] = to_string(s.mode());
  if (!s.metric().is_euclidean()) j["metric"] = {format_rational(s.metric().wx), format_rational(s.metric().wy)};
  j["metadata"] = s.metadata;
  auto& pts = j["points"] = nlohmann::json::array();
  if (s.is_exact()) {
    for (const auto& p : s.exact_points()) pts.push_back({format_rational(p.x), format_rational(p.y)});
  } else {
    for (const auto& p : s.approx_points()) pts.push_back({p.x, p.y});
  }
  return j;
}

inline PointSet point_set_from_json(const nlohmann::json& j) {
  const std::string mode = j.at("mode").get<std::string>();
  const std::string label = j.value("label", "");
  PointSet::Metadata meta;
  if (j.contains("metadata")) meta = j.at("metadata").get<PointSet::Metadata>();
  auto exact_value = [](const nlohmann::json& v) {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<long>());
    throw InvalidArgument("exact coordinates must be strings or integers");
  };
  PointSet s = [&] {
    if (mode == "exact") {
      Metric metric;
      if (j.contains("metric")) metric = Metric{exact_value(j["metric"].at(0)), exact_value(j["metric"].at(1))};
      std::vector<ExactPoint> pts;
      for (const auto& p : j.at("points")) pts.push_back({exact_value(p.at(0)), exact_value(p.at(1))});
      return PointSet::exact(std::move(pts), label, metric);
    }
    if (mode == "approx" || mode == "approximate") {
      std::vector<ApproxPoint> pts;
      for (const auto& p : j.at("points")) {
        auto num = [](const nlohmann::json& v) {
          if (v.is_string()) return detail::parse_double_token(v.get<std::string>());
          if (!v.is_number()) throw ModeMismatch("approximate coordinates must be numbers");
          return v.get<double>();
        };
        pts.push_back({num(p.at(0)), num(p.at(1))});
      }
      return PointSet::approximate(std::move(pts), label);
    }
    throw InvalidArgument("mode must be exact or approx");
  }();
  s.metadata = std::move(meta);
  return s;
}

// ---------------------------------------------------------------------------
// Spectrum reports
// ---------------------------------------------------------------------------

inline nlohmann::json audit_to_json(const ClusteringAudit& a) {
  return {{"max_intra_spread", a.max_intra_spread},
          {"min_inter_gap", std::isfinite(a.min_inter_gap) ? nlohmann::json(a.min_inter_gap) : nlohmann::json(nullptr)},
          {"margin", std::isfinite(a.margin()) ? nlohmann::json(a.margin()) : nlohmann::json(nullptr)},
          {"safety", kAuditSafety},
          {"reliable", a.reliable}};
}

inline nlohmann::json spectrum_to_json(const DistanceSpectrum& s) {
  nlohmann::json j;
  j["mode"] = to_string(s.mode);
  j["n"] = s.n;
  j["m"] = s.m();
  j["a"] = s.multiplicities();
  auto& cls = j["classes"] = nlohmann::json::array();
  for (const auto& c : s.classes) {
    nlohmann::json e{{"multiplicity", c.multiplicity}};
    if (const auto* r = std::get_if<Rational>(&c.key)) e["squared_distance"] = format_rational(*r);
    else e["squared_distance"] = std::get<double>(c.key);
    cls.push_back(std::move(e));
  }
  if (s.audit) j["clustering_audit"] = audit_to_json(*s.audit);
  return j;
}

inline std::string spectrum_to_csv(const DistanceSpectrum& s) {
  std::string out = "squared_distance,multiplicity\n";
  for (const auto& c : s.classes) out += format_key(c.key) + "," + std::to_string(c.multiplicity) + "\n";
  return out;
}

inline std::string audit_line(const ClusteringAudit& a) {
  return "clustering audit: max_intra_spread=" + format_double(a.max_intra_spread) +
         " min_inter_gap=" + format_double(a.min_inter_gap) + " margin=" + format_double(a.margin()) +
         " (need >= " + format_double(kAuditSafety) + ") " + (a.reliable ? "reliable" : "UNRELIABLE");
}

inline std::string spectrum_to_text(const DistanceSpectrum& s) {
  std::ostringstream out;
  out << "n=" << s.n << " m=" << s.m() << " mode=" << to_string(s.mode) << "\n";
  out << "a(X)=(";
  const auto a = s.multiplicities();
  for (std::size_t i = 0; i < a.size(); ++i) out << (i ? "," : "") << a[i];
  out << ")\n";
  if (s.audit) out << audit_line(*s.audit) << "\n";
  for (const auto& c : s.classes) out << format_key(c.key) << "\t" << c.multiplicity << "\n";
  return out.str();
}

}  // namespace multlab
