#pragma once

#include <fstream>
#include <string>

#include <json.hpp>

#include "divrank/divisor.hpp"
#include "divrank/metric.hpp"

namespace divrank {

using nlohmann::json;

/// {"vertices":[{"id":"a","weight":0},...],"edges":[["a","b"],...]}
/// The weight field is optional and defaults to 0; edge order fixes the
/// edge ids.
inline WeightedGraph graph_from_json(const json& j) {
  if (!j.is_object() || !j.contains("vertices") || !j.contains("edges"))
    fail(Errc::ParseError, "graph json needs 'vertices' and 'edges'");
  std::vector<std::string> vertices;
  std::map<std::string, long long> weights;
  for (const auto& v : j.at("vertices")) {
    if (v.is_string()) {
      vertices.push_back(v.get<std::string>());
      continue;
    }
    if (!v.is_object() || !v.contains("id"))
      fail(Errc::ParseError, "vertex entries need an 'id'");
    std::string id = v.at("id").get<std::string>();
    vertices.push_back(id);
    if (v.contains("weight")) {
      if (!v.at("weight").is_number_integer())
        fail(Errc::ParseError, "weights must be integers");
      long long w = v.at("weight").get<long long>();
      if (w != 0) weights[id] = w;
    }
  }
  std::vector<std::pair<std::string, std::string>> edges;
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 2)
      fail(Errc::ParseError, "edges must be two-element arrays");
    edges.emplace_back(e.at(0).get<std::string>(), e.at(1).get<std::string>());
  }
  return WeightedGraph(Multigraph(std::move(vertices), std::move(edges)), weights);
}

inline json graph_to_json(const WeightedGraph& wg) {
  json vertices = json::array();
  for (int v = 0; v < wg.graph().vertex_count(); ++v)
    vertices.push_back({{"id", wg.graph().vertex_id(v)}, {"weight", wg.weight_at(v)}});
  json edges = json::array();
  for (const auto& [a, b] : wg.graph().edges()) edges.push_back({a, b});
  return json{{"vertices", vertices}, {"edges", edges}};
}

/// {"a":2,"c":-1}; omitted vertices are 0.
inline Divisor divisor_from_json(const json& j, const Multigraph& host) {
  if (!j.is_object()) fail(Errc::ParseError, "divisor json must be an object");
  std::map<std::string, long long> coeffs;
  for (const auto& [key, val] : j.items()) {
    if (!val.is_number_integer()) fail(Errc::ParseError, "coefficients must be integers");
    coeffs[key] = val.get<long long>();
  }
  return Divisor(host, coeffs);
}

inline json divisor_to_json(const Divisor& d) {
  json out = json::object();
  for (const auto& [id, c] : d.support_map()) out[id] = c;
  return out;
}

inline json intfunction_to_json(const IntFunction& f) {
  json out = json::object();
  for (const auto& [id, v] : f.as_map()) out[id] = v;
  return out;
}

/// {"points":[{"edge":0,"offset":"1/2","coeff":1},{"vertex":"a","coeff":2}]}
/// Offsets are exact rationals ("p/q" strings or integers 0/1); fractional
/// number literals are rejected to keep placement exact.
inline MetricDivisor metric_divisor_from_json(const json& j, const WeightedGraph& host) {
  if (!j.is_object() || !j.contains("points"))
    fail(Errc::ParseError, "metric divisor json needs 'points'");
  std::vector<MetricDivisor::RawPoint> points;
  for (const auto& p : j.at("points")) {
    MetricDivisor::RawPoint raw;
    if (!p.is_object() || !p.contains("coeff") || !p.at("coeff").is_number_integer())
      fail(Errc::ParseError, "each point needs an integer 'coeff'");
    raw.coeff = p.at("coeff").get<long long>();
    if (p.contains("vertex")) {
      raw.vertex = p.at("vertex").get<std::string>();
    } else if (p.contains("edge")) {
      if (!p.at("edge").is_number_integer()) fail(Errc::ParseError, "'edge' must be an id");
      raw.edge = p.at("edge").get<int>();
      if (!p.contains("offset")) fail(Errc::ParseError, "edge points need an 'offset'");
      const auto& off = p.at("offset");
      if (off.is_string())
        raw.offset = parse_rational(off.get<std::string>());
      else if (off.is_number_integer())
        raw.offset = Rational::make(off.get<long long>(), 1);
      else
        fail(Errc::ParseError, "offsets must be exact: integers or 'p/q' strings");
    } else {
      fail(Errc::ParseError, "each point needs 'edge' or 'vertex'");
    }
    points.push_back(std::move(raw));
  }
  return MetricDivisor(host, points);
}

inline json metric_divisor_to_json(const MetricDivisor& md) {
  json points = json::array();
  for (const auto& [v, c] : md.vertex_points())
    points.push_back({{"vertex", v}, {"coeff", c}});
  for (const auto& p : md.interior_points())
    points.push_back({{"edge", p.edge}, {"offset", p.offset.str()}, {"coeff", p.coeff}});
  return json{{"points", points}};
}

inline json parse_json_text(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) fail(Errc::ParseError, "invalid json");
  return j;
}

inline json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::ParseError, "cannot open '" + path + "'");
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_json_text(text);
}

}  // namespace divrank
