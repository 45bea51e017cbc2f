#pragma once

#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "divrank/rank.hpp"

namespace divrank {

/// Exact nonnegative rational, reduced, positive denominator.
struct Rational {
  long long num = 0;
  long long den = 1;

  static Rational make(long long num, long long den) {
    if (den == 0) fail(Errc::ParseError, "zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
    return Rational{num, den};
  }

  bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
  bool operator<(const Rational& o) const {
    return static_cast<__int128>(num) * o.den < static_cast<__int128>(o.num) * den;
  }

  std::string str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
  }
};

/// "p/q" or "p"; anything else is rejected.
inline Rational parse_rational(const std::string& text) {
  auto parse_int = [](const std::string& s) -> long long {
    if (s.empty()) fail(Errc::ParseError, "empty rational component");
    size_t pos = 0;
    long long v = 0;
    try {
      v = std::stoll(s, &pos);
    } catch (const std::exception&) {
      fail(Errc::ParseError, "bad rational '" + s + "'");
    }
    if (pos != s.size()) fail(Errc::ParseError, "bad rational '" + s + "'");
    return v;
  };
  auto slash = text.find('/');
  if (slash == std::string::npos) return Rational::make(parse_int(text), 1);
  return Rational::make(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

/// Finitely supported integer function on the rational points of the
/// unit-length metric graph. Offsets 0 and 1 normalize to vertex entries;
/// duplicate points merge; zero coefficients vanish.
class MetricDivisor {
 public:
  struct InteriorPoint {
    int edge;
    Rational offset;  // strictly inside (0,1)
    long long coeff;
  };

  struct RawPoint {
    int edge = -1;           // or
    std::string vertex;      // exactly one of edge/vertex in use
    Rational offset;         // for edge points
    long long coeff = 0;
  };

  MetricDivisor(WeightedGraph host, const std::vector<RawPoint>& points)
      : host_(std::move(host)) {
    host_.graph().ensure_valid();
    std::map<std::pair<int, Rational>, long long> interior;
    for (const auto& p : points) {
      if (!p.vertex.empty()) {
        if (!host_.graph().has_vertex(p.vertex))
          fail(Errc::UnknownVertex, "metric point at unknown vertex '" + p.vertex + "'");
        vertex_coeff_[p.vertex] += p.coeff;
        continue;
      }
      if (p.edge < 0 || p.edge >= host_.graph().edge_count())
        fail(Errc::UnknownEdge, "metric point on unknown edge " + std::to_string(p.edge));
      if (p.offset.num < 0 || p.offset.num > p.offset.den)
        fail(Errc::ParseError, "offset " + p.offset.str() + " outside [0,1]");
      if (p.offset.num == 0) {
        vertex_coeff_[host_.graph().edges()[p.edge].first] += p.coeff;
      } else if (p.offset.num == p.offset.den) {
        vertex_coeff_[host_.graph().edges()[p.edge].second] += p.coeff;
      } else {
        interior[{p.edge, p.offset}] += p.coeff;
      }
    }
    for (auto it = vertex_coeff_.begin(); it != vertex_coeff_.end();)
      it = it->second == 0 ? vertex_coeff_.erase(it) : std::next(it);
    for (const auto& [key, c] : interior)
      if (c != 0) interior_.push_back({key.first, key.second, c});
  }

  const WeightedGraph& host() const { return host_; }
  const std::vector<InteriorPoint>& interior_points() const { return interior_; }
  const std::map<std::string, long long>& vertex_points() const { return vertex_coeff_; }

  long long degree() const {
    long long s = 0;
    for (const auto& [v, c] : vertex_coeff_) s += c;
    for (const auto& p : interior_) s += p.coeff;
    return s;
  }

  /// Smallest uniform subdivision whose vertices carry every point.
  long long model_n() const {
    long long n = 1;
    for (const auto& p : interior_) n = std::lcm(n, p.offset.den);
    return n;
  }

 private:
  WeightedGraph host_;
  std::vector<InteriorPoint> interior_;
  std::map<std::string, long long> vertex_coeff_;
};

/// Replace every edge by a path of n edges through n-1 fresh weight-0
/// vertices (loops become cycles). Weighted genus is preserved.
inline WeightedGraph subdivide(const WeightedGraph& wg, long long n) {
  if (n < 1) fail(Errc::InvalidArgument, "subdivision factor must be >= 1");
  const Multigraph& g = wg.graph();
  g.ensure_valid();
  if (n == 1) return wg;
  if (n * g.edge_count() > 200'000) fail(Errc::TooLarge, "subdivision too large");

  std::vector<std::string> vertices = g.vertices();
  std::vector<std::pair<std::string, std::string>> edges;
  for (int e = 0; e < g.edge_count(); ++e) {
    const auto& [a, b] = g.edges()[e];
    std::string prev = a;
    for (long long k = 1; k < n; ++k) {
      std::string fresh = "sub:" + std::to_string(e) + ":" + std::to_string(k);
      vertices.push_back(fresh);
      edges.emplace_back(prev, fresh);
      prev = fresh;
    }
    edges.emplace_back(prev, b);
  }
  std::map<std::string, long long> weights;
  for (int v = 0; v < g.vertex_count(); ++v)
    if (wg.weight_at(v) != 0) weights[g.vertex_id(v)] = wg.weight_at(v);
  return WeightedGraph(Multigraph(std::move(vertices), std::move(edges)), weights);
}

namespace detail {

/// Rank on the model subdivide(host, refine * model_n()).
inline int metric_rank_on_model(const MetricDivisor& md, long long refine) {
  const long long n = md.model_n() * refine;
  WeightedGraph model = subdivide(md.host(), n);
  Divisor d(model.graph());
  for (const auto& [v, c] : md.vertex_points()) d = d.plus_vertex(v, c);
  for (const auto& p : md.interior_points()) {
    long long k = p.offset.num * (n / p.offset.den);
    // position k of the subdivided edge: 0 is the tail, n is the head
    std::string id = "sub:" + std::to_string(p.edge) + ":" + std::to_string(k);
    d = d.plus_vertex(id, p.coeff);
  }
  return rank_weighted(model, d);
}

}  // namespace detail

/// Rank of a metric divisor: place the points on the vertices of the
/// coarsest uniform subdivision model and take the weighted rank there.
/// The value does not depend on the model (tested under refinement).
inline int metric_rank(const MetricDivisor& md) { return detail::metric_rank_on_model(md, 1); }

inline int metric_rank_refined(const MetricDivisor& md, long long refine) {
  if (refine < 1) fail(Errc::InvalidArgument, "refinement factor must be >= 1");
  return detail::metric_rank_on_model(md, refine);
}

}  // namespace divrank
