#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "divrank/lattice.hpp"
#include "divrank/weighted_graph.hpp"

namespace divrank {

/// Integer-valued formal sum of vertices, tied to a host graph.
/// Coefficients are dense in vertex declaration order; arithmetic across
/// different hosts is rejected rather than coerced.
class Divisor {
 public:
  explicit Divisor(Multigraph host) : host_(std::move(host)) {
    host_.ensure_valid();
    coeff_.assign(host_.vertex_count(), 0);
  }

  Divisor(Multigraph host, const std::map<std::string, long long>& coeffs)
      : Divisor(std::move(host)) {
    for (const auto& [id, c] : coeffs) coeff_[host_.vertex_index(id)] = c;
  }

  static Divisor from_dense(Multigraph host, std::vector<long long> dense) {
    Divisor d(std::move(host));
    if (dense.size() != d.coeff_.size())
      fail(Errc::InvalidArgument, "coefficient vector does not match vertex count");
    d.coeff_ = std::move(dense);
    return d;
  }

  const Multigraph& host() const { return host_; }
  const std::vector<long long>& dense() const { return coeff_; }

  long long at(const std::string& id) const { return coeff_[host_.vertex_index(id)]; }
  long long at_index(int i) const { return coeff_.at(i); }

  long long degree() const {
    long long s = 0;
    for (long long c : coeff_) s += c;
    return s;
  }

  bool is_effective() const {
    for (long long c : coeff_)
      if (c < 0) return false;
    return true;
  }

  bool is_zero() const {
    for (long long c : coeff_)
      if (c != 0) return false;
    return true;
  }

  Divisor operator+(const Divisor& o) const {
    check_host(o);
    Divisor r = *this;
    for (size_t i = 0; i < coeff_.size(); ++i) r.coeff_[i] += o.coeff_[i];
    return r;
  }

  Divisor operator-(const Divisor& o) const {
    check_host(o);
    Divisor r = *this;
    for (size_t i = 0; i < coeff_.size(); ++i) r.coeff_[i] -= o.coeff_[i];
    return r;
  }

  Divisor operator-() const {
    Divisor r = *this;
    for (auto& c : r.coeff_) c = -c;
    return r;
  }

  Divisor times(long long k) const {
    Divisor r = *this;
    for (auto& c : r.coeff_) c *= k;
    return r;
  }

  /// this - [v]
  Divisor minus_vertex(const std::string& id) const {
    Divisor r = *this;
    r.coeff_[host_.vertex_index(id)] -= 1;
    return r;
  }

  Divisor plus_vertex(const std::string& id, long long k = 1) const {
    Divisor r = *this;
    r.coeff_[host_.vertex_index(id)] += k;
    return r;
  }

  bool operator==(const Divisor& o) const {
    return host_.same_as(o.host_) && coeff_ == o.coeff_;
  }

  std::map<std::string, long long> support_map() const {
    std::map<std::string, long long> m;
    for (size_t i = 0; i < coeff_.size(); ++i)
      if (coeff_[i] != 0) m[host_.vertex_id(static_cast<int>(i))] = coeff_[i];
    return m;
  }

 private:
  void check_host(const Divisor& o) const {
    if (!host_.same_as(o.host_))
      fail(Errc::HostMismatch, "divisor arithmetic across different hosts");
  }

  Multigraph host_;
  std::vector<long long> coeff_;
};

/// Integer-valued function on the vertices (a rational function in the
/// chip-firing sense). Total on V; vertices omitted at construction are 0.
class IntFunction {
 public:
  explicit IntFunction(Multigraph host) : host_(std::move(host)) {
    host_.ensure_valid();
    values_.assign(host_.vertex_count(), 0);
  }

  IntFunction(Multigraph host, const std::map<std::string, long long>& values)
      : IntFunction(std::move(host)) {
    for (const auto& [id, v] : values) values_[host_.vertex_index(id)] = v;
  }

  static IntFunction from_dense(Multigraph host, std::vector<long long> dense) {
    IntFunction f(std::move(host));
    if (dense.size() != f.values_.size())
      fail(Errc::InvalidArgument, "value vector does not match vertex count");
    f.values_ = std::move(dense);
    return f;
  }

  const Multigraph& host() const { return host_; }
  const std::vector<long long>& dense() const { return values_; }
  long long at(const std::string& id) const { return values_[host_.vertex_index(id)]; }
  long long at_index(int i) const { return values_.at(i); }

  IntFunction plus_constant(long long c) const {
    IntFunction r = *this;
    for (auto& v : r.values_) v += c;
    return r;
  }

  std::map<std::string, long long> as_map() const {
    std::map<std::string, long long> m;
    for (size_t i = 0; i < values_.size(); ++i)
      m[host_.vertex_id(static_cast<int>(i))] = values_[i];
    return m;
  }

 private:
  Multigraph host_;
  std::vector<long long> values_;
};

/// Laplacian as a dense integer matrix in vertex order. Diagonal holds the
/// non-loop valence; loops contribute nothing anywhere.
inline std::vector<std::vector<long long>> laplacian(const Multigraph& g) {
  return detail::laplacian_matrix(g.csr());
}

namespace detail {

inline void add_div_of(const Csr& g, const std::vector<long long>& f,
                       std::vector<long long>& out) {
  for (auto [a, b] : g.edges) {
    if (a == b) continue;
    out[a] += f[b] - f[a];
    out[b] += f[a] - f[b];
  }
}

}  // namespace detail

/// Principal divisor of f: at each v, the sum of f(w) - f(v) over edges wv.
/// Always degree 0; adding a constant to f changes nothing.
inline Divisor div_of(const IntFunction& f) {
  std::vector<long long> out(f.host().vertex_count(), 0);
  detail::add_div_of(f.host().csr(), f.dense(), out);
  return Divisor::from_dense(f.host(), std::move(out));
}

/// Exact lattice membership: d is principal iff it has degree 0 and lies in
/// the integer column span of the Laplacian. Independent of any reduction
/// machinery.
inline bool is_principal(const Divisor& d) {
  d.host().ensure_valid();
  if (d.degree() != 0) return false;
  return detail::lattice_of(d.host())->in_image(d.dense());
}

inline bool linearly_equivalent(const Divisor& d, const Divisor& e) {
  if (!d.host().same_as(e.host()))
    fail(Errc::HostMismatch, "equivalence across different hosts");
  if (d.degree() != e.degree()) return false;
  return is_principal(d - e);
}

/// K_G = sum over v of (val(v) - 2)[v]; every loop adds 2 to the valence.
inline Divisor canonical(const Multigraph& g) {
  g.ensure_valid();
  const detail::Csr& csr = g.csr();
  std::vector<long long> c(csr.n);
  for (int v = 0; v < csr.n; ++v) c[v] = csr.deg[v] + 2LL * csr.loops[v] - 2;
  return Divisor::from_dense(g, std::move(c));
}

/// Canonical divisor of the virtual loopless graph, regarded as a divisor
/// on G (inserted vertices have valence 2, hence coefficient 0).
inline Divisor canonical_weighted(const WeightedGraph& wg) {
  auto vg = detail::virtual_of(wg);
  Divisor on_virtual = canonical(vg->graph);
  std::vector<long long> c(wg.graph().vertex_count());
  for (int v = 0; v < wg.graph().vertex_count(); ++v) {
    const std::string& id = wg.graph().vertex_id(v);
    c[v] = on_virtual.at(id);
  }
  for (const auto& id : vg->inserted)
    if (on_virtual.at(id) != 0) fail(Errc::InvalidArgument, "inserted vertex with nonzero K");
  return Divisor::from_dense(wg.graph(), std::move(c));
}

/// Zero-extension of a divisor on a subgraph (vertex ids must all exist in
/// the target). Preserves degree and maps principal to principal.
inline Divisor embed(const Divisor& d, const Multigraph& into) {
  into.ensure_valid();
  Divisor out(into);
  for (const auto& [id, c] : d.support_map()) {
    if (!into.has_vertex(id))
      fail(Errc::VertexNotInHost, "vertex '" + id + "' missing from target graph");
    out = out.plus_vertex(id, c);
  }
  return out;
}

}  // namespace divrank
