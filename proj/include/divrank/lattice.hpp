#pragma once

#include <cstdlib>
#include <memory>
#include <vector>

#include "divrank/multigraph.hpp"

namespace divrank {
namespace detail {

using Mat = std::vector<std::vector<long long>>;

inline long long checked_mul(long long a, long long b) {
  long long r;
  if (__builtin_mul_overflow(a, b, &r)) fail(Errc::Overflow, "integer product");
  return r;
}

inline long long checked_sub(long long a, long long b) {
  long long r;
  if (__builtin_sub_overflow(a, b, &r)) fail(Errc::Overflow, "integer difference");
  return r;
}

inline long long checked_add(long long a, long long b) {
  long long r;
  if (__builtin_add_overflow(a, b, &r)) fail(Errc::Overflow, "integer sum");
  return r;
}

/// Fraction-free determinant. Intermediates are minors, kept exact in
/// 128-bit; the result must fit in 64.
inline long long bareiss_det(Mat a) {
  const int n = static_cast<int>(a.size());
  if (n == 0) return 1;
  std::vector<std::vector<__int128>> m(n, std::vector<__int128>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m[i][j] = a[i][j];
  __int128 prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m[k][k] == 0) {
      int p = -1;
      for (int i = k + 1; i < n; ++i)
        if (m[i][k] != 0) {
          p = i;
          break;
        }
      if (p < 0) return 0;
      std::swap(m[k], m[p]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j)
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  __int128 det = m[n - 1][n - 1] * sign;
  if (det > __int128(9'223'372'036'854'775'807LL) || det < -__int128(9'223'372'036'854'775'807LL))
    fail(Errc::Overflow, "determinant exceeds 64 bits");
  return static_cast<long long>(det);
}

/// Smith normal form U*A*V = D; only U (row transform) is tracked, which is
/// all lattice-image membership needs.
struct SmithForm {
  std::vector<long long> diag;  // full min(rows,cols) diagonal, >= 0
  Mat u;                        // rows x rows, unimodular
};

inline SmithForm smith_normal_form(Mat a) {
  const int rows = static_cast<int>(a.size());
  const int cols = rows == 0 ? 0 : static_cast<int>(a[0].size());
  SmithForm out;
  out.u.assign(rows, std::vector<long long>(rows, 0));
  for (int i = 0; i < rows; ++i) out.u[i][i] = 1;
  const int rank_bound = std::min(rows, cols);

  auto row_sub = [&](int dst, int src, long long q) {
    if (q == 0) return;
    for (int j = 0; j < cols; ++j) a[dst][j] = checked_sub(a[dst][j], checked_mul(q, a[src][j]));
    for (int j = 0; j < rows; ++j)
      out.u[dst][j] = checked_sub(out.u[dst][j], checked_mul(q, out.u[src][j]));
  };
  auto col_sub = [&](int dst, int src, long long q) {
    if (q == 0) return;
    for (int i = 0; i < rows; ++i) a[i][dst] = checked_sub(a[i][dst], checked_mul(q, a[i][src]));
  };

  for (int t = 0; t < rank_bound; ++t) {
    while (true) {
      int pi = -1, pj = -1;
      long long best = 0;
      for (int i = t; i < rows; ++i)
        for (int j = t; j < cols; ++j) {
          long long v = std::llabs(a[i][j]);
          if (v != 0 && (pi < 0 || v < best)) {
            best = v;
            pi = i;
            pj = j;
          }
        }
      if (pi < 0) {
        for (int k = t; k < rank_bound; ++k) out.diag.push_back(0);
        return out;
      }
      if (pi != t) {
        std::swap(a[pi], a[t]);
        std::swap(out.u[pi], out.u[t]);
      }
      if (pj != t)
        for (int i = 0; i < rows; ++i) std::swap(a[i][pj], a[i][t]);

      bool clean = true;
      for (int i = t + 1; i < rows; ++i)
        if (a[i][t] != 0) {
          long long q = a[i][t] / a[t][t];
          row_sub(i, t, q);
          if (a[i][t] != 0) clean = false;
        }
      for (int j = t + 1; j < cols; ++j)
        if (a[t][j] != 0) {
          long long q = a[t][j] / a[t][t];
          col_sub(j, t, q);
          if (a[t][j] != 0) clean = false;
        }
      if (!clean) continue;

      // divisibility of the remaining block by the pivot
      int bi = -1;
      for (int i = t + 1; i < rows && bi < 0; ++i)
        for (int j = t + 1; j < cols; ++j)
          if (a[i][j] % a[t][t] != 0) {
            bi = i;
            break;
          }
      if (bi >= 0) {
        row_sub(t, bi, -1);  // pull the offending row up, then redo the pivot
        continue;
      }
      if (a[t][t] < 0) {
        for (int j = 0; j < cols; ++j) a[t][j] = -a[t][j];
        for (int j = 0; j < rows; ++j) out.u[t][j] = -out.u[t][j];
      }
      out.diag.push_back(a[t][t]);
      break;
    }
  }
  return out;
}

/// Once-per-graph exact data for deciding linear equivalence: Smith form of
/// the Laplacian with vertex 0 removed (full rank on a connected graph),
/// plus the matrix-tree determinant computed independently by Bareiss.
struct LatticeCtx {
  int n = 0;
  std::vector<long long> diag;  // n-1 positive invariants (d1 | d2 | ...)
  Mat u;                        // (n-1) x (n-1)
  long long tree_count = 1;
  // compressed residue map: rows of u with diag > 1, reduced mod diag
  std::vector<long long> nt_mod;
  Mat nt_u_mod;

  /// Is the degree-zero divisor `x` (full coordinates) a Laplacian image?
  bool in_image(const std::vector<long long>& x) const {
    for (int i = 0; i + 1 < n; ++i) {
      long long acc = 0;
      for (int j = 0; j + 1 < n; ++j)
        acc = checked_add(acc, checked_mul(u[i][j], x[j + 1]));
      if (acc % diag[i] != 0) return false;
    }
    return true;
  }

  /// Residue signature: two divisors are linearly equivalent iff they have
  /// equal degree and equal signature.
  std::vector<long long> signature(const std::vector<long long>& x) const {
    std::vector<long long> sig(nt_mod.size());
    for (size_t i = 0; i < nt_mod.size(); ++i) {
      long long acc = 0;
      for (int j = 0; j + 1 < n; ++j)
        acc = (acc + nt_u_mod[i][j] * ((x[j + 1] % nt_mod[i]) + nt_mod[i])) % nt_mod[i];
      sig[i] = acc;
    }
    return sig;
  }
};

inline Mat laplacian_matrix(const Csr& g) {
  Mat l(g.n, std::vector<long long>(g.n, 0));
  for (int v = 0; v < g.n; ++v) {
    l[v][v] = g.deg[v];
    for (int i = g.off[v]; i < g.off[v + 1]; ++i) l[v][g.adj[i]] = -g.mult[i];
  }
  return l;
}

inline std::shared_ptr<const LatticeCtx> lattice_of(const Multigraph& g) {
  return g.lattice_cache().get_or_build<LatticeCtx>([&] {
    const Csr& csr = g.csr();
    auto ctx = std::make_shared<LatticeCtx>();
    ctx->n = csr.n;
    Mat full = laplacian_matrix(csr);
    Mat reduced(csr.n - 1, std::vector<long long>(csr.n - 1));
    for (int i = 1; i < csr.n; ++i)
      for (int j = 1; j < csr.n; ++j) reduced[i - 1][j - 1] = full[i][j];
    ctx->tree_count = bareiss_det(reduced);
    SmithForm snf = smith_normal_form(std::move(reduced));
    ctx->diag = std::move(snf.diag);
    ctx->u = std::move(snf.u);
    for (long long d : ctx->diag)
      if (d == 0) fail(Errc::Disconnected, "laplacian rank defect");
    for (int i = 0; i + 1 < ctx->n; ++i) {
      if (ctx->diag[i] <= 1) continue;
      ctx->nt_mod.push_back(ctx->diag[i]);
      std::vector<long long> row(ctx->n - 1);
      for (int j = 0; j + 1 < ctx->n; ++j)
        row[j] = ((ctx->u[i][j] % ctx->diag[i]) + ctx->diag[i]) % ctx->diag[i];
      ctx->nt_u_mod.push_back(std::move(row));
    }
    return ctx;
  });
}

}  // namespace detail
}  // namespace divrank
