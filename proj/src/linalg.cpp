#include "chipfire/linalg.hpp"

#include <algorithm>
#include <cstdlib>

#include "chipfire/errors.hpp"

namespace chipfire {

namespace {

Int fdiv(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

void row_sub(Mat& m, int dst, int src, const Int& q) {
  if (q == 0) return;
  for (std::size_t j = 0; j < m[dst].size(); ++j) m[dst][j] -= q * m[src][j];
}

void col_sub(Mat& m, int dst, int src, const Int& q) {
  if (q == 0) return;
  for (std::size_t i = 0; i < m.size(); ++i) m[i][dst] -= q * m[i][src];
}

void row_negate(Mat& m, int r) {
  for (auto& e : m[r]) e = -e;
}

void col_swap(Mat& m, int a, int b) {
  for (auto& row : m) std::swap(row[a], row[b]);
}

Mat identity(int n) {
  Mat m(n, Vec(n, Int(0)));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

}  // namespace

SmithForm smith_normal_form(Mat a) {
  int rows = static_cast<int>(a.size());
  int cols = rows ? static_cast<int>(a[0].size()) : 0;
  SmithForm s;
  s.u = identity(rows);
  s.v = identity(cols);

  int limit = std::min(rows, cols);
  for (int t = 0; t < limit; ++t) {
    // smallest nonzero entry of the trailing submatrix becomes the pivot
    int pi = -1, pj = -1;
    for (int i = t; i < rows; ++i)
      for (int j = t; j < cols; ++j) {
        if (a[i][j] == 0) continue;
        if (pi == -1 || mpz_cmpabs(a[i][j].get_mpz_t(), a[pi][pj].get_mpz_t()) < 0) {
          pi = i;
          pj = j;
        }
      }
    if (pi == -1) break;
    std::swap(a[t], a[pi]);
    std::swap(s.u[t], s.u[pi]);
    col_swap(a, t, pj);
    col_swap(s.v, t, pj);

    bool settled = false;
    while (!settled) {
      if (a[t][t] < 0) {
        row_negate(a, t);
        row_negate(s.u, t);
      }
      bool dirty = false;
      for (int i = 0; i < rows && !dirty; ++i) {
        if (i == t || a[i][t] == 0) continue;
        Int q = fdiv(a[i][t], a[t][t]);
        row_sub(a, i, t, q);
        row_sub(s.u, i, t, q);
        if (a[i][t] != 0) {  // remainder is a strictly smaller pivot candidate
          std::swap(a[t], a[i]);
          std::swap(s.u[t], s.u[i]);
          dirty = true;
        }
      }
      if (dirty) continue;
      for (int j = 0; j < cols && !dirty; ++j) {
        if (j == t || a[t][j] == 0) continue;
        Int q = fdiv(a[t][j], a[t][t]);
        col_sub(a, j, t, q);
        col_sub(s.v, j, t, q);
        if (a[t][j] != 0) {
          col_swap(a, t, j);
          col_swap(s.v, t, j);
          dirty = true;
        }
      }
      if (dirty) continue;
      // divisibility chain: pivot must divide the whole trailing submatrix
      settled = true;
      for (int i = t + 1; i < rows && settled; ++i)
        for (int j = t + 1; j < cols && settled; ++j)
          if (a[i][j] % a[t][t] != 0) {
            row_sub(a, t, i, Int(-1));  // add row i, then keep reducing
            row_sub(s.u, t, i, Int(-1));
            settled = false;
          }
    }
  }
  s.d = std::move(a);
  return s;
}

std::optional<Vec> solve_integer_linear(const Mat& a, const Vec& b) {
  int rows = static_cast<int>(a.size());
  int cols = rows ? static_cast<int>(a[0].size()) : 0;
  SmithForm s = smith_normal_form(a);
  Vec c = mat_vec(s.u, b);
  Vec w(cols, Int(0));
  int limit = std::min(rows, cols);
  for (int i = 0; i < rows; ++i) {
    Int d = (i < limit) ? s.d[i][i] : Int(0);
    if (d != 0) {
      if (c[i] % d != 0) return std::nullopt;
      w[i] = c[i] / d;
    } else if (c[i] != 0) {
      return std::nullopt;
    }
  }
  Vec z = mat_vec(s.v, w);
  if (mat_vec(a, z) != b) throw InternalContradiction("integer solve verification failed");
  return z;
}

namespace {

// Exact rational solve of a square nonsingular system; nullopt when singular.
// Every +,-,*,/ on matrix or RHS entries bumps the counter once; the pivot
// pattern depends only on the matrix, so the count is magnitude-independent.
std::optional<std::vector<Rat>> solve_rational_square(const Mat& a, const Vec& rhs,
                                                      OpCount* ops) {
  int k = static_cast<int>(a.size());
  auto tick = [&](std::uint64_t n) {
    if (ops) ops->ops += n;
  };
  std::vector<std::vector<Rat>> m(k, std::vector<Rat>(k + 1));
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) m[i][j] = Rat(a[i][j]);
    m[i][k] = Rat(rhs[i]);
  }
  for (int col = 0; col < k; ++col) {
    int piv = -1;
    for (int r = col; r < k; ++r)
      if (m[r][col] != 0) {
        piv = r;
        break;
      }
    if (piv == -1) return std::nullopt;
    std::swap(m[col], m[piv]);
    for (int r = col + 1; r < k; ++r) {
      if (m[r][col] == 0) continue;
      Rat factor = m[r][col] / m[col][col];
      tick(1);
      for (int j = col; j <= k; ++j) {
        m[r][j] -= factor * m[col][j];
        tick(2);
      }
    }
  }
  std::vector<Rat> x(k);
  for (int col = k - 1; col >= 0; --col) {
    Rat acc = m[col][k];
    for (int j = col + 1; j < k; ++j) {
      acc -= m[col][j] * x[j];
      tick(2);
    }
    x[col] = acc / m[col][col];
    tick(1);
  }
  return x;
}

// Primitive integer vector spanning the kernel of an integer matrix whose
// kernel is one-dimensional.
Vec kernel_primitive(const Mat& a) {
  int nr = static_cast<int>(a.size());
  int nc = nr ? static_cast<int>(a[0].size()) : 0;
  std::vector<std::vector<Rat>> m(nr, std::vector<Rat>(nc));
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nc; ++j) m[i][j] = Rat(a[i][j]);

  std::vector<int> pivot_col;
  int row = 0;
  for (int col = 0; col < nc && row < nr; ++col) {
    int piv = -1;
    for (int r = row; r < nr; ++r)
      if (m[r][col] != 0) {
        piv = r;
        break;
      }
    if (piv == -1) continue;
    std::swap(m[row], m[piv]);
    for (int r = 0; r < nr; ++r) {
      if (r == row || m[r][col] == 0) continue;
      Rat factor = m[r][col] / m[row][col];
      for (int j = col; j < nc; ++j) m[r][j] -= factor * m[row][j];
    }
    pivot_col.push_back(col);
    ++row;
  }
  std::vector<char> is_pivot(nc, 0);
  for (int c : pivot_col) is_pivot[c] = 1;
  int free_col = -1;
  int free_count = 0;
  for (int c = 0; c < nc; ++c)
    if (!is_pivot[c]) {
      free_col = c;
      ++free_count;
    }
  if (free_count != 1)
    throw InternalContradiction("kernel dimension is not one");

  std::vector<Rat> x(nc, Rat(0));
  x[free_col] = 1;
  for (int r = static_cast<int>(pivot_col.size()) - 1; r >= 0; --r) {
    int pc = pivot_col[r];
    Rat acc(0);
    for (int j = pc + 1; j < nc; ++j)
      if (x[j] != 0) acc += m[r][j] * x[j];
    x[pc] = -acc / m[r][pc];
  }
  Int denom_lcm = 1;
  for (const Rat& e : x)
    mpz_lcm(denom_lcm.get_mpz_t(), denom_lcm.get_mpz_t(), e.get_den().get_mpz_t());
  Vec p(nc);
  for (int j = 0; j < nc; ++j) {
    Rat scaled = x[j] * Rat(denom_lcm);
    p[j] = scaled.get_num();
  }
  Int g = vec_gcd(p);
  if (g > 1)
    for (auto& e : p) e /= g;
  int nonzero_sign = 0;
  for (const auto& e : p)
    if (e != 0) {
      nonzero_sign = sgn(e);
      break;
    }
  if (nonzero_sign < 0)
    for (auto& e : p) e = -e;
  return p;
}

}  // namespace

Vec primitive_period_vector(const Digraph& g, const std::vector<int>& component) {
  if (component.empty()) throw InvalidComponent("empty vertex set");
  std::vector<char> seen(g.num_vertices(), 0);
  for (int v : component) {
    if (v < 0 || v >= g.num_vertices() || seen[v])
      throw InvalidComponent("vertex set is not a set of distinct vertices");
    seen[v] = 1;
  }
  if (!strongly_connected_within(g, component))
    throw InvalidComponent("vertex set is not strongly connected");

  int m = static_cast<int>(component.size());
  Vec full = zero_vec(g.num_vertices());
  if (m == 1) {
    full[component[0]] = 1;
    return full;
  }
  Digraph sub = induced_subgraph(g, component);
  Mat lap = laplacian(sub);
  Vec p = kernel_primitive(lap);
  if (mat_vec(lap, p) != zero_vec(m))
    throw InternalContradiction("period vector is not in the kernel");
  for (const Int& e : p)
    if (e <= 0) throw InternalContradiction("period vector not strictly positive");
  for (int i = 0; i < m; ++i) full[component[i]] = p[i];
  return full;
}

std::vector<Vec> sink_period_vectors(const Digraph& g, const SccDecomposition& scc) {
  std::vector<Vec> out;
  for (std::size_t c = 0; c < scc.components.size(); ++c)
    if (scc.is_sink[c]) out.push_back(primitive_period_vector(g, scc.components[c]));
  return out;
}

Int period_sum(const Digraph& g) {
  SccDecomposition scc = scc_decompose(g);
  Int total = 0;
  for (const auto& comp : scc.components)
    total += vec_sum(primitive_period_vector(g, comp));
  return total;
}

std::optional<Vec> linear_equivalent(const Digraph& g, const Vec& x, const Vec& y) {
  int n = g.num_vertices();
  if (static_cast<int>(x.size()) != n || static_cast<int>(y.size()) != n)
    throw ValidationError("distribution size does not match the graph");
  Vec d(n);
  for (int i = 0; i < n; ++i) d[i] = x[i] - y[i];
  return solve_integer_linear(laplacian(g), d);
}

namespace detail {

std::optional<Vec> solve_nonneg_eulerian(const Digraph& g, const Vec& x, const Vec& y,
                                         OpCount* ops) {
  int n = g.num_vertices();
  auto tick = [&](std::uint64_t c) {
    if (ops) ops->ops += c;
  };
  Int sx = 0, sy = 0;
  for (int i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
  }
  tick(2 * static_cast<std::uint64_t>(n));
  if (sx != sy) return std::nullopt;
  if (n == 1) return zero_vec(1);

  Mat lap = laplacian(g);
  // pin vertex 0; the remaining minor is nonsingular for connected Eulerian
  Mat minor(n - 1, Vec(n - 1));
  Vec rhs(n - 1);
  for (int i = 1; i < n; ++i) {
    for (int j = 1; j < n; ++j) minor[i - 1][j - 1] = lap[i][j];
    rhs[i - 1] = y[i] - x[i];
  }
  tick(static_cast<std::uint64_t>(n - 1));
  auto sol = solve_rational_square(minor, rhs, ops);
  if (!sol)
    throw InternalContradiction("pinned Laplacian minor is singular on an Eulerian graph");

  Vec f(n);
  f[0] = 0;
  bool integral = true;
  for (int i = 1; i < n; ++i) {
    if ((*sol)[i - 1].get_den() != 1) integral = false;
    f[i] = (*sol)[i - 1].get_num();
  }
  if (!integral) return std::nullopt;  // no integer solution at all
  // all integer solutions are f + c*1; the smallest nonnegative one zeroes
  // the minimum entry
  Int lo = f[0];
  for (int i = 1; i < n; ++i)
    if (f[i] < lo) lo = f[i];
  for (int i = 0; i < n; ++i) f[i] -= lo;
  tick(static_cast<std::uint64_t>(n));

  Vec lf = mat_vec(lap, f);
  tick(static_cast<std::uint64_t>(n) * n);
  for (int i = 0; i < n; ++i)
    if (x[i] + lf[i] != y[i])
      throw InternalContradiction("Eulerian firing solve verification failed");
  tick(static_cast<std::uint64_t>(n));
  return f;
}

std::optional<Vec> solve_nonneg_general(const Digraph& g, const Vec& x, const Vec& y) {
  int n = g.num_vertices();
  Vec d(n);
  for (int i = 0; i < n; ++i) d[i] = y[i] - x[i];
  auto sol = solve_integer_linear(laplacian(g), d);
  if (!sol) return std::nullopt;
  Vec f = *sol;

  // Solutions differ by sink-component period vectors only. Normalizing each
  // sink component to its reduced representative also repairs negativity
  // there; what remains negative is negative in every solution.
  SccDecomposition scc = scc_decompose(g);
  for (std::size_t c = 0; c < scc.components.size(); ++c) {
    if (!scc.is_sink[c]) continue;
    Vec p = primitive_period_vector(g, scc.components[c]);
    bool first = true;
    Int m = 0;
    for (int v : scc.components[c]) {
      Int q = fdiv(f[v], p[v]);
      if (first || q < m) {
        m = q;
        first = false;
      }
    }
    if (m != 0)
      for (int v : scc.components[c]) f[v] -= m * p[v];
  }
  if (!is_nonneg(f)) return std::nullopt;
  return f;
}

}  // namespace detail

std::optional<Vec> solve_nonneg_firing(const Digraph& g, const Vec& x, const Vec& y,
                                       OpCount* ops) {
  int n = g.num_vertices();
  if (static_cast<int>(x.size()) != n || static_cast<int>(y.size()) != n)
    throw ValidationError("distribution size does not match the graph");
  if (is_eulerian(g)) return detail::solve_nonneg_eulerian(g, x, y, ops);
  return detail::solve_nonneg_general(g, x, y);
}

Vec reduce_firing_vector(const Digraph& g, Vec f) {
  if (static_cast<int>(f.size()) != g.num_vertices())
    throw ValidationError("firing vector size does not match the graph");
  if (!is_nonneg(f)) throw ValidationError("firing vector must be nonnegative");
  SccDecomposition scc = scc_decompose(g);
  for (std::size_t c = 0; c < scc.components.size(); ++c) {
    if (!scc.is_sink[c]) continue;
    Vec p = primitive_period_vector(g, scc.components[c]);
    bool first = true;
    Int m = 0;
    for (int v : scc.components[c]) {
      Int q = fdiv(f[v], p[v]);
      if (first || q < m) {
        m = q;
        first = false;
      }
    }
    if (m > 0)
      for (int v : scc.components[c]) f[v] -= m * p[v];
  }
  return f;
}

bool is_reduced(const Digraph& g, const Vec& f) {
  if (!is_nonneg(f)) return false;
  SccDecomposition scc = scc_decompose(g);
  for (std::size_t c = 0; c < scc.components.size(); ++c) {
    if (!scc.is_sink[c]) continue;
    Vec p = primitive_period_vector(g, scc.components[c]);
    bool has_small = false;
    for (int v : scc.components[c])
      if (f[v] < p[v]) {
        has_small = true;
        break;
      }
    if (!has_small) return false;
  }
  return true;
}

}  // namespace chipfire
