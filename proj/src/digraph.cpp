#include "chipfire/digraph.hpp"

#include <algorithm>
#include <queue>
#include <sstream>

#include "chipfire/errors.hpp"

namespace chipfire {

Digraph::Digraph(std::vector<Vec> adjacency) : adj_(std::move(adjacency)) {
  n_ = static_cast<int>(adj_.size());
  if (n_ == 0) throw ValidationError("digraph needs at least one vertex");
  for (int u = 0; u < n_; ++u) {
    if (static_cast<int>(adj_[u].size()) != n_)
      throw ValidationError("adjacency matrix is not square");
    for (int v = 0; v < n_; ++v) {
      if (adj_[u][v] < 0) throw ValidationError("negative edge multiplicity");
    }
    if (adj_[u][u] != 0) throw ValidationError("loops are not allowed");
  }
  outdeg_.assign(n_, Int(0));
  indeg_.assign(n_, Int(0));
  total_ = 0;
  for (int u = 0; u < n_; ++u) {
    for (int v = 0; v < n_; ++v) {
      outdeg_[u] += adj_[u][v];
      indeg_[v] += adj_[u][v];
      total_ += adj_[u][v];
    }
  }
  // weak connectivity over the underlying undirected support
  std::vector<char> seen(n_, 0);
  std::queue<int> q;
  q.push(0);
  seen[0] = 1;
  int reached = 1;
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (int v = 0; v < n_; ++v) {
      if (!seen[v] && (adj_[u][v] > 0 || adj_[v][u] > 0)) {
        seen[v] = 1;
        ++reached;
        q.push(v);
      }
    }
  }
  if (reached != n_) throw ValidationError("digraph is not (weakly) connected");
}

Digraph parse_digraph(const std::string& text) {
  std::vector<std::string> tokens;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    if (!line.empty() && line[0] == '#') continue;
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) tokens.push_back(tok);
  }
  if (tokens.empty()) throw ParseError("empty graph file");

  auto to_int = [](const std::string& s) -> Int {
    try {
      return Int(s);
    } catch (const std::invalid_argument&) {
      throw ParseError("not an integer: '" + s + "'");
    }
  };

  Int n_big = to_int(tokens[0]);
  if (n_big <= 0) throw ValidationError("vertex count must be positive");
  if (!n_big.fits_sint_p()) throw ValidationError("vertex count out of range");
  int n = static_cast<int>(n_big.get_si());

  if (static_cast<long long>(tokens.size()) - 1 != static_cast<long long>(n) * n)
    throw ValidationError("adjacency matrix is not n x n");

  Mat adj(n, Vec(n));
  std::size_t k = 1;
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) adj[u][v] = to_int(tokens[k++]);
  return Digraph(std::move(adj));
}

std::string write_digraph(const Digraph& g) {
  std::ostringstream out;
  out << g.num_vertices() << "\n";
  for (int u = 0; u < g.num_vertices(); ++u) {
    for (int v = 0; v < g.num_vertices(); ++v) {
      if (v) out << ' ';
      out << g.multiplicity(u, v).get_str();
    }
    out << "\n";
  }
  return out.str();
}

namespace {

// Tarjan's algorithm, iterative. Component numbering is normalized afterwards
// so callers never see the traversal order.
std::vector<int> raw_scc(const Digraph& g, int& count) {
  int n = g.num_vertices();
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
  std::vector<char> on_stack(n, 0);
  std::vector<int> stack;
  int next_index = 0;
  count = 0;

  struct Frame {
    int v;
    int child;
  };
  for (int root = 0; root < n; ++root) {
    if (index[root] != -1) continue;
    std::vector<Frame> call;
    call.push_back({root, 0});
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!call.empty()) {
      Frame& f = call.back();
      if (f.child < n) {
        int w = f.child++;
        if (g.multiplicity(f.v, w) == 0) continue;
        if (index[w] == -1) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = 1;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
      } else {
        int v = f.v;
        call.pop_back();
        if (low[v] == index[v]) {
          while (true) {
            int w = stack.back();
            stack.pop_back();
            on_stack[w] = 0;
            comp[w] = count;
            if (w == v) break;
          }
          ++count;
        }
        if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
      }
    }
  }
  return comp;
}

}  // namespace

SccDecomposition scc_decompose(const Digraph& g) {
  int n = g.num_vertices();
  int count = 0;
  std::vector<int> raw = raw_scc(g, count);

  std::vector<std::vector<int>> members(count);
  for (int v = 0; v < n; ++v) members[raw[v]].push_back(v);

  // condensation DAG edges and in-degrees
  std::vector<std::vector<char>> edge(count, std::vector<char>(count, 0));
  std::vector<int> indeg(count, 0);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (g.multiplicity(u, v) > 0 && raw[u] != raw[v] && !edge[raw[u]][raw[v]]) {
        edge[raw[u]][raw[v]] = 1;
        ++indeg[raw[v]];
      }

  // Kahn's algorithm; among ready components take the one containing the
  // smallest vertex index, which makes the order canonical.
  auto key = [&](int c) { return members[c].front(); };  // members already ascending
  std::vector<int> order;
  std::vector<int> ready;
  for (int c = 0; c < count; ++c)
    if (indeg[c] == 0) ready.push_back(c);
  while (!ready.empty()) {
    auto it = std::min_element(ready.begin(), ready.end(),
                               [&](int a, int b) { return key(a) < key(b); });
    int c = *it;
    ready.erase(it);
    order.push_back(c);
    for (int d = 0; d < count; ++d)
      if (edge[c][d] && --indeg[d] == 0) ready.push_back(d);
  }

  SccDecomposition out;
  out.components.resize(count);
  out.component_of.assign(n, -1);
  out.is_sink.assign(count, true);
  for (int pos = 0; pos < count; ++pos) {
    out.components[pos] = members[order[pos]];
    for (int v : out.components[pos]) out.component_of[v] = pos;
  }
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (g.multiplicity(u, v) > 0 && out.component_of[u] != out.component_of[v])
        out.is_sink[out.component_of[u]] = false;
  return out;
}

bool is_eulerian(const Digraph& g) {
  for (int v = 0; v < g.num_vertices(); ++v)
    if (g.out_degree(v) != g.in_degree(v)) return false;
  return true;
}

Mat laplacian(const Digraph& g) {
  int n = g.num_vertices();
  Mat l(n, Vec(n, Int(0)));
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) l[u][v] = (u == v) ? Int(-g.out_degree(v)) : g.multiplicity(v, u);
  return l;
}

Digraph induced_subgraph(const Digraph& g, const std::vector<int>& vertices) {
  int m = static_cast<int>(vertices.size());
  Mat adj(m, Vec(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) adj[i][j] = g.multiplicity(vertices[i], vertices[j]);
  return Digraph(std::move(adj));
}

bool strongly_connected_within(const Digraph& g, const std::vector<int>& vertices) {
  int m = static_cast<int>(vertices.size());
  if (m == 0) return false;
  std::vector<int> pos(g.num_vertices(), -1);
  for (int i = 0; i < m; ++i) pos[vertices[i]] = i;

  auto bfs = [&](bool forward) {
    std::vector<char> seen(m, 0);
    std::queue<int> q;
    q.push(0);
    seen[0] = 1;
    int reached = 1;
    while (!q.empty()) {
      int i = q.front();
      q.pop();
      for (int j = 0; j < m; ++j) {
        const Int& mult = forward ? g.multiplicity(vertices[i], vertices[j])
                                  : g.multiplicity(vertices[j], vertices[i]);
        if (!seen[j] && mult > 0) {
          seen[j] = 1;
          ++reached;
          q.push(j);
        }
      }
    }
    return reached == m;
  };
  return bfs(true) && bfs(false);
}

}  // namespace chipfire
