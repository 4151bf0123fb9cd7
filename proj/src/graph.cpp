#include "hypercount/graph.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <deque>
#include <istream>
#include <numeric>
#include <sstream>
#include <string>

#include "hypercount/errors.hpp"

namespace hypercount {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
};

}  // namespace

Graph Graph::build(int vertex_count, std::vector<std::pair<int, int>> edges) {
  if (vertex_count < 1) throw Error("graph needs at least one vertex");
  if (edges.empty()) throw Error("graph needs at least one edge");
  UnionFind uf(vertex_count);
  int components = vertex_count;
  for (const auto& [t, h] : edges) {
    if (t < 0 || h < 0 || t >= vertex_count || h >= vertex_count)
      throw Error("edge endpoint out of range");
    if (t == h) throw SelfLoop("self-loop at vertex " + std::to_string(t));
    if (uf.unite(t, h)) --components;
  }
  if (components != 1) throw Disconnected("graph is not connected");
  return Graph(vertex_count, std::move(edges));
}

Graph ws_graph(int n) {
  if (n < 3) throw Error("wheel needs at least 3 spokes");
  std::vector<std::pair<int, int>> edges;
  edges.reserve(2 * n);
  for (int i = 0; i < n; ++i) edges.emplace_back(n, i);  // spokes
  for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
  return Graph::build(n + 1, std::move(edges));
}

// Vertices 0..3 top row left to right, 4..7 bottom row.  Edge order and
// orientation are the ones whose fundamental cycles for the comb tree
// {e8..e14} reproduce the printed loop table sign-for-sign.
Graph xstrip_graph() {
  return Graph::build(8, {
                             {0, 1},  // e1  top
                             {1, 2},  // e2
                             {2, 3},  // e3
                             {0, 6},  // e4  diagonal
                             {4, 2},  // e5  diagonal
                             {5, 3},  // e6  diagonal
                             {1, 7},  // e7  diagonal
                             {5, 4},  // e8  bottom
                             {6, 5},  // e9
                             {7, 6},  // e10
                             {4, 0},  // e11 left side
                             {1, 5},  // e12 vertical
                             {2, 6},  // e13 vertical
                             {3, 7},  // e14 right side
                         });
}

CycleMatrix::CycleMatrix(int loops, int edges, std::vector<int> tree_edges,
                         std::vector<signed char> entries)
    : loops_(loops),
      edges_(edges),
      tree_edges_(std::move(tree_edges)),
      entries_(std::move(entries)) {}

EvaluatedMatrix CycleMatrix::loop_matrix(const Fq& f,
                                         std::span<const Fe> point) const {
  if (static_cast<int>(point.size()) != edges_)
    throw Error("point length must equal the edge count");
  EvaluatedMatrix m(f, loops_);
  for (int i = 0; i < loops_; ++i)
    for (int j = i; j < loops_; ++j) {
      Fe acc = 0;
      for (int k = 0; k < edges_; ++k) {
        int s = entry(i, k) * entry(j, k);
        if (s == 0) continue;
        acc = s > 0 ? f.add(acc, point[k]) : f.sub(acc, point[k]);
      }
      m.set(i, j, acc);
      m.set(j, i, acc);
    }
  return m;
}

CycleMatrix fundamental_cycle_matrix(const Graph& g, std::span<const int> tree_edges,
                                     std::span<const int> loop_order) {
  const int V = g.vertex_count();
  const int E = g.edge_count();
  if (static_cast<int>(tree_edges.size()) != V - 1)
    throw Error("spanning tree must have V-1 edges");
  // Adjacency restricted to the tree: (neighbor, edge, sign when traversed
  // tail->head).
  std::vector<std::vector<std::array<int, 3>>> adj(V);
  UnionFind uf(V);
  for (int j : tree_edges) {
    auto [t, h] = g.edges()[j];
    if (!uf.unite(t, h)) throw Error("tree edges contain a cycle");
    adj[t].push_back({h, j, 1});
    adj[h].push_back({t, j, -1});
  }
  std::vector<bool> in_tree(E, false);
  for (int j : tree_edges) in_tree[j] = true;

  auto tree_path = [&](int src, int dst, std::vector<signed char>& row) {
    std::vector<std::array<int, 3>> prev(V, {-1, -1, 0});
    std::vector<bool> seen(V, false);
    std::deque<int> queue{src};
    seen[src] = true;
    while (!queue.empty()) {
      int u = queue.front();
      queue.pop_front();
      if (u == dst) break;
      for (const auto& [w, j, s] : adj[u])
        if (!seen[w]) {
          seen[w] = true;
          prev[w] = {u, j, s};
          queue.push_back(w);
        }
    }
    for (int u = dst; u != src;) {
      auto [pu, j, s] = prev[u];
      row[j] = static_cast<signed char>(s);
      u = pu;
    }
  };

  std::vector<signed char> entries(static_cast<std::size_t>(loop_order.size()) * E, 0);
  int i = 0;
  for (int e : loop_order) {
    if (in_tree[e]) throw Error("loop order lists a tree edge");
    auto [t, h] = g.edges()[e];
    std::vector<signed char> row(E, 0);
    row[e] = 1;
    tree_path(h, t, row);  // close the loop from head back to tail
    std::copy(row.begin(), row.end(), entries.begin() + static_cast<std::size_t>(i) * E);
    ++i;
  }
  return CycleMatrix(static_cast<int>(loop_order.size()), E,
                     std::vector<int>(tree_edges.begin(), tree_edges.end()),
                     std::move(entries));
}

CycleMatrix cycle_matrix(const Graph& g) {
  if (g.h1() == 0) throw NoCycles("graph is a tree");
  UnionFind uf(g.vertex_count());
  std::vector<int> tree, loops;
  for (int j = 0; j < g.edge_count(); ++j) {
    auto [t, h] = g.edges()[j];
    if (uf.unite(t, h))
      tree.push_back(j);
    else
      loops.push_back(j);
  }
  return fundamental_cycle_matrix(g, tree, loops);
}

const CycleMatrix& xstrip_tab() {
  // Printed table, rows = loops of e1, e4, e5, e2, e3, e6, e7.
  static constexpr signed char kTab[7][14] = {
      {1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 1, 0, 0},
      {0, 0, 0, 1, 0, 0, 0, 1, 1, 0, 1, 0, 0, 0},
      {0, 0, 0, 0, 1, 0, 0, 1, 1, 0, 0, 0, 1, 0},
      {0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, -1, 1, 0},
      {0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, -1, 1},
      {0, 0, 0, 0, 0, 1, 0, 0, 1, 1, 0, 0, 0, 1},
      {0, 0, 0, 0, 0, 0, 1, 0, 1, 1, 0, -1, 0, 0},
  };
  static const CycleMatrix tab = [] {
    const Graph g = xstrip_graph();
    const std::vector<int> tree = {7, 8, 9, 10, 11, 12, 13};
    const std::vector<int> order = {0, 3, 4, 1, 2, 5, 6};
    CycleMatrix computed = fundamental_cycle_matrix(g, tree, order);
    for (int i = 0; i < 7; ++i)
      for (int j = 0; j < 14; ++j)
        if (computed.entry(i, j) != kTab[i][j])
          throw InvariantViolation("xstrip loop table mismatch at row " +
                                   std::to_string(i + 1) + ", edge " +
                                   std::to_string(j + 1));
    return computed;
  }();
  return tab;
}

BigInt spanning_tree_count(const Graph& g) {
  // Kirchhoff: any cofactor of the Laplacian.  Fraction-free (Bareiss)
  // elimination keeps everything integral.
  const int n = g.vertex_count() - 1;
  if (n == 0) return 1;
  std::vector<BigInt> m(static_cast<std::size_t>(n) * n, 0);
  for (const auto& [t, h] : g.edges()) {
    if (t < n) m[t * n + t] += 1;
    if (h < n) m[h * n + h] += 1;
    if (t < n && h < n) {
      m[t * n + h] -= 1;
      m[h * n + t] -= 1;
    }
  }
  BigInt prev = 1;
  int sign = 1;
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int r = c; r < n; ++r)
      if (m[r * n + c] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) return 0;
    if (piv != c) {
      for (int cc = 0; cc < n; ++cc) std::swap(m[c * n + cc], m[piv * n + cc]);
      sign = -sign;
    }
    for (int r = c + 1; r < n; ++r) {
      for (int cc = c + 1; cc < n; ++cc)
        m[r * n + cc] = (m[r * n + cc] * m[c * n + c] - m[r * n + c] * m[c * n + cc]) / prev;
      m[r * n + c] = 0;
    }
    prev = m[c * n + c];
  }
  return sign * m[static_cast<std::size_t>(n - 1) * n + (n - 1)];
}

std::vector<std::vector<int>> enumerate_spanning_trees(const Graph& g) {
  const int V = g.vertex_count();
  const int E = g.edge_count();
  std::vector<std::vector<int>> trees;
  std::vector<int> pick;
  // Combinations of V-1 edges, pruned by union-find acyclicity.
  auto rec = [&](auto&& self, int next, UnionFind uf) -> void {
    if (static_cast<int>(pick.size()) == V - 1) {
      trees.push_back(pick);
      return;
    }
    int need = V - 1 - static_cast<int>(pick.size());
    for (int j = next; j + need <= E; ++j) {
      UnionFind uf2 = uf;
      auto [t, h] = g.edges()[j];
      if (!uf2.unite(t, h)) continue;
      pick.push_back(j);
      self(self, j + 1, std::move(uf2));
      pick.pop_back();
    }
  };
  rec(rec, 0, UnionFind(V));
  return trees;
}

Fe psi_eval_trees(const Graph& g, const Fq& f, std::span<const Fe> point) {
  if (static_cast<int>(point.size()) != g.edge_count())
    throw Error("point length must equal the edge count");
  const auto trees = enumerate_spanning_trees(g);
  const int E = g.edge_count();
  Fe acc = 0;
  std::vector<bool> on_tree(E);
  for (const auto& tree : trees) {
    std::fill(on_tree.begin(), on_tree.end(), false);
    for (int j : tree) on_tree[j] = true;
    Fe term = 1;
    for (int j = 0; j < E && term != 0; ++j)
      if (!on_tree[j]) term = f.mul(term, point[j]);
    acc = f.add(acc, term);
  }
  return acc;
}

Fe psi_eval_det(const Graph& g, const Fq& f, std::span<const Fe> point) {
  return cycle_matrix(g).loop_matrix(f, point).determinant();
}

Fe psi_eval(const Graph& g, const Fq& f, std::span<const Fe> point) {
  if (g.h1() == 0) {
    // A tree has one spanning tree and an empty off-tree product.
    if (static_cast<int>(point.size()) != g.edge_count())
      throw Error("point length must equal the edge count");
    return 1;
  }
  if (spanning_tree_count(g) <= 10000) return psi_eval_trees(g, f, point);
  return psi_eval_det(g, f, point);
}

bool is_primitively_log_divergent(const Graph& g) {
  const int E = g.edge_count();
  if (E > 24) throw TooManyEdges("subset scan capped at 24 edges");
  if (E != 2 * g.h1()) return false;
  const int V = g.vertex_count();
  for (std::uint32_t mask = 1; mask + 1 < (1u << E); ++mask) {
    // h1 of the edge subset on the vertices it touches.
    UnionFind uf(V);
    int edges = 0, merges = 0;
    std::uint32_t touched = 0;
    for (int j = 0; j < E; ++j)
      if (mask >> j & 1) {
        ++edges;
        auto [t, h] = g.edges()[j];
        touched |= 1u << t;
        touched |= 1u << h;
        if (uf.unite(t, h)) ++merges;
      }
    int vertices = std::popcount(touched);
    int components = vertices - merges;
    int h1 = edges - vertices + components;
    if (h1 >= 1 && edges <= 2 * h1) return false;
  }
  return true;
}

Graph read_graph(std::istream& in) {
  std::string line;
  int vertices = -1;
  std::vector<std::pair<int, int>> edges;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "V") {
      if (vertices >= 0 || !(ls >> vertices))
        throw Error("bad V line at line " + std::to_string(lineno));
    } else if (tag == "E") {
      int t, h;
      if (vertices < 0 || !(ls >> t >> h))
        throw Error("bad E line at line " + std::to_string(lineno));
      edges.emplace_back(t, h);
    } else {
      throw Error("unknown directive '" + tag + "' at line " + std::to_string(lineno));
    }
  }
  if (vertices < 0) throw Error("missing V line");
  return Graph::build(vertices, std::move(edges));
}

}  // namespace hypercount
