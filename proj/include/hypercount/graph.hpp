#pragma once

#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "hypercount/bigint.hpp"
#include "hypercount/matteval.hpp"

namespace hypercount {

/// Connected oriented multigraph without self-loops.  Edge order is part of
/// the identity: cycle matrices, points and polynomials index variables by
/// edge position.  Immutable after construction.
class Graph {
 public:
  static Graph build(int vertex_count, std::vector<std::pair<int, int>> edges);

  int vertex_count() const { return vertices_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  int h1() const { return edge_count() - vertices_ + 1; }

 private:
  Graph(int v, std::vector<std::pair<int, int>> e)
      : vertices_(v), edges_(std::move(e)) {}
  int vertices_;
  std::vector<std::pair<int, int>> edges_;
};

/// Wheel with n spokes: rim vertices 0..n-1, hub n; edges 0..n-1 are the
/// spokes (hub -> rim), edges n..2n-1 the rim arcs.
Graph ws_graph(int n);

/// The 8-vertex, 14-edge strip-of-three-squares graph with crossed
/// diagonals, edge order matching its printed loop table.
Graph xstrip_graph();

/// Signed loop-edge incidence matrix of a fundamental cycle basis.
/// Row i traverses its defining non-tree edge forward.
class CycleMatrix {
 public:
  CycleMatrix(int loops, int edges, std::vector<int> tree_edges,
              std::vector<signed char> entries);

  int loops() const { return loops_; }
  int edges() const { return edges_; }
  int entry(int i, int j) const {
    return entries_[static_cast<std::size_t>(i) * edges_ + j];
  }
  const std::vector<int>& tree_edges() const { return tree_edges_; }

  /// M(point) with entries M_ij = sum_k point_k * Tab_ik * Tab_jk.
  EvaluatedMatrix loop_matrix(const Fq& f, std::span<const Fe> point) const;

 private:
  int loops_, edges_;
  std::vector<int> tree_edges_;
  std::vector<signed char> entries_;
};

/// Fundamental cycle basis for the deterministic greedy spanning tree
/// (lowest-index edges that do not close a cycle), rows ordered by
/// defining non-tree edge.  Throws NoCycles when h1 = 0.
CycleMatrix cycle_matrix(const Graph& g);

/// Fundamental cycle basis for an explicit spanning tree; `loop_order`
/// lists the non-tree edges in the desired row order.
CycleMatrix fundamental_cycle_matrix(const Graph& g, std::span<const int> tree_edges,
                                     std::span<const int> loop_order);

/// The XStrip loop table as printed: the fundamental cycle basis for the
/// tree {e8..e14} in the paper's row order, validated entry-for-entry
/// against the hard-coded table at first use.
const CycleMatrix& xstrip_tab();

/// Number of spanning trees by the Kirchhoff determinant (exact).
BigInt spanning_tree_count(const Graph& g);

/// All spanning trees as sorted edge-index sets (exponential; test sizes).
std::vector<std::vector<int>> enumerate_spanning_trees(const Graph& g);

/// Graph polynomial at a point: sum over spanning trees of the product of
/// the variables off the tree.  Chooses the tree-sum path when the tree
/// count is small, else the determinant path; the two agree identically.
Fe psi_eval(const Graph& g, const Fq& f, std::span<const Fe> point);
Fe psi_eval_trees(const Graph& g, const Fq& f, std::span<const Fe> point);
Fe psi_eval_det(const Graph& g, const Fq& f, std::span<const Fe> point);

/// |E| = 2 h1 and every proper edge subset with a cycle satisfies
/// |E'| > 2 h1'.  Exhaustive over edge subsets; |E| <= 24.
bool is_primitively_log_divergent(const Graph& g);

/// Text format: one line "V <count>", then one line "E <tail> <head>" per
/// edge.
Graph read_graph(std::istream& in);

}  // namespace hypercount
