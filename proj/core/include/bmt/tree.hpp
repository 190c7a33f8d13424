#ifndef BMT_TREE_HPP
#define BMT_TREE_HPP

#include <array>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace bmt {

/// Rooted leaf-labeled tree. The root is the leaf labeled 0; all edges point
/// away from it. Leaves carry labels 0..n, internal vertices get ids n+1..
/// in post-order of the input shape. Each edge is named by the vertex it
/// points into, so non-root vertex ids double as edge ids. Immutable after
/// construction; all queries are const.
class RootedTree {
public:
  // Recursive shape used by the builders. leaf >= 0 marks a leaf node.
  struct Shape {
    int leaf = -1;
    std::vector<Shape> kids;
  };

  /// Builds a tree from the shape rooted at the unique child of leaf 0.
  /// Validates: leaf labels exactly {1..n}, every internal vertex outdeg >= 2.
  static RootedTree from_shape(const Shape& top);

  int max_leaf() const { return n_; }                 // n
  int leaf_count() const { return n_ + 1; }           // |Lv(T)|
  int vertex_count() const { return static_cast<int>(parent_.size()); }
  int internal_count() const { return vertex_count() - leaf_count(); }

  bool is_leaf(int v) const { return v <= n_; }
  bool is_vertex(int v) const { return v >= 0 && v < vertex_count(); }
  int parent(int v) const;
  int depth(int v) const { return depth_[v]; }
  int outdeg(int v) const { return static_cast<int>(children_[v].size()); }
  const std::vector<int>& children(int v) const { return children_[v]; }

  std::vector<int> internal_vertices() const;  // n+1 .. vertex_count()-1
  std::vector<int> non_root_vertices() const;  // 1 .. vertex_count()-1

  /// Deepest common ancestor of two leaves; lca(i,i) = i.
  int lca(int i, int j) const;

  /// Edge set of the unique shortest path between distinct leaves,
  /// as the sorted ids of the vertices the edges point into.
  std::vector<int> path_edges(int i, int j) const;

  int path_length(int i, int j) const;  // |P(i,j)|, 0 when i == j

  /// Leaves descended from v (v itself when v is a leaf), sorted.
  std::vector<int> leaves_below(int v) const;
  /// Internal vertices descended from v, including v when internal, sorted.
  std::vector<int> internals_below(int v) const;

  /// Canonical Newick string: children ordered by smallest descendant leaf,
  /// root leaf 0 left implicit.
  std::string newick() const;

  nlohmann::json to_json() const;

  bool same_topology(const RootedTree& o) const { return newick() == o.newick(); }

private:
  RootedTree() = default;
  int n_ = 0;
  std::vector<int> parent_;                // parent_[0] = -1
  std::vector<int> depth_;                 // depth_[0] = 0
  std::vector<std::vector<int>> children_; // in post-order id space
};

/// Quartet split of four leaves: either resolved with two cherry pairs or an
/// unresolved star.
struct QuartetTopology {
  std::array<int, 4> leaves;  // as given
  bool resolved = false;
  std::array<std::pair<int, int>, 2> cherries{};  // valid when resolved
};

/// Parses a Newick expression over leaf labels 1..n. The outermost node is
/// the unique child of the implicit root leaf 0. Throws std::invalid_argument
/// on malformed syntax, duplicate or non-contiguous labels, or any vertex of
/// degree two.
RootedTree parse_newick(const std::string& text);

int lca(const RootedTree& t, int i, int j);
std::vector<int> path_edges(const RootedTree& t, int i, int j);

/// Resolves a quartet by the four-point rule on edge-count distances:
/// the pairing with strictly smallest d(a,b)+d(c,d) gives the split; three
/// equal sums mean an unresolved star.
QuartetTopology quartet_topology(const RootedTree& t, const std::array<int, 4>& q);

/// Star tree S_m on leaves {0..m}; requires m >= 2.
RootedTree star_tree(int m);

/// Result of glueing a star onto a leaf edge, with the label bookkeeping the
/// toric fiber product checks need.
struct GlueResult {
  RootedTree tree;
  std::vector<int> old_leaf_to_new;  // size max_leaf(T')+1; -1 at the glued leaf
  std::vector<int> new_leaves;       // labels of the m fresh leaves, ascending
  int center;                        // internal vertex of the glued-in star
};

/// Replaces non-root leaf `ell` of t_prime by the internal vertex of a star
/// with m fresh leaves. Surviving leaves keep their relative order: labels
/// above `ell` shift down by one and the fresh leaves take the top m labels.
GlueResult glue_trees_detailed(const RootedTree& t_prime, int ell, int m);
RootedTree glue_trees(const RootedTree& t_prime, int ell, int m);

}  // namespace bmt

#endif
