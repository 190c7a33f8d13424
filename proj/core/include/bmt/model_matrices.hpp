#ifndef BMT_MODEL_MATRICES_HPP
#define BMT_MODEL_MATRICES_HPP

#include <string>
#include <utility>
#include <vector>

#include "bmt/matrix.hpp"
#include "bmt/tree.hpp"

namespace bmt {

/// Unordered leaf pairs {i,j}, 0 <= i < j <= n, in lexicographic order
/// (01, 02, ..., 0n, 12, ...). This is the column order of every pair-indexed
/// matrix and the variable order of every pair-indexed polynomial ring.
struct PairTable {
  int n;

  explicit PairTable(int max_leaf) : n(max_leaf) {}

  int count() const { return (n + 1) * n / 2; }
  int index(int i, int j) const;
  std::pair<int, int> pair(int idx) const;
  std::string label(int idx) const;     // "01"
  std::string var_name(int idx) const;  // "p01"
};

/// Vertex/pair design matrix: rows over non-root vertices (leaves 1..n then
/// internal), entry 1 iff v is one of the pair or its lca. Always built from
/// the defining rule.
IntMat design_matrix(const RootedTree& t);

/// Edge/pair path matrix: rows over edges e(v) in the same vertex order,
/// entry 1 iff the edge lies on the path between the pair.
IntMat path_matrix(const RootedTree& t);

/// Appends a zero column and then an all-ones row (the starred extension).
IntMat starred(const IntMat& m);

/// Integer combination expressing a path-matrix row from design-matrix rows:
/// row e(v) = sum of rows over leaf descendants of v minus twice the sum over
/// internal descendants of v including v itself. Verified against the built
/// matrices; throws std::logic_error if the identity fails.
struct RowCombination {
  int vertex;
  std::vector<int> leaf_terms;      // coefficient +1
  std::vector<int> internal_terms;  // coefficient -2, contains v when internal
};
RowCombination path_row_from_design(const RootedTree& t, int v);

/// The linear change of coordinates between a symmetric matrix K (as an
/// n x n grid over the field) and the pair vector p: off-diagonal pairs pick
/// up a sign, root pairs are row sums.
template <class F>
std::vector<typename F::Elem> p_from_k(const Mat<F>& k, const F& f) {
  const int n = k.rows;
  if (k.cols != n) throw std::invalid_argument("p_from_k: square matrix required");
  PairTable pt(n);
  std::vector<typename F::Elem> p(pt.count(), f.zero());
  for (int i = 1; i <= n; ++i) {
    auto rowsum = f.zero();
    for (int j = 1; j <= n; ++j) rowsum = f.add(rowsum, k.at(i - 1, j - 1));
    p[pt.index(0, i)] = rowsum;
    for (int j = i + 1; j <= n; ++j) p[pt.index(i, j)] = f.neg(k.at(i - 1, j - 1));
  }
  return p;
}

template <class F>
Mat<F> k_from_p(const std::vector<typename F::Elem>& p, int n, const F& f) {
  PairTable pt(n);
  if (static_cast<int>(p.size()) != pt.count())
    throw std::invalid_argument("k_from_p: wrong coordinate count");
  Mat<F> k(n, n, f.zero());
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      k.at(i - 1, j - 1) = f.neg(p[pt.index(i, j)]);
      k.at(j - 1, i - 1) = k.at(i - 1, j - 1);
    }
  for (int i = 1; i <= n; ++i) {
    auto off = f.zero();
    for (int j = 1; j <= n; ++j)
      if (j != i) off = f.add(off, k.at(i - 1, j - 1));
    k.at(i - 1, i - 1) = f.sub(p[pt.index(0, i)], off);
  }
  return k;
}

/// Affine system cutting out {p : K(p) - K(u) lies in the orthogonal
/// complement of the model subspace}: one class-sum equation per interior
/// vertex plus one row-sum equation per non-root leaf. The coefficient matrix
/// coincides with design_matrix(t) row by row.
template <class F>
struct AffineSystem {
  Mat<F> coeff;
  std::vector<typename F::Elem> rhs;
};

template <class F>
AffineSystem<F> perp_linear_system(const RootedTree& t,
                                   const std::vector<typename F::Elem>& u, const F& f) {
  const int n = t.max_leaf();
  PairTable pt(n);
  if (static_cast<int>(u.size()) != pt.count())
    throw std::invalid_argument("perp_linear_system: wrong data length");

  const auto verts = t.non_root_vertices();
  AffineSystem<F> sys{Mat<F>(static_cast<int>(verts.size()), pt.count(), f.zero()), {}};
  sys.rhs.assign(verts.size(), f.zero());
  for (size_t r = 0; r < verts.size(); ++r) {
    const int v = verts[r];
    for (int idx = 0; idx < pt.count(); ++idx) {
      const auto [i, j] = pt.pair(idx);
      bool in_class;
      if (t.is_leaf(v))
        in_class = (i == v || j == v);  // row sum over pairs containing the leaf
      else
        in_class = (i >= 1 && t.lca(i, j) == v);  // lca class, root pairs excluded
      if (in_class) {
        sys.coeff.at(static_cast<int>(r), idx) = f.one();
        sys.rhs[r] = f.add(sys.rhs[r], u[idx]);
      }
    }
  }
  sys.coeff.row_labels = design_matrix(t).row_labels;
  sys.coeff.col_labels = design_matrix(t).col_labels;
  return sys;
}

}  // namespace bmt

#endif
