#include "bmt/model_matrices.hpp"

#include <stdexcept>

namespace bmt {

int PairTable::index(int i, int j) const {
  if (i > j) std::swap(i, j);
  if (i < 0 || j > n || i == j) throw std::invalid_argument("bad leaf pair");
  // pairs (i, i+1..n) come after all pairs with smaller first element
  return i * n - i * (i - 1) / 2 + (j - i - 1);
}

std::pair<int, int> PairTable::pair(int idx) const {
  if (idx < 0 || idx >= count()) throw std::invalid_argument("pair index out of range");
  int i = 0;
  while (idx >= n - i) {
    idx -= n - i;
    ++i;
  }
  return {i, i + 1 + idx};
}

std::string PairTable::label(int idx) const {
  auto [i, j] = pair(idx);
  if (n <= 9) return std::to_string(i) + std::to_string(j);
  return std::to_string(i) + "_" + std::to_string(j);
}

std::string PairTable::var_name(int idx) const { return "p" + label(idx); }

IntMat design_matrix(const RootedTree& t) {
  const int n = t.max_leaf();
  PairTable pt(n);
  const auto verts = t.non_root_vertices();
  IntMat a(static_cast<int>(verts.size()), pt.count());
  for (size_t r = 0; r < verts.size(); ++r) {
    const int v = verts[r];
    a.row_labels.push_back(std::to_string(v));
    for (int idx = 0; idx < pt.count(); ++idx) {
      const auto [i, j] = pt.pair(idx);
      if (v == i || v == j || t.lca(i, j) == v) a.at(static_cast<int>(r), idx) = 1;
    }
  }
  for (int idx = 0; idx < pt.count(); ++idx) a.col_labels.push_back(pt.label(idx));
  return a;
}

IntMat path_matrix(const RootedTree& t) {
  const int n = t.max_leaf();
  PairTable pt(n);
  const auto verts = t.non_root_vertices();
  IntMat b(static_cast<int>(verts.size()), pt.count());
  for (size_t r = 0; r < verts.size(); ++r) b.row_labels.push_back("e(" + std::to_string(verts[r]) + ")");
  for (int idx = 0; idx < pt.count(); ++idx) {
    const auto [i, j] = pt.pair(idx);
    for (int e : t.path_edges(i, j)) b.at(e - 1, idx) = 1;  // edge ids are 1..V-1
    b.col_labels.push_back(pt.label(idx));
  }
  return b;
}

IntMat starred(const IntMat& m) {
  IntMat s(m.rows + 1, m.cols + 1);
  for (int r = 0; r < m.rows; ++r)
    for (int c = 0; c < m.cols; ++c) s.at(r, c) = m.at(r, c);
  for (int c = 0; c <= m.cols; ++c) s.at(m.rows, c) = 1;
  s.row_labels = m.row_labels;
  if (!s.row_labels.empty()) s.row_labels.push_back("star");
  s.col_labels = m.col_labels;
  if (!s.col_labels.empty()) s.col_labels.push_back("star");
  return s;
}

RowCombination path_row_from_design(const RootedTree& t, int v) {
  if (v <= 0 || v >= t.vertex_count())
    throw std::invalid_argument("path_row_from_design: non-root vertex required");
  RowCombination comb{v, t.leaves_below(v), t.internals_below(v)};

  const IntMat a = design_matrix(t);
  const IntMat b = path_matrix(t);
  for (int c = 0; c < a.cols; ++c) {
    mpz_class acc = 0;
    for (int k : comb.leaf_terms) acc += a.at(k - 1, c);
    for (int k : comb.internal_terms) acc -= 2 * a.at(k - 1, c);
    if (acc != b.at(v - 1, c))
      throw std::logic_error("path/design row identity failed at vertex " + std::to_string(v));
  }
  return comb;
}

}  // namespace bmt
