#include "bmt/lattice.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace bmt {

namespace {

// Row echelon over Z by unimodular operations (swap, negate, add multiples),
// Euclidean-style on each pivot column. Only the first `lead_cols` columns
// participate in pivoting; trailing columns ride along.
void hermite_reduce(std::vector<std::vector<mpz_class>>& w, int lead_cols) {
  const int rows = static_cast<int>(w.size());
  int top = 0;
  for (int c = 0; c < lead_cols && top < rows; ++c) {
    while (true) {
      int best = -1;
      for (int r = top; r < rows; ++r) {
        if (w[r][c] != 0 &&
            (best < 0 || mpz_cmpabs(w[r][c].get_mpz_t(), w[best][c].get_mpz_t()) < 0))
          best = r;
      }
      if (best < 0) break;
      std::swap(w[top], w[best]);
      if (w[top][c] < 0)
        for (auto& x : w[top]) x = -x;
      bool cleared = true;
      for (int r = top + 1; r < rows; ++r) {
        if (w[r][c] == 0) continue;
        mpz_class q = w[r][c] / w[top][c];  // truncation keeps |remainder| < pivot
        if (q != 0)
          for (size_t k = 0; k < w[r].size(); ++k) w[r][k] -= q * w[top][k];
        if (w[r][c] != 0) cleared = false;
      }
      if (cleared) {
        ++top;
        break;
      }
    }
  }
}

}  // namespace

std::vector<std::vector<mpz_class>> integer_kernel(const IntMat& m) {
  const int r = m.rows, c = m.cols;
  // rows of W: [column j of m | e_j]
  std::vector<std::vector<mpz_class>> w(c, std::vector<mpz_class>(r + c, 0));
  for (int j = 0; j < c; ++j) {
    for (int i = 0; i < r; ++i) w[j][i] = m.at(i, j);
    w[j][r + j] = 1;
  }
  hermite_reduce(w, r);

  std::vector<std::vector<mpz_class>> basis;
  for (const auto& row : w) {
    bool lead_zero = true;
    for (int i = 0; i < r; ++i)
      if (row[i] != 0) {
        lead_zero = false;
        break;
      }
    if (!lead_zero) continue;
    basis.emplace_back(row.begin() + r, row.end());
  }
  return basis;
}

int integer_rank(const IntMat& m) {
  std::vector<std::vector<mpz_class>> w(m.rows, std::vector<mpz_class>(m.cols, 0));
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) w[i][j] = m.at(i, j);
  hermite_reduce(w, m.cols);
  int rank = 0;
  for (const auto& row : w) {
    bool zero = std::all_of(row.begin(), row.end(), [](const mpz_class& x) { return x == 0; });
    if (!zero) ++rank;
  }
  return rank;
}

bool in_saturated_span(const std::vector<std::vector<mpz_class>>& basis,
                       const std::vector<mpz_class>& v) {
  if (basis.empty())
    return std::all_of(v.begin(), v.end(), [](const mpz_class& x) { return x == 0; });
  const int cols = static_cast<int>(basis[0].size());
  if (static_cast<int>(v.size()) != cols)
    throw std::invalid_argument("in_saturated_span: dimension mismatch");

  IntMat without(static_cast<int>(basis.size()), cols);
  for (int i = 0; i < without.rows; ++i)
    for (int j = 0; j < cols; ++j) without.at(i, j) = basis[i][j];
  IntMat with(without.rows + 1, cols);
  with.a.assign(without.a.begin(), without.a.end());
  with.a.insert(with.a.end(), v.begin(), v.end());
  return integer_rank(with) == integer_rank(without);
}

IntMat int_mat_from_csv(const std::string& text) {
  std::vector<std::vector<std::string>> cells;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> row;
    std::string tok;
    std::istringstream ls(line);
    while (std::getline(ls, tok, ',')) row.push_back(tok);
    cells.push_back(std::move(row));
  }
  if (cells.empty()) throw std::invalid_argument("empty CSV matrix");

  auto numeric = [](const std::string& s) {
    if (s.empty()) return false;
    size_t i = s[0] == '-' ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
  };

  // the exporter marks a label header by the empty corner cell
  const bool corner = cells[0][0].empty();
  const bool header = corner || !numeric(cells[0].back());
  const bool row_labels = corner || !numeric(cells[header ? 1 : 0][0]);
  const int r0 = header ? 1 : 0;
  const int c0 = row_labels ? 1 : 0;
  const int rows = static_cast<int>(cells.size()) - r0;
  const int cols = static_cast<int>(cells[r0].size()) - c0;
  if (rows <= 0 || cols <= 0) throw std::invalid_argument("degenerate CSV matrix");

  IntMat m(rows, cols);
  if (header)
    for (int c = 0; c < cols; ++c)
      m.col_labels.push_back(cells[0][cells[0].size() - cols + c]);
  for (int r = 0; r < rows; ++r) {
    if (static_cast<int>(cells[r0 + r].size()) != cols + c0)
      throw std::invalid_argument("ragged CSV matrix");
    if (row_labels) m.row_labels.push_back(cells[r0 + r][0]);
    for (int c = 0; c < cols; ++c) {
      const std::string& s = cells[r0 + r][c0 + c];
      if (!numeric(s)) throw std::invalid_argument("non-integer CSV entry: " + s);
      m.at(r, c) = mpz_class(s);
    }
  }
  return m;
}

std::string to_csv(const IntMat& m) {
  std::ostringstream os;
  const bool has_cols = !m.col_labels.empty();
  const bool has_rows = !m.row_labels.empty();
  if (has_cols) {
    for (int c = 0; c < m.cols; ++c) {
      if (c || has_rows) os << ",";
      os << m.col_labels[c];
    }
    os << "\n";
  }
  for (int r = 0; r < m.rows; ++r) {
    if (has_rows) os << m.row_labels[r] << ",";
    for (int c = 0; c < m.cols; ++c) {
      if (c) os << ",";
      os << m.at(r, c).get_str();
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace bmt
