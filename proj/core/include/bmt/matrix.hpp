#ifndef BMT_MATRIX_HPP
#define BMT_MATRIX_HPP

#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "bmt/field.hpp"

namespace bmt {

/// Dense matrix over a field carried as an explicit argument to every
/// operation. Optional row/column labels survive slicing into CSV exports.
template <class F>
struct Mat {
  using Elem = typename F::Elem;

  int rows = 0;
  int cols = 0;
  std::vector<Elem> a;
  std::vector<std::string> row_labels;  // empty or size rows
  std::vector<std::string> col_labels;  // empty or size cols

  Mat() = default;
  Mat(int r, int c, Elem fill) : rows(r), cols(c), a(static_cast<size_t>(r) * c, fill) {}

  Elem& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
  const Elem& at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }

  static Mat identity(int n, const F& f) {
    Mat m(n, n, f.zero());
    for (int i = 0; i < n; ++i) m.at(i, i) = f.one();
    return m;
  }

  Mat transposed() const {
    Mat t(cols, rows, a.empty() ? Elem{} : a[0]);
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c) t.at(c, r) = at(r, c);
    t.row_labels = col_labels;
    t.col_labels = row_labels;
    return t;
  }
};

using RatMat = Mat<RationalField>;

/// Integer matrix with arbitrary-precision entries; carrier for design
/// matrices and lattice computations.
struct IntMat {
  int rows = 0;
  int cols = 0;
  std::vector<mpz_class> a;
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;

  IntMat() = default;
  IntMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0) {}

  mpz_class& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
  const mpz_class& at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }

  template <class F>
  Mat<F> over(const F& f) const {
    Mat<F> m(rows, cols, f.zero());
    for (size_t i = 0; i < a.size(); ++i) m.a[i] = f.from_mpz(a[i]);
    m.row_labels = row_labels;
    m.col_labels = col_labels;
    return m;
  }
};

template <class F>
struct RrefResult {
  int rank = 0;
  Mat<F> rref;
  std::vector<int> pivot_cols;
};

/// Gauss-Jordan to reduced row echelon form; exact over the field.
template <class F>
RrefResult<F> rank_rref(Mat<F> m, const F& f) {
  RrefResult<F> out;
  int lead = 0;
  for (int c = 0; c < m.cols && lead < m.rows; ++c) {
    int piv = -1;
    for (int r = lead; r < m.rows; ++r) {
      if (!f.is_zero(m.at(r, c))) {
        piv = r;
        break;
      }
    }
    if (piv < 0) continue;
    for (int k = 0; k < m.cols; ++k) std::swap(m.at(piv, k), m.at(lead, k));
    const auto inv = f.inv(m.at(lead, c));
    for (int k = c; k < m.cols; ++k) m.at(lead, k) = f.mul(m.at(lead, k), inv);
    for (int r = 0; r < m.rows; ++r) {
      if (r == lead || f.is_zero(m.at(r, c))) continue;
      const auto factor = m.at(r, c);
      for (int k = c; k < m.cols; ++k)
        m.at(r, k) = f.sub(m.at(r, k), f.mul(factor, m.at(lead, k)));
    }
    out.pivot_cols.push_back(c);
    ++lead;
  }
  out.rank = lead;
  out.rref = std::move(m);
  return out;
}

/// Reduces a row vector against an rref; returns the remainder.
template <class F>
std::vector<typename F::Elem> reduce_against_rref(std::vector<typename F::Elem> v,
                                                  const RrefResult<F>& r, const F& f) {
  for (size_t i = 0; i < r.pivot_cols.size(); ++i) {
    const int c = r.pivot_cols[i];
    if (f.is_zero(v[c])) continue;
    const auto factor = v[c];
    for (int k = 0; k < r.rref.cols; ++k)
      v[k] = f.sub(v[k], f.mul(factor, r.rref.at(static_cast<int>(i), k)));
  }
  return v;
}

/// True iff the row spaces coincide: every row of each matrix reduces to zero
/// against the rref of the other.
template <class F>
bool rowspan_equal(const Mat<F>& a, const Mat<F>& b, const F& f) {
  if (a.cols != b.cols) throw std::invalid_argument("rowspan_equal: column count mismatch");
  const auto ra = rank_rref(a, f);
  const auto rb = rank_rref(b, f);
  auto rows_vanish = [&](const Mat<F>& m, const RrefResult<F>& against) {
    for (int r = 0; r < m.rows; ++r) {
      std::vector<typename F::Elem> v(m.a.begin() + static_cast<size_t>(r) * m.cols,
                                      m.a.begin() + static_cast<size_t>(r + 1) * m.cols);
      v = reduce_against_rref(std::move(v), against, f);
      for (const auto& x : v)
        if (!f.is_zero(x)) return false;
    }
    return true;
  };
  return rows_vanish(b, ra) && rows_vanish(a, rb);
}

/// Solves m * x = rhs (throws on inconsistency) or inverts m when rhs is
/// absent (throws on singularity).
template <class F>
Mat<F> solve_or_invert(const Mat<F>& m, const std::optional<Mat<F>>& rhs, const F& f) {
  const Mat<F> b = rhs ? *rhs : Mat<F>::identity(m.rows, f);
  if (b.rows != m.rows) throw std::invalid_argument("solve: rhs row count mismatch");
  if (!rhs && m.rows != m.cols) throw std::invalid_argument("invert: matrix not square");

  Mat<F> aug(m.rows, m.cols + b.cols, f.zero());
  for (int r = 0; r < m.rows; ++r) {
    for (int c = 0; c < m.cols; ++c) aug.at(r, c) = m.at(r, c);
    for (int c = 0; c < b.cols; ++c) aug.at(r, m.cols + c) = b.at(r, c);
  }
  auto red = rank_rref(std::move(aug), f);

  // any pivot landing in the rhs block marks an inconsistent system
  for (int c : red.pivot_cols)
    if (c >= m.cols) throw std::domain_error("inconsistent linear system");
  if (!rhs && red.rank < m.cols) throw std::domain_error("singular matrix");

  Mat<F> x(m.cols, b.cols, f.zero());
  for (size_t i = 0; i < red.pivot_cols.size(); ++i) {
    const int pc = red.pivot_cols[i];
    for (int c = 0; c < b.cols; ++c) x.at(pc, c) = red.rref.at(static_cast<int>(i), m.cols + c);
  }
  if (red.rank < m.cols) {
    // underdetermined: confirm the particular solution (free vars = 0) works
    for (int r = 0; r < m.rows; ++r)
      for (int c = 0; c < b.cols; ++c) {
        auto acc = f.zero();
        for (int k = 0; k < m.cols; ++k) acc = f.add(acc, f.mul(m.at(r, k), x.at(k, c)));
        if (!f.eq(acc, b.at(r, c))) throw std::domain_error("inconsistent linear system");
      }
  }
  return x;
}

template <class F>
Mat<F> solve_or_invert(const Mat<F>& m, const F& f) {
  return solve_or_invert(m, std::optional<Mat<F>>{}, f);
}

// --- CSV export --------------------------------------------------------

template <class F>
std::string to_csv(const Mat<F>& m, const F& f) {
  std::ostringstream os;
  const bool has_cols = !m.col_labels.empty();
  const bool has_rows = !m.row_labels.empty();
  if (has_cols) {
    if (has_rows) os << "";
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
      os << f.str(m.at(r, c));
    }
    os << "\n";
  }
  return os.str();
}

std::string to_csv(const IntMat& m);

}  // namespace bmt

#endif
