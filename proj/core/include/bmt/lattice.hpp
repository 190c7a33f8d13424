#ifndef BMT_LATTICE_HPP
#define BMT_LATTICE_HPP

#include <vector>

#include "bmt/matrix.hpp"

namespace bmt {

/// Basis of the saturated integer kernel {v in Z^cols : m v = 0}, one basis
/// vector per row of the result. Unimodular row reduction of [m^T | I] makes
/// the lattice equal to ker_Q(m) intersected with Z^cols.
std::vector<std::vector<mpz_class>> integer_kernel(const IntMat& m);

/// Rank of an integer matrix over the rationals.
int integer_rank(const IntMat& m);

/// True iff v lies in the saturated lattice spanned by `basis` (given as
/// rows): appending v must not raise the rational rank, and saturation makes
/// rational membership equal to lattice membership.
bool in_saturated_span(const std::vector<std::vector<mpz_class>>& basis,
                       const std::vector<mpz_class>& v);

/// Inverse of to_csv: labels are restored when the first row or column is
/// non-numeric.
IntMat int_mat_from_csv(const std::string& text);

}  // namespace bmt

#endif
