#ifndef BMT_RMLD_HPP
#define BMT_RMLD_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

#include "bmt/field.hpp"
#include "bmt/groebner.hpp"
#include "bmt/matrix.hpp"
#include "bmt/model_matrices.hpp"
#include "bmt/tree.hpp"

namespace bmt {

/// Closed-form reciprocal ML-degree: the product over internal vertices of
/// 2^outdeg - outdeg - 1.
mpz_class rmld_formula(const RootedTree& t);

struct CertifyOptions {
  std::uint64_t seed = 42;
  std::array<std::uint64_t, 2> primes = {kPrimeA, kPrimeB};
  bool rational = false;  // single exact run over Q instead of the prime pairs
  int leaf_cap = 7;
  int resample_limit = 3;
  bool with_timing = true;
  BuchbergerOptions buch;
};

struct CertRun {
  std::uint64_t prime = 0;  // 0 marks a rational run
  std::uint64_t seed = 0;
  int resamples = 0;
  std::uint64_t degree = 0;
  std::uint64_t pair_reductions = 0;
  double millis = 0.0;
};

/// Outcome of certifying one tree: the slice degree computed independently
/// per (prime, seed) against the closed-form value.
struct CertificationReport {
  std::string newick;
  mpz_class formula = 0;
  std::vector<CertRun> runs;
  std::uint64_t certified_degree = 0;
  bool degrees_agree = false;  // all runs produced the same degree
  bool match = false;          // degrees_agree and equal to the formula
  nlohmann::json to_json(bool with_timing = true) const;
};

/// Certifies rmld by Groebner degree of the toric slice: generators are the
/// tree's quartet binomials plus the affine forms from the design matrix at
/// seeded generic data, run over two primes and two seeds (or once over Q).
/// Degenerate draws are resampled up to the configured limit; disagreement
/// between runs is reported, never silently dropped.
CertificationReport rmld_certify(const RootedTree& t, const CertifyOptions& opt = {});

/// Degree of V(gens) sliced by `design p = design u` at seeded generic u.
/// Binomial generators are screened against the design's lattice first.
std::uint64_t toric_mld_given_gens(const std::vector<Poly<Fp64>>& gens, const IntMat& design,
                                   std::uint64_t seed, const CertifyOptions& opt = {});

/// Reciprocal ML-degree of a general linear covariance model given a basis of
/// the subspace: counts solutions of {Sigma in L, Sigma K = Id, K - W in
/// L-perp} with multiplicity, Sigma parametrized by its L-coordinates and W a
/// seeded generic symmetric matrix. Guarded to n <= 4.
std::uint64_t linear_rmld(const std::vector<IntMat>& lspace_basis, std::uint64_t seed,
                          const CertifyOptions& opt = {});

/// True iff the homogeneous star-tree system (hypersimplex quadrics plus the
/// design linear forms at zero data) is zero-dimensional, i.e. the two
/// varieties meet only at the origin. Guarded to 2 <= n <= 5.
bool star_origin_check(int n, const CertifyOptions& opt = {});

}  // namespace bmt

#endif
