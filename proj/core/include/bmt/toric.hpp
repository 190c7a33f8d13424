#ifndef BMT_TORIC_HPP
#define BMT_TORIC_HPP

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bmt/groebner.hpp"
#include "bmt/lattice.hpp"
#include "bmt/model_matrices.hpp"
#include "bmt/monomial.hpp"
#include "bmt/tree.hpp"

namespace bmt {

/// Difference of two distinct monomials, p^plus - p^minus.
struct Binomial {
  Monomial plus;
  Monomial minus;

  Binomial(Monomial p, Monomial m);

  template <class F>
  Poly<F> poly(const F& f) const {
    return make_poly<F>({{plus, f.one()}, {minus, f.neg(f.one())}}, f);
  }
};

/// Quadratic generators of the tree's pair-coordinate ideal: one binomial per
/// resolved quartet (cross pairings through the cherries agree) and two per
/// unresolved quartet (all three pairings agree). Trees with fewer than four
/// leaves give the zero ideal.
std::vector<Binomial> tree_binomials(const RootedTree& t);

/// All pairing differences p_ij p_kl - p_ik p_jl over distinct quadruples in
/// {0..n}; the classical generating set for the star-tree ideal (three per
/// 4-subset, one redundant).
std::vector<Binomial> hypersimplex_generators(int n);

/// Membership of a binomial in the toric ideal of a design matrix: the two
/// exponent vectors must have equal image.
bool lattice_member(const Binomial& b, const IntMat& design);

/// Variable table for the pair ring of a tree on leaves {0..n}.
VarTable pair_vars(int n);

/// A star glued onto a non-root leaf edge, with everything the fiber-product
/// verification needs derived up front.
struct TfpGluing {
  RootedTree t_prime;
  int ell;
  int m;
  GlueResult glued;  // tree, leaf relabeling, fresh leaves, star center

  TfpGluing(RootedTree tp, int ell_, int m_);
};

struct TfpReport {
  int kernel_rank_psi = 0;
  int kernel_rank_b = 0;
  bool kernels_equal = false;
  std::optional<bool> ideals_equal;  // set when the generator comparison ran
  bool passed() const { return kernels_equal && ideals_equal.value_or(true); }
  nlohmann::json to_json() const;
};

/// Verifies the fiber-product factorization on the lattice level: builds the
/// exponent matrix of the glued parametrization (halving the rows that occur
/// squared), compares its saturated integer kernel with that of the glued
/// tree's path matrix, and, for glued trees of at most `ideal_leaf_cap`
/// leaves, checks that lifted generators of the two factors together with the
/// mixed quadratic relations generate the glued tree's ideal.
TfpReport tfp_kernel_check(const TfpGluing& g, int ideal_leaf_cap = 7,
                           const BuchbergerOptions& opt = {});

}  // namespace bmt

#endif
