#ifndef BMT_MLE_HPP
#define BMT_MLE_HPP

#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "bmt/tree.hpp"

namespace bmt {

/// Validated sample covariance with its inverse cached. Requires symmetry to
/// 1e-12 relative and positive definiteness.
struct SampleCovariance {
  Eigen::MatrixXd s;
  Eigen::MatrixXd s_inv;

  static SampleCovariance from(const Eigen::MatrixXd& s);
  int dim() const { return static_cast<int>(s.rows()); }
};

/// One parameter per non-root vertex; sigma_ij = t_{lca(i,j)}, sigma_ii = t_i.
struct ModelFit {
  std::vector<double> t;  // indexed by vertex id - 1
  Eigen::MatrixXd sigma;
  Eigen::MatrixXd k;  // sigma^{-1}
  double objective = 0.0;
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
  nlohmann::json to_json() const;
};

/// Covariance of the parameter vector under the tree's lca pattern.
Eigen::MatrixXd sigma_from_params(const RootedTree& t, const std::vector<double>& params);

/// Reciprocal log-likelihood log det Sigma - tr(S^{-1} Sigma) and its exact
/// gradient, one component per non-root vertex. Throws std::domain_error when
/// Sigma(params) is not positive-definite.
std::pair<double, Eigen::VectorXd> rloglik_and_grad(const RootedTree& t,
                                                    const std::vector<double>& params,
                                                    const SampleCovariance& s);

/// Damped Newton ascent inside the positive-definite slice, initialized at
/// the lca-class average of S (Euclidean projection onto the model subspace),
/// falling back to the projected diagonal and then a scaled identity.
/// Stops when the gradient sup-norm drops below tol; a non-converged fit is
/// returned flagged, never thrown.
ModelFit newton_fit(const RootedTree& t, const SampleCovariance& s, double tol = 1e-10,
                    int max_iter = 100,
                    const std::optional<std::vector<double>>& init = std::nullopt);

/// Stationarity residual at a fit: the largest class sum of K - S^{-1} over
/// the pattern classes, cross-checked against the same linear system in pair
/// coordinates (design matrix times the coordinate difference); the two
/// evaluations must agree to 1e-9.
double stationarity_residual(const RootedTree& t, const ModelFit& fit,
                             const SampleCovariance& s);

}  // namespace bmt

#endif
