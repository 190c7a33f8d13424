#include "bmt/mle.hpp"

#include <cmath>
#include <stdexcept>

#include "bmt/model_matrices.hpp"

namespace bmt {

namespace {

// 0/1 indicator of the lca class of vertex v over matrix entries (both
// triangles); dSigma/dt_v.
Eigen::MatrixXd class_indicator(const RootedTree& t, int v) {
  const int n = t.max_leaf();
  Eigen::MatrixXd e = Eigen::MatrixXd::Zero(n, n);
  if (t.is_leaf(v)) {
    e(v - 1, v - 1) = 1.0;
    return e;
  }
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      if (t.lca(i, j) == v) e(i - 1, j - 1) = e(j - 1, i - 1) = 1.0;
  return e;
}

std::optional<Eigen::LLT<Eigen::MatrixXd>> try_chol(const Eigen::MatrixXd& m) {
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  if (llt.info() != Eigen::Success) return std::nullopt;
  return llt;
}

double logdet_from_chol(const Eigen::LLT<Eigen::MatrixXd>& llt) {
  return 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
}

}  // namespace

SampleCovariance SampleCovariance::from(const Eigen::MatrixXd& s) {
  if (s.rows() != s.cols()) throw std::invalid_argument("covariance must be square");
  const double scale = std::max(1.0, s.cwiseAbs().maxCoeff());
  if ((s - s.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw std::invalid_argument("covariance not symmetric");
  Eigen::MatrixXd sym = 0.5 * (s + s.transpose());
  auto llt = try_chol(sym);
  if (!llt) throw std::invalid_argument("covariance not positive-definite");
  SampleCovariance out;
  out.s = std::move(sym);
  out.s_inv = llt->solve(Eigen::MatrixXd::Identity(s.rows(), s.cols()));
  return out;
}

Eigen::MatrixXd sigma_from_params(const RootedTree& t, const std::vector<double>& params) {
  const int n = t.max_leaf();
  if (static_cast<int>(params.size()) != t.vertex_count() - 1)
    throw std::invalid_argument("parameter vector must have one entry per non-root vertex");
  Eigen::MatrixXd sigma(n, n);
  for (int i = 1; i <= n; ++i) {
    sigma(i - 1, i - 1) = params[i - 1];
    for (int j = i + 1; j <= n; ++j)
      sigma(i - 1, j - 1) = sigma(j - 1, i - 1) = params[t.lca(i, j) - 1];
  }
  return sigma;
}

std::pair<double, Eigen::VectorXd> rloglik_and_grad(const RootedTree& t,
                                                    const std::vector<double>& params,
                                                    const SampleCovariance& s) {
  const Eigen::MatrixXd sigma = sigma_from_params(t, params);
  auto llt = try_chol(sigma);
  if (!llt) throw std::domain_error("Sigma(params) not positive-definite");
  const int n = t.max_leaf();
  const Eigen::MatrixXd sigma_inv = llt->solve(Eigen::MatrixXd::Identity(n, n));

  const double value = logdet_from_chol(*llt) - (s.s_inv * sigma).trace();
  const Eigen::MatrixXd diff = sigma_inv - s.s_inv;

  const int nv = t.vertex_count() - 1;
  Eigen::VectorXd grad(nv);
  for (int v = 1; v <= nv; ++v)
    grad(v - 1) = (diff.transpose() * class_indicator(t, v)).trace();
  return {value, grad};
}

ModelFit newton_fit(const RootedTree& t, const SampleCovariance& s, double tol, int max_iter,
                    const std::optional<std::vector<double>>& init) {
  const int n = t.max_leaf();
  if (s.dim() != n) throw std::invalid_argument("covariance size does not match the tree");
  const int nv = t.vertex_count() - 1;

  std::vector<Eigen::MatrixXd> indicators;
  indicators.reserve(nv);
  for (int v = 1; v <= nv; ++v) indicators.push_back(class_indicator(t, v));

  auto project = [&](const Eigen::MatrixXd& m) {
    // class averages: the Euclidean projection onto the pattern subspace
    std::vector<double> p(nv, 0.0);
    for (int v = 1; v <= nv; ++v) {
      const double mass = indicators[v - 1].sum();
      p[v - 1] = mass > 0 ? (indicators[v - 1].cwiseProduct(m)).sum() / mass : 0.0;
    }
    return p;
  };

  std::vector<double> params;
  if (init) {
    params = *init;
    if (static_cast<int>(params.size()) != nv)
      throw std::invalid_argument("initial parameter vector has wrong length");
  } else {
    params = project(s.s);
    if (!try_chol(sigma_from_params(t, params))) {
      params = project(Eigen::MatrixXd(s.s.diagonal().asDiagonal()));
      if (!try_chol(sigma_from_params(t, params))) {
        const double c = s.s.diagonal().mean();
        params = project(c * Eigen::MatrixXd::Identity(n, n));
      }
    }
  }

  auto eval = [&](const std::vector<double>& p)
      -> std::optional<std::pair<double, Eigen::MatrixXd>> {
    auto llt = try_chol(sigma_from_params(t, p));
    if (!llt) return std::nullopt;
    const double val =
        logdet_from_chol(*llt) - (s.s_inv * sigma_from_params(t, p)).trace();
    return std::make_pair(val, llt->solve(Eigen::MatrixXd::Identity(n, n)));
  };

  auto state = eval(params);
  if (!state) throw std::domain_error("initialization not positive-definite");

  ModelFit fit;
  int iter = 0;
  for (; iter < max_iter; ++iter) {
    const auto& [value, sigma_inv] = *state;
    const Eigen::MatrixXd diff = sigma_inv - s.s_inv;
    Eigen::VectorXd grad(nv);
    for (int v = 0; v < nv; ++v) grad(v) = (diff.transpose() * indicators[v]).trace();

    if (grad.lpNorm<Eigen::Infinity>() <= tol) {
      fit.converged = true;
      break;
    }

    // Hessian of the concave objective: H_vw = -tr(S^-1 E_v S^-1 E_w)
    Eigen::MatrixXd hess(nv, nv);
    std::vector<Eigen::MatrixXd> m_v(nv);
    for (int v = 0; v < nv; ++v) m_v[v] = sigma_inv * indicators[v] * sigma_inv;
    for (int v = 0; v < nv; ++v)
      for (int w = v; w < nv; ++w)
        hess(v, w) = hess(w, v) = -(m_v[v].cwiseProduct(indicators[w])).sum();

    Eigen::VectorXd step = (-hess).ldlt().solve(grad);
    if (!step.allFinite() || grad.dot(step) <= 0.0)
      step = grad;  // fall back to plain ascent if the Hessian solve degrades

    double alpha = 1.0;
    const double slope = grad.dot(step);
    // allow for roundoff in the objective once predicted progress drops
    // below representable change
    const double noise = 1e-14 * (1.0 + std::abs(value));
    bool accepted = false;
    for (int halving = 0; halving < 60; ++halving) {
      std::vector<double> trial = params;
      for (int v = 0; v < nv; ++v) trial[v] += alpha * step(v);
      auto next = eval(trial);
      if (next && next->first >= value + 1e-4 * alpha * slope - noise) {
        params = std::move(trial);
        state = std::move(next);
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) break;  // line search exhausted; report the best iterate
  }

  fit.t = params;
  fit.sigma = sigma_from_params(t, params);
  fit.k = state->second;
  fit.objective = state->first;
  fit.iterations = iter;
  {
    const Eigen::MatrixXd diff = state->second - s.s_inv;
    double res = 0.0;
    for (int v = 0; v < nv; ++v) {
      // one contribution per unordered pair: half the symmetric class sum
      const double class_sum = (diff.cwiseProduct(indicators[v])).sum();
      const double once = t.is_leaf(v + 1) ? class_sum : 0.5 * class_sum;
      res = std::max(res, std::abs(once));
    }
    fit.residual = res;
  }
  return fit;
}

double stationarity_residual(const RootedTree& t, const ModelFit& fit,
                             const SampleCovariance& s) {
  const int n = t.max_leaf();
  const int nv = t.vertex_count() - 1;
  const Eigen::MatrixXd diff = fit.k - s.s_inv;

  double trace_form = 0.0;
  for (int v = 1; v <= nv; ++v) {
    const double class_sum = (diff.cwiseProduct(class_indicator(t, v))).sum();
    trace_form = std::max(trace_form, std::abs(t.is_leaf(v) ? class_sum : 0.5 * class_sum));
  }

  // same system in pair coordinates: rows of the design matrix applied to
  // p(K) - p(S^{-1})
  auto p_of = [&](const Eigen::MatrixXd& k) {
    PairTable pt(n);
    std::vector<double> p(pt.count(), 0.0);
    for (int i = 1; i <= n; ++i) {
      p[pt.index(0, i)] = k.row(i - 1).sum();
      for (int j = i + 1; j <= n; ++j) p[pt.index(i, j)] = -k(i - 1, j - 1);
    }
    return p;
  };
  const auto pk = p_of(fit.k);
  const auto pw = p_of(s.s_inv);
  const IntMat a = design_matrix(t);
  double pair_form = 0.0;
  for (int r = 0; r < a.rows; ++r) {
    double acc = 0.0;
    for (int c = 0; c < a.cols; ++c)
      if (a.at(r, c) != 0) acc += a.at(r, c).get_d() * (pk[c] - pw[c]);
    pair_form = std::max(pair_form, std::abs(acc));
  }

  if (std::abs(trace_form - pair_form) > 1e-9)
    throw std::logic_error("stationarity residual mismatch between coordinate systems");
  return trace_form;
}

nlohmann::json ModelFit::to_json() const {
  nlohmann::json j;
  j["t"] = t;
  nlohmann::json rows = nlohmann::json::array();
  for (int r = 0; r < sigma.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (int c = 0; c < sigma.cols(); ++c) row.push_back(sigma(r, c));
    rows.push_back(std::move(row));
  }
  j["sigma"] = std::move(rows);
  j["objective"] = objective;
  j["residual"] = residual;
  j["iterations"] = iterations;
  j["converged"] = converged;
  return j;
}

}  // namespace bmt
