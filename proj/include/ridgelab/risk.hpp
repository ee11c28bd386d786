#pragma once

#include <Eigen/Core>
#include <cstdint>

#include "ridgelab/datagen.hpp"
#include "ridgelab/model.hpp"

namespace ridgelab {

/// Bundles the data with the link/loss pair under which the empirical risk
/// is evaluated.  The link may differ from the one that generated the data.
struct RiskContext {
  const Dataset* data = nullptr;
  RidgeFunction ridge;
  LossSpec loss;

  RiskContext() = default;
  RiskContext(const Dataset& d, RidgeFunction r, LossSpec l)
      : data(&d), ridge(std::move(r)), loss(std::move(l)) {}
  /// Evaluate under the link that generated the data.
  RiskContext(const Dataset& d, LossSpec l)
      : data(&d), ridge(d.ridge), loss(std::move(l)) {}

  Eigen::Index n() const { return data->n(); }
  Eigen::Index p() const { return data->p(); }
  const Eigen::MatrixXd& x() const { return data->design.x; }
  const Eigen::VectorXd& y() const { return data->y; }
};

// Hessian cap: above this p only the diagonal weights and matrix-free
// products are available.
inline constexpr Eigen::Index kHessianDenseCap = 4096;

/// Factored Hessian (1/n) X^T D(mu) X with the gradient weights nu kept
/// alongside.  mu_i = l''(r_i) f'(z_i)^2 - l'(r_i) f''(z_i), nu_i = f'(z_i).
struct HessianFactors {
  Eigen::VectorXd mu;
  Eigen::VectorXd nu;
  Eigen::MatrixXd h;  // empty when p exceeds kHessianDenseCap

  bool has_dense() const { return h.size() > 0; }
};

double empirical_risk(const RiskContext& ctx, const Eigen::VectorXd& theta);

Eigen::VectorXd gradient(const RiskContext& ctx, const Eigen::VectorXd& theta);

HessianFactors hessian(const RiskContext& ctx, const Eigen::VectorXd& theta);

/// (1/n) X^T D(mu) (X v) without materializing the dense Hessian.
Eigen::VectorXd hessian_apply(const RiskContext& ctx, const HessianFactors& factors,
                              const Eigen::VectorXd& v);

/// Per-observation weights at theta, shared by the gradient/Hessian factored
/// forms: lprime_i = l'(r_i), nu_i = f'(z_i), mu_i as in HessianFactors.
struct DiagonalWeights {
  Eigen::VectorXd mu;
  Eigen::VectorXd nu;
  Eigen::VectorXd lprime;
};

DiagonalWeights diagonal_weights(const RiskContext& ctx, const Eigen::VectorXd& theta);

struct MonteCarloEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::int64_t samples = 0;
};

/// Fresh-sample Monte Carlo estimate of R(theta) = E[l(Y - f(X^t theta))].
MonteCarloEstimate estimate_theoretical_risk(const RidgeFunction& ridge, const LossSpec& loss,
                                             const Eigen::VectorXd& theta,
                                             const Eigen::VectorXd& theta_star,
                                             DesignDist dist, const NoiseSpec& noise,
                                             std::int64_t m, std::uint64_t seed);

}  // namespace ridgelab
