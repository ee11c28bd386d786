#pragma once

#include <Eigen/Core>
#include <ostream>
#include <vector>

#include "ridgelab/risk.hpp"

namespace ridgelab {

enum class Regime { under, over };
const char* to_string(Regime r);

/// Compact SVD X = U S V^T with k = min(n,p) columns and an effective-rank
/// cutoff at 1e-12 * sigma_1.
struct SvdFactors {
  Eigen::MatrixXd u;      // n x k
  Eigen::VectorXd sigma;  // k, descending
  Eigen::MatrixXd v;      // p x k
  Eigen::Index effective_rank = 0;

  double s_max() const { return sigma.size() ? sigma(0) : 0.0; }
  double s_min() const { return sigma.size() ? sigma(sigma.size() - 1) : 0.0; }
};

SvdFactors svd_factors(const Eigen::MatrixXd& x);

/// One Newton-flow direction d at theta.
///   under: solves hess(theta) d = -grad(theta) through the SVD factors;
///   over:  least-norm solution of D(mu) X d = D(nu) l'(r), which lies in
///          the row space of X.
Eigen::VectorXd neuberger_direction(const RiskContext& ctx, const Eigen::VectorXd& theta,
                                    const SvdFactors& svd, Regime regime);

struct TraceRow {
  int iteration = 0;
  double grad_norm = 0.0;
  double step_norm = 0.0;
};

struct NewtonOptions {
  double step = 0.5;
  int max_iter = 200;
  double tol = -1.0;  // <= 0 means auto: 1e-10 * (1 + max|y_i|)
};

struct StationaryPoint {
  Eigen::VectorXd theta_hat;
  double grad_norm = 0.0;
  int iterations = 0;
  Regime regime = Regime::under;
  bool converged = false;
  std::vector<TraceRow> trace;
};

/// Damped continuous-Newton integration theta <- theta + step * d(theta).
/// Non-convergence within max_iter is reported in the result, not thrown;
/// singular direction solves abort with diagnostics.
StationaryPoint newton_flow(const RiskContext& ctx, const Eigen::VectorXd& theta_init,
                            const NewtonOptions& opts, Regime regime);
/// Same with precomputed factors of ctx.x().
StationaryPoint newton_flow(const RiskContext& ctx, const Eigen::VectorXd& theta_init,
                            const NewtonOptions& opts, Regime regime, const SvdFactors& svd);

/// Orthogonal projection of theta_hat onto the row space of x: the minimum
/// norm solution of X theta = X theta_hat.
Eigen::VectorXd min_norm_projection(const Eigen::MatrixXd& x, const Eigen::VectorXd& theta_hat);
Eigen::VectorXd min_norm_projection(const SvdFactors& svd, const Eigen::VectorXd& theta_hat);

/// Closed-form solution for the linear link / quadratic loss pair: OLS when
/// n > p, the minimum-norm interpolator X^+ y when p >= n.
Eigen::VectorXd closed_form_linear(const RiskContext& ctx);

void write_trace_csv(std::ostream& os, const std::vector<TraceRow>& trace);

}  // namespace ridgelab
