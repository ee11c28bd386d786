#include "ridgelab/solver.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace ridgelab {

namespace {

constexpr double kRankCutoff = 1e-12;
constexpr double kMuDegenerate = 1e-12;

bool all_entries_equal(const Eigen::VectorXd& v) {
  for (Eigen::Index i = 1; i < v.size(); ++i)
    if (v(i) != v(0)) return false;
  return v.size() > 0;
}

}  // namespace

const char* to_string(Regime r) {
  return r == Regime::under ? "under" : "over";
}

SvdFactors svd_factors(const Eigen::MatrixXd& x) {
  if (x.size() == 0 || x.norm() == 0.0)
    throw std::invalid_argument("svd_factors: matrix is zero");
  Eigen::BDCSVD<Eigen::MatrixXd> svd(x, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success)
    throw std::runtime_error("svd_factors: factorization did not converge");

  SvdFactors out;
  out.u = svd.matrixU();
  out.sigma = svd.singularValues();
  out.v = svd.matrixV();
  const double cutoff = kRankCutoff * out.s_max();
  out.effective_rank = 0;
  for (Eigen::Index i = 0; i < out.sigma.size(); ++i)
    if (out.sigma(i) > cutoff) ++out.effective_rank;
  return out;
}

Eigen::VectorXd neuberger_direction(const RiskContext& ctx, const Eigen::VectorXd& theta,
                                    const SvdFactors& svd, Regime regime) {
  const Eigen::Index n = ctx.n();
  const Eigen::Index p = ctx.p();
  const Eigen::Index k = svd.sigma.size();
  const DiagonalWeights w = diagonal_weights(ctx, theta);
  const Eigen::VectorXd rhs = w.nu.cwiseProduct(w.lprime);  // D(nu) l'(r)

  const double mu_max = w.mu.cwiseAbs().maxCoeff();

  if (regime == Regime::over) {
    // Least-norm solution of D(mu) X d = D(nu) l'(r):
    //   d = V S^-1 U^T D(mu)^-1 D(nu) l'(r).
    if (svd.effective_rank < n)
      throw std::runtime_error("neuberger_direction: X is row rank deficient (rank " +
                               std::to_string(svd.effective_rank) + " < n)");
    for (Eigen::Index i = 0; i < n; ++i) {
      if (std::abs(w.mu(i)) < kMuDegenerate * mu_max)
        throw std::runtime_error(
            "neuberger_direction: Hessian weight mu[" + std::to_string(i) +
            "] = " + std::to_string(w.mu(i)) + " is degenerate (delta condition violated)");
    }
    const Eigen::VectorXd scaled = rhs.cwiseQuotient(w.mu);
    return svd.v * (svd.sigma.cwiseInverse().cwiseProduct(svd.u.transpose() * scaled));
  }

  // Underparametrised: solve (U^T D(mu) U) a = U^T D(nu) l'(r), then
  // d = V S^-1 a, which satisfies hess * d = -grad.
  if (svd.effective_rank < p)
    throw std::runtime_error("neuberger_direction: X is column rank deficient (rank " +
                             std::to_string(svd.effective_rank) + " < p)");
  const Eigen::VectorXd b = svd.u.transpose() * rhs;
  Eigen::VectorXd a(k);
  if (all_entries_equal(w.mu)) {
    // mu is exactly constant (always the case for linear link + quadratic
    // loss), so U^T D(mu) U = mu * I.
    if (std::abs(w.mu(0)) < kMuDegenerate)
      throw std::runtime_error("neuberger_direction: constant mu is degenerate");
    a = b / w.mu(0);
  } else {
    const Eigen::MatrixXd m = svd.u.transpose() * w.mu.asDiagonal() * svd.u;
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(m);
    a = lu.solve(b);
    const double resid = (m * a - b).norm();
    if (!a.allFinite() || resid > 1e-8 * (b.norm() + mu_max * a.norm()))
      throw std::runtime_error(
          "neuberger_direction: U^T D(mu) U is numerically singular "
          "(solve residual " + std::to_string(resid) + ")");
  }
  return svd.v * (svd.sigma.cwiseInverse().cwiseProduct(a));
}

StationaryPoint newton_flow(const RiskContext& ctx, const Eigen::VectorXd& theta_init,
                            const NewtonOptions& opts, Regime regime) {
  return newton_flow(ctx, theta_init, opts, regime, svd_factors(ctx.x()));
}

StationaryPoint newton_flow(const RiskContext& ctx, const Eigen::VectorXd& theta_init,
                            const NewtonOptions& opts, Regime regime, const SvdFactors& svd) {
  if (!theta_init.allFinite())
    throw std::invalid_argument("newton_flow: theta_init has non-finite entries");
  if (!(opts.step > 0.0 && opts.step <= 1.0))
    throw std::invalid_argument("newton_flow: step must lie in (0,1]");
  if (opts.max_iter < 0) throw std::invalid_argument("newton_flow: max_iter must be >= 0");

  double tol = opts.tol;
  if (!(tol > 0.0)) tol = 1e-10 * (1.0 + ctx.y().cwiseAbs().maxCoeff());

  StationaryPoint sp;
  sp.regime = regime;
  sp.theta_hat = theta_init;
  sp.grad_norm = gradient(ctx, sp.theta_hat).norm();
  sp.trace.push_back({0, sp.grad_norm, 0.0});

  while (sp.grad_norm > tol && sp.iterations < opts.max_iter) {
    const Eigen::VectorXd d = neuberger_direction(ctx, sp.theta_hat, svd, regime);
    const Eigen::VectorXd update = opts.step * d;
    sp.theta_hat += update;
    ++sp.iterations;
    sp.grad_norm = gradient(ctx, sp.theta_hat).norm();
    sp.trace.push_back({sp.iterations, sp.grad_norm, update.norm()});
  }
  sp.converged = sp.grad_norm <= tol;
  return sp;
}

Eigen::VectorXd min_norm_projection(const Eigen::MatrixXd& x, const Eigen::VectorXd& theta_hat) {
  if (x.cols() != theta_hat.size())
    throw std::invalid_argument("min_norm_projection: dimension mismatch");
  return min_norm_projection(svd_factors(x), theta_hat);
}

Eigen::VectorXd min_norm_projection(const SvdFactors& svd, const Eigen::VectorXd& theta_hat) {
  if (svd.v.rows() != theta_hat.size())
    throw std::invalid_argument("min_norm_projection: dimension mismatch");
  const auto vr = svd.v.leftCols(svd.effective_rank);
  return vr * (vr.transpose() * theta_hat);
}

Eigen::VectorXd closed_form_linear(const RiskContext& ctx) {
  if (ctx.ridge.kind != RidgeKind::linear || ctx.loss.kind != LossKind::quadratic)
    throw std::invalid_argument("closed_form_linear: requires linear link and quadratic loss");
  const SvdFactors svd = svd_factors(ctx.x());
  const Eigen::Index r = svd.effective_rank;
  // X^+ y; equals (X^T X)^-1 X^T y when n > p with full column rank.
  const Eigen::VectorXd uty = svd.u.leftCols(r).transpose() * ctx.y();
  return svd.v.leftCols(r) * uty.cwiseQuotient(svd.sigma.head(r));
}

void write_trace_csv(std::ostream& os, const std::vector<TraceRow>& trace) {
  os << "iteration,grad_norm,step_norm\n";
  char buf[80];
  for (const TraceRow& row : trace) {
    std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g\n", row.iteration, row.grad_norm,
                  row.step_norm);
    os << buf;
  }
}

}  // namespace ridgelab
