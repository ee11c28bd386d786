#include "ridgelab/risk.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "ridgelab/numeric.hpp"

namespace ridgelab {

namespace {

void check_dims(const RiskContext& ctx, const Eigen::VectorXd& theta) {
  if (ctx.data == nullptr) throw std::invalid_argument("risk: context has no dataset");
  if (theta.size() != ctx.p())
    throw std::invalid_argument("risk: theta length does not match p");
}

}  // namespace

double empirical_risk(const RiskContext& ctx, const Eigen::VectorXd& theta) {
  check_dims(ctx, theta);
  const Eigen::VectorXd z = ctx.x() * theta;
  const Eigen::Index n = ctx.n();
  std::vector<double> losses(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i)
    losses[static_cast<std::size_t>(i)] = ctx.loss.l(ctx.y()(i) - ctx.ridge.f(z(i)));
  return pairwise_mean(losses);
}

Eigen::VectorXd gradient(const RiskContext& ctx, const Eigen::VectorXd& theta) {
  check_dims(ctx, theta);
  const Eigen::VectorXd z = ctx.x() * theta;
  const Eigen::Index n = ctx.n();
  // grad = -(1/n) X^T D(nu) l'(r), with r_i = y_i - f(z_i) and nu_i = f'(z_i).
  Eigen::VectorXd w(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double r = ctx.y()(i) - ctx.ridge.f(z(i));
    w(i) = ctx.loss.dl(r) * ctx.ridge.df(z(i));
  }
  return -(ctx.x().transpose() * w) / static_cast<double>(n);
}

DiagonalWeights diagonal_weights(const RiskContext& ctx, const Eigen::VectorXd& theta) {
  check_dims(ctx, theta);
  const Eigen::VectorXd z = ctx.x() * theta;
  const Eigen::Index n = ctx.n();
  DiagonalWeights w;
  w.mu.resize(n);
  w.nu.resize(n);
  w.lprime.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double r = ctx.y()(i) - ctx.ridge.f(z(i));
    const double fp = ctx.ridge.df(z(i));
    w.lprime(i) = ctx.loss.dl(r);
    w.nu(i) = fp;
    w.mu(i) = ctx.loss.d2l(r) * fp * fp - ctx.loss.dl(r) * ctx.ridge.d2f(z(i));
  }
  return w;
}

HessianFactors hessian(const RiskContext& ctx, const Eigen::VectorXd& theta) {
  DiagonalWeights w = diagonal_weights(ctx, theta);
  HessianFactors out;
  out.mu = std::move(w.mu);
  out.nu = std::move(w.nu);
  const Eigen::Index n = ctx.n();
  if (ctx.p() <= kHessianDenseCap) {
    const Eigen::MatrixXd m =
        (ctx.x().transpose() * out.mu.asDiagonal() * ctx.x()) / static_cast<double>(n);
    // Mirror the upper triangle so symmetry holds bit-exactly.
    out.h = m.selfadjointView<Eigen::Upper>();
  }
  return out;
}

Eigen::VectorXd hessian_apply(const RiskContext& ctx, const HessianFactors& factors,
                              const Eigen::VectorXd& v) {
  if (v.size() != ctx.p())
    throw std::invalid_argument("hessian_apply: vector length does not match p");
  const Eigen::VectorXd xv = ctx.x() * v;
  return (ctx.x().transpose() * factors.mu.cwiseProduct(xv)) / static_cast<double>(ctx.n());
}

MonteCarloEstimate estimate_theoretical_risk(const RidgeFunction& ridge, const LossSpec& loss,
                                             const Eigen::VectorXd& theta,
                                             const Eigen::VectorXd& theta_star,
                                             DesignDist dist, const NoiseSpec& noise,
                                             std::int64_t m, std::uint64_t seed) {
  if (m < 1) throw std::invalid_argument("estimate_theoretical_risk: m must be >= 1");
  if (theta.size() != theta_star.size())
    throw std::invalid_argument("estimate_theoretical_risk: theta/theta_star mismatch");

  const Eigen::Index p = theta.size();
  CounterRng rng(seed);
  std::vector<double> losses(static_cast<std::size_t>(m));
  for (std::int64_t k = 0; k < m; ++k) {
    const Eigen::VectorXd x = sample_design_row(p, dist, rng);
    const double eps = sample_noise(noise, rng);
    const double y = ridge.f(x.dot(theta_star)) + eps;
    losses[static_cast<std::size_t>(k)] = loss.l(y - ridge.f(x.dot(theta)));
  }
  MonteCarloEstimate est;
  est.samples = m;
  est.value = pairwise_mean(losses);
  if (m > 1) {
    std::vector<double> sq(losses.size());
    for (std::size_t i = 0; i < losses.size(); ++i) {
      const double d = losses[i] - est.value;
      sq[i] = d * d;
    }
    const double var = pairwise_sum(sq) / static_cast<double>(m - 1);
    est.std_error = std::sqrt(var / static_cast<double>(m));
  }
  return est;
}

}  // namespace ridgelab
