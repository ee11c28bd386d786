#include "ridgelab/bounds.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace ridgelab {

namespace {

double prefactor(const BoundParams& bp) {
  return 6.0 * std::sqrt(bp.c_abs) * bp.c_lsecond * bp.c_fprime * bp.k_eps / bp.delta;
}

// major is the concentration dimension ((1-a)sqrt(major) - c sqrt(minor)).
void split_dims(Regime regime, Eigen::Index n, Eigen::Index p, double& major, double& minor) {
  if (regime == Regime::under) {
    major = static_cast<double>(n);
    minor = static_cast<double>(p);
  } else {
    major = static_cast<double>(p);
    minor = static_cast<double>(n);
  }
}

long double binom_sum(int k_count, int power) {
  // sum_k C(K,k)/k^power with exact integer binomials in extended precision.
  long double c = 1.0L;  // C(K,0)
  long double s = 0.0L;
  for (int k = 1; k <= k_count; ++k) {
    c = c * static_cast<long double>(k_count - k + 1) / static_cast<long double>(k);
    long double denom = static_cast<long double>(k);
    if (power == 2) denom *= static_cast<long double>(k);
    s += c / denom;
  }
  return s;
}

void coupon_dfs(const std::vector<double>& probs, std::size_t idx, int count, double psum,
                double& s1, double& s2) {
  if (idx == probs.size()) {
    if (count == 0) return;
    const double sign = (count % 2 == 1) ? 1.0 : -1.0;
    s1 += sign / psum;
    s2 += sign / (psum * psum);
    return;
  }
  coupon_dfs(probs, idx + 1, count, psum, s1, s2);
  coupon_dfs(probs, idx + 1, count + 1, psum + probs[idx], s1, s2);
}

}  // namespace

void validate(const BoundParams& bp) {
  if (!(bp.c_abs > 0 && bp.c_kx > 0 && bp.c_kx_small > 0 && bp.k_x > 0 && bp.k_eps > 0 &&
        bp.delta > 0 && bp.c_lsecond > 0 && bp.c_fprime > 0))
    throw std::invalid_argument("BoundParams: all constants must be strictly positive");
  if (!(bp.alpha > 0.0 && bp.alpha < 1.0))
    throw std::invalid_argument("BoundParams: alpha must lie in (0,1)");
}

bool regime_condition_holds(Regime regime, const BoundParams& bp, Eigen::Index n,
                            Eigen::Index p) {
  double major = 0, minor = 0;
  split_dims(regime, n, p, major, minor);
  return bp.c_kx * bp.c_kx * minor < (1.0 - bp.alpha) * (1.0 - bp.alpha) * major;
}

double radius(Regime regime, const BoundParams& bp, Eigen::Index n, Eigen::Index p) {
  validate(bp);
  double major = 0, minor = 0;
  split_dims(regime, n, p, major, minor);
  if (!regime_condition_holds(regime, bp, n, p)) {
    std::ostringstream oss;
    oss << "radius: regime condition failed (" << to_string(regime)
        << "): c_kx^2 * " << minor << " = " << bp.c_kx * bp.c_kx * minor
        << " >= (1-alpha)^2 * " << major << " = "
        << (1.0 - bp.alpha) * (1.0 - bp.alpha) * major;
    throw std::domain_error(oss.str());
  }
  const double denom = (1.0 - bp.alpha) * std::sqrt(major) - bp.c_kx * std::sqrt(minor);
  return prefactor(bp) * std::sqrt(minor) / denom;
}

double success_probability(Regime regime, const BoundParams& bp, Eigen::Index n,
                           Eigen::Index p) {
  validate(bp);
  double major = 0, minor = 0;
  split_dims(regime, n, p, major, minor);
  return 1.0 - 2.0 * std::exp(-bp.c_kx_small * bp.alpha * bp.alpha * major) -
         std::exp(-minor / 2.0);
}

double smin_bound(Orientation o, double alpha, double c_kx, Eigen::Index n, Eigen::Index p) {
  const double major = (o == Orientation::rows) ? static_cast<double>(n) : static_cast<double>(p);
  const double minor = (o == Orientation::rows) ? static_cast<double>(p) : static_cast<double>(n);
  return (1.0 - alpha) * std::sqrt(major) - c_kx * std::sqrt(minor);
}

std::pair<double, double> extreme_singulars(const Eigen::MatrixXd& x) {
  if (x.size() == 0 || x.norm() == 0.0)
    throw std::invalid_argument("extreme_singulars: matrix is zero");
  Eigen::BDCSVD<Eigen::MatrixXd> svd(x);
  if (svd.info() != Eigen::Success)
    throw std::runtime_error("extreme_singulars: factorization did not converge");
  const auto& s = svd.singularValues();
  return {s(s.size() - 1), s(0)};
}

CouponMoments coupon_moments(const std::vector<double>& probs) {
  const int k_count = static_cast<int>(probs.size());
  if (k_count < 1) throw std::invalid_argument("coupon_moments: empty probability vector");
  if (k_count > kCouponExactCap)
    throw std::invalid_argument(
        "coupon_moments: K > 24 exceeds the exact enumeration cap; use "
        "coupon_sample_threshold's bound form instead");
  double total = 0.0;
  for (double q : probs) {
    if (!(q > 0.0)) throw std::invalid_argument("coupon_moments: probabilities must be positive");
    total += q;
  }
  if (std::abs(total - 1.0) > 1e-10)
    throw std::invalid_argument("coupon_moments: probabilities must sum to 1");

  CouponMoments m;
  double s1 = 0.0, s2 = 0.0;
  coupon_dfs(probs, 0, 0, 0.0, s1, s2);
  m.mean = s1;
  m.second_moment = 2.0 * s2;
  return m;
}

double coupon_mean_bound(int k_count, double p_min) {
  if (k_count < 1 || k_count > 60)
    throw std::overflow_error("coupon_mean_bound: K outside [1,60]");
  if (!(p_min > 0.0 && p_min <= 1.0))
    throw std::invalid_argument("coupon_mean_bound: p_min outside (0,1]");
  return static_cast<double>(binom_sum(k_count, 1) / static_cast<long double>(p_min));
}

double coupon_second_moment_bound(int k_count, double p_min) {
  if (k_count < 1 || k_count > 60)
    throw std::overflow_error("coupon_second_moment_bound: K outside [1,60]");
  if (!(p_min > 0.0 && p_min <= 1.0))
    throw std::invalid_argument("coupon_second_moment_bound: p_min outside (0,1]");
  const long double pm = static_cast<long double>(p_min);
  return static_cast<double>(2.0L * binom_sum(k_count, 2) / (pm * pm));
}

double coupon_sample_threshold(int n_cover, double p_min, double t) {
  if (n_cover < 1) throw std::invalid_argument("coupon_sample_threshold: n_cover must be >= 1");
  if (n_cover > 60)
    throw std::overflow_error(
        "coupon_sample_threshold: binomial sums overflow for n_cover > 60");
  if (!(p_min > 0.0 && p_min <= 1.0))
    throw std::invalid_argument("coupon_sample_threshold: p_min outside (0,1]");
  if (t < 0.0) throw std::invalid_argument("coupon_sample_threshold: t must be >= 0");
  const long double s1 = binom_sum(n_cover, 1);
  const long double s2 = binom_sum(n_cover, 2);
  const long double rhs = (s1 + static_cast<long double>(t) * sqrtl(2.0L * s2)) /
                          static_cast<long double>(p_min);
  return static_cast<double>(rhs);
}

CoverReport epsilon_cover(const Eigen::MatrixXd& points, double radius) {
  if (points.rows() == 0) throw std::invalid_argument("epsilon_cover: no points");
  if (!(radius > 0.0)) throw std::invalid_argument("epsilon_cover: radius must be positive");

  const Eigen::Index m = points.rows();
  const double ball = radius * std::sqrt(static_cast<double>(points.cols()));

  CoverReport rep;
  rep.cover_eps = radius;
  std::vector<Eigen::Index> center_rows;
  for (Eigen::Index i = 0; i < m; ++i) {
    bool covered = false;
    for (Eigen::Index c : center_rows) {
      if ((points.row(i) - points.row(c)).norm() <= ball) {
        covered = true;
        break;
      }
    }
    if (!covered) center_rows.push_back(i);
  }
  rep.n_cover = static_cast<int>(center_rows.size());
  rep.centers.reserve(center_rows.size());
  for (Eigen::Index c : center_rows) rep.centers.push_back(points.row(c).transpose());

  rep.assignments.resize(static_cast<std::size_t>(m));
  std::vector<Eigen::Index> counts(center_rows.size(), 0);
  for (Eigen::Index i = 0; i < m; ++i) {
    int best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < center_rows.size(); ++c) {
      const double d = (points.row(i) - points.row(center_rows[c])).norm();
      if (d < best_d) {
        best_d = d;
        best = static_cast<int>(c);
      }
    }
    rep.assignments[static_cast<std::size_t>(i)] = best;
    ++counts[static_cast<std::size_t>(best)];
  }
  Eigen::Index min_count = m;
  for (Eigen::Index c : counts) min_count = std::min(min_count, c);
  rep.p_min_hat = static_cast<double>(min_count) / static_cast<double>(m);
  return rep;
}

double generalization_bound(const BoundParams& bp, Eigen::Index n, Eigen::Index p,
                            double cover_eps, double theta_star_norm) {
  if (cover_eps < 0.0)
    throw std::invalid_argument("generalization_bound: cover_eps must be >= 0");
  if (theta_star_norm < 0.0)
    throw std::invalid_argument("generalization_bound: theta_star_norm must be >= 0");
  const double r = radius(Regime::over, bp, n, p);
  return (1.0 + 4.0 * cover_eps) * r + 4.0 * cover_eps * theta_star_norm;
}

}  // namespace ridgelab
