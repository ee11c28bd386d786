#pragma once

#include <Eigen/Core>
#include <utility>
#include <vector>

#include "ridgelab/solver.hpp"

namespace ridgelab {

/// Constants entering the finite-sample radii and probability bounds.
/// The absolute constants (c_abs, c_kx, c_kx_small) default to 1; the lab's
/// calibrate experiment fits them empirically.
struct BoundParams {
  double c_abs = 1.0;       // C
  double c_kx = 1.0;        // C_{K_X}
  double c_kx_small = 1.0;  // c_{K_X}
  double k_x = 1.0;         // sub-Gaussian proxy of the design rows
  double k_eps = 1.0;       // sub-Gaussian proxy of the noise
  double alpha = 0.5;       // in (0,1)
  double delta = 1.0;       // curvature lower bound
  double c_lsecond = 1.0;   // bound on l''
  double c_fprime = 1.0;    // bound on f'
};

void validate(const BoundParams& bp);

/// Error radius:
///   under: 6 sqrt(C) C_l'' C_f' K_eps / delta * sqrt(p) / ((1-a) sqrt(n) - C_KX sqrt(p))
///   over:  same with the roles of n and p swapped.
/// Throws if the regime condition (positive denominator) fails.
double radius(Regime regime, const BoundParams& bp, Eigen::Index n, Eigen::Index p);

bool regime_condition_holds(Regime regime, const BoundParams& bp, Eigen::Index n,
                            Eigen::Index p);

/// 1 - 2 exp(-c_KX a^2 n) - exp(-p/2) (under), n and p swapped (over).
/// May be negative; callers clamp at zero for reporting.
double success_probability(Regime regime, const BoundParams& bp, Eigen::Index n,
                           Eigen::Index p);

enum class Orientation { rows, columns };

/// Smallest-singular-value bound (1-a) sqrt(major) - c_kx sqrt(minor);
/// negative values mean the bound is vacuous.
double smin_bound(Orientation o, double alpha, double c_kx, Eigen::Index n, Eigen::Index p);

/// (s_min, s_max) over the smaller dimension of x.
std::pair<double, double> extreme_singulars(const Eigen::MatrixXd& x);

struct CouponMoments {
  double mean = 0.0;           // E[N], exact inclusion-exclusion
  double second_moment = 0.0;  // 2 * alternating sum of 1/p_S^2 = E[N(N+1)]
};

// Exact enumeration cap: 2^24 subsets.
inline constexpr int kCouponExactCap = 24;

/// Exact inclusion-exclusion over all nonempty subsets of coupons.
/// probs must be positive and sum to 1 within 1e-10; K <= kCouponExactCap.
CouponMoments coupon_moments(const std::vector<double>& probs);

/// p_min^-1 * sum_k C(K,k)/k  (upper bound on the mean).
double coupon_mean_bound(int k_count, double p_min);
/// 2 p_min^-2 * sum_k C(K,k)/k^2  (upper bound on the second moment).
double coupon_second_moment_bound(int k_count, double p_min);

/// Sample-size threshold p_min^-1 (sum C(N,k)/k + t sqrt(2 sum C(N,k)/k^2)).
/// Binomial sums are evaluated in extended precision; n_cover > 60 overflows.
double coupon_sample_threshold(int n_cover, double p_min, double t);

struct CoverReport {
  std::vector<Eigen::VectorXd> centers;
  int n_cover = 0;
  double cover_eps = 0.0;  // ball radius in units of sqrt(p)
  double p_min_hat = 0.0;
  std::vector<int> assignments;  // center index per input point
};

/// Greedy net over the rows of points: a point farther than radius*sqrt(p)
/// from every current center becomes a center; every point is then assigned
/// to its nearest center.
CoverReport epsilon_cover(const Eigen::MatrixXd& points, double radius);

/// (1 + 4 eps) * radius(over) + 4 eps * ||theta*||.
double generalization_bound(const BoundParams& bp, Eigen::Index n, Eigen::Index p,
                            double cover_eps, double theta_star_norm);

}  // namespace ridgelab
