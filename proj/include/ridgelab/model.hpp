#pragma once

#include <functional>
#include <string>

namespace ridgelab {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

enum class RidgeKind { linear, tanh_tilt, scaled_softsign };
enum class LossKind { quadratic, pseudo_huber };

const char* to_string(RidgeKind k);
const char* to_string(LossKind k);
RidgeKind ridge_kind_from_string(const std::string& s);
LossKind loss_kind_from_string(const std::string& s);

/// Increasing scalar link z -> f(z) with exact first and second derivatives
/// and the analytic supremum of f' (the C_f' constant).
struct RidgeFunction {
  RidgeKind kind = RidgeKind::linear;
  double param = 0.0;
  std::function<double(double)> f;
  std::function<double(double)> df;
  std::function<double(double)> d2f;
  double c_fprime = 1.0;
};

/// Loss z -> l(z) with l'(0) = 0 and 0 < l'' <= c_lsecond.
struct LossSpec {
  LossKind kind = LossKind::quadratic;
  double param = 0.0;
  std::function<double(double)> l;
  std::function<double(double)> dl;
  std::function<double(double)> d2l;
  double c_lsecond = 1.0;
};

/// Grid estimates of the regularity constants entering the error radii:
/// delta_hat lower-bounds |l''(w) f'(z)^2 - l'(w) f''(z)| over the rectangle.
struct RegularityReport {
  double c_fprime_hat = 0.0;
  double c_lsecond_hat = 0.0;
  double delta_hat = 0.0;
  int grid_size = 0;
  Interval z_range;
  Interval w_range;
};

/// param is the tilt weight for tanh_tilt / scaled_softsign, required in
/// [0,1); ignored for linear.
RidgeFunction make_ridge_function(RidgeKind kind, double param);

/// param is the pseudo-Huber scale (must be > 0); ignored for quadratic.
LossSpec make_loss(LossKind kind, double param);

/// Brute-force minimization of the curvature expression on a grid x grid
/// lattice over z_range x w_range.
RegularityReport check_regularity(const RidgeFunction& f, const LossSpec& loss,
                                  Interval z_range, Interval w_range, int grid);

}  // namespace ridgelab
