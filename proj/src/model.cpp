#include "ridgelab/model.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "ridgelab/numeric.hpp"

namespace ridgelab {

const char* to_string(RidgeKind k) {
  switch (k) {
    case RidgeKind::linear: return "linear";
    case RidgeKind::tanh_tilt: return "tanh_tilt";
    case RidgeKind::scaled_softsign: return "scaled_softsign";
  }
  return "?";
}

const char* to_string(LossKind k) {
  switch (k) {
    case LossKind::quadratic: return "quadratic";
    case LossKind::pseudo_huber: return "pseudo_huber";
  }
  return "?";
}

RidgeKind ridge_kind_from_string(const std::string& s) {
  if (s == "linear") return RidgeKind::linear;
  if (s == "tanh_tilt") return RidgeKind::tanh_tilt;
  if (s == "scaled_softsign") return RidgeKind::scaled_softsign;
  throw std::invalid_argument("unknown ridge kind: " + s);
}

LossKind loss_kind_from_string(const std::string& s) {
  if (s == "quadratic") return LossKind::quadratic;
  if (s == "pseudo_huber") return LossKind::pseudo_huber;
  throw std::invalid_argument("unknown loss kind: " + s);
}

RidgeFunction make_ridge_function(RidgeKind kind, double param) {
  RidgeFunction r;
  r.kind = kind;
  r.param = param;
  switch (kind) {
    case RidgeKind::linear:
      r.f = [](double z) { return z; };
      r.df = [](double) { return 1.0; };
      r.d2f = [](double) { return 0.0; };
      r.c_fprime = 1.0;
      return r;
    case RidgeKind::tanh_tilt: {
      if (!(param >= 0.0 && param < 1.0))
        throw std::domain_error("tanh_tilt: tilt weight must lie in [0,1)");
      const double a = param;
      r.f = [a](double z) { return z + a * std::tanh(z); };
      // f' = 1 + a*sech^2, so f' in [1, 1+a] and the sup is at z = 0.
      r.df = [a](double z) {
        const double t = std::tanh(z);
        return 1.0 + a * (1.0 - t * t);
      };
      r.d2f = [a](double z) {
        const double t = std::tanh(z);
        return -2.0 * a * t * (1.0 - t * t);
      };
      r.c_fprime = 1.0 + a;
      return r;
    }
    case RidgeKind::scaled_softsign: {
      if (!(param >= 0.0 && param < 1.0))
        throw std::domain_error("scaled_softsign: tilt weight must lie in [0,1)");
      // Smooth softsign s(z) = z / sqrt(1+z^2); twice differentiable
      // everywhere, unlike z / (1+|z|).
      const double a = param;
      r.f = [a](double z) { return z + a * z / std::sqrt(1.0 + z * z); };
      r.df = [a](double z) {
        const double q = 1.0 + z * z;
        return 1.0 + a / (q * std::sqrt(q));
      };
      r.d2f = [a](double z) {
        const double q = 1.0 + z * z;
        return -3.0 * a * z / (q * q * std::sqrt(q));
      };
      r.c_fprime = 1.0 + a;
      return r;
    }
  }
  throw std::logic_error("unreachable ridge kind");
}

LossSpec make_loss(LossKind kind, double param) {
  LossSpec l;
  l.kind = kind;
  l.param = param;
  switch (kind) {
    case LossKind::quadratic:
      l.l = [](double z) { return 0.5 * z * z; };
      l.dl = [](double z) { return z; };
      l.d2l = [](double) { return 1.0; };
      l.c_lsecond = 1.0;
      return l;
    case LossKind::pseudo_huber: {
      if (!(param > 0.0))
        throw std::domain_error("pseudo_huber: scale must be positive");
      const double c = param;
      l.l = [c](double z) {
        const double u = z / c;
        return c * c * (std::sqrt(1.0 + u * u) - 1.0);
      };
      l.dl = [c](double z) {
        const double u = z / c;
        return z / std::sqrt(1.0 + u * u);
      };
      l.d2l = [c](double z) {
        const double u = z / c;
        const double q = 1.0 + u * u;
        return 1.0 / (q * std::sqrt(q));
      };
      l.c_lsecond = 1.0;
      return l;
    }
  }
  throw std::logic_error("unreachable loss kind");
}

RegularityReport check_regularity(const RidgeFunction& f, const LossSpec& loss,
                                  Interval z_range, Interval w_range, int grid) {
  if (grid < 2) throw std::invalid_argument("check_regularity: grid must be >= 2");
  if (!(z_range.lo <= z_range.hi) || !(w_range.lo <= w_range.hi))
    throw std::invalid_argument("check_regularity: empty range");

  const auto zs = linspace(z_range.lo, z_range.hi, grid);
  const auto ws = linspace(w_range.lo, w_range.hi, grid);

  RegularityReport rep;
  rep.grid_size = grid;
  rep.z_range = z_range;
  rep.w_range = w_range;
  rep.delta_hat = std::numeric_limits<double>::infinity();
  rep.c_fprime_hat = -std::numeric_limits<double>::infinity();
  rep.c_lsecond_hat = -std::numeric_limits<double>::infinity();

  for (double z : zs) {
    const double fp = f.df(z);
    const double fpp = f.d2f(z);
    rep.c_fprime_hat = std::max(rep.c_fprime_hat, fp);
    for (double w : ws) {
      const double cur = std::abs(loss.d2l(w) * fp * fp - loss.dl(w) * fpp);
      rep.delta_hat = std::min(rep.delta_hat, cur);
    }
  }
  for (double w : ws) rep.c_lsecond_hat = std::max(rep.c_lsecond_hat, loss.d2l(w));
  return rep;
}

}  // namespace ridgelab
