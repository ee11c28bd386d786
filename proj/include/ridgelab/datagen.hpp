#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>

#include "ridgelab/model.hpp"
#include "ridgelab/rng.hpp"

namespace ridgelab {

enum class DesignDist { rademacher, sphere_uniform };
enum class NoiseKind { gaussian, bounded_uniform, zero };

const char* to_string(DesignDist d);
const char* to_string(NoiseKind k);
DesignDist design_dist_from_string(const std::string& s);
NoiseKind noise_kind_from_string(const std::string& s);

/// Noise distribution: gaussian(scale) = N(0, scale^2),
/// bounded_uniform(scale) = U(-scale, scale), zero ignores scale.
struct NoiseSpec {
  NoiseKind kind = NoiseKind::gaussian;
  double scale = 1.0;
};

/// Sub-Gaussian proxy K_eps used by the bound formulas.
double noise_keps(const NoiseSpec& spec);

/// n x p design with i.i.d. isotropic rows of Euclidean norm sqrt(p).
struct Design {
  Eigen::MatrixXd x;
  DesignDist dist_kind = DesignDist::rademacher;
  std::uint64_t seed = 0;

  Eigen::Index n() const { return x.rows(); }
  Eigen::Index p() const { return x.cols(); }
};

struct Dataset {
  Design design;
  Eigen::VectorXd y;
  Eigen::VectorXd noise;
  Eigen::VectorXd theta_star;
  RidgeFunction ridge;
  NoiseSpec noise_spec;

  Eigen::Index n() const { return design.n(); }
  Eigen::Index p() const { return design.p(); }
};

// Entry cap for n*p; guards against accidental huge allocations.
inline constexpr std::int64_t kMaxDesignEntries = std::int64_t{1} << 26;

Design sample_design(Eigen::Index n, Eigen::Index p, DesignDist dist, std::uint64_t seed);

/// One fresh row from the design distribution (used for prediction draws
/// and Monte Carlo risk estimates).
Eigen::VectorXd sample_design_row(Eigen::Index p, DesignDist dist, CounterRng& rng);

/// One noise draw.
double sample_noise(const NoiseSpec& spec, CounterRng& rng);

Eigen::VectorXd sample_theta_star(Eigen::Index p, double target_norm, std::uint64_t seed);

Dataset synthesize(const Design& design, const Eigen::VectorXd& theta_star,
                   const RidgeFunction& ridge, const NoiseSpec& noise, std::uint64_t seed);

/// Numerical rank of the design via column-pivoted QR.
Eigen::Index design_rank(const Design& design);

/// CSV dump: header j0..j{p-1},y,eps plus a JSON metadata sidecar.
void dump_dataset_csv(const Dataset& ds, const std::string& csv_path,
                      const std::string& meta_path);
Dataset load_dataset_csv(const std::string& csv_path, const std::string& meta_path);

}  // namespace ridgelab
