#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "ridgelab/bounds.hpp"
#include "ridgelab/datagen.hpp"
#include "ridgelab/solver.hpp"

namespace ridgelab {

// CLI exit code 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// CLI exit code 3.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Experiment { sweep, rmt, coupon, generalization, calibrate };
const char* to_string(Experiment e);
Experiment experiment_from_string(const std::string& s);

struct ExperimentConfig {
  Experiment experiment = Experiment::sweep;
  Eigen::Index n = 100;
  std::vector<Eigen::Index> p_grid;
  int trials = 1;
  RidgeKind ridge_kind = RidgeKind::linear;
  double ridge_param = 0.0;
  LossKind loss_kind = LossKind::quadratic;
  double loss_param = 1.0;
  DesignDist dist_kind = DesignDist::rademacher;
  NoiseKind noise_kind = NoiseKind::gaussian;
  double noise_scale = 1.0;
  double theta_star_norm = 1.0;
  BoundParams bp;                // k_eps auto-filled from the noise unless set
  std::uint64_t master_seed = 1;
  std::string output_path = "out";
  int threads = 1;

  // Solver and experiment extensions (all optional in the config file).
  std::string init = "warm";     // warm: start at theta*; cold: start at 0
  double step = 0.5;
  int max_iter = 200;
  double cover_eps = 0.25;
  std::vector<std::vector<double>> coupon_probs;  // default: uniform K in {1,2,3,5}
  double coupon_t = 2.0;
  std::int64_t mc_runs = 100000;
  std::int64_t risk_mc_samples = 2000;
  double prefactor_margin = 1.25;

  RidgeFunction make_ridge() const { return make_ridge_function(ridge_kind, ridge_param); }
  LossSpec make_loss_spec() const { return make_loss(loss_kind, loss_param); }
  NoiseSpec make_noise() const { return {noise_kind, noise_scale}; }
};

/// Parse and validate a config; unknown keys are rejected.
ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config_file(const std::string& path);
nlohmann::json config_to_json(const ExperimentConfig& cfg);

struct TrialRecord {
  Eigen::Index p = 0;
  int trial = 0;
  Regime regime = Regime::under;
  bool regime_ok = false;  // bound's regime condition held
  double est_error = 0.0;  // ||theta_hat - theta*||
  double pred_error = 0.0; // |x_fresh . (theta_sharp - theta*)| / sqrt(p)
  double risk_gap = 0.0;   // Monte Carlo R(theta_hat) - R(theta*)
  double r_theory = 0.0;   // NaN when the regime condition fails
  bool inside_ball = false;
  double s_min = 0.0;
  double s_max = 0.0;
  bool converged = false;
  int iterations = 0;
  double wall_ms = 0.0;    // in-memory only; never serialized
};

struct RmtRecord {
  Eigen::Index n = 0;
  Eigen::Index p = 0;
  int trial = 0;
  double s_min = 0.0;
  double s_max = 0.0;
};

struct CouponRecord {
  int k_count = 0;
  double p_min = 0.0;
  double mean_exact = 0.0;
  double second_exact = 0.0;  // exact E[N(N+1)] display
  double mean_bound = 0.0;
  double second_bound = 0.0;
  double threshold = 0.0;     // Chebyshev sample-size threshold at t
  double mc_mean = 0.0;       // Monte Carlo E[N]
  double mc_second = 0.0;     // Monte Carlo E[N(N+1)]
  double exceed_freq = 0.0;   // frequency of N >= threshold
  double cheb_limit = 0.0;    // 1/t^2
};

struct GenRecord {
  Eigen::Index p = 0;
  int trial = 0;
  bool regime_ok = false;
  double pred_error = 0.0;
  double bound = 0.0;
  bool within = false;
};

struct CalibrationReport {
  double c_kx_rows = 0.0;   // 99th pct of (sqrt(n)-s_min)/sqrt(p), under cells
  double c_kx_cols = 0.0;   // columns analogue, over cells
  double c_kx = 0.0;        // max of the available orientations
  double c_kx_small = 0.0;  // conservative rate fit from violation counts
  double prefactor_ls = 0.0;
  double prefactor_ci_lo = 0.0;
  double prefactor_ci_hi = 0.0;
  double r_squared = 0.0;
  double prefactor_envelope = 0.0;  // margin * max est_error/shape ratio
  double c_abs_implied = 0.0;       // C recovered from the envelope prefactor
  int trials_used = 0;
  BoundParams calibrated;
};

std::vector<TrialRecord> run_sweep(const ExperimentConfig& cfg);
std::vector<RmtRecord> run_rmt(const ExperimentConfig& cfg);
std::vector<CouponRecord> run_coupon(const ExperimentConfig& cfg);
std::vector<GenRecord> run_generalization(const ExperimentConfig& cfg);
CalibrationReport calibrate(const ExperimentConfig& cfg);

void write_sweep_outputs(const ExperimentConfig& cfg, const std::vector<TrialRecord>& records,
                         double wall_ms);
void write_rmt_outputs(const ExperimentConfig& cfg, const std::vector<RmtRecord>& records,
                       double wall_ms);
void write_coupon_outputs(const ExperimentConfig& cfg, const std::vector<CouponRecord>& records,
                          double wall_ms);
void write_generalization_outputs(const ExperimentConfig& cfg,
                                  const std::vector<GenRecord>& records, double wall_ms);
void write_calibration_outputs(const ExperimentConfig& cfg, const CalibrationReport& report,
                               double wall_ms);

/// Run the configured experiment and write all outputs; returns a process
/// exit code (0 ok, 2 config error, 3 IO error).
int run_experiment(const ExperimentConfig& cfg);

/// Effective K_eps: explicit bp.k_eps if the config set it, else derived
/// from the noise spec (1.0 for zero noise so the bounds stay defined).
double effective_keps(const ExperimentConfig& cfg);

}  // namespace ridgelab
