#include "ridgelab/datagen.hpp"

#include <Eigen/QR>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace ridgelab {

namespace {

// Shortest round-trip formatting for CSV payloads.
std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

const char* to_string(DesignDist d) {
  switch (d) {
    case DesignDist::rademacher: return "rademacher";
    case DesignDist::sphere_uniform: return "sphere_uniform";
  }
  return "?";
}

const char* to_string(NoiseKind k) {
  switch (k) {
    case NoiseKind::gaussian: return "gaussian";
    case NoiseKind::bounded_uniform: return "bounded_uniform";
    case NoiseKind::zero: return "zero";
  }
  return "?";
}

DesignDist design_dist_from_string(const std::string& s) {
  if (s == "rademacher") return DesignDist::rademacher;
  if (s == "sphere_uniform") return DesignDist::sphere_uniform;
  throw std::invalid_argument("unknown design distribution: " + s);
}

NoiseKind noise_kind_from_string(const std::string& s) {
  if (s == "gaussian") return NoiseKind::gaussian;
  if (s == "bounded_uniform") return NoiseKind::bounded_uniform;
  if (s == "zero") return NoiseKind::zero;
  throw std::invalid_argument("unknown noise kind: " + s);
}

double noise_keps(const NoiseSpec& spec) {
  switch (spec.kind) {
    case NoiseKind::gaussian: return spec.scale;
    case NoiseKind::bounded_uniform: return spec.scale;
    case NoiseKind::zero: return 0.0;
  }
  return 0.0;
}

Eigen::VectorXd sample_design_row(Eigen::Index p, DesignDist dist, CounterRng& rng) {
  Eigen::VectorXd row(p);
  switch (dist) {
    case DesignDist::rademacher:
      for (Eigen::Index j = 0; j < p; ++j) row(j) = rng.next_sign();
      return row;
    case DesignDist::sphere_uniform: {
      double norm2 = 0.0;
      do {
        for (Eigen::Index j = 0; j < p; ++j) {
          row(j) = rng.next_gaussian();
        }
        norm2 = row.squaredNorm();
      } while (norm2 == 0.0);
      row *= std::sqrt(static_cast<double>(p)) / std::sqrt(norm2);
      return row;
    }
  }
  throw std::logic_error("unreachable design distribution");
}

double sample_noise(const NoiseSpec& spec, CounterRng& rng) {
  switch (spec.kind) {
    case NoiseKind::gaussian: return spec.scale * rng.next_gaussian();
    case NoiseKind::bounded_uniform: return spec.scale * (2.0 * rng.next_unit() - 1.0);
    case NoiseKind::zero: return 0.0;
  }
  return 0.0;
}

Design sample_design(Eigen::Index n, Eigen::Index p, DesignDist dist, std::uint64_t seed) {
  if (n < 1 || p < 1) throw std::invalid_argument("sample_design: n and p must be >= 1");
  if (static_cast<std::int64_t>(n) * static_cast<std::int64_t>(p) > kMaxDesignEntries)
    throw std::length_error("sample_design: n*p exceeds the configured entry cap");

  Design d;
  d.dist_kind = dist;
  d.seed = seed;
  d.x.resize(n, p);
  CounterRng rng(seed);
  for (Eigen::Index i = 0; i < n; ++i) d.x.row(i) = sample_design_row(p, dist, rng);
  return d;
}

Eigen::VectorXd sample_theta_star(Eigen::Index p, double target_norm, std::uint64_t seed) {
  if (target_norm < 0.0)
    throw std::invalid_argument("sample_theta_star: target_norm must be >= 0");
  Eigen::VectorXd v = Eigen::VectorXd::Zero(p);
  if (target_norm == 0.0) return v;
  CounterRng rng(seed);
  double norm = 0.0;
  do {
    for (Eigen::Index j = 0; j < p; ++j) v(j) = rng.next_gaussian();
    norm = v.norm();
  } while (norm == 0.0);
  v *= target_norm / norm;
  return v;
}

Dataset synthesize(const Design& design, const Eigen::VectorXd& theta_star,
                   const RidgeFunction& ridge, const NoiseSpec& noise, std::uint64_t seed) {
  if (theta_star.size() != design.p())
    throw std::invalid_argument("synthesize: theta_star length does not match design");

  Dataset ds;
  ds.design = design;
  ds.theta_star = theta_star;
  ds.ridge = ridge;
  ds.noise_spec = noise;

  const Eigen::Index n = design.n();
  ds.noise.resize(n);
  CounterRng rng(seed);
  for (Eigen::Index i = 0; i < n; ++i) ds.noise(i) = sample_noise(noise, rng);

  const Eigen::VectorXd z = design.x * theta_star;
  ds.y.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) ds.y(i) = ridge.f(z(i)) + ds.noise(i);
  return ds;
}

Eigen::Index design_rank(const Design& design) {
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design.x);
  return qr.rank();
}

void dump_dataset_csv(const Dataset& ds, const std::string& csv_path,
                      const std::string& meta_path) {
  std::ofstream csv(csv_path);
  if (!csv) throw std::runtime_error("cannot open for writing: " + csv_path);
  const Eigen::Index n = ds.n(), p = ds.p();
  for (Eigen::Index j = 0; j < p; ++j) csv << 'j' << j << ',';
  csv << "y,eps\n";
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < p; ++j) csv << fmt_double(ds.design.x(i, j)) << ',';
    csv << fmt_double(ds.y(i)) << ',' << fmt_double(ds.noise(i)) << '\n';
  }
  if (!csv.flush()) throw std::runtime_error("write failed: " + csv_path);

  nlohmann::json meta;
  meta["n"] = n;
  meta["p"] = p;
  meta["seed"] = ds.design.seed;
  meta["dist_kind"] = to_string(ds.design.dist_kind);
  meta["ridge_kind"] = to_string(ds.ridge.kind);
  meta["ridge_param"] = ds.ridge.param;
  meta["noise_kind"] = to_string(ds.noise_spec.kind);
  meta["noise_scale"] = ds.noise_spec.scale;
  meta["theta_star"] = std::vector<double>(ds.theta_star.begin(), ds.theta_star.end());
  std::ofstream mf(meta_path);
  if (!mf) throw std::runtime_error("cannot open for writing: " + meta_path);
  mf << meta.dump(2) << '\n';
  if (!mf.flush()) throw std::runtime_error("write failed: " + meta_path);
}

Dataset load_dataset_csv(const std::string& csv_path, const std::string& meta_path) {
  std::ifstream mf(meta_path);
  if (!mf) throw std::runtime_error("cannot open: " + meta_path);
  nlohmann::json meta = nlohmann::json::parse(mf);

  const Eigen::Index n = meta.at("n").get<Eigen::Index>();
  const Eigen::Index p = meta.at("p").get<Eigen::Index>();

  Dataset ds;
  ds.design.seed = meta.at("seed").get<std::uint64_t>();
  ds.design.dist_kind = design_dist_from_string(meta.at("dist_kind").get<std::string>());
  ds.ridge = make_ridge_function(
      ridge_kind_from_string(meta.at("ridge_kind").get<std::string>()),
      meta.at("ridge_param").get<double>());
  ds.noise_spec.kind = noise_kind_from_string(meta.at("noise_kind").get<std::string>());
  ds.noise_spec.scale = meta.at("noise_scale").get<double>();
  const auto ts = meta.at("theta_star").get<std::vector<double>>();
  if (static_cast<Eigen::Index>(ts.size()) != p)
    throw std::runtime_error("metadata theta_star length does not match p");
  ds.theta_star = Eigen::Map<const Eigen::VectorXd>(ts.data(), p);

  std::ifstream csv(csv_path);
  if (!csv) throw std::runtime_error("cannot open: " + csv_path);
  std::string line;
  if (!std::getline(csv, line)) throw std::runtime_error("empty CSV: " + csv_path);

  ds.design.x.resize(n, p);
  ds.y.resize(n);
  ds.noise.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!std::getline(csv, line))
      throw std::runtime_error("CSV truncated at row " + std::to_string(i));
    std::stringstream ss(line);
    std::string cell;
    for (Eigen::Index j = 0; j < p; ++j) {
      if (!std::getline(ss, cell, ',')) throw std::runtime_error("CSV row too short");
      ds.design.x(i, j) = std::stod(cell);
    }
    if (!std::getline(ss, cell, ',')) throw std::runtime_error("CSV row missing y");
    ds.y(i) = std::stod(cell);
    if (!std::getline(ss, cell, ',')) throw std::runtime_error("CSV row missing eps");
    ds.noise(i) = std::stod(cell);
  }
  return ds;
}

}  // namespace ridgelab
