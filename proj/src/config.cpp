#include "qzip/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>

#include "qzip/basis_search.hpp"
#include "qzip/rng.hpp"

namespace qzip {

std::string to_string(Mode mode) {
  switch (mode) {
    case Mode::Rate: return "rate";
    case Mode::TruncateSim: return "truncate-sim";
    case Mode::Lz: return "lz";
    case Mode::Theorem1: return "theorem1";
    case Mode::Search: return "search";
    case Mode::Pipeline: return "pipeline";
  }
  throw ConfigError("unknown mode");
}

Mode mode_from_string(const std::string& name) {
  if (name == "rate") return Mode::Rate;
  if (name == "truncate-sim") return Mode::TruncateSim;
  if (name == "lz") return Mode::Lz;
  if (name == "theorem1") return Mode::Theorem1;
  if (name == "search") return Mode::Search;
  if (name == "pipeline") return Mode::Pipeline;
  throw ConfigError("unknown mode: " + name);
}

DensityMatrix SourceSpec::realize() const {
  if (random_seed) {
    Rng rng(*random_seed);
    const double lambda0 = 0.5 + 0.5 * rng.uniform();
    const double theta_r = rng.uniform() * std::numbers::pi / 2.0;
    const double phi_r = rng.uniform() * 2.0 * std::numbers::pi;
    const UnitaryMatrix basis = two_angle_basis(theta_r, phi_r);
    const Matrix lam = Eigen::Vector2cd(lambda0, 1.0 - lambda0).asDiagonal();
    return DensityMatrix(basis.entries() * lam * basis.entries().adjoint());
  }
  if (eigenvalues.size() != 2) {
    throw ConfigError("source: need two eigenvalues or a random_seed");
  }
  const UnitaryMatrix basis = eigenbasis();
  const Matrix lam = Eigen::Vector2cd(eigenvalues[0], eigenvalues[1]).asDiagonal();
  return DensityMatrix(basis.entries() * lam * basis.entries().adjoint());
}

UnitaryMatrix SourceSpec::eigenbasis() const {
  if (random_seed) {
    Rng rng(*random_seed);
    (void)rng.uniform();
    const double theta_r = rng.uniform() * std::numbers::pi / 2.0;
    const double phi_r = rng.uniform() * 2.0 * std::numbers::pi;
    return two_angle_basis(theta_r, phi_r);
  }
  return two_angle_basis(theta, phi);
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
  ExperimentConfig cfg;
  try {
    cfg.mode = mode_from_string(j.at("mode").get<std::string>());
    if (j.contains("source")) {
      const auto& src = j.at("source");
      if (src.contains("random_seed")) {
        cfg.source.random_seed = src.at("random_seed").get<std::uint64_t>();
      }
      if (src.contains("eigenvalues")) {
        cfg.source.eigenvalues = src.at("eigenvalues").get<std::vector<double>>();
      }
      if (src.contains("eigenbasis_angles")) {
        const auto angles = src.at("eigenbasis_angles").get<std::vector<double>>();
        if (angles.size() != 2) throw ConfigError("source.eigenbasis_angles: need [theta, phi]");
        cfg.source.theta = angles[0];
        cfg.source.phi = angles[1];
      }
    }
    cfg.n = j.value("n", std::size_t{0});
    cfg.cluster_size = j.value("Y", 0);
    cfg.step = j.value("L", 0);
    cfg.delta = j.value("delta", 0.0);
    cfg.trials = j.value("trials", std::size_t{0});
    cfg.seed = j.value("seed", std::uint64_t{0});
    if (j.contains("k")) cfg.boundary = j.at("k").get<std::size_t>();
    if (j.contains("basis_angles")) {
      const auto angles = j.at("basis_angles").get<std::vector<double>>();
      if (angles.size() != 2) throw ConfigError("basis_angles: need [theta, phi]");
      cfg.basis_theta = angles[0];
      cfg.basis_phi = angles[1];
    }
    cfg.dim = j.value("dim", 2);
    cfg.positions = j.value("positions", 1);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return cfg;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return from_json(j);
}

nlohmann::json ExperimentConfig::to_json() const {
  nlohmann::json j;
  j["mode"] = to_string(mode);
  nlohmann::json src;
  if (source.random_seed) src["random_seed"] = *source.random_seed;
  if (!source.eigenvalues.empty()) src["eigenvalues"] = source.eigenvalues;
  if (!source.random_seed) src["eigenbasis_angles"] = {source.theta, source.phi};
  j["source"] = src;
  j["n"] = n;
  j["Y"] = cluster_size;
  j["L"] = step;
  j["delta"] = delta;
  j["trials"] = trials;
  j["seed"] = seed;
  if (boundary) j["k"] = *boundary;
  if (basis_theta && basis_phi) j["basis_angles"] = {*basis_theta, *basis_phi};
  j["dim"] = dim;
  j["positions"] = positions;
  return j;
}

void ExperimentConfig::validate() const {
  auto require = [](bool ok, const char* message) {
    if (!ok) throw ConfigError(message);
  };
  switch (mode) {
    case Mode::Rate:
      require(source.random_seed.has_value() || source.eigenvalues.size() == 2,
              "rate: source required");
      break;
    case Mode::Lz:
      require(n >= 2, "lz: n must be at least 2");
      require(trials >= 1, "lz: trials must be positive");
      require(source.random_seed.has_value() || source.eigenvalues.size() == 2,
              "lz: source required");
      break;
    case Mode::TruncateSim:
      require(n >= 2, "truncate-sim: n must be at least 2");
      require(cluster_size >= 1, "truncate-sim: Y must be >= 1");
      require(trials >= 1, "truncate-sim: trials must be positive");
      require(boundary.has_value() && *boundary <= n, "truncate-sim: k must lie in [0, n]");
      require(static_cast<std::size_t>(cluster_size) <= n, "truncate-sim: Y exceeds n");
      break;
    case Mode::Theorem1:
      require(dim >= 2, "theorem1: dim must be >= 2");
      require(positions >= 1, "theorem1: positions must be >= 1");
      require(trials >= 1, "theorem1: trials must be positive");
      break;
    case Mode::Search:
      require(delta > 0.0, "search: delta must be positive");
      require(n >= 2, "search: n must be at least 2");
      require(cluster_size >= 1, "search: Y must be >= 1");
      require(trials >= 1, "search: trials must be positive");
      require(source.random_seed.has_value() || source.eigenvalues.size() == 2,
              "search: source required");
      break;
    case Mode::Pipeline:
      require(n >= 2, "pipeline: n must be at least 2");
      require(cluster_size >= 1, "pipeline: Y must be >= 1");
      require(trials >= 1, "pipeline: trials must be positive");
      require(source.random_seed.has_value() || source.eigenvalues.size() == 2,
              "pipeline: source required");
      break;
  }
  if (!source.eigenvalues.empty()) {
    double sum = 0.0;
    for (double v : source.eigenvalues) {
      if (v < 0.0 || v > 1.0) throw ConfigError("source.eigenvalues: entries must be in [0, 1]");
      sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-9) throw ConfigError("source.eigenvalues: must sum to 1");
  }
}

}  // namespace qzip
