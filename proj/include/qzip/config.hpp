#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "qzip/quantum_core.hpp"

namespace qzip {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Mode { Rate, TruncateSim, Lz, Theorem1, Search, Pipeline };

std::string to_string(Mode mode);
Mode mode_from_string(const std::string& name);

// Qubit source description: spectrum plus eigenbasis angles, or a seed from
// which both are drawn.
struct SourceSpec {
  std::vector<double> eigenvalues;
  double theta = 0.0;
  double phi = 0.0;
  std::optional<std::uint64_t> random_seed;

  DensityMatrix realize() const;
  UnitaryMatrix eigenbasis() const;
};

struct ExperimentConfig {
  Mode mode = Mode::Pipeline;
  SourceSpec source;
  std::size_t n = 0;
  int cluster_size = 0;          // Y
  int step = 0;                  // L; 0 means the default Y + 1
  double delta = 0.0;            // mesh spacing
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::optional<std::size_t> boundary;            // truncate-sim base boundary k
  std::optional<double> basis_theta;              // pipeline working basis;
  std::optional<double> basis_phi;                // defaults to the eigenbasis
  int dim = 2;                                    // theorem1 signal dimension
  int positions = 1;                              // theorem1 register length

  int effective_step() const { return step > 0 ? step : cluster_size + 1; }

  static ExperimentConfig from_json(const nlohmann::json& j);
  static ExperimentConfig load(const std::string& path);
  nlohmann::json to_json() const;

  // Mode-specific field checks; throws ConfigError.
  void validate() const;
};

}  // namespace qzip
