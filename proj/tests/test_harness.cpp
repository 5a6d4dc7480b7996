#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "qzip/config.hpp"
#include "qzip/pipeline.hpp"
#include "qzip/report.hpp"
#include "support.hpp"

using namespace qzip;
using namespace qzip::test;

namespace {

nlohmann::json pipeline_config_json() {
  return {
      {"mode", "pipeline"},
      {"source", {{"eigenvalues", {0.9, 0.1}}, {"eigenbasis_angles", {std::numbers::pi / 8.0, 0.0}}}},
      {"n", 1u << 14},
      {"Y", 16},
      {"L", 0},
      {"delta", 0.0},
      {"trials", 4},
      {"seed", 99},
      {"dim", 2},
      {"positions", 1},
  };
}

}  // namespace

TEST_CASE("config round-trips through JSON exactly") {
  const nlohmann::json j = pipeline_config_json();
  const ExperimentConfig cfg = ExperimentConfig::from_json(j);
  const ExperimentConfig again = ExperimentConfig::from_json(cfg.to_json());
  CHECK(cfg.to_json() == again.to_json());
  CHECK(cfg.effective_step() == 17);

  for (const char* name : {"rate", "truncate-sim", "lz", "theorem1", "search", "pipeline"}) {
    CHECK(to_string(mode_from_string(name)) == name);
  }
  CHECK_THROWS_AS(mode_from_string("bogus"), ConfigError);
}

TEST_CASE("config validation rejects incomplete experiments") {
  ExperimentConfig cfg = ExperimentConfig::from_json(pipeline_config_json());
  cfg.validate();

  ExperimentConfig no_trials = cfg;
  no_trials.trials = 0;
  CHECK_THROWS_AS(no_trials.validate(), ConfigError);

  ExperimentConfig no_source = cfg;
  no_source.source = SourceSpec{};
  CHECK_THROWS_AS(no_source.validate(), ConfigError);

  ExperimentConfig bad_spectrum = cfg;
  bad_spectrum.source.eigenvalues = {0.9, 0.3};
  CHECK_THROWS_AS(bad_spectrum.validate(), ConfigError);

  ExperimentConfig trunc = cfg;
  trunc.mode = Mode::TruncateSim;
  CHECK_THROWS_AS(trunc.validate(), ConfigError);  // boundary missing
  trunc.boundary = 1u << 13;
  trunc.validate();
}

TEST_CASE("pipeline on a pure matched source recovers everything") {
  ExperimentConfig cfg = ExperimentConfig::from_json(pipeline_config_json());
  cfg.source.eigenvalues = {1.0, 0.0};
  cfg.trials = 3;
  const Report report = run_pipeline(cfg);
  CHECK(report.payload.at("recovered_fraction").at("value").get<double>() == 1.0);
  CHECK(report.payload.at("rate_qubits_per_signal").at("mean").get<double>() < 0.2);
  CHECK(report.payload.at("entropy_bits").get<double>() < 1e-9);
}

TEST_CASE("pipeline on a maximal-entropy source cannot compress") {
  ExperimentConfig cfg = ExperimentConfig::from_json(pipeline_config_json());
  cfg.source.eigenvalues = {0.5, 0.5};
  cfg.n = 1u << 15;
  cfg.trials = 3;
  const Report report = run_pipeline(cfg);
  const double rate = report.payload.at("rate_qubits_per_signal").at("mean").get<double>();
  CHECK(rate >= 0.99);
  CHECK(rate <= 1.0);
  CHECK(report.payload.at("overflow_blocks").get<std::size_t>() == 3);
}

TEST_CASE("pipeline on a biased matched source compresses toward the entropy") {
  ExperimentConfig cfg = ExperimentConfig::from_json(pipeline_config_json());
  cfg.n = 1u << 16;
  cfg.cluster_size = 32;
  cfg.trials = 6;
  const Report report = run_pipeline(cfg);
  const double rate = report.payload.at("rate_qubits_per_signal").at("mean").get<double>();
  const double entropy = report.payload.at("entropy_bits").get<double>();
  CHECK(entropy == doctest::Approx(entropy_oracle({0.9, 0.1})).epsilon(1e-9));
  CHECK(rate >= 0.469);
  CHECK(rate <= 0.75);
  const double recovered = report.payload.at("recovered_fraction").at("value").get<double>();
  CHECK(recovered >= 1.0 - 2.0 / 32.0 - 3.0 * binomial_se(recovered, 6));
  // Rate accounting never beats the source entropy by more than noise.
  const double se = report.payload.at("rate_qubits_per_signal").at("standard_error").get<double>();
  CHECK(rate >= entropy - 2.0 * se);
}

TEST_CASE("mismatched working basis raises the rate") {
  ExperimentConfig cfg = ExperimentConfig::from_json(pipeline_config_json());
  cfg.n = 1u << 14;
  cfg.trials = 3;
  cfg.basis_theta = 0.0;  // computational basis against a pi/8 eigenbasis
  cfg.basis_phi = 0.0;
  const Report mismatched = run_pipeline(cfg);
  const Report matched = run_pipeline(ExperimentConfig::from_json(pipeline_config_json()));
  CHECK(mismatched.payload.at("condensation_rate_bits").get<double>() >
        matched.payload.at("condensation_rate_bits").get<double>() + 0.1);
  CHECK(mismatched.payload.at("rate_qubits_per_signal").at("mean").get<double>() >
        matched.payload.at("rate_qubits_per_signal").at("mean").get<double>());
}

TEST_CASE("reports are deterministic and round-trip") {
  const ExperimentConfig cfg = ExperimentConfig::from_json(pipeline_config_json());
  const Report a = run_experiment(cfg);
  const Report b = run_experiment(cfg);
  CHECK(a.to_json_string() == b.to_json_string());

  const nlohmann::json parsed = nlohmann::json::parse(a.to_json_string());
  CHECK(parsed.at("schema_version").get<int>() == kReportSchemaVersion);
  CHECK(parsed.at("mode").get<std::string>() == "pipeline");
  CHECK(parsed.at("results") == a.payload);
}

TEST_CASE("truncate-sim mode emits the documented CSV") {
  ExperimentConfig cfg;
  cfg.mode = Mode::TruncateSim;
  cfg.n = 512;
  cfg.cluster_size = 4;
  cfg.boundary = 250;
  cfg.trials = 2000;
  cfg.seed = 7;
  const Report report = run_experiment(cfg);
  CHECK(report.csv_header ==
        std::vector<std::string>{"K", "analytic_F", "empirical_F", "analytic_Pe", "empirical_Pe",
                                 "interval_width"});
  CHECK(report.csv_rows.size() == 5);  // K in [0, L) with L = 5
  const std::string csv = report.to_csv_string();
  CHECK(csv.find("K,analytic_F,empirical_F,analytic_Pe,empirical_Pe,interval_width\n") == 0);
  CHECK(csv.find('\r') == std::string::npos);

  // Empirical columns within Monte Carlo range of analytic ones.
  for (const auto& row : report.csv_rows) {
    const double fa = std::stod(row[1]);
    const double fe = std::stod(row[2]);
    CHECK(std::abs(fa - fe) < 0.05);
  }
}

TEST_CASE("theorem1 mode reports the two residual extremes") {
  ExperimentConfig cfg;
  cfg.mode = Mode::Theorem1;
  cfg.dim = 2;
  cfg.positions = 2;
  cfg.trials = 5;
  cfg.seed = 11;
  const Report report = run_experiment(cfg);
  CHECK(report.payload.at("max_residual_permutations").get<double>() <= 1e-10);
  CHECK(report.payload.at("min_residual_counterexamples").get<double>() > 1e-3);
}

TEST_CASE("lz curve mode emits one row per block length") {
  ExperimentConfig cfg;
  cfg.mode = Mode::Lz;
  cfg.source.eigenvalues = {0.89, 0.11};
  cfg.n = 1u << 14;
  cfg.trials = 4;
  cfg.seed = 3;
  const Report report = run_experiment(cfg);
  CHECK(report.csv_header == std::vector<std::string>{"n", "trials", "mean_rate", "stderr"});
  CHECK(report.csv_rows.size() == 2);  // 4096 and 16384
  CHECK(report.payload.contains("codeword_length_quantiles"));
}

TEST_CASE("search mode output shape") {
  ExperimentConfig cfg;
  cfg.mode = Mode::Search;
  cfg.source.eigenvalues = {0.9, 0.1};
  cfg.source.theta = std::numbers::pi / 8.0;
  cfg.source.phi = 0.0;
  cfg.delta = 0.5;
  cfg.n = 1u << 12;
  cfg.cluster_size = 8;
  cfg.trials = 2;
  cfg.seed = 13;
  const Report report = run_experiment(cfg);
  CHECK(report.payload.at("rate_table").size() == report.payload.at("mesh_size").get<std::size_t>());
  CHECK(report.payload.at("entropy_estimate").get<double>() > 0.3);
  CHECK(report.payload.at("uncertainty").get<double>() >=
        2.0 * 8.0 / static_cast<double>(1u << 12));
  CHECK(report.payload.contains("basis_estimate"));
  CHECK(report.payload.at("analytic").contains("best_index"));
}

TEST_CASE("csv emission rejects modes without a tabular form") {
  const ExperimentConfig cfg = ExperimentConfig::from_json(pipeline_config_json());
  const Report report = run_experiment(cfg);
  std::ostringstream out;
  CHECK_THROWS_AS(emit_report(report, "csv", out), std::invalid_argument);
  CHECK_THROWS_AS(emit_report(report, "yaml", out), std::invalid_argument);
}
