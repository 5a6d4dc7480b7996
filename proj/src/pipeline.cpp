#include "qzip/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "qzip/basis_search.hpp"
#include "qzip/diag_verifier.hpp"
#include "qzip/lz_codec.hpp"
#include "qzip/quantum_core.hpp"
#include "qzip/rng.hpp"
#include "qzip/source_model.hpp"
#include "qzip/truncation_sim.hpp"

namespace qzip {

namespace {

double binomial_se(double p, std::size_t n) {
  return n == 0 ? 0.0 : std::sqrt(std::max(0.0, p * (1.0 - p)) / static_cast<double>(n));
}

UnitaryMatrix working_basis(const ExperimentConfig& config) {
  if (config.basis_theta && config.basis_phi) {
    return two_angle_basis(*config.basis_theta, *config.basis_phi);
  }
  return config.source.eigenbasis();
}

}  // namespace

Report run_pipeline(const ExperimentConfig& config) {
  const DensityMatrix rho = config.source.realize();
  const UnitaryMatrix basis = working_basis(config);
  const ProbabilityDistribution mu = effective_source(rho, basis).mu;
  const double entropy = von_neumann_entropy(rho);
  const double rate_analytic = shannon_entropy(mu);
  const SmearConfig smear(config.cluster_size, config.effective_step(), config.n);

  double rate_sum = 0.0;
  double rate_sq = 0.0;
  std::size_t recovered = 0;
  std::size_t overflow = 0;
  double code_bits_sum = 0.0;
  std::size_t code_bits_min = config.n * 2;
  std::size_t code_bits_max = 0;

  for (std::size_t t = 0; t < config.trials; ++t) {
    const std::vector<std::uint8_t> block = sample_block(mu, config.n, derive_seed(config.seed, t, 1));
    const BitString code = lz_encode(block);
    code_bits_sum += static_cast<double>(code.size());
    code_bits_min = std::min(code_bits_min, code.size());
    code_bits_max = std::max(code_bits_max, code.size());

    std::size_t retained;
    bool ok;
    if (code.size() >= config.n) {
      // The codeword fills the register; nothing blank to cut.
      ++overflow;
      retained = config.n;
      ok = lz_decode(code) == block;
    } else {
      IdealizedBlock reg = IdealizedBlock::from_bits(code.padded_to(config.n));
      Rng povm_rng(derive_seed(config.seed, t, 2));
      const TruncationResult res = run_truncation(reg, smear, povm_rng);
      retained = res.hi;
      // Decompression sees the kept prefix re-extended with blank qubits.
      const BitString kept = code.padded_to(retained).padded_to(config.n);
      const auto decoded = lz_try_decode_prefix(kept);
      ok = decoded.has_value() && decoded->symbols == block;
    }
    const double rate = static_cast<double>(retained) / static_cast<double>(config.n);
    rate_sum += rate;
    rate_sq += rate * rate;
    if (ok) ++recovered;
  }

  const auto trials_d = static_cast<double>(config.trials);
  const double rate_mean = rate_sum / trials_d;
  double rate_se = 0.0;
  if (config.trials > 1) {
    const double var = std::max(0.0, (rate_sq - rate_sum * rate_mean) / (trials_d - 1.0));
    rate_se = std::sqrt(var / trials_d);
  }
  const double recovered_fraction = static_cast<double>(recovered) / trials_d;

  Report report;
  report.mode = to_string(Mode::Pipeline);
  report.payload = {
      {"n", config.n},
      {"Y", config.cluster_size},
      {"L", config.effective_step()},
      {"trials", config.trials},
      {"seed", config.seed},
      {"entropy_bits", entropy},
      {"condensation_rate_bits", rate_analytic},
      {"rate_qubits_per_signal",
       {{"mean", rate_mean}, {"standard_error", rate_se}, {"trials", config.trials}}},
      {"retained_qubits_mean", rate_mean * static_cast<double>(config.n)},
      {"recovered_fraction",
       {{"value", recovered_fraction},
        {"standard_error", binomial_se(recovered_fraction, config.trials)},
        {"trials", config.trials}}},
      {"truncation_fidelity_bound", 1.0 - 2.0 / static_cast<double>(config.cluster_size)},
      {"codeword_bits",
       {{"mean", code_bits_sum / trials_d}, {"min", code_bits_min}, {"max", code_bits_max}}},
      {"overflow_blocks", overflow},
  };
  return report;
}

Report run_rate_mode(const ExperimentConfig& config) {
  const DensityMatrix rho = config.source.realize();
  const UnitaryMatrix eigen_basis = config.source.eigenbasis();
  const UnitaryMatrix basis = working_basis(config);

  Report report;
  report.mode = to_string(Mode::Rate);
  report.payload = {
      {"entropy_bits", von_neumann_entropy(rho)},
      {"condensation_rate_bits", condensation_rate(rho, basis)},
      {"condensation_rate_matched_bits", condensation_rate(rho, eigen_basis)},
      {"effective_distribution", effective_source(rho, basis).mu.probs()},
  };
  return report;
}

Report run_lz_curve_mode(const ExperimentConfig& config) {
  const DensityMatrix rho = config.source.realize();
  const UnitaryMatrix basis = working_basis(config);
  const ProbabilityDistribution mu = effective_source(rho, basis).mu;

  std::vector<std::size_t> lengths;
  for (std::size_t len = std::min<std::size_t>(4096, config.n); len < config.n; len *= 4) {
    lengths.push_back(len);
  }
  lengths.push_back(config.n);

  Report report;
  report.mode = to_string(Mode::Lz);
  report.csv_header = {"n", "trials", "mean_rate", "stderr"};
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    const RateEstimate est =
        empirical_rate(mu, lengths[i], config.trials, derive_seed(config.seed, i));
    report.csv_rows.push_back({std::to_string(lengths[i]), std::to_string(config.trials),
                               format_number(est.mean), format_number(est.standard_error)});
    rows.push_back({{"n", lengths[i]},
                    {"trials", config.trials},
                    {"mean_rate", est.mean},
                    {"stderr", est.standard_error}});
  }

  // Codeword-length spread at the largest block, as a tail-decay indicator
  // for the boundary model assumptions.
  std::vector<double> code_lengths;
  code_lengths.reserve(config.trials);
  for (std::size_t t = 0; t < config.trials; ++t) {
    const auto block = sample_block(mu, config.n, derive_seed(config.seed, lengths.size() - 1, t));
    code_lengths.push_back(static_cast<double>(lz_encode(block).size()));
  }
  std::sort(code_lengths.begin(), code_lengths.end());
  auto quantile = [&](double q) {
    const auto idx = static_cast<std::size_t>(q * static_cast<double>(code_lengths.size() - 1));
    return code_lengths[idx];
  };

  report.payload = {
      {"source_entropy_bits", shannon_entropy(mu)},
      {"curve", rows},
      {"codeword_length_quantiles",
       {{"p50", quantile(0.5)}, {"p90", quantile(0.9)}, {"p99", quantile(0.99)}}},
  };
  return report;
}

Report run_theorem1_mode(const ExperimentConfig& config) {
  Rng rng(config.seed);
  std::size_t register_size = 1;
  for (int i = 0; i < config.positions; ++i) register_size *= static_cast<std::size_t>(config.dim);
  constexpr int kStatesPerCircuit = 10;

  double max_residual_perm = 0.0;
  for (std::size_t t = 0; t < config.trials; ++t) {
    const PermutationCircuit circuit = PermutationCircuit::random(register_size, rng);
    for (int s = 0; s < kStatesPerCircuit; ++s) {
      const PureState psi = random_pure(static_cast<Eigen::Index>(register_size), rng);
      max_residual_perm =
          std::max(max_residual_perm, theorem1_residual(circuit, psi, config.dim, config.positions));
    }
  }

  double min_residual_counter = std::numeric_limits<double>::infinity();
  std::size_t counterexamples = 0;
  while (counterexamples < config.trials) {
    const UnitaryMatrix u = random_unitary(static_cast<Eigen::Index>(register_size), rng);
    if (near_permutation(u, 1e-6)) continue;
    ++counterexamples;
    double worst = 0.0;
    for (int s = 0; s < kStatesPerCircuit; ++s) {
      const PureState psi = random_pure(static_cast<Eigen::Index>(register_size), rng);
      worst = std::max(worst, theorem1_residual(u, psi, config.dim, config.positions));
    }
    min_residual_counter = std::min(min_residual_counter, worst);
  }

  Report report;
  report.mode = to_string(Mode::Theorem1);
  report.payload = {
      {"dim", config.dim},
      {"positions", config.positions},
      {"trials", config.trials},
      {"states_per_circuit", kStatesPerCircuit},
      {"seed", config.seed},
      {"max_residual_permutations", max_residual_perm},
      {"min_residual_counterexamples", min_residual_counter},
  };
  return report;
}

Report run_truncate_sim_mode(const ExperimentConfig& config) {
  const SmearConfig smear(config.cluster_size, config.effective_step(), config.n);
  const auto step = static_cast<std::size_t>(smear.step);
  const std::size_t base = (*config.boundary / step) * step;

  Report report;
  report.mode = to_string(Mode::TruncateSim);
  report.csv_header = {"K", "analytic_F", "empirical_F", "analytic_Pe", "empirical_Pe",
                       "interval_width"};
  nlohmann::json rows = nlohmann::json::array();

  for (std::size_t k_mod = 0; k_mod < step; ++k_mod) {
    const std::size_t boundary = base + k_mod;
    if (boundary > config.n) break;
    const double f_analytic = analytic_fidelity(static_cast<int>(k_mod), smear.cluster_size,
                                                smear.step);
    const double p_analytic = analytic_error(static_cast<int>(k_mod), smear.cluster_size,
                                             smear.step);

    double fidelity_sum = 0.0;
    std::size_t errors = 0;
    std::size_t max_width = 0;
    for (std::size_t t = 0; t < config.trials; ++t) {
      Rng rng(derive_seed(config.seed, k_mod, t));
      IdealizedBlock block = IdealizedBlock::sample(config.n, boundary, rng);
      const TruncationResult res = run_truncation(block, smear, rng);
      fidelity_sum += res.fidelity;
      if (res.error_flag) ++errors;
      max_width = std::max(max_width, res.interval_width());
    }
    const auto trials_d = static_cast<double>(config.trials);
    const double f_emp = fidelity_sum / trials_d;
    const double p_emp = static_cast<double>(errors) / trials_d;

    report.csv_rows.push_back({std::to_string(k_mod), format_number(f_analytic),
                               format_number(f_emp), format_number(p_analytic),
                               format_number(p_emp), std::to_string(max_width)});
    rows.push_back({{"K", k_mod},
                    {"analytic_F", f_analytic},
                    {"empirical_F", f_emp},
                    {"analytic_Pe", p_analytic},
                    {"empirical_Pe", p_emp},
                    {"interval_width", max_width}});
  }

  report.payload = {
      {"n", config.n},        {"k", *config.boundary}, {"Y", config.cluster_size},
      {"L", smear.step},      {"trials", config.trials}, {"seed", config.seed},
      {"rows", rows},
  };
  return report;
}

Report run_search_mode(const ExperimentConfig& config) {
  const DensityMatrix rho = config.source.realize();
  const UnitaryMesh mesh = build_mesh(2, config.delta);
  const std::vector<double> analytic = rate_table(rho, mesh);
  const SearchResult analytic_best = select_basis(analytic, mesh);

  const Eigendecomposition eig = eigendecomposition(rho);
  SignalEnsemble ensemble(
      {PureState(eig.eigenvectors.entries().col(0)), PureState(eig.eigenvectors.entries().col(1))},
      eig.eigenvalues);
  const SmearConfig smear(config.cluster_size, config.effective_step(), config.n);
  const SearchResult empirical =
      empirical_search(ensemble, mesh, config.n, smear, config.trials, config.seed);

  nlohmann::json table = nlohmann::json::array();
  for (const auto& [index, rate] : empirical.rates) {
    table.push_back({{"index", index}, {"rate", rate}});
  }

  Report report;
  report.mode = to_string(Mode::Search);
  report.payload = {
      {"delta", config.delta},
      {"mesh_size", mesh.size()},
      {"n", config.n},
      {"Y", config.cluster_size},
      {"L", smear.step},
      {"trials", config.trials},
      {"seed", config.seed},
      {"rate_table", table},
      {"best_index", empirical.best_index},
      {"entropy_estimate", empirical.entropy_estimate},
      {"basis_estimate",
       {{"theta", empirical.basis_angles.theta}, {"phi", empirical.basis_angles.phi}}},
      {"uncertainty", empirical.uncertainty},
      {"standard_error", empirical.standard_error},
      {"analytic",
       {{"best_index", analytic_best.best_index},
        {"best_rate", analytic_best.best_rate},
        {"basis_estimate",
         {{"theta", analytic_best.basis_angles.theta}, {"phi", analytic_best.basis_angles.phi}}}}},
  };
  return report;
}

Report run_experiment(const ExperimentConfig& config) {
  config.validate();
  switch (config.mode) {
    case Mode::Rate: return run_rate_mode(config);
    case Mode::TruncateSim: return run_truncate_sim_mode(config);
    case Mode::Lz: return run_lz_curve_mode(config);
    case Mode::Theorem1: return run_theorem1_mode(config);
    case Mode::Search: return run_search_mode(config);
    case Mode::Pipeline: return run_pipeline(config);
  }
  throw ConfigError("unknown mode");
}

}  // namespace qzip
