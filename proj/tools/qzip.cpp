// qzip: condensation/truncation compression experiments on simulated qubit
// sources. See docs/schemas.md for configs and report formats.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "qzip/basis_search.hpp"
#include "qzip/config.hpp"
#include "qzip/lz_codec.hpp"
#include "qzip/pipeline.hpp"
#include "qzip/report.hpp"
#include "qzip/rng.hpp"
#include "qzip/source_model.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitComponent = 3;

struct CommonArgs {
  std::string config_path;
  std::string out_path;
  std::string format = "json";
};

void add_common(CLI::App* cmd, CommonArgs& args, bool config_required) {
  auto* opt = cmd->add_option("--config", args.config_path, "experiment config (JSON)");
  if (config_required) opt->required();
  cmd->add_option("--out", args.out_path, "output path (default: stdout)");
  cmd->add_option("--format", args.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
}

void deliver(const qzip::Report& report, const CommonArgs& args) {
  if (args.out_path.empty()) {
    qzip::emit_report(report, args.format, std::cout);
  } else {
    qzip::emit_report_file(report, args.format, args.out_path);
  }
}

std::vector<std::uint8_t> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::string& path, const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

// Container for encoded streams: 8-byte little-endian bit count, then the
// bits packed most-significant-first per byte.
std::vector<std::uint8_t> pack_container(const qzip::BitString& bits) {
  std::vector<std::uint8_t> out(8, 0);
  const std::uint64_t count = bits.size();
  for (int i = 0; i < 8; ++i) out[static_cast<std::size_t>(i)] = (count >> (8 * i)) & 0xff;
  const auto payload = bits.to_bytes();
  out.insert(out.end(), payload.begin(), payload.end());
  return out;
}

qzip::BitString unpack_container(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() < 8) throw qzip::DecodeError("container: truncated header");
  std::uint64_t count = 0;
  for (int i = 0; i < 8; ++i) count |= static_cast<std::uint64_t>(bytes[static_cast<std::size_t>(i)]) << (8 * i);
  std::vector<std::uint8_t> payload(bytes.begin() + 8, bytes.end());
  if (count > payload.size() * 8) throw qzip::DecodeError("container: bit count exceeds payload");
  return qzip::BitString::from_bytes(payload, count);
}

int run_lz_encode(const std::string& in_path, const std::string& out_path) {
  const auto raw = read_file(in_path);
  std::vector<std::uint8_t> bits;
  bits.reserve(raw.size() * 8);
  for (const std::uint8_t byte : raw) {
    for (int b = 7; b >= 0; --b) bits.push_back((byte >> b) & 1u);
  }
  if (bits.empty()) throw std::invalid_argument("lz encode: empty input");
  write_file(out_path, pack_container(qzip::lz_encode(bits)));
  return 0;
}

int run_lz_decode(const std::string& in_path, const std::string& out_path) {
  const qzip::BitString code = unpack_container(read_file(in_path));
  const std::vector<std::uint8_t> bits = qzip::lz_decode(code);
  if (bits.size() % 8 != 0) {
    throw qzip::DecodeError("lz decode: bit count is not a whole number of bytes");
  }
  std::vector<std::uint8_t> raw(bits.size() / 8, 0);
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i]) raw[i / 8] |= static_cast<std::uint8_t>(1u << (7 - (i % 8)));
  }
  write_file(out_path, raw);
  return 0;
}

int run_calibrate_mesh(double delta, std::size_t samples, std::uint64_t seed,
                       const CommonArgs& args) {
  const qzip::UnitaryMesh mesh = qzip::build_mesh(2, delta);
  qzip::Rng rng(seed);
  double worst_gap = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    // Spectra kept away from degeneracy, including near-pure sources where
    // the entropy responds most steeply to basis mismatch.
    const double lambda0 = 0.505 + 0.495 * rng.uniform();
    const qzip::UnitaryMatrix basis = qzip::random_unitary(2, rng);
    const qzip::Matrix lam = Eigen::Vector2cd(lambda0, 1.0 - lambda0).asDiagonal();
    const qzip::DensityMatrix rho(basis.entries() * lam * basis.entries().adjoint());
    const double entropy = qzip::von_neumann_entropy(rho);
    double best = std::numeric_limits<double>::infinity();
    for (const auto& point : mesh.points) {
      best = std::min(best, qzip::condensation_rate(rho, point));
    }
    worst_gap = std::max(worst_gap, best - entropy);
  }
  qzip::Report report;
  report.mode = "calibrate-mesh";
  report.payload = {{"delta", delta},
                    {"samples", samples},
                    {"seed", seed},
                    {"mesh_size", mesh.size()},
                    {"max_entropy_gap_bits", worst_gap}};
  deliver(report, args);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantum source compression experiments"};
  app.require_subcommand(1);

  CommonArgs rate_args, lz_curve_args, trunc_args, thm_args, search_args, pipe_args, calib_args;

  auto* rate_cmd = app.add_subcommand("rate", "analytic condensation rates for a source");
  add_common(rate_cmd, rate_args, true);

  auto* pipe_cmd = app.add_subcommand("pipeline", "end-to-end condense/truncate/decode run");
  add_common(pipe_cmd, pipe_args, true);

  auto* search_cmd = app.add_subcommand("search", "minimum-rate basis search over a mesh");
  add_common(search_cmd, search_args, true);

  auto* thm_cmd = app.add_subcommand("theorem1", "pseudo-commutation residual checks");
  add_common(thm_cmd, thm_args, false);
  int thm_dim = 2, thm_positions = 1;
  std::size_t thm_trials = 0;
  std::uint64_t thm_seed = 0;
  thm_cmd->add_option("--dim", thm_dim, "signal dimension d");
  thm_cmd->add_option("--positions", thm_positions, "register length n");
  thm_cmd->add_option("--trials", thm_trials, "random circuits per class");
  thm_cmd->add_option("--seed", thm_seed, "RNG seed");

  auto* trunc_cmd = app.add_subcommand("truncate-sim", "boundary-location sweep statistics");
  add_common(trunc_cmd, trunc_args, false);
  std::size_t ts_n = 0, ts_k = 0, ts_trials = 0;
  int ts_y = 0, ts_l = 0;
  std::uint64_t ts_seed = 0;
  trunc_cmd->add_option("--n", ts_n, "block length");
  trunc_cmd->add_option("--k", ts_k, "base boundary");
  trunc_cmd->add_option("--Y", ts_y, "cluster size");
  trunc_cmd->add_option("--L", ts_l, "step (default Y+1)");
  trunc_cmd->add_option("--trials", ts_trials, "runs per K");
  trunc_cmd->add_option("--seed", ts_seed, "RNG seed");

  auto* lz_cmd = app.add_subcommand("lz", "LZ codec utilities");
  lz_cmd->require_subcommand(1);
  std::string lz_in, lz_out;
  auto* lz_enc = lz_cmd->add_subcommand("encode", "encode a file to the container format");
  lz_enc->add_option("input", lz_in, "input file")->required();
  lz_enc->add_option("--out", lz_out, "output file")->required();
  auto* lz_dec = lz_cmd->add_subcommand("decode", "decode a container file");
  auto* lz_curve = lz_cmd->add_subcommand("curve", "empirical rate curve for a source");
  add_common(lz_curve, lz_curve_args, true);

  std::string lzd_in, lzd_out;
  lz_dec->add_option("input", lzd_in, "input file")->required();
  lz_dec->add_option("--out", lzd_out, "output file")->required();

  auto* calib_cmd =
      app.add_subcommand("calibrate-mesh", "measure the mesh spacing to entropy-gap modulus");
  add_common(calib_cmd, calib_args, false);
  double calib_delta = 0.05;
  std::size_t calib_samples = 2000;
  std::uint64_t calib_seed = 20260810;
  calib_cmd->add_option("--delta", calib_delta, "mesh spacing");
  calib_cmd->add_option("--samples", calib_samples, "random sources to sweep");
  calib_cmd->add_option("--seed", calib_seed, "RNG seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return kExitValidation;
  }

  try {
    if (rate_cmd->parsed()) {
      auto cfg = qzip::ExperimentConfig::load(rate_args.config_path);
      cfg.mode = qzip::Mode::Rate;
      deliver(qzip::run_experiment(cfg), rate_args);
    } else if (pipe_cmd->parsed()) {
      auto cfg = qzip::ExperimentConfig::load(pipe_args.config_path);
      cfg.mode = qzip::Mode::Pipeline;
      deliver(qzip::run_experiment(cfg), pipe_args);
    } else if (search_cmd->parsed()) {
      auto cfg = qzip::ExperimentConfig::load(search_args.config_path);
      cfg.mode = qzip::Mode::Search;
      deliver(qzip::run_experiment(cfg), search_args);
    } else if (thm_cmd->parsed()) {
      qzip::ExperimentConfig cfg;
      if (!thm_args.config_path.empty()) cfg = qzip::ExperimentConfig::load(thm_args.config_path);
      cfg.mode = qzip::Mode::Theorem1;
      if (thm_cmd->count("--dim")) cfg.dim = thm_dim;
      if (thm_cmd->count("--positions")) cfg.positions = thm_positions;
      if (thm_cmd->count("--trials")) cfg.trials = thm_trials;
      if (thm_cmd->count("--seed")) cfg.seed = thm_seed;
      deliver(qzip::run_experiment(cfg), thm_args);
    } else if (trunc_cmd->parsed()) {
      qzip::ExperimentConfig cfg;
      if (!trunc_args.config_path.empty()) cfg = qzip::ExperimentConfig::load(trunc_args.config_path);
      cfg.mode = qzip::Mode::TruncateSim;
      if (trunc_cmd->count("--n")) cfg.n = ts_n;
      if (trunc_cmd->count("--k")) cfg.boundary = ts_k;
      if (trunc_cmd->count("--Y")) cfg.cluster_size = ts_y;
      if (trunc_cmd->count("--L")) cfg.step = ts_l;
      if (trunc_cmd->count("--trials")) cfg.trials = ts_trials;
      if (trunc_cmd->count("--seed")) cfg.seed = ts_seed;
      if (trunc_cmd->count("--format") == 0) trunc_args.format = "csv";  // tabular by default
      deliver(qzip::run_experiment(cfg), trunc_args);
    } else if (lz_enc->parsed()) {
      return run_lz_encode(lz_in, lz_out);
    } else if (lz_dec->parsed()) {
      return run_lz_decode(lzd_in, lzd_out);
    } else if (lz_curve->parsed()) {
      auto cfg = qzip::ExperimentConfig::load(lz_curve_args.config_path);
      cfg.mode = qzip::Mode::Lz;
      if (lz_curve->count("--format") == 0) lz_curve_args.format = "csv";
      deliver(qzip::run_experiment(cfg), lz_curve_args);
    } else if (calib_cmd->parsed()) {
      return run_calibrate_mesh(calib_delta, calib_samples, calib_seed, calib_args);
    }
  } catch (const qzip::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitComponent;
  }
  return 0;
}
