#include "qzip/basis_search.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "qzip/lz_codec.hpp"
#include "qzip/rng.hpp"

namespace qzip {

namespace {

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  const unsigned hw = std::thread::hardware_concurrency();
  const unsigned workers = std::min<unsigned>(4, std::max<unsigned>(1, hw));
  if (workers == 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    threads.emplace_back([&, w]() {
      for (std::size_t i = w; i < count; i += workers) body(i);
    });
  }
  for (std::thread& t : threads) t.join();
}

}  // namespace

UnitaryMatrix two_angle_basis(double theta, double phi) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const Complex phase = std::exp(Complex(0.0, phi));
  Matrix m(2, 2);
  m << c, s, s * phase, -c * phase;
  return UnitaryMatrix(std::move(m));
}

double phase_reduced_distance(const UnitaryMatrix& a, const UnitaryMatrix& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("phase_reduced_distance: dimension mismatch");
  double sum = 0.0;
  for (Eigen::Index j = 0; j < a.dim(); ++j) {
    const double overlap = std::abs((b.entries().col(j).adjoint() * a.entries().col(j))(0, 0));
    sum += std::max(0.0, 2.0 - 2.0 * overlap);
  }
  return std::sqrt(sum);
}

double phase_perm_reduced_distance(const UnitaryMatrix& a, const UnitaryMatrix& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("phase_perm_reduced_distance: dimension mismatch");
  std::vector<Eigen::Index> perm(static_cast<std::size_t>(b.dim()));
  std::iota(perm.begin(), perm.end(), Eigen::Index{0});
  double best = std::numeric_limits<double>::infinity();
  do {
    double sum = 0.0;
    for (Eigen::Index j = 0; j < a.dim(); ++j) {
      const Eigen::Index pj = perm[static_cast<std::size_t>(j)];
      const double overlap = std::abs((b.entries().col(pj).adjoint() * a.entries().col(j))(0, 0));
      sum += std::max(0.0, 2.0 - 2.0 * overlap);
    }
    best = std::min(best, std::sqrt(sum));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

UnitaryMesh build_mesh(int d, double delta) {
  if (d != 2) throw std::invalid_argument("build_mesh: only d = 2 is supported");
  if (delta <= 0.0) throw std::invalid_argument("build_mesh: delta must be positive");

  UnitaryMesh mesh;
  mesh.spacing = delta;

  // The phase-reduced set has diameter at most 2; a single point covers it
  // once delta reaches that.
  if (delta >= 2.0) {
    mesh.points.push_back(UnitaryMatrix::identity(2));
    mesh.angles.push_back(MeshAngles{0.0, std::numbers::pi});
    return mesh;
  }

  // Chord bounds: moving theta by t costs at most sqrt(2) t, phi by p costs
  // at most p. Cell half-sizes are chosen so the two contributions add to
  // delta.
  const double half_pi = std::numbers::pi / 2.0;
  const double two_pi = 2.0 * std::numbers::pi;
  const auto n_theta =
      static_cast<std::size_t>(std::ceil(half_pi / (delta / std::numbers::sqrt2)));
  const auto n_phi = static_cast<std::size_t>(std::ceil(two_pi / delta));
  const double theta_step = half_pi / static_cast<double>(n_theta);
  const double phi_step = two_pi / static_cast<double>(n_phi);

  mesh.points.reserve(n_theta * n_phi);
  mesh.angles.reserve(n_theta * n_phi);
  for (std::size_t i = 0; i < n_theta; ++i) {
    const double theta = (static_cast<double>(i) + 0.5) * theta_step;
    for (std::size_t j = 0; j < n_phi; ++j) {
      const double phi = (static_cast<double>(j) + 0.5) * phi_step;
      mesh.points.push_back(two_angle_basis(theta, phi));
      mesh.angles.push_back(MeshAngles{theta, phi});
    }
  }
  return mesh;
}

std::vector<double> rate_table(const DensityMatrix& rho, const UnitaryMesh& mesh) {
  if (mesh.points.empty()) throw std::invalid_argument("rate_table: empty mesh");
  if (rho.dim() != mesh.points.front().dim()) {
    throw std::invalid_argument("rate_table: dimension mismatch");
  }
  std::vector<double> rates(mesh.size());
  for (std::size_t i = 0; i < mesh.size(); ++i) {
    rates[i] = condensation_rate(rho, mesh.points[i]);
  }
  return rates;
}

namespace {

std::size_t argmin_lowest_index(const std::vector<double>& values) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] < values[best]) best = i;
  }
  return best;
}

}  // namespace

SearchResult select_basis(const std::vector<double>& table, const UnitaryMesh& mesh) {
  if (table.empty()) throw std::invalid_argument("select_basis: empty table");
  if (table.size() != mesh.size()) throw std::invalid_argument("select_basis: table/mesh mismatch");
  SearchResult out;
  out.best_index = argmin_lowest_index(table);
  out.best_rate = table[out.best_index];
  out.entropy_estimate = out.best_rate;
  out.basis_estimate = mesh.points[out.best_index];
  out.basis_angles = mesh.angles[out.best_index];
  out.rates.reserve(table.size());
  for (std::size_t i = 0; i < table.size(); ++i) out.rates.emplace_back(i, table[i]);
  return out;
}

BasisRateEstimate empirical_basis_rate(const ProbabilityDistribution& mu, std::size_t n,
                                       const SmearConfig& config, std::size_t trials,
                                       std::uint64_t seed) {
  if (mu.size() != 2) throw std::invalid_argument("empirical_basis_rate: binary sources only");
  if (config.block_length != n) {
    throw std::invalid_argument("empirical_basis_rate: config block length mismatch");
  }
  if (trials == 0) throw std::invalid_argument("empirical_basis_rate: trials must be positive");
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    const std::vector<std::uint8_t> block = sample_block(mu, n, derive_seed(seed, t, 1));
    const BitString code = lz_encode(block);
    double retained;
    if (code.size() >= n) {
      retained = static_cast<double>(n);  // nothing blank to remove
    } else {
      IdealizedBlock reg = IdealizedBlock::from_bits(code.padded_to(n));
      Rng rng(derive_seed(seed, t, 2));
      retained = static_cast<double>(run_truncation(reg, config, rng).hi);
    }
    const double rate = retained / static_cast<double>(n);
    sum += rate;
    sum_sq += rate * rate;
  }
  BasisRateEstimate est;
  est.mean = sum / static_cast<double>(trials);
  if (trials > 1) {
    const double var = std::max(0.0, (sum_sq - sum * est.mean) / static_cast<double>(trials - 1));
    est.standard_error = std::sqrt(var / static_cast<double>(trials));
  }
  return est;
}

SearchResult empirical_search(const SignalEnsemble& ensemble, const UnitaryMesh& mesh,
                              std::size_t n, const SmearConfig& config, std::size_t trials,
                              std::uint64_t seed) {
  if (mesh.points.empty()) throw std::invalid_argument("empirical_search: empty mesh");
  const DensityMatrix rho = density_matrix(ensemble);
  if (rho.dim() != 2) throw std::invalid_argument("empirical_search: binary sources only");

  std::vector<BasisRateEstimate> estimates(mesh.size());
  parallel_for(mesh.size(), [&](std::size_t i) {
    const ProbabilityDistribution mu = effective_source(rho, mesh.points[i]).mu;
    estimates[i] = empirical_basis_rate(mu, n, config, trials, derive_seed(seed, i));
  });

  std::vector<double> means(mesh.size());
  for (std::size_t i = 0; i < mesh.size(); ++i) means[i] = estimates[i].mean;

  SearchResult out = select_basis(means, mesh);
  out.standard_error = estimates[out.best_index].standard_error;
  out.trials = trials;
  out.uncertainty =
      static_cast<double>(boundary_uncertainty(config)) / static_cast<double>(n) +
      out.standard_error;
  return out;
}

}  // namespace qzip
