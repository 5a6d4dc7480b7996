#include "qzip/source_model.hpp"

#include <cmath>
#include <stdexcept>

#include "qzip/rng.hpp"

namespace qzip {

SignalEnsemble::SignalEnsemble(std::vector<PureState> states_in, ProbabilityDistribution probs_in)
    : states(std::move(states_in)), probs(std::move(probs_in)) {
  if (states.empty()) throw std::invalid_argument("SignalEnsemble: no states");
  if (states.size() != probs.size()) {
    throw std::invalid_argument("SignalEnsemble: states/probs length mismatch");
  }
  for (const PureState& s : states) {
    if (s.dim() != states.front().dim()) {
      throw std::invalid_argument("SignalEnsemble: states of mixed dimension");
    }
  }
}

DensityMatrix density_matrix(const SignalEnsemble& ensemble) {
  const Eigen::Index d = ensemble.states.front().dim();
  Matrix rho = Matrix::Zero(d, d);
  for (std::size_t i = 0; i < ensemble.states.size(); ++i) {
    rho += ensemble.probs[i] * ensemble.states[i].projector();
  }
  return DensityMatrix(std::move(rho));
}

EffectiveSource effective_source(const DensityMatrix& rho, const UnitaryMatrix& basis) {
  if (rho.dim() != basis.dim()) {
    throw std::invalid_argument("effective_source: dimension mismatch");
  }
  const Matrix rotated = basis.entries().adjoint() * rho.entries() * basis.entries();
  std::vector<double> mu(static_cast<std::size_t>(rho.dim()));
  for (Eigen::Index j = 0; j < rho.dim(); ++j) {
    mu[static_cast<std::size_t>(j)] = std::max(0.0, rotated(j, j).real());
  }
  return EffectiveSource{basis, ProbabilityDistribution(std::move(mu))};
}

double condensation_rate(const DensityMatrix& rho, const UnitaryMatrix& basis) {
  return shannon_entropy(effective_source(rho, basis).mu);
}

double mismatch_entropy(const UnitaryMatrix& u, const DensityMatrix& rho) {
  if (u.dim() != rho.dim()) throw std::invalid_argument("mismatch_entropy: dimension mismatch");
  const ProbabilityDistribution lambda = eigendecomposition(rho).eigenvalues;
  const Eigen::Index d = rho.dim();
  std::vector<double> mu(static_cast<std::size_t>(d), 0.0);
  for (Eigen::Index j = 0; j < d; ++j) {
    double m = 0.0;
    for (Eigen::Index i = 0; i < d; ++i) {
      m += std::norm(u.entries()(i, j)) * lambda[static_cast<std::size_t>(i)];
    }
    mu[static_cast<std::size_t>(j)] = m;
  }
  return shannon_entropy(ProbabilityDistribution(std::move(mu)));
}

std::vector<std::uint8_t> sample_block(const ProbabilityDistribution& mu, std::size_t n,
                                       std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("sample_block: n must be positive");
  if (mu.size() > 256) throw std::invalid_argument("sample_block: alphabet too large");
  Rng rng(seed);
  std::vector<std::uint8_t> out(n);
  if (mu.size() == 2) {
    const double p0 = mu[0];
    for (std::size_t i = 0; i < n; ++i) out[i] = rng.uniform() < p0 ? 0 : 1;
    return out;
  }
  std::vector<double> cumulative(mu.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    acc += mu[i];
    cumulative[i] = acc;
  }
  cumulative.back() = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double u = rng.uniform();
    std::uint8_t symbol = 0;
    while (u >= cumulative[symbol]) ++symbol;
    out[i] = symbol;
  }
  return out;
}

}  // namespace qzip
