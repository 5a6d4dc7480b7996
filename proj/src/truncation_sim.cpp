#include "qzip/truncation_sim.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <optional>
#include <stdexcept>

#include "qzip/quantum_core.hpp"

namespace qzip {

namespace {

double square(double x) { return x * x; }

// 2^{-s} with saturation for huge separations.
double half_power(std::size_t s) {
  return s > 1074 ? 0.0 : std::ldexp(1.0, -static_cast<int>(s));
}

}  // namespace

SmearConfig::SmearConfig(int cluster_size_in, int step_in, std::size_t block_length_in)
    : cluster_size(cluster_size_in), step(step_in), block_length(block_length_in) {
  if (cluster_size < 1) throw std::invalid_argument("SmearConfig: cluster size must be >= 1");
  if (step < 1) throw std::invalid_argument("SmearConfig: step must be >= 1");
  if (block_length < static_cast<std::size_t>(cluster_size)) {
    throw std::invalid_argument("SmearConfig: block shorter than one cluster");
  }
}

SmearConfig SmearConfig::with_default_step(int cluster_size, std::size_t block_length) {
  return SmearConfig(cluster_size, cluster_size + 1, block_length);
}

int boundary_uncertainty(const SmearConfig& config) { return config.step + config.cluster_size; }

IdealizedBlock::IdealizedBlock(BitString bits, std::size_t k)
    : bits_(std::move(bits)), n_(bits_.size()), k_(k), effective_k_(k),
      last_one_(bits_.last_one_position()) {}

IdealizedBlock IdealizedBlock::sample(std::size_t n, std::size_t k, Rng& rng) {
  if (k > n) throw std::invalid_argument("IdealizedBlock: boundary beyond block");
  std::vector<std::uint64_t> words((n + 63) / 64, 0ULL);
  const std::size_t full = k / 64;
  for (std::size_t w = 0; w < full; ++w) words[w] = rng.bits64();
  if ((k & 63) != 0) words[full] = rng.bits64() & ((1ULL << (k & 63)) - 1);
  return IdealizedBlock(BitString::from_words(std::move(words), n), k);
}

IdealizedBlock IdealizedBlock::from_bits(BitString bits) {
  const std::size_t boundary = bits.last_one_position();
  return IdealizedBlock(std::move(bits), boundary);
}

IdealizedBlock IdealizedBlock::with_boundary(BitString bits, std::size_t k) {
  if (k > bits.size()) throw std::invalid_argument("IdealizedBlock: boundary beyond block");
  return IdealizedBlock(std::move(bits), k);
}

IdealizedBlock sample_decaying_block(std::size_t n, std::size_t k, const DecayModel& model,
                                     Rng& rng) {
  if (k > n) throw std::invalid_argument("sample_decaying_block: boundary beyond block");
  BitString bits = BitString::zeros(n);
  for (std::size_t p = 1; p <= k; ++p) {
    if (rng.uniform() >= model.left_zero_prob) bits.set_bit(p - 1, true);
  }
  double leak = model.right_one_amplitude * model.right_one_decay;
  for (std::size_t p = k + 1; p <= n && leak > 1e-300; ++p) {
    if (rng.uniform() < std::min(1.0, leak)) bits.set_bit(p - 1, true);
    leak *= model.right_one_decay;
  }
  return IdealizedBlock::with_boundary(std::move(bits), k);
}

ProjectorResult projector_outcome(IdealizedBlock& block, std::size_t l) {
  if (l > block.length()) throw std::invalid_argument("projector_outcome: position out of range");
  const std::size_t content_top = block.last_one();
  const std::size_t effective = block.effective_boundary();
  if (l >= content_top) {
    // Zero suffix confirmed. Positions (l, effective] were content in the
    // ensemble description, so confirming them zero is the error case.
    if (l < effective) {
      block.shrink_effective_boundary(l);
      return ProjectorResult{1, 0.0};
    }
    return ProjectorResult{1, 1.0};
  }
  const std::size_t s = effective > l ? effective - l : 1;
  return ProjectorResult{0, 1.0 - half_power(s)};
}

ProjectorResult smeared_povm(IdealizedBlock& block, std::size_t basepoint,
                             const SmearConfig& config, Rng& rng) {
  const auto y = static_cast<std::size_t>(config.cluster_size);
  if (basepoint + y - 1 > block.length()) {
    throw std::invalid_argument("smeared_povm: cluster extends past the block");
  }
  const std::size_t member = basepoint + rng.below(y);
  return projector_outcome(block, member);
}

TruncationResult run_truncation(IdealizedBlock& block, const SmearConfig& config, Rng& rng) {
  if (block.length() != config.block_length) {
    throw std::invalid_argument("run_truncation: block/config length mismatch");
  }
  const auto y = static_cast<std::size_t>(config.cluster_size);
  const auto step = static_cast<std::size_t>(config.step);
  const std::size_t n = block.length();
  const std::size_t top = ((n - y) / step) * step;

  TruncationResult out;
  std::optional<std::size_t> stop_basepoint;
  std::size_t l = top;
  bool exhausted = false;

  // Basepoints at or above the effective boundary confirm zeros with
  // certainty and cause no disturbance; account for them arithmetically.
  // Only valid when no content leaks past the boundary.
  const std::size_t ek = block.effective_boundary();
  if (block.last_one() <= ek) {
    if (ek == 0) {
      out.povms_applied = static_cast<int>(top / step + 1);
      exhausted = true;
    } else if (ek <= top) {
      const std::size_t first_risky = ((ek - 1) / step) * step;
      out.povms_applied = static_cast<int>((top - first_risky) / step);
      l = first_risky;
    }
  }

  if (!exhausted) {
    for (;;) {
      ++out.povms_applied;
      const ProjectorResult r = smeared_povm(block, l, config, rng);
      if (r.outcome == 1 && r.fidelity_factor == 0.0) out.error_flag = true;
      out.fidelity *= r.fidelity_factor;
      if (r.outcome == 0) {
        stop_basepoint = l;
        break;
      }
      if (l == 0) break;
      l -= step;
    }
  }

  if (stop_basepoint) {
    out.lo = *stop_basepoint;
    out.hi = std::min(n, *stop_basepoint + step + y - 1);
    out.stop_basepoint = *stop_basepoint;
  } else {
    out.lo = 0;
    out.hi = std::min(n, step + y - 1);
    out.stop_basepoint = n + 1;
  }
  return out;
}

double analytic_fidelity(int k_mod_step, int cluster_size, int step) {
  if (k_mod_step < 0) throw std::invalid_argument("analytic_fidelity: K must be >= 0");
  if (cluster_size < 1 || step < 1) {
    throw std::invalid_argument("analytic_fidelity: Y and L must be >= 1");
  }
  const int y = cluster_size;
  if (k_mod_step < y && k_mod_step + step < y) {
    throw std::invalid_argument("analytic_fidelity: step too small for the cluster");
  }
  if (k_mod_step >= y) {
    double sum = 0.0;
    for (int i = 0; i < y; ++i) {
      sum += square(1.0 - half_power(static_cast<std::size_t>(k_mod_step - i)));
    }
    return sum / y;
  }
  double left = 0.0;
  for (int s = 1; s <= k_mod_step; ++s) {
    left += square(1.0 - half_power(static_cast<std::size_t>(s)));
  }
  double next_cluster = 0.0;
  for (int i = 0; i < y; ++i) {
    next_cluster += square(1.0 - half_power(static_cast<std::size_t>(k_mod_step + step - i)));
  }
  return left / y + (static_cast<double>(y - k_mod_step) / y) * next_cluster / y;
}

double analytic_error(int k_mod_step, int cluster_size, int step) {
  if (k_mod_step < 0) throw std::invalid_argument("analytic_error: K must be >= 0");
  if (cluster_size < 1 || step < 1) {
    throw std::invalid_argument("analytic_error: Y and L must be >= 1");
  }
  const int y = cluster_size;
  if (k_mod_step < y && k_mod_step + step < y) {
    throw std::invalid_argument("analytic_error: step too small for the cluster");
  }
  if (k_mod_step >= y) {
    double sum = 0.0;
    for (int i = 0; i < y; ++i) sum += half_power(static_cast<std::size_t>(k_mod_step - i));
    return sum / y;
  }
  double left = 0.0;
  for (int s = 1; s <= k_mod_step; ++s) left += half_power(static_cast<std::size_t>(s));
  double next_cluster = 0.0;
  for (int i = 0; i < y; ++i) {
    next_cluster += half_power(static_cast<std::size_t>(k_mod_step + step - i));
  }
  return left / y + (static_cast<double>(y - k_mod_step) / y) * next_cluster / y;
}

namespace {

// Uhlmann fidelity on raw Hermitian PSD matrices; local to the register-level
// simulator, whose states are too large for the DensityMatrix invariants to
// be re-checked on every step.
double uhlmann_fidelity_raw(const Matrix& rho, const Matrix& omega) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(omega);
  Eigen::VectorXd evals = solver.eigenvalues();
  for (Eigen::Index i = 0; i < evals.size(); ++i) {
    evals(i) = std::sqrt(std::max(0.0, evals(i)));
  }
  const Matrix sqrt_omega =
      solver.eigenvectors() * evals.asDiagonal() * solver.eigenvectors().adjoint();
  Eigen::SelfAdjointEigenSolver<Matrix> inner(sqrt_omega * rho * sqrt_omega,
                                              Eigen::EigenvaluesOnly);
  double root_sum = 0.0;
  for (Eigen::Index i = 0; i < inner.eigenvalues().size(); ++i) {
    root_sum += std::sqrt(std::max(0.0, inner.eigenvalues()(i)));
  }
  return root_sum * root_sum;
}

}  // namespace

DmTruncationResult run_truncation_dm(int qubits, std::size_t boundary, const SmearConfig& config,
                                     Rng& rng, bool compute_fidelity) {
  if (qubits < 1 || qubits > 12) {
    throw std::invalid_argument("run_truncation_dm: register must have 1..12 qubits");
  }
  const auto n = static_cast<std::size_t>(qubits);
  if (config.block_length != n) {
    throw std::invalid_argument("run_truncation_dm: block/config length mismatch");
  }
  if (boundary > n) throw std::invalid_argument("run_truncation_dm: boundary beyond block");

  const Eigen::Index dim = Eigen::Index{1} << qubits;
  // Position p in 1..n maps to qubit bit (n - p): the zero-suffix projector
  // at l keeps exactly the indices divisible by 2^(n-l).
  auto in_subspace = [&](Eigen::Index i, std::size_t l) {
    const std::size_t suffix = n - l;
    return (static_cast<std::uint64_t>(i) & ((1ULL << suffix) - 1)) == 0;
  };

  Matrix rho = Matrix::Zero(dim, dim);
  const double weight = half_power(boundary);
  for (Eigen::Index i = 0; i < dim; ++i) {
    if (in_subspace(i, boundary)) rho(i, i) = weight;
  }
  Matrix initial;
  if (compute_fidelity) initial = rho;

  const auto y = static_cast<std::size_t>(config.cluster_size);
  const auto step = static_cast<std::size_t>(config.step);
  const std::size_t top = ((n - y) / step) * step;

  DmTruncationResult out;
  out.stop_basepoint = n + 1;
  std::size_t effective = boundary;
  std::size_t l = top;
  for (;;) {
    ++out.povms_applied;
    const std::size_t member = l + rng.below(y);
    double p_one = 0.0;
    for (Eigen::Index i = 0; i < dim; ++i) {
      if (in_subspace(i, member)) p_one += rho(i, i).real();
    }
    if (rng.uniform() < p_one) {
      for (Eigen::Index r = 0; r < dim; ++r) {
        const bool row_in = in_subspace(r, member);
        for (Eigen::Index c = 0; c < dim; ++c) {
          if (!row_in || !in_subspace(c, member)) rho(r, c) = 0.0;
        }
      }
      rho /= p_one;
      if (member < effective) {
        out.error_flag = true;
        effective = member;
      }
      if (l == 0) break;
      l -= step;
    } else {
      for (Eigen::Index r = 0; r < dim; ++r) {
        const bool row_in = in_subspace(r, member);
        for (Eigen::Index c = 0; c < dim; ++c) {
          if (row_in || in_subspace(c, member)) rho(r, c) = 0.0;
        }
      }
      rho /= 1.0 - p_one;
      out.stop_basepoint = l;
      break;
    }
  }

  if (out.stop_basepoint <= n) {
    out.lo = out.stop_basepoint;
    out.hi = std::min(n, out.stop_basepoint + step + y - 1);
  } else {
    out.lo = 0;
    out.hi = std::min(n, step + y - 1);
  }
  if (compute_fidelity) out.fidelity = uhlmann_fidelity_raw(initial, rho);
  return out;
}

}  // namespace qzip
