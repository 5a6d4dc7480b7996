#pragma once

#include <cstddef>
#include <cstdint>

#include "qzip/bitstring.hpp"
#include "qzip/rng.hpp"

namespace qzip {

// Smeared boundary-location measurement: each POVM averages the zero-suffix
// projectors at cluster_size consecutive positions, and clusters are placed
// at basepoints that are multiples of step, swept from the top down.
struct SmearConfig {
  int cluster_size;          // Y
  int step;                  // L; kept > Y unless deliberately overridden
  std::size_t block_length;  // n

  SmearConfig(int cluster_size_in, int step_in, std::size_t block_length_in);
  static SmearConfig with_default_step(int cluster_size, std::size_t block_length);
};

// Width of the position interval the sweep can pin the boundary to: L + Y.
int boundary_uncertainty(const SmearConfig& config);

// A register of n (qu)bits: positions 1..k hold the sampled content, the
// rest are zero. The sampled bits are one classical realization of the
// boundary model; projector outcomes are read off them directly, which
// reproduces the ensemble statistics exactly because every state involved is
// diagonal. `effective_boundary` shrinks when an erroneous positive
// projection zeroes part of the content region.
class IdealizedBlock {
 public:
  static IdealizedBlock sample(std::size_t n, std::size_t k, Rng& rng);
  static IdealizedBlock from_bits(BitString bits);
  static IdealizedBlock with_boundary(BitString bits, std::size_t k);

  std::size_t length() const { return n_; }
  std::size_t boundary() const { return k_; }
  std::size_t effective_boundary() const { return effective_k_; }
  std::size_t last_one() const { return last_one_; }
  const BitString& bits() const { return bits_; }

  void shrink_effective_boundary(std::size_t new_k) { effective_k_ = new_k; }

 private:
  IdealizedBlock(BitString bits, std::size_t k);

  BitString bits_;
  std::size_t n_ = 0;
  std::size_t k_ = 0;
  std::size_t effective_k_ = 0;
  std::size_t last_one_ = 0;
};

// Two-sided exponential relaxation of the sharp-boundary model: content bits
// are zero with probability left_zero_prob, and position k+s can leak a one
// with probability right_one_amplitude * right_one_decay^s.
struct DecayModel {
  double left_zero_prob = 0.5;
  double right_one_amplitude = 0.0;
  double right_one_decay = 0.5;
};
IdealizedBlock sample_decaying_block(std::size_t n, std::size_t k, const DecayModel& model,
                                     Rng& rng);

struct ProjectorResult {
  int outcome;             // 1 = zero-suffix confirmed, 0 = content found
  double fidelity_factor;  // 1, 1 - 2^{-s}, or 0 on an erroneous projection
};

// Applies the zero-suffix projector at position l (0 <= l <= n).
ProjectorResult projector_outcome(IdealizedBlock& block, std::size_t l);

// Applies one smeared POVM at the given basepoint: a uniformly random member
// projector of the cluster, with the choice forgotten.
ProjectorResult smeared_povm(IdealizedBlock& block, std::size_t basepoint,
                             const SmearConfig& config, Rng& rng);

struct TruncationResult {
  std::size_t lo = 0;  // inclusive bounds on the boundary position
  std::size_t hi = 0;
  double fidelity = 1.0;
  bool error_flag = false;
  int povms_applied = 0;
  std::size_t stop_basepoint = 0;  // block_length + 1 when the sweep ran out

  std::size_t interval_width() const { return hi - lo; }
  std::size_t retained_qubits() const { return hi; }
};

// Sweeps smeared POVMs from the highest basepoint downward, stopping at the
// first content hit; the returned interval spans the outer edges of the last
// two clusters.
TruncationResult run_truncation(IdealizedBlock& block, const SmearConfig& config, Rng& rng);

// Exact closed forms for the sharp-boundary model, as a function of
// K = k mod L. Both are exact for boundaries away from the register edges.
double analytic_fidelity(int k_mod_step, int cluster_size, int step);
double analytic_error(int k_mod_step, int cluster_size, int step);

// Full density-matrix realization of the same sweep for registers of up to
// 12 qubits; the cross-check oracle for the sampled-bits shortcut.
struct DmTruncationResult {
  std::size_t lo = 0;
  std::size_t hi = 0;
  bool error_flag = false;
  int povms_applied = 0;
  std::size_t stop_basepoint = 0;  // block_length + 1 when the sweep ran out
  double fidelity = -1.0;          // Uhlmann fidelity to the initial state, if requested
};
DmTruncationResult run_truncation_dm(int qubits, std::size_t boundary, const SmearConfig& config,
                                     Rng& rng, bool compute_fidelity = false);

}  // namespace qzip
