#pragma once

#include <cstdint>
#include <vector>

#include "qzip/quantum_core.hpp"

namespace qzip {

// An i.i.d. source: pure signal states with prior probabilities.
struct SignalEnsemble {
  SignalEnsemble(std::vector<PureState> states_in, ProbabilityDistribution probs_in);

  std::vector<PureState> states;
  ProbabilityDistribution probs;
};

// The diagonal source seen by a machine whose computational basis is the
// given one: mu_j = <e_j| rho |e_j> where e_j are the basis columns.
struct EffectiveSource {
  UnitaryMatrix basis;
  ProbabilityDistribution mu;
};

DensityMatrix density_matrix(const SignalEnsemble& ensemble);

EffectiveSource effective_source(const DensityMatrix& rho, const UnitaryMatrix& basis);

// Shannon entropy, in bits, of the effective source distribution. Reduces to
// the von Neumann entropy when the basis matches the eigenbasis, and never
// falls below it otherwise.
double condensation_rate(const DensityMatrix& rho, const UnitaryMatrix& basis);

// Entropy of mu_j = sum_i |U_ij|^2 lambda_i over the spectrum of rho; the
// rate as a function of the basis mismatch alone. H(I, rho) = S(rho).
double mismatch_entropy(const UnitaryMatrix& u, const DensityMatrix& rho);

// n i.i.d. symbol draws from mu, deterministic for a given seed.
std::vector<std::uint8_t> sample_block(const ProbabilityDistribution& mu, std::size_t n,
                                       std::uint64_t seed);

}  // namespace qzip
