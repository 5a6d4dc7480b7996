#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "qzip/quantum_core.hpp"
#include "qzip/source_model.hpp"
#include "qzip/truncation_sim.hpp"

namespace qzip {

// A 2x2 basis from its two free angles, after quotienting out the column
// phases that cannot affect any diagonal expectation:
//   [ cos(theta)              sin(theta)             ]
//   [ sin(theta) e^{i phi}   -cos(theta) e^{i phi}   ]
UnitaryMatrix two_angle_basis(double theta, double phi);

// Frobenius distance minimized over per-column phases (the freedom that
// leaves condensation rates unchanged).
double phase_reduced_distance(const UnitaryMatrix& a, const UnitaryMatrix& b);

// As above, additionally minimized over column order.
double phase_perm_reduced_distance(const UnitaryMatrix& a, const UnitaryMatrix& b);

struct MeshAngles {
  double theta;
  double phi;
};

// Finite candidate-basis set covering the phase-reduced group to radius
// `spacing` in Frobenius distance.
struct UnitaryMesh {
  std::vector<UnitaryMatrix> points;
  std::vector<MeshAngles> angles;  // parallel to points
  double spacing = 0.0;

  std::size_t size() const { return points.size(); }
};

// Centered (theta, phi) grid sized so every basis has a mesh point within
// `delta` after phase reduction; O(1/delta^2) points. Only d = 2 for now.
UnitaryMesh build_mesh(int d, double delta);

// Condensation rate of rho for every candidate basis.
std::vector<double> rate_table(const DensityMatrix& rho, const UnitaryMesh& mesh);

struct SearchResult {
  std::size_t best_index = 0;
  double best_rate = 0.0;
  double entropy_estimate = 0.0;
  UnitaryMatrix basis_estimate = UnitaryMatrix::identity(2);
  MeshAngles basis_angles{0.0, 0.0};
  std::vector<std::pair<std::size_t, double>> rates;  // (index, rate)
  double uncertainty = 0.0;      // interval slack plus statistical error
  double standard_error = 0.0;   // of the winning empirical rate
  std::size_t trials = 0;
};

// Argmin over the table; ties break to the lowest index.
SearchResult select_basis(const std::vector<double>& table, const UnitaryMesh& mesh);

// Evaluates every candidate basis on freshly sampled blocks: condense with
// the LZ codec, locate the data/blank boundary, and score the retained
// length per signal. The minimum is the entropy and eigenbasis estimate; its
// uncertainty carries the (L + Y)/n interval slack on top of the sampling
// error. Finite-block dictionary-coding redundancy biases the estimate
// upward and is reported through the rate itself, not hidden.
SearchResult empirical_search(const SignalEnsemble& ensemble, const UnitaryMesh& mesh,
                              std::size_t n, const SmearConfig& config, std::size_t trials,
                              std::uint64_t seed);

// Boundary-location estimate for one basis: mean retained fraction over
// `trials` condensed blocks.
struct BasisRateEstimate {
  double mean = 0.0;
  double standard_error = 0.0;
};
BasisRateEstimate empirical_basis_rate(const ProbabilityDistribution& mu, std::size_t n,
                                       const SmearConfig& config, std::size_t trials,
                                       std::uint64_t seed);

}  // namespace qzip
