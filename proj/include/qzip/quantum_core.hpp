#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <vector>

namespace qzip {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

inline constexpr double kNormTolerance = 1e-12;
inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kTraceTolerance = 1e-12;
inline constexpr double kPsdTolerance = 1e-12;
inline constexpr double kUnitaryTolerance = 1e-10;
inline constexpr double kProbabilityTolerance = 1e-12;

// Classical probability vector: entries in [0, 1], unit sum.
class ProbabilityDistribution {
 public:
  explicit ProbabilityDistribution(std::vector<double> probs);
  static ProbabilityDistribution uniform(std::size_t size);

  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  const std::vector<double>& probs() const { return probs_; }

 private:
  std::vector<double> probs_;
};

// Unit-norm complex amplitude vector.
class PureState {
 public:
  explicit PureState(Vector amplitudes);
  static PureState basis_state(Eigen::Index dim, Eigen::Index index);

  Eigen::Index dim() const { return amps_.size(); }
  const Vector& amplitudes() const { return amps_; }
  Matrix projector() const { return amps_ * amps_.adjoint(); }

 private:
  Vector amps_;
};

// Hermitian, positive semidefinite, unit-trace matrix.
class DensityMatrix {
 public:
  explicit DensityMatrix(Matrix entries);
  static DensityMatrix pure(const PureState& psi);
  static DensityMatrix maximally_mixed(Eigen::Index dim);
  static DensityMatrix diagonal(const ProbabilityDistribution& probs);

  Eigen::Index dim() const { return entries_.rows(); }
  const Matrix& entries() const { return entries_; }

 private:
  Matrix entries_;
};

class UnitaryMatrix {
 public:
  explicit UnitaryMatrix(Matrix entries);
  static UnitaryMatrix identity(Eigen::Index dim);

  Eigen::Index dim() const { return entries_.rows(); }
  const Matrix& entries() const { return entries_; }

 private:
  Matrix entries_;
};

// <psi| rho |psi>.
double fidelity_pure_mixed(const PureState& psi, const DensityMatrix& rho);

// (tr sqrt(sqrt(omega) rho sqrt(omega)))^2, via Hermitian eigendecomposition.
double fidelity_general(const DensityMatrix& rho, const DensityMatrix& omega);

// Entropies in bits; 0 log 0 is treated as 0.
double von_neumann_entropy(const DensityMatrix& rho);
double shannon_entropy(const ProbabilityDistribution& p);

Matrix tensor_product(const Matrix& a, const Matrix& b);
Vector tensor_product(const Vector& a, const Vector& b);

enum class Subsystem { A, B };

// Traces out the named subsystem of a state on A (x) B.
DensityMatrix partial_trace(const DensityMatrix& joint, Eigen::Index dim_a, Eigen::Index dim_b,
                            Subsystem traced_out);

struct Eigendecomposition {
  ProbabilityDistribution eigenvalues;  // descending
  UnitaryMatrix eigenvectors;           // columns, phase-canonicalized
};

class Rng;

// Haar-distributed unitary (QR of a Ginibre matrix with phase fixing).
UnitaryMatrix random_unitary(Eigen::Index dim, Rng& rng);
// Hilbert-Schmidt random mixed state: G G^dagger normalized.
DensityMatrix random_density(Eigen::Index dim, Rng& rng);
PureState random_pure(Eigen::Index dim, Rng& rng);

// Deterministic spectral decomposition: eigenvalues sorted descending,
// eigenvectors phase-fixed so the first significant component is real and
// positive; degenerate groups are ordered lexicographically.
Eigendecomposition eigendecomposition(const DensityMatrix& rho);

}  // namespace qzip
