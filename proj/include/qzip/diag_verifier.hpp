#pragma once

#include <cstdint>
#include <vector>

#include "qzip/quantum_core.hpp"
#include "qzip/rng.hpp"

namespace qzip {

// Pure state of register A (dimension d^n) together with a duplicate register
// B of the same size, stored as the coefficient matrix M of
// |x> = sum_{I,J} M(I,J) |I>_A |J>_B. Keeping the matrix form makes the
// duplication operator a per-row column shuffle and partial traces plain
// matrix products.
class JointState {
 public:
  JointState(Matrix coefficients, int dim, int positions);

  static JointState with_blank_ancilla(const PureState& psi, int dim, int positions);

  const Matrix& coefficients() const { return m_; }
  Matrix& coefficients() { return m_; }
  int dim() const { return dim_; }
  int positions() const { return positions_; }

  double norm() const { return m_.norm(); }
  DensityMatrix reduced_a() const { return DensityMatrix(m_ * m_.adjoint()); }
  DensityMatrix reduced_b() const { return DensityMatrix((m_.adjoint() * m_).transpose()); }

 private:
  Matrix m_;
  int dim_;
  int positions_;
};

// Per-signal copy map |i>|j> -> |i>|(j + i) mod d>, applied at each of the n
// aligned positions of the A and B registers.
struct DuplicationOp {
  int dim;
  int positions;

  void apply(JointState& state) const;
  void apply_inverse(JointState& state) const;
};

// Duplicates `psi` against a blank ancilla: sum a_I |I>|0> -> sum a_I |I>|I>.
// Throws if the ancilla is not the all-zero basis state.
JointState apply_duplication(const PureState& psi, const PureState& ancilla, int dim,
                             int positions);
JointState apply_duplication(const PureState& psi, int dim, int positions);

class PermutationCircuit {
 public:
  explicit PermutationCircuit(std::vector<std::uint32_t> table);
  static PermutationCircuit random(std::size_t size, Rng& rng);

  std::size_t size() const { return table_.size(); }
  std::uint32_t operator()(std::uint32_t i) const { return table_[i]; }
  UnitaryMatrix to_unitary() const;

 private:
  std::vector<std::uint32_t> table_;
};

// || D^-1 (C (x) C) D (|psi>|0>) - (C (x) I)(|psi>|0>) ||_2. Zero exactly
// when C permutes the computational basis states with no phases.
double theorem1_residual(const UnitaryMatrix& c, const PureState& psi, int dim, int positions);
double theorem1_residual(const PermutationCircuit& c, const PureState& psi, int dim,
                         int positions);

// Residual for C = X . diag(1, e^{i alpha}) on input |+>|0>; nonzero for any
// alpha not a multiple of 2 pi, witnessing that even a pure phase on top of a
// permutation breaks the commutation.
double phase_counterexample_check(double alpha);

// Tr_B[ D (rho (x) |0><0|) D^dagger ] for a single signal: the diagonal
// effective source seen through the duplication route.
DensityMatrix duplicate_and_reduce(const DensityMatrix& rho);

// True when every row holds a single entry of unit magnitude up to `tol`,
// i.e. the matrix is within tol of a phased permutation.
bool near_permutation(const UnitaryMatrix& u, double tol);

}  // namespace qzip
