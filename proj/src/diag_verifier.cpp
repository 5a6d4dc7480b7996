#include "qzip/diag_verifier.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qzip {

namespace {

constexpr Eigen::Index kMaxRegisterDim = 4096;

Eigen::Index checked_power(int dim, int positions) {
  if (dim < 2 || positions < 1) {
    throw std::invalid_argument("register shape: need dim >= 2 and positions >= 1");
  }
  Eigen::Index total = 1;
  for (int i = 0; i < positions; ++i) {
    total *= dim;
    if (total > kMaxRegisterDim) {
      throw std::invalid_argument("register dimension exceeds the 4096-amplitude limit");
    }
  }
  return total;
}

// Digit-wise (j + i) mod d over the base-d expansions of the two indices.
Eigen::Index digit_add(Eigen::Index j, Eigen::Index i, int dim, int positions) {
  Eigen::Index out = 0;
  Eigen::Index place = 1;
  for (int p = 0; p < positions; ++p) {
    const Eigen::Index dj = (j / place) % dim;
    const Eigen::Index di = (i / place) % dim;
    out += ((dj + di) % dim) * place;
    place *= dim;
  }
  return out;
}

Eigen::Index digit_sub(Eigen::Index j, Eigen::Index i, int dim, int positions) {
  Eigen::Index out = 0;
  Eigen::Index place = 1;
  for (int p = 0; p < positions; ++p) {
    const Eigen::Index dj = (j / place) % dim;
    const Eigen::Index di = (i / place) % dim;
    out += ((dj - di + dim) % dim) * place;
    place *= dim;
  }
  return out;
}

void shuffle_rows(Matrix& m, int dim, int positions, bool inverse) {
  const Eigen::Index n = m.rows();
  Vector scratch(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const Eigen::Index target =
          inverse ? digit_sub(j, i, dim, positions) : digit_add(j, i, dim, positions);
      scratch(target) = m(i, j);
    }
    m.row(i) = scratch.transpose();
  }
}

}  // namespace

JointState::JointState(Matrix coefficients, int dim, int positions)
    : m_(std::move(coefficients)), dim_(dim), positions_(positions) {
  const Eigen::Index total = checked_power(dim, positions);
  if (m_.rows() != total || m_.cols() != total) {
    throw std::invalid_argument("JointState: coefficient matrix shape mismatch");
  }
}

JointState JointState::with_blank_ancilla(const PureState& psi, int dim, int positions) {
  const Eigen::Index total = checked_power(dim, positions);
  if (psi.dim() != total) throw std::invalid_argument("JointState: state dimension mismatch");
  Matrix m = Matrix::Zero(total, total);
  m.col(0) = psi.amplitudes();
  return JointState(std::move(m), dim, positions);
}

void DuplicationOp::apply(JointState& state) const {
  shuffle_rows(state.coefficients(), dim, positions, /*inverse=*/false);
}

void DuplicationOp::apply_inverse(JointState& state) const {
  shuffle_rows(state.coefficients(), dim, positions, /*inverse=*/true);
}

JointState apply_duplication(const PureState& psi, const PureState& ancilla, int dim,
                             int positions) {
  if (ancilla.dim() != psi.dim()) {
    throw std::invalid_argument("apply_duplication: ancilla dimension mismatch");
  }
  if (std::abs(std::abs(ancilla.amplitudes()(0)) - 1.0) > kNormTolerance) {
    throw std::invalid_argument("apply_duplication: ancilla must be the all-zero state");
  }
  return apply_duplication(psi, dim, positions);
}

JointState apply_duplication(const PureState& psi, int dim, int positions) {
  JointState state = JointState::with_blank_ancilla(psi, dim, positions);
  DuplicationOp{dim, positions}.apply(state);
  return state;
}

PermutationCircuit::PermutationCircuit(std::vector<std::uint32_t> table) : table_(std::move(table)) {
  std::vector<std::uint8_t> seen(table_.size(), 0);
  for (const std::uint32_t v : table_) {
    if (v >= table_.size() || seen[v]) {
      throw std::invalid_argument("PermutationCircuit: table is not a bijection");
    }
    seen[v] = 1;
  }
}

PermutationCircuit PermutationCircuit::random(std::size_t size, Rng& rng) {
  std::vector<std::uint32_t> table(size);
  std::iota(table.begin(), table.end(), 0u);
  for (std::size_t i = size; i-- > 1;) {
    std::swap(table[i], table[rng.below(i + 1)]);
  }
  return PermutationCircuit(std::move(table));
}

UnitaryMatrix PermutationCircuit::to_unitary() const {
  const auto n = static_cast<Eigen::Index>(table_.size());
  Matrix m = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(table_[static_cast<std::size_t>(i)], i) = 1.0;
  return UnitaryMatrix(std::move(m));
}

double theorem1_residual(const UnitaryMatrix& c, const PureState& psi, int dim, int positions) {
  const Eigen::Index total = checked_power(dim, positions);
  if (c.dim() != total || psi.dim() != total) {
    throw std::invalid_argument("theorem1_residual: dimension mismatch");
  }
  JointState state = JointState::with_blank_ancilla(psi, dim, positions);
  const DuplicationOp dup{dim, positions};
  dup.apply(state);
  state.coefficients() = c.entries() * state.coefficients() * c.entries().transpose();
  dup.apply_inverse(state);

  Matrix reference = Matrix::Zero(total, total);
  reference.col(0) = c.entries() * psi.amplitudes();
  return (state.coefficients() - reference).norm();
}

double theorem1_residual(const PermutationCircuit& c, const PureState& psi, int dim,
                         int positions) {
  return theorem1_residual(c.to_unitary(), psi, dim, positions);
}

double phase_counterexample_check(double alpha) {
  Matrix x(2, 2);
  x << 0.0, 1.0, 1.0, 0.0;
  Matrix d = Matrix::Identity(2, 2);
  d(1, 1) = std::exp(Complex(0.0, alpha));
  const Matrix c = x * d;

  Vector plus(2);
  plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  return theorem1_residual(UnitaryMatrix(c), PureState(std::move(plus)), 2, 1);
}

DensityMatrix duplicate_and_reduce(const DensityMatrix& rho) {
  const Eigen::Index d = rho.dim();
  const Eigen::Index total = d * d;
  Matrix dup = Matrix::Zero(total, total);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      dup(i * d + (i + j) % d, i * d + j) = 1.0;
    }
  }
  Matrix blank = Matrix::Zero(d, d);
  blank(0, 0) = 1.0;
  const Matrix joint = dup * tensor_product(rho.entries(), blank) * dup.adjoint();
  return partial_trace(DensityMatrix(joint), d, d, Subsystem::B);
}

bool near_permutation(const UnitaryMatrix& u, double tol) {
  for (Eigen::Index r = 0; r < u.dim(); ++r) {
    double row_max = 0.0;
    for (Eigen::Index c = 0; c < u.dim(); ++c) {
      row_max = std::max(row_max, std::abs(u.entries()(r, c)));
    }
    if (row_max < 1.0 - tol) return false;
  }
  return true;
}

}  // namespace qzip
