#include "qzip/quantum_core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "qzip/rng.hpp"

namespace qzip {

namespace {

void check_dim_match(Eigen::Index a, Eigen::Index b, const char* what) {
  if (a != b) throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

// Eigenvalues of a Hermitian matrix, ascending (Eigen's order).
Eigen::VectorXd hermitian_eigenvalues(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

double clip_probability(double x) { return std::min(1.0, std::max(0.0, x)); }

double entropy_bits(const std::vector<double>& p) {
  double h = 0.0;
  for (double x : p) {
    if (x > 0.0) h -= x * std::log2(x);
  }
  return h;
}

}  // namespace

ProbabilityDistribution::ProbabilityDistribution(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) throw std::invalid_argument("ProbabilityDistribution: empty");
  double sum = 0.0;
  for (double& x : probs_) {
    if (x < -kProbabilityTolerance || x > 1.0 + kProbabilityTolerance) {
      throw std::invalid_argument("ProbabilityDistribution: entry outside [0, 1]");
    }
    x = clip_probability(x);
    sum += x;
  }
  if (std::abs(sum - 1.0) > kProbabilityTolerance) {
    throw std::invalid_argument("ProbabilityDistribution: does not sum to 1");
  }
}

ProbabilityDistribution ProbabilityDistribution::uniform(std::size_t size) {
  return ProbabilityDistribution(std::vector<double>(size, 1.0 / static_cast<double>(size)));
}

PureState::PureState(Vector amplitudes) : amps_(std::move(amplitudes)) {
  if (amps_.size() == 0) throw std::invalid_argument("PureState: empty");
  const double norm2 = amps_.squaredNorm();
  if (std::abs(norm2 - 1.0) > kNormTolerance) {
    throw std::invalid_argument("PureState: not normalized");
  }
}

PureState PureState::basis_state(Eigen::Index dim, Eigen::Index index) {
  if (index < 0 || index >= dim) throw std::invalid_argument("basis_state: index out of range");
  Vector v = Vector::Zero(dim);
  v(index) = 1.0;
  return PureState(std::move(v));
}

DensityMatrix::DensityMatrix(Matrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() == 0 || entries_.rows() != entries_.cols()) {
    throw std::invalid_argument("DensityMatrix: not square");
  }
  if ((entries_ - entries_.adjoint()).cwiseAbs().maxCoeff() > kHermitianTolerance) {
    throw std::invalid_argument("DensityMatrix: not Hermitian");
  }
  if (std::abs(entries_.trace().real() - 1.0) > kTraceTolerance ||
      std::abs(entries_.trace().imag()) > kTraceTolerance) {
    throw std::invalid_argument("DensityMatrix: trace is not 1");
  }
  const Eigen::VectorXd evals = hermitian_eigenvalues(entries_);
  if (evals.minCoeff() < -kPsdTolerance) {
    throw std::invalid_argument("DensityMatrix: not positive semidefinite");
  }
}

DensityMatrix DensityMatrix::pure(const PureState& psi) { return DensityMatrix(psi.projector()); }

DensityMatrix DensityMatrix::maximally_mixed(Eigen::Index dim) {
  return DensityMatrix(Matrix::Identity(dim, dim) / static_cast<double>(dim));
}

DensityMatrix DensityMatrix::diagonal(const ProbabilityDistribution& probs) {
  const auto d = static_cast<Eigen::Index>(probs.size());
  Matrix m = Matrix::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) m(i, i) = probs[static_cast<std::size_t>(i)];
  return DensityMatrix(std::move(m));
}

UnitaryMatrix::UnitaryMatrix(Matrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() == 0 || entries_.rows() != entries_.cols()) {
    throw std::invalid_argument("UnitaryMatrix: not square");
  }
  const Matrix gram = entries_.adjoint() * entries_;
  if ((gram - Matrix::Identity(entries_.rows(), entries_.cols())).cwiseAbs().maxCoeff() >
      kUnitaryTolerance) {
    throw std::invalid_argument("UnitaryMatrix: not unitary");
  }
}

UnitaryMatrix UnitaryMatrix::identity(Eigen::Index dim) {
  return UnitaryMatrix(Matrix::Identity(dim, dim));
}

double fidelity_pure_mixed(const PureState& psi, const DensityMatrix& rho) {
  check_dim_match(psi.dim(), rho.dim(), "fidelity_pure_mixed");
  const Complex value = (psi.amplitudes().adjoint() * rho.entries() * psi.amplitudes())(0, 0);
  if (std::abs(value.imag()) > kNormTolerance) {
    throw std::invalid_argument("fidelity_pure_mixed: expectation is not real");
  }
  return clip_probability(value.real());
}

double fidelity_general(const DensityMatrix& rho, const DensityMatrix& omega) {
  check_dim_match(rho.dim(), omega.dim(), "fidelity_general");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(omega.entries());
  Eigen::VectorXd evals = solver.eigenvalues();
  if (evals.minCoeff() < -1e-9) {
    throw std::invalid_argument("fidelity_general: input not positive semidefinite");
  }
  for (Eigen::Index i = 0; i < evals.size(); ++i) {
    evals(i) = std::sqrt(clip_probability(evals(i)));
  }
  const Matrix sqrt_omega =
      solver.eigenvectors() * evals.asDiagonal() * solver.eigenvectors().adjoint();
  const Matrix inner = sqrt_omega * rho.entries() * sqrt_omega;
  const Eigen::VectorXd inner_evals = hermitian_eigenvalues(inner);
  if (inner_evals.minCoeff() < -1e-9) {
    throw std::invalid_argument("fidelity_general: intermediate not positive semidefinite");
  }
  double root_sum = 0.0;
  for (Eigen::Index i = 0; i < inner_evals.size(); ++i) {
    root_sum += std::sqrt(std::max(0.0, inner_evals(i)));
  }
  return clip_probability(root_sum * root_sum);
}

double von_neumann_entropy(const DensityMatrix& rho) {
  const Eigen::VectorXd evals = hermitian_eigenvalues(rho.entries());
  std::vector<double> p(static_cast<std::size_t>(evals.size()));
  for (Eigen::Index i = 0; i < evals.size(); ++i) {
    if (evals(i) < -1e-9) throw std::invalid_argument("von_neumann_entropy: negative eigenvalue");
    p[static_cast<std::size_t>(i)] = clip_probability(evals(i));
  }
  return entropy_bits(p);
}

double shannon_entropy(const ProbabilityDistribution& p) { return entropy_bits(p.probs()); }

Matrix tensor_product(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Vector tensor_product(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a(i) * b;
  }
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& joint, Eigen::Index dim_a, Eigen::Index dim_b,
                            Subsystem traced_out) {
  if (dim_a * dim_b != joint.dim()) {
    throw std::invalid_argument("partial_trace: dimension mismatch");
  }
  const Matrix& m = joint.entries();
  if (traced_out == Subsystem::B) {
    Matrix out = Matrix::Zero(dim_a, dim_a);
    for (Eigen::Index i = 0; i < dim_a; ++i) {
      for (Eigen::Index j = 0; j < dim_a; ++j) {
        Complex sum = 0.0;
        for (Eigen::Index k = 0; k < dim_b; ++k) sum += m(i * dim_b + k, j * dim_b + k);
        out(i, j) = sum;
      }
    }
    return DensityMatrix(std::move(out));
  }
  Matrix out = Matrix::Zero(dim_b, dim_b);
  for (Eigen::Index i = 0; i < dim_b; ++i) {
    for (Eigen::Index j = 0; j < dim_b; ++j) {
      Complex sum = 0.0;
      for (Eigen::Index k = 0; k < dim_a; ++k) sum += m(k * dim_b + i, k * dim_b + j);
      out(i, j) = sum;
    }
  }
  return DensityMatrix(std::move(out));
}

Eigendecomposition eigendecomposition(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(rho.entries());
  const Eigen::VectorXd evals = solver.eigenvalues();
  Matrix evecs = solver.eigenvectors();
  const Eigen::Index d = rho.dim();

  // Fix each column's phase: first component with magnitude above threshold
  // becomes real and positive.
  for (Eigen::Index c = 0; c < d; ++c) {
    for (Eigen::Index r = 0; r < d; ++r) {
      const double mag = std::abs(evecs(r, c));
      if (mag > 1e-8) {
        evecs.col(c) *= std::conj(evecs(r, c)) / mag;
        break;
      }
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(d));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  auto lex_less = [&](Eigen::Index a, Eigen::Index b) {
    for (Eigen::Index r = 0; r < d; ++r) {
      const Complex x = evecs(r, a);
      const Complex y = evecs(r, b);
      if (std::abs(x.real() - y.real()) > 1e-12) return x.real() < y.real();
      if (std::abs(x.imag() - y.imag()) > 1e-12) return x.imag() < y.imag();
    }
    return false;
  };
  std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    if (std::abs(evals(a) - evals(b)) > 1e-12) return evals(a) > evals(b);
    return lex_less(a, b);
  });

  std::vector<double> sorted(static_cast<std::size_t>(d));
  Matrix sorted_vecs(d, d);
  for (Eigen::Index c = 0; c < d; ++c) {
    if (evals(order[static_cast<std::size_t>(c)]) < -1e-9) {
      throw std::invalid_argument("eigendecomposition: negative eigenvalue");
    }
    sorted[static_cast<std::size_t>(c)] = clip_probability(evals(order[static_cast<std::size_t>(c)]));
    sorted_vecs.col(c) = evecs.col(order[static_cast<std::size_t>(c)]);
  }
  return Eigendecomposition{ProbabilityDistribution(std::move(sorted)),
                            UnitaryMatrix(std::move(sorted_vecs))};
}

namespace {

Matrix ginibre(Eigen::Index dim, Rng& rng) {
  Matrix g(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) g(i, j) = Complex(rng.normal(), rng.normal());
  }
  return g;
}

}  // namespace

UnitaryMatrix random_unitary(Eigen::Index dim, Rng& rng) {
  const Matrix g = ginibre(dim, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(dim, dim);
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < dim; ++i) {
    const Complex diag = r(i, i);
    if (std::abs(diag) > 0.0) q.col(i) *= diag / std::abs(diag);
  }
  return UnitaryMatrix(std::move(q));
}

DensityMatrix random_density(Eigen::Index dim, Rng& rng) {
  const Matrix g = ginibre(dim, rng);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(std::move(rho));
}

PureState random_pure(Eigen::Index dim, Rng& rng) {
  Vector v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v(i) = Complex(rng.normal(), rng.normal());
  v /= v.norm();
  return PureState(std::move(v));
}

}  // namespace qzip
