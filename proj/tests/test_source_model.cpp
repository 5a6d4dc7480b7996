#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qzip/basis_search.hpp"
#include "qzip/diag_verifier.hpp"
#include "qzip/source_model.hpp"
#include "support.hpp"

using namespace qzip;
using namespace qzip::test;

TEST_CASE("density_matrix of an ensemble") {
  const PureState zero = PureState::basis_state(2, 0);
  const PureState one = PureState::basis_state(2, 1);

  const DensityMatrix mixed =
      density_matrix(SignalEnsemble({zero, one}, ProbabilityDistribution({0.5, 0.5})));
  CHECK((mixed.entries() - DensityMatrix::maximally_mixed(2).entries()).norm() < 1e-12);

  const DensityMatrix pure = density_matrix(SignalEnsemble({zero}, ProbabilityDistribution({1.0})));
  CHECK((pure.entries() - zero.projector()).norm() < 1e-12);

  // Hand sum: 0.5 |0><0| + 0.5 |+><+|.
  const DensityMatrix mix =
      density_matrix(SignalEnsemble({zero, plus_state()}, ProbabilityDistribution({0.5, 0.5})));
  Matrix expected(2, 2);
  expected << 0.75, 0.25, 0.25, 0.25;
  CHECK((mix.entries() - expected).norm() < 1e-12);

  CHECK_THROWS_AS(SignalEnsemble({zero}, ProbabilityDistribution({0.5, 0.5})),
                  std::invalid_argument);
}

TEST_CASE("effective_source distributions") {
  Rng rng(7);
  const DensityMatrix rho = random_density(3, rng);
  const Eigendecomposition eig = eigendecomposition(rho);
  const EffectiveSource matched = effective_source(rho, eig.eigenvectors);
  for (std::size_t j = 0; j < 3; ++j) {
    CHECK(matched.mu[j] == doctest::Approx(eig.eigenvalues[j]).epsilon(1e-10));
  }

  // Eigenbasis rotated pi/4 from computational: mu_0 = 0.9/2 + 0.1/2.
  const UnitaryMatrix quarter = two_angle_basis(std::numbers::pi / 4.0, 0.0);
  const DensityMatrix rotated(quarter.entries() * diag2(0.9, 0.1).entries() *
                              quarter.entries().adjoint());
  const EffectiveSource mismatched = effective_source(rotated, UnitaryMatrix::identity(2));
  CHECK(mismatched.mu[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(mismatched.mu[1] == doctest::Approx(0.5).epsilon(1e-12));

  const EffectiveSource uniform =
      effective_source(DensityMatrix::maximally_mixed(4), random_unitary(4, rng));
  for (std::size_t j = 0; j < 4; ++j) CHECK(uniform.mu[j] == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("condensation_rate matches entropy for the matched basis") {
  const double s = entropy_oracle({0.9, 0.1});
  const UnitaryMatrix quarter = two_angle_basis(std::numbers::pi / 4.0, 0.0);
  const DensityMatrix rotated(quarter.entries() * diag2(0.9, 0.1).entries() *
                              quarter.entries().adjoint());
  CHECK(std::abs(condensation_rate(rotated, quarter) - s) < 1e-12);
  CHECK(condensation_rate(rotated, UnitaryMatrix::identity(2)) ==
        doctest::Approx(1.0).epsilon(1e-12));

  Rng rng(13);
  const PureState psi = random_pure(2, rng);
  const DensityMatrix pure = DensityMatrix::pure(psi);
  const Eigendecomposition eig = eigendecomposition(pure);
  CHECK(condensation_rate(pure, eig.eigenvectors) < 1e-9);
}

TEST_CASE("condensation_rate never beats the entropy") {
  Rng rng(19);
  for (int d : {2, 3, 4}) {
    for (int i = 0; i < 70; ++i) {
      const DensityMatrix rho = random_density(d, rng);
      const UnitaryMatrix basis = random_unitary(d, rng);
      CHECK(condensation_rate(rho, basis) >= von_neumann_entropy(rho) - 1e-12);
      const Eigendecomposition eig = eigendecomposition(rho);
      CHECK(std::abs(condensation_rate(rho, eig.eigenvectors) - von_neumann_entropy(rho)) < 1e-12);
    }
  }
}

TEST_CASE("mismatch_entropy") {
  Rng rng(23);
  for (int i = 0; i < 20; ++i) {
    const DensityMatrix rho = random_density(3, rng);
    CHECK(std::abs(mismatch_entropy(UnitaryMatrix::identity(3), rho) - von_neumann_entropy(rho)) <
          1e-12);
    CHECK(mismatch_entropy(random_unitary(3, rng), DensityMatrix::maximally_mixed(3)) ==
          doctest::Approx(std::log2(3.0)).epsilon(1e-12));
  }
  CHECK(mismatch_entropy(two_angle_basis(std::numbers::pi / 4.0, 0.0), diag2(0.9, 0.1)) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("squared-magnitude matrix is doubly stochastic") {
  Rng rng(29);
  for (int d : {2, 3, 4}) {
    const UnitaryMatrix u = random_unitary(d, rng);
    for (Eigen::Index i = 0; i < d; ++i) {
      double row = 0.0;
      double col = 0.0;
      for (Eigen::Index j = 0; j < d; ++j) {
        row += std::norm(u.entries()(i, j));
        col += std::norm(u.entries()(j, i));
      }
      CHECK(std::abs(row - 1.0) < 1e-10);
      CHECK(std::abs(col - 1.0) < 1e-10);
    }
  }
}

TEST_CASE("mismatch_entropy agrees with condensation_rate under the basis change") {
  Rng rng(31);
  for (int d : {2, 3}) {
    for (int i = 0; i < 30; ++i) {
      const DensityMatrix rho = random_density(d, rng);
      const UnitaryMatrix basis = random_unitary(d, rng);
      const UnitaryMatrix mismatch(
          (eigendecomposition(rho).eigenvectors.entries().adjoint() * basis.entries()).eval());
      CHECK(std::abs(mismatch_entropy(mismatch, rho) - condensation_rate(rho, basis)) < 1e-10);
    }
  }
}

TEST_CASE("effective source agrees with the duplication route") {
  Rng rng(37);
  for (int d : {2, 3}) {
    for (int i = 0; i < 40; ++i) {
      const DensityMatrix rho = random_density(d, rng);
      const DensityMatrix reduced = duplicate_and_reduce(rho);
      const ProbabilityDistribution mu = effective_source(rho, UnitaryMatrix::identity(d)).mu;
      for (Eigen::Index j = 0; j < d; ++j) {
        CHECK(std::abs(reduced.entries()(j, j).real() - mu[static_cast<std::size_t>(j)]) < 1e-10);
      }
      // Off-diagonals vanish: the reduced state is the diagonal part of rho.
      CHECK((reduced.entries() -
             Matrix(reduced.entries().diagonal().asDiagonal()))
                .norm() < 1e-10);
    }
  }
}

TEST_CASE("sample_block determinism and statistics") {
  const ProbabilityDistribution degenerate({1.0, 0.0});
  const auto zeros = sample_block(degenerate, 5, 99);
  CHECK(zeros == std::vector<std::uint8_t>{0, 0, 0, 0, 0});

  CHECK(sample_block(ProbabilityDistribution({0.3, 0.7}), 1000, 4242) ==
        sample_block(ProbabilityDistribution({0.3, 0.7}), 1000, 4242));

  const std::size_t n = 1000000;
  const auto fair = sample_block(ProbabilityDistribution({0.5, 0.5}), n, 7);
  std::size_t ones = 0;
  for (const auto b : fair) ones += b;
  const double freq = 1.0 - static_cast<double>(ones) / static_cast<double>(n);
  CHECK(freq > 0.497);  // 3 sigma binomial band around 0.5
  CHECK(freq < 0.503);

  // Ternary alphabet goes through the generic inverse-CDF path.
  const auto ternary = sample_block(ProbabilityDistribution({0.2, 0.3, 0.5}), 100000, 11);
  std::size_t counts[3] = {0, 0, 0};
  for (const auto s : ternary) ++counts[s];
  CHECK(std::abs(static_cast<double>(counts[2]) / 100000.0 - 0.5) < 3.0 * binomial_se(0.5, 100000));
}
