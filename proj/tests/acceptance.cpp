// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Every tolerance is pinned here, not configurable.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "qzip/basis_search.hpp"
#include "qzip/diag_verifier.hpp"
#include "qzip/lz_codec.hpp"
#include "qzip/quantum_core.hpp"
#include "qzip/rng.hpp"
#include "qzip/source_model.hpp"
#include "qzip/truncation_sim.hpp"

using namespace qzip;

namespace {

struct Checker {
  std::vector<std::string> failures;

  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

double entropy_oracle(const std::vector<double>& p) {
  double h = 0.0;
  for (double x : p) {
    if (x > 0.0) h -= x * std::log2(x);
  }
  return h;
}

double binomial_se(double p, std::size_t n) {
  return std::sqrt(std::max(0.0, p * (1.0 - p)) / static_cast<double>(n));
}

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
  char buffer[256];
  std::snprintf(buffer, sizeof(buffer), pattern, a, b, c);
  return buffer;
}

// --- criterion 1: pseudo-commutation ---------------------------------------

void criterion_theorem1(Checker& check) {
  Rng rng(101);
  double max_residual = 0.0;
  for (int t = 0; t < 100; ++t) {
    const int positions = 1 + t % 3;
    const std::size_t size = std::size_t{1} << positions;
    const PermutationCircuit circuit = PermutationCircuit::random(size, rng);
    for (int s = 0; s < 10; ++s) {
      const PureState psi = random_pure(static_cast<Eigen::Index>(size), rng);
      max_residual = std::max(max_residual, theorem1_residual(circuit, psi, 2, positions));
    }
  }
  check.expect(max_residual <= 1e-10,
               fmt("max permutation residual %.3e exceeds 1e-10", max_residual));

  Matrix h(2, 2);
  h << 1.0, 1.0, 1.0, -1.0;
  h /= std::sqrt(2.0);
  const double residual = theorem1_residual(UnitaryMatrix(h), PureState::basis_state(2, 0), 2, 1);
  const double expected = std::sqrt(2.0 - std::sqrt(2.0));
  check.expect(std::abs(residual - expected) <= 1e-6,
               fmt("hadamard residual %.9f != %.9f", residual, expected));
}

// --- criterion 2: condensation rate formula --------------------------------

void criterion_rate_formula(Checker& check) {
  Rng rng(202);
  double worst_matched = 0.0;
  double worst_gap = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const int d = 2 + i % 3;
    const DensityMatrix rho = random_density(d, rng);
    const UnitaryMatrix basis = random_unitary(d, rng);
    const double entropy = von_neumann_entropy(rho);
    worst_matched = std::max(
        worst_matched,
        std::abs(condensation_rate(rho, eigendecomposition(rho).eigenvectors) - entropy));
    worst_gap = std::min(worst_gap, condensation_rate(rho, basis) - entropy);
  }
  check.expect(worst_matched < 1e-12,
               fmt("matched-basis rate deviates from entropy by %.3e", worst_matched));
  check.expect(worst_gap >= -1e-12, fmt("rate undercuts entropy by %.3e", -worst_gap));
}

// --- criterion 3: truncation bounds ----------------------------------------

void criterion_truncation_bounds(Checker& check) {
  check.expect(std::abs(analytic_fidelity(3, 2, 3) - 85.0 / 128.0) < 1e-12,
               "spot fidelity F(K=3, Y=2, L=3) != 85/128");
  check.expect(std::abs(analytic_error(3, 2, 3) - 0.1875) < 1e-12,
               "spot error Pe(K=3, Y=2) != 0.1875");

  const std::size_t n = 2048;
  const std::size_t trials = 100000;
  for (int y : {2, 4, 8, 16, 32}) {
    const int step = y + 1;
    for (int k_mod = 0; k_mod < step; ++k_mod) {
      const double f_analytic = analytic_fidelity(k_mod, y, step);
      const double p_analytic = analytic_error(k_mod, y, step);
      check.expect(f_analytic >= 1.0 - 2.0 / y, fmt("F(K=%g, Y=%g) below 1 - 2/Y", k_mod, y));
      check.expect(p_analytic <= 1.0 / y, fmt("Pe(K=%g, Y=%g) above 1/Y", k_mod, y));

      const SmearConfig cfg(y, step, n);
      const std::size_t boundary =
          ((n / 2) / static_cast<std::size_t>(step)) * static_cast<std::size_t>(step) +
          static_cast<std::size_t>(k_mod);
      double f_sum = 0.0;
      double f_sq = 0.0;
      std::size_t errors = 0;
      for (std::size_t t = 0; t < trials; ++t) {
        Rng rng(derive_seed(303, static_cast<std::uint64_t>(y * 100 + k_mod), t));
        IdealizedBlock block = IdealizedBlock::sample(n, boundary, rng);
        const TruncationResult r = run_truncation(block, cfg, rng);
        f_sum += r.fidelity;
        f_sq += r.fidelity * r.fidelity;
        if (r.error_flag) ++errors;
      }
      const double f_mean = f_sum / trials;
      const double f_se =
          std::sqrt(std::max(1e-12, (f_sq - f_sum * f_mean) / (trials - 1)) / trials);
      check.expect(std::abs(f_mean - f_analytic) <= 3.0 * f_se,
                   fmt("fidelity MC off at Y=%g K=%g: |z| = %.2f", y, k_mod,
                       std::abs(f_mean - f_analytic) / f_se));
      const double p_mean = static_cast<double>(errors) / trials;
      const double p_se = binomial_se(p_analytic, trials);
      check.expect(std::abs(p_mean - p_analytic) <= 3.0 * p_se,
                   fmt("error MC off at Y=%g K=%g: |z| = %.2f", y, k_mod,
                       std::abs(p_mean - p_analytic) / p_se));
    }
  }
}

// --- criterion 4: interval contract ----------------------------------------

void criterion_interval_contract(Checker& check) {
  const std::size_t n = 1024;
  const int y = 8;
  const SmearConfig cfg(y, y + 1, n);
  const std::size_t trials = 100000;
  std::size_t covered = 0;
  std::size_t non_error = 0;
  std::size_t width_violations = 0;
  Rng master(404);
  for (std::size_t t = 0; t < trials; ++t) {
    const std::size_t k = master.below(n + 1);
    IdealizedBlock block = IdealizedBlock::sample(n, k, master);
    const TruncationResult r = run_truncation(block, cfg, master);
    if (r.interval_width() > static_cast<std::size_t>(boundary_uncertainty(cfg))) {
      ++width_violations;
    }
    if (!r.error_flag) {
      ++non_error;
      if (r.lo <= k && k <= r.hi) ++covered;
    }
  }
  check.expect(width_violations == 0,
               fmt("%g interval widths exceeded L + Y", static_cast<double>(width_violations)));
  const double coverage = static_cast<double>(covered) / static_cast<double>(non_error);
  const double floor = 1.0 - 1.0 / y - 3.0 * binomial_se(1.0 / y, non_error);
  check.expect(coverage >= floor, fmt("coverage %.5f below floor %.5f", coverage, floor));
}

// --- criterion 5: LZ codec --------------------------------------------------

void criterion_lz_codec(Checker& check) {
  Rng rng(505);
  bool roundtrip_ok = true;
  for (int i = 0; i < 10000 && roundtrip_ok; ++i) {
    const std::size_t length = 1 + rng.below(4096);
    std::vector<std::uint8_t> input(length);
    for (auto& b : input) b = rng.coin() ? 1 : 0;
    roundtrip_ok = lz_decode(lz_encode(input)) == input;
  }
  for (std::size_t length : {1u, 7u, 64u, 511u, 4096u}) {
    const std::vector<std::uint8_t> zeros(length, 0);
    const std::vector<std::uint8_t> ones(length, 1);
    std::vector<std::uint8_t> alternating(length);
    for (std::size_t j = 0; j < length; ++j) alternating[j] = j & 1;
    roundtrip_ok = roundtrip_ok && lz_decode(lz_encode(zeros)) == zeros &&
                   lz_decode(lz_encode(ones)) == ones &&
                   lz_decode(lz_encode(alternating)) == alternating;
  }
  {
    std::vector<std::uint8_t> db;  // de Bruijn order 12, prefer-one greedy
    const std::size_t length = 1u << 12;
    std::vector<bool> seen(length, false);
    std::size_t state = 0;
    for (std::size_t i = 0; i < length; ++i) {
      const std::size_t one = ((state << 1) | 1u) & (length - 1);
      if (!seen[one]) {
        seen[one] = true;
        db.push_back(1);
        state = one;
      } else {
        seen[(state << 1) & (length - 1)] = true;
        db.push_back(0);
        state = (state << 1) & (length - 1);
      }
    }
    roundtrip_ok = roundtrip_ok && lz_decode(lz_encode(db)) == db;
  }
  check.expect(roundtrip_ok, "decode(encode(x)) != x");

  for (int bits = 1; bits <= 12; ++bits) {
    const LZPermutation perm(bits);
    const std::uint32_t count = 1u << bits;
    std::vector<std::uint8_t> seen(count, 0);
    bool bijective = true;
    for (std::uint32_t x = 0; x < count && bijective; ++x) {
      const std::uint32_t image = perm.apply(x);
      bijective = image < count && !seen[image] && perm.invert(image) == x;
      if (image < count) seen[image] = 1;
    }
    check.expect(bijective, fmt("permutation not bijective at n = %g", bits));
  }

  const ProbabilityDistribution biased({0.89, 0.11});
  const double entropy = entropy_oracle({0.89, 0.11});
  const std::size_t trial_counts[] = {32, 24, 16, 12, 8};
  std::vector<RateEstimate> curve;
  int idx = 0;
  for (unsigned lg : {12u, 14u, 16u, 18u, 20u}) {
    curve.push_back(empirical_rate(biased, std::size_t{1} << lg, trial_counts[idx++], 515));
  }
  for (std::size_t i = 0; i + 1 < curve.size(); ++i) {
    const double slack = 2.0 * std::sqrt(curve[i].standard_error * curve[i].standard_error +
                                         curve[i + 1].standard_error * curve[i + 1].standard_error);
    check.expect(curve[i + 1].mean <= curve[i].mean + slack,
                 fmt("rate curve not decreasing between points %g and %g", i, i + 1));
  }
  check.expect(curve.back().mean <= entropy + 0.25,
               fmt("rate %.4f above H + 0.25 = %.4f", curve.back().mean, entropy + 0.25));
  for (const RateEstimate& est : curve) {
    check.expect(est.mean >= entropy - 0.02, fmt("rate %.4f below H - 0.02", est.mean));
  }
  for (double p : {0.5, 0.75, 0.97}) {
    const RateEstimate est =
        empirical_rate(ProbabilityDistribution({p, 1.0 - p}), 1u << 14, 8, 525);
    check.expect(est.mean >= entropy_oracle({p, 1.0 - p}) - 0.02,
                 fmt("rate %.4f beats entropy at p = %.2f", est.mean, p));
  }
}

// --- criterion 6: end-to-end universal estimation ---------------------------

void criterion_universal_estimation(Checker& check) {
  const double theta = std::numbers::pi / 8.0;
  const UnitaryMatrix truth = two_angle_basis(theta, 0.0);
  const Matrix lam = Eigen::Vector2cd(0.9, 0.1).asDiagonal();
  const DensityMatrix rho(truth.entries() * lam * truth.entries().adjoint());
  const double entropy = entropy_oracle({0.9, 0.1});

  const UnitaryMesh mesh = build_mesh(2, 0.05);
  const SearchResult analytic = select_basis(rate_table(rho, mesh), mesh);
  const double distance = phase_perm_reduced_distance(analytic.basis_estimate, truth);
  check.expect(distance <= mesh.spacing,
               fmt("analytic best basis %.4f away from truth (> %.4f)", distance, mesh.spacing));

  const Eigendecomposition eig = eigendecomposition(rho);
  SignalEnsemble ensemble(
      {PureState(eig.eigenvectors.entries().col(0)), PureState(eig.eigenvectors.entries().col(1))},
      eig.eigenvalues);
  const std::size_t n = std::size_t{1} << 20;
  const SmearConfig cfg(32, 33, n);
  const SearchResult empirical = empirical_search(ensemble, mesh, n, cfg, 2, 606);

  check.expect(empirical.entropy_estimate >= entropy,
               fmt("entropy estimate %.5f below S = %.5f", empirical.entropy_estimate, entropy));
  check.expect(empirical.entropy_estimate <= entropy + 0.3,
               fmt("entropy estimate %.5f above S + 0.3", empirical.entropy_estimate));
  check.expect(empirical.uncertainty >= 2.0 * 32.0 / static_cast<double>(n),
               "reported uncertainty misses the 2Y/n term");
}

// --- criterion 7: cross-oracle consistency ----------------------------------

void criterion_cross_oracle(Checker& check) {
  Rng rng(707);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const int d = (i % 2 == 0) ? 2 : 3;
    const DensityMatrix rho = random_density(d, rng);
    const DensityMatrix reduced = duplicate_and_reduce(rho);
    const ProbabilityDistribution mu = effective_source(rho, UnitaryMatrix::identity(d)).mu;
    for (Eigen::Index j = 0; j < d; ++j) {
      worst = std::max(worst,
                       std::abs(reduced.entries()(j, j).real() - mu[static_cast<std::size_t>(j)]));
    }
  }
  check.expect(worst <= 1e-10, fmt("duplication route deviates by %.3e", worst));

  const int qubits = 8;
  const std::size_t boundary = 5;
  const SmearConfig cfg(2, 3, static_cast<std::size_t>(qubits));
  const std::size_t trials = 10000;
  std::map<std::pair<std::size_t, bool>, std::size_t> dm_counts;
  std::map<std::pair<std::size_t, bool>, std::size_t> cl_counts;
  for (std::size_t t = 0; t < trials; ++t) {
    Rng r(derive_seed(717, 1, t));
    const DmTruncationResult res = run_truncation_dm(qubits, boundary, cfg, r);
    ++dm_counts[{res.stop_basepoint, res.error_flag}];
  }
  for (std::size_t t = 0; t < trials; ++t) {
    Rng r(derive_seed(717, 2, t));
    IdealizedBlock block = IdealizedBlock::sample(static_cast<std::size_t>(qubits), boundary, r);
    const TruncationResult res = run_truncation(block, cfg, r);
    ++cl_counts[{res.stop_basepoint, res.error_flag}];
  }
  for (const auto& [key, count] : dm_counts) {
    const double pa = static_cast<double>(count) / trials;
    const double pb = static_cast<double>(cl_counts[key]) / trials;
    const double pooled = 0.5 * (pa + pb);
    const double se = std::sqrt(std::max(1e-12, pooled * (1.0 - pooled) * 2.0 / trials));
    check.expect(std::abs(pa - pb) <= 3.0 * se,
                 fmt("outcome (%g, err=%g) differs: dm %.4f vs sampled", key.first,
                     key.second ? 1.0 : 0.0, pa));
  }
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<void(Checker&)> run;
  };
  const std::vector<Criterion> criteria = {
      {"theorem-1 residuals (forward + Hadamard counterexample)", criterion_theorem1},
      {"condensation rate formula (matched basis + monotonicity)", criterion_rate_formula},
      {"truncation fidelity/error bounds (analytic + Monte Carlo)", criterion_truncation_bounds},
      {"boundary interval contract (width + coverage)", criterion_interval_contract},
      {"LZ codec (losslessness, bijection, rate curve)", criterion_lz_codec},
      {"end-to-end universal estimation (mesh search)", criterion_universal_estimation},
      {"cross-oracle consistency (duplication + register sweep)", criterion_cross_oracle},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Checker check;
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].run(check);
    } catch (const std::exception& e) {
      check.failures.push_back(std::string("exception: ") + e.what());
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (check.failures.empty()) {
      std::printf("[PASS] criterion %zu: %s (%.1f s)\n", i + 1, criteria[i].name, seconds);
    } else {
      ++failures;
      std::printf("[FAIL] criterion %zu: %s (%.1f s)\n", i + 1, criteria[i].name, seconds);
      for (const std::string& f : check.failures) {
        std::printf("       - %s\n", f.c_str());
      }
    }
  }
  return failures;
}
