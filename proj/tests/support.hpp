#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "qzip/quantum_core.hpp"
#include "qzip/rng.hpp"

namespace qzip::test {

inline PureState plus_state() {
  Vector v(2);
  v << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  return PureState(std::move(v));
}

inline DensityMatrix diag2(double a, double b) {
  return DensityMatrix::diagonal(ProbabilityDistribution({a, b}));
}

// Independent entropy oracle used to freeze expected values.
inline double entropy_oracle(const std::vector<double>& p) {
  double h = 0.0;
  for (double x : p) {
    if (x > 0.0) h -= x * std::log2(x);
  }
  return h;
}

// Closed form for commuting density matrices: (sum_i sqrt(p_i q_i))^2.
inline double commuting_fidelity_oracle(const std::vector<double>& p,
                                        const std::vector<double>& q) {
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += std::sqrt(p[i] * q[i]);
  return s * s;
}

inline double binomial_se(double p, std::size_t n) {
  return std::sqrt(std::max(0.0, p * (1.0 - p)) / static_cast<double>(n));
}

// Pooled two-sample z statistic for proportions.
inline double proportion_z(std::size_t hits_a, std::size_t n_a, std::size_t hits_b,
                           std::size_t n_b) {
  const double pa = static_cast<double>(hits_a) / static_cast<double>(n_a);
  const double pb = static_cast<double>(hits_b) / static_cast<double>(n_b);
  const double pooled = static_cast<double>(hits_a + hits_b) / static_cast<double>(n_a + n_b);
  const double se = std::sqrt(pooled * (1.0 - pooled) *
                              (1.0 / static_cast<double>(n_a) + 1.0 / static_cast<double>(n_b)));
  if (se == 0.0) return 0.0;
  return (pa - pb) / se;
}

// Binary de Bruijn sequence of order `order` (length 2^order), prefer-one
// greedy construction.
inline std::vector<std::uint8_t> de_bruijn(unsigned order) {
  const std::size_t length = std::size_t{1} << order;
  std::vector<bool> seen(length, false);
  std::vector<std::uint8_t> out;
  out.reserve(length);
  std::size_t state = 0;
  for (std::size_t i = 0; i < length; ++i) {
    const std::size_t one = ((state << 1) | 1u) & (length - 1);
    const std::size_t zero = (state << 1) & (length - 1);
    if (!seen[one]) {
      seen[one] = true;
      out.push_back(1);
      state = one;
    } else {
      seen[zero] = true;
      out.push_back(0);
      state = zero;
    }
  }
  return out;
}

}  // namespace qzip::test
