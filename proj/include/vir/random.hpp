#pragma once

// Seeded generators for the randomized invariant checks.

#include <random>

#include "vir/group.hpp"

namespace vir {

/// Random real field with modes |k| <= kmax only, amplitudes decaying like
/// 1/(1+|k|). Set with_mean = false for a zero-mean field.
template <typename Scalar = double, typename Rng>
BasicField<Scalar> random_band_limited(const GridSpec& grid, int kmax, Rng& rng, bool with_mean = true) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  typename BasicField<Scalar>::ComplexVector coeffs =
      BasicField<Scalar>::ComplexVector::Zero(grid.size());
  const double mean = unit(rng);
  if (with_mean) coeffs[0] = Scalar(mean);
  for (int k = 1; k <= kmax && k < grid.size() / 2; ++k) {
    const double re = unit(rng), im = unit(rng);
    const std::complex<Scalar> c(Scalar(re / (1.0 + k)), Scalar(im / (1.0 + k)));
    coeffs[grid.index_of(k)] = c;
    coeffs[grid.index_of(-k)] = std::conj(c);
  }
  return BasicField<Scalar>::from_symmetric_coefficients(grid, std::move(coeffs));
}

/// Default band for randomized algebra tests: |k| <= n/6 keeps every product
/// appearing in the duality identities alias-free.
inline int random_band(const GridSpec& grid) { return grid.size() / 6; }

/// x + sum_{k=1..4} a_k sin(kx + phi_k) with sum k|a_k| = total_slope <= 0.5,
/// which keeps the slope in [1 - total_slope, 1 + total_slope].
template <typename Scalar = double, typename Rng>
BasicLiftedDiffeo<Scalar> random_diffeo(const GridSpec& grid, Rng& rng, double total_slope = 0.5) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double weights[4];
  double norm = 0;
  for (int k = 1; k <= 4; ++k) {
    weights[k - 1] = unit(rng);
    norm += k * weights[k - 1];
  }
  double phases[4];
  for (double& ph : phases) ph = 2 * std::numbers::pi * unit(rng);
  const double shift = 2 * std::numbers::pi * (unit(rng) - 0.5) * 0.2;
  auto p = BasicField<Scalar>::sample(grid, [&](Scalar x) {
    Scalar sum = Scalar(shift);
    for (int k = 1; k <= 4; ++k) {
      sum += Scalar(total_slope * weights[k - 1] / norm) * std::sin(Scalar(k) * x + Scalar(phases[k - 1]));
    }
    return sum;
  });
  return BasicLiftedDiffeo<Scalar>(std::move(p));
}

}  // namespace vir
