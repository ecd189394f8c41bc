// Seeded random generators for states, unitaries, instruments and channels.
// Used by property tests, the acceptance suite and the CLI `random` inputs.
#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "qkit/core.hpp"

namespace qkit {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double normal() { return normal_(engine_); }
  Complex complex_normal() { return {normal(), normal()}; }
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform() * static_cast<double>(n)); }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

/// Matrix of i.i.d. standard complex Gaussian entries.
CMatrix random_ginibre(Rng& rng, std::size_t rows, std::size_t cols);
/// Haar-distributed unitary (QR of a Ginibre matrix with phase correction).
CMatrix random_unitary(Rng& rng, std::size_t d);
/// m x n matrix with orthonormal columns (m >= n).
CMatrix random_isometry(Rng& rng, std::size_t m, std::size_t n);
CVector random_pure_state(Rng& rng, std::size_t d);
/// G G^dagger / Tr with G of size d x rank; full rank by default.
CMatrix random_density_matrix(Rng& rng, std::size_t d, std::size_t rank = 0);
CMatrix random_hermitian(Rng& rng, std::size_t d);
/// Operators {K_x} with sum K_x^dagger K_x = I, cut from a random isometry.
std::vector<CMatrix> random_kraus_set(Rng& rng, std::size_t d, std::size_t count);

}  // namespace qkit
