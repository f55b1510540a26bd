#pragma once

#include <cstdint>

#include "qig/algebra.hpp"
#include "qig/channels.hpp"

namespace qig {

/// Deterministic, platform-stable generator (splitmix64 with Box–Muller
/// normals). Used for all seeded instance generation so reports are
/// byte-identical across runs and thread counts.
class Rng {
public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next_u64();
  double uniform();  // [0, 1)
  double normal();

  /// Independent stream for (seed, stream, index), for per-trial seeding.
  static uint64_t derive(uint64_t seed, uint64_t stream, uint64_t index);

private:
  uint64_t state_;
  bool has_cached_ = false;
  double cached_ = 0.0;
};

Matrix random_complex_gaussian(Eigen::Index rows, Eigen::Index cols, Rng& rng);

/// Faithful state W·W† + ε·1 per block, optionally normalized to trace one.
PositiveFunctional random_faithful_state(const MatrixAlgebra& alg, Rng& rng,
                                         double eps = 1e-3, bool normalize = true);

/// Symmetrized Gaussian matrix scaled to the requested operator norm.
HermitianElement random_hermitian(const MatrixAlgebra& alg, Rng& rng,
                                  double sup_norm = 1.0);
SelfAdjointFunctional random_selfadjoint(const MatrixAlgebra& alg, Rng& rng,
                                         double sup_norm = 1.0);

/// Haar-ish isometry by QR of a Gaussian matrix, rows ≥ cols.
Matrix random_isometry(Eigen::Index rows, Eigen::Index cols, Rng& rng);

/// Random CPTP map between single-block algebras via isometry compression
/// with an environment of dimension env_dim.
Channel random_channel(Eigen::Index source_dim, Eigen::Index target_dim, Rng& rng,
                       int env_dim = 2);

}  // namespace qig
