#include "qig/random.hpp"

#include <Eigen/QR>

#include <cmath>
#include <numbers>

namespace qig {

namespace {
uint64_t mix(uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}
}  // namespace

uint64_t Rng::next_u64() {
  state_ += 0x9E3779B97F4A7C15ULL;
  return mix(state_);
}

double Rng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_;
  }
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  cached_ = r * std::sin(theta);
  has_cached_ = true;
  return r * std::cos(theta);
}

uint64_t Rng::derive(uint64_t seed, uint64_t stream, uint64_t index) {
  uint64_t x = mix(seed ^ (0x9E3779B97F4A7C15ULL + stream * 0xBF58476D1CE4E5B9ULL));
  x = mix(x ^ (index * 0x94D049BB133111EBULL + 0xD1B54A32D192ED03ULL));
  return x;
}

Matrix random_complex_gaussian(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j)
      m(i, j) = Complex(rng.normal(), rng.normal());
  return m;
}

PositiveFunctional random_faithful_state(const MatrixAlgebra& alg, Rng& rng,
                                         double eps, bool normalize) {
  Blocks blocks;
  blocks.reserve(alg.block_dims().size());
  double tr = 0.0;
  for (auto d : alg.block_dims()) {
    const Matrix w = random_complex_gaussian(d, d, rng);
    Matrix b = w * w.adjoint() + eps * Matrix::Identity(d, d);
    tr += b.trace().real();
    blocks.push_back(std::move(b));
  }
  if (normalize)
    for (auto& b : blocks) b /= tr;
  return PositiveFunctional(alg, std::move(blocks));
}

HermitianElement random_hermitian(const MatrixAlgebra& alg, Rng& rng, double sup_norm) {
  Blocks blocks;
  blocks.reserve(alg.block_dims().size());
  for (auto d : alg.block_dims()) {
    const Matrix g = random_complex_gaussian(d, d, rng);
    blocks.push_back(0.5 * (g + g.adjoint()));
  }
  HermitianElement h = HermitianElement::unchecked(alg, std::move(blocks));
  const double s = h.sup_norm();
  if (s > 0.0) h *= sup_norm / s;
  return h;
}

SelfAdjointFunctional random_selfadjoint(const MatrixAlgebra& alg, Rng& rng,
                                         double sup_norm) {
  return as_functional(random_hermitian(alg, rng, sup_norm));
}

Matrix random_isometry(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  if (rows < cols) throw ValidationError("isometry needs rows >= cols");
  const Matrix g = random_complex_gaussian(rows, cols, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  return qr.householderQ() * Matrix::Identity(rows, cols);
}

Channel random_channel(Eigen::Index source_dim, Eigen::Index target_dim, Rng& rng,
                       int env_dim) {
  if (env_dim < 1) throw ValidationError("environment dimension must be >= 1");
  if (target_dim * env_dim < source_dim)
    throw ValidationError("target*environment must be at least the source dimension");
  const Matrix v = random_isometry(target_dim * env_dim, source_dim, rng);
  std::vector<Matrix> kraus;
  kraus.reserve(env_dim);
  for (int e = 0; e < env_dim; ++e)
    kraus.push_back(v.block(e * target_dim, 0, target_dim, source_dim));
  return Channel(MatrixAlgebra({source_dim}), MatrixAlgebra({target_dim}),
                 std::move(kraus));
}

}  // namespace qig
