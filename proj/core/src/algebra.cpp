#include "qig/algebra.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace qig {

namespace {

void check_same_algebra(const MatrixAlgebra& a, const MatrixAlgebra& b) {
  if (a != b) throw ValidationError("algebra mismatch");
}

void check_shapes(const MatrixAlgebra& alg, const Blocks& blocks,
                  const std::string& where) {
  if (static_cast<Eigen::Index>(blocks.size()) != alg.num_blocks())
    throw ValidationError("block count does not match algebra", where);
  for (Eigen::Index i = 0; i < alg.num_blocks(); ++i) {
    const auto n = alg.block_dims()[static_cast<size_t>(i)];
    if (blocks[static_cast<size_t>(i)].rows() != n ||
        blocks[static_cast<size_t>(i)].cols() != n)
      throw ValidationError("block shape does not match algebra",
                            where + "[" + std::to_string(i) + "]");
  }
}

// Symmetrize and return the relative Frobenius deviation from Hermiticity.
double symmetrize(Blocks& blocks) {
  double num = 0.0, den = 0.0;
  for (auto& b : blocks) {
    Matrix anti = b - b.adjoint();
    num += 0.25 * anti.squaredNorm();
    den += b.squaredNorm();
    b = 0.5 * (b + b.adjoint());
  }
  if (den == 0.0) return 0.0;
  return std::sqrt(num / den);
}

double validate_hermitian(Blocks& blocks, const std::string& where) {
  const double dev = symmetrize(blocks);
  if (dev > tol::kHermitian)
    throw ValidationError("matrix is not Hermitian within tolerance (relative "
                          "deviation " + std::to_string(dev) + ")", where);
  return dev;
}

}  // namespace

// ---- MatrixAlgebra ---------------------------------------------------------

MatrixAlgebra::MatrixAlgebra(std::vector<Eigen::Index> block_dims)
    : dims_(std::move(block_dims)) {
  if (dims_.empty()) throw ValidationError("algebra needs at least one block", "block_dims");
  total_ = 0;
  for (auto d : dims_) {
    if (d < 1) throw ValidationError("block dimension must be >= 1", "block_dims");
    total_ += d;
  }
}

Blocks MatrixAlgebra::zero() const {
  Blocks b;
  b.reserve(dims_.size());
  for (auto d : dims_) b.push_back(Matrix::Zero(d, d));
  return b;
}

Blocks MatrixAlgebra::identity() const {
  Blocks b;
  b.reserve(dims_.size());
  for (auto d : dims_) b.push_back(Matrix::Identity(d, d));
  return b;
}

// ---- raw block helpers -----------------------------------------------------

Blocks add_blocks(const Blocks& a, const Blocks& b) {
  if (a.size() != b.size()) throw ValidationError("block count mismatch");
  Blocks out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

Blocks sub_blocks(const Blocks& a, const Blocks& b) {
  if (a.size() != b.size()) throw ValidationError("block count mismatch");
  Blocks out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

Blocks scale_blocks(const Blocks& a, Complex c) {
  Blocks out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = c * a[i];
  return out;
}

Blocks adjoint_blocks(const Blocks& a) {
  Blocks out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i].adjoint();
  return out;
}

double trace_re(const Blocks& a) {
  double t = 0.0;
  for (const auto& b : a) t += b.trace().real();
  return t;
}

double frobenius_norm(const Blocks& a) {
  double s = 0.0;
  for (const auto& b : a) s += b.squaredNorm();
  return std::sqrt(s);
}

Matrix block_diag_embed(const MatrixAlgebra& alg, const Blocks& blocks) {
  check_shapes(alg, blocks, "blocks");
  Matrix full = Matrix::Zero(alg.total_dim(), alg.total_dim());
  Eigen::Index off = 0;
  for (size_t i = 0; i < blocks.size(); ++i) {
    const auto n = alg.block_dims()[i];
    full.block(off, off, n, n) = blocks[i];
    off += n;
  }
  return full;
}

Blocks extract_blocks(const MatrixAlgebra& alg, const Matrix& full, double leak_tol) {
  if (full.rows() != alg.total_dim() || full.cols() != alg.total_dim())
    throw ValidationError("matrix size does not match algebra total dimension");
  Blocks out;
  out.reserve(static_cast<size_t>(alg.num_blocks()));
  Matrix rest = full;
  Eigen::Index off = 0;
  for (auto n : alg.block_dims()) {
    out.push_back(full.block(off, off, n, n));
    rest.block(off, off, n, n).setZero();
    off += n;
  }
  const double leak = rest.norm();
  if (leak > leak_tol * std::max(full.norm(), 1e-300))
    throw ValidationError("matrix has off-block components (leak " +
                          std::to_string(leak) + ")");
  return out;
}

// ---- HermitianElement ------------------------------------------------------

HermitianElement::HermitianElement(MatrixAlgebra algebra, Blocks blocks)
    : algebra_(std::move(algebra)), blocks_(std::move(blocks)) {
  check_shapes(algebra_, blocks_, "blocks");
  ingest_deviation_ = validate_hermitian(blocks_, "blocks");
}

HermitianElement HermitianElement::zero(const MatrixAlgebra& algebra) {
  return unchecked(algebra, algebra.zero());
}

HermitianElement HermitianElement::unchecked(MatrixAlgebra algebra, Blocks blocks) {
  HermitianElement x;
  x.algebra_ = std::move(algebra);
  x.blocks_ = std::move(blocks);
  return x;
}

double HermitianElement::sup_norm() const { return schatten_norm(blocks_, std::numeric_limits<double>::infinity()); }

HermitianElement HermitianElement::operator-() const {
  return unchecked(algebra_, scale_blocks(blocks_, -1.0));
}

HermitianElement& HermitianElement::operator+=(const HermitianElement& other) {
  check_same_algebra(algebra_, other.algebra_);
  for (size_t i = 0; i < blocks_.size(); ++i) blocks_[i] += other.blocks_[i];
  return *this;
}

HermitianElement& HermitianElement::operator-=(const HermitianElement& other) {
  check_same_algebra(algebra_, other.algebra_);
  for (size_t i = 0; i < blocks_.size(); ++i) blocks_[i] -= other.blocks_[i];
  return *this;
}

HermitianElement& HermitianElement::operator*=(double c) {
  for (auto& b : blocks_) b *= c;
  return *this;
}

HermitianElement operator+(HermitianElement a, const HermitianElement& b) { return a += b; }
HermitianElement operator-(HermitianElement a, const HermitianElement& b) { return a -= b; }
HermitianElement operator*(double c, HermitianElement a) { return a *= c; }

// ---- SelfAdjointFunctional ---------------------------------------------------

SelfAdjointFunctional::SelfAdjointFunctional(MatrixAlgebra algebra, Blocks blocks)
    : algebra_(std::move(algebra)), blocks_(std::move(blocks)) {
  check_shapes(algebra_, blocks_, "blocks");
  ingest_deviation_ = validate_hermitian(blocks_, "blocks");
}

SelfAdjointFunctional SelfAdjointFunctional::zero(const MatrixAlgebra& algebra) {
  return unchecked(algebra, algebra.zero());
}

SelfAdjointFunctional SelfAdjointFunctional::unchecked(MatrixAlgebra algebra, Blocks blocks) {
  SelfAdjointFunctional x;
  x.algebra_ = std::move(algebra);
  x.blocks_ = std::move(blocks);
  return x;
}

std::pair<PositiveFunctional, PositiveFunctional> SelfAdjointFunctional::spectral_split() const {
  BlockEig e = eig_herm(blocks_);
  BlockEig pos = e, neg = e;
  for (size_t i = 0; i < e.values.size(); ++i) {
    pos.values[i] = e.values[i].cwiseMax(0.0);
    neg.values[i] = (-e.values[i]).cwiseMax(0.0);
  }
  return {PositiveFunctional::from_eigensystem(algebra_, std::move(pos)),
          PositiveFunctional::from_eigensystem(algebra_, std::move(neg))};
}

SelfAdjointFunctional SelfAdjointFunctional::operator-() const {
  return unchecked(algebra_, scale_blocks(blocks_, -1.0));
}

SelfAdjointFunctional& SelfAdjointFunctional::operator+=(const SelfAdjointFunctional& other) {
  check_same_algebra(algebra_, other.algebra_);
  for (size_t i = 0; i < blocks_.size(); ++i) blocks_[i] += other.blocks_[i];
  return *this;
}

SelfAdjointFunctional& SelfAdjointFunctional::operator-=(const SelfAdjointFunctional& other) {
  check_same_algebra(algebra_, other.algebra_);
  for (size_t i = 0; i < blocks_.size(); ++i) blocks_[i] -= other.blocks_[i];
  return *this;
}

SelfAdjointFunctional& SelfAdjointFunctional::operator*=(double c) {
  for (auto& b : blocks_) b *= c;
  return *this;
}

SelfAdjointFunctional operator+(SelfAdjointFunctional a, const SelfAdjointFunctional& b) { return a += b; }
SelfAdjointFunctional operator-(SelfAdjointFunctional a, const SelfAdjointFunctional& b) { return a -= b; }
SelfAdjointFunctional operator*(double c, SelfAdjointFunctional a) { return a *= c; }

// ---- PositiveFunctional ------------------------------------------------------

PositiveFunctional::PositiveFunctional(MatrixAlgebra algebra, Blocks blocks)
    : algebra_(std::move(algebra)), blocks_(std::move(blocks)) {
  check_shapes(algebra_, blocks_, "blocks");
  validate_hermitian(blocks_, "blocks");
  eig_ = eig_herm(blocks_);

  double max_abs = 0.0, min_eig = std::numeric_limits<double>::infinity();
  for (const auto& v : eig_.values) {
    if (v.size() == 0) continue;
    max_abs = std::max(max_abs, v.cwiseAbs().maxCoeff());
    min_eig = std::min(min_eig, v.minCoeff());
  }
  if (min_eig < -tol::kPsd * max_abs)
    throw ValidationError("matrix is not positive semidefinite (eigenvalue " +
                          std::to_string(min_eig) + ")");

  // clip the rounding band [−tol·‖x‖, 0] to 0 and rebuild
  trace_ = 0.0;
  min_eig_ = std::numeric_limits<double>::infinity();
  max_eig_ = 0.0;
  for (size_t i = 0; i < eig_.values.size(); ++i) {
    for (Eigen::Index j = 0; j < eig_.values[i].size(); ++j) {
      double& lam = eig_.values[i](j);
      if (lam < 0.0) lam = 0.0;
      trace_ += lam;
      min_eig_ = std::min(min_eig_, lam);
      max_eig_ = std::max(max_eig_, lam);
    }
    blocks_[i] = eig_.vectors[i] * eig_.values[i].asDiagonal() * eig_.vectors[i].adjoint();
    blocks_[i] = 0.5 * (blocks_[i] + blocks_[i].adjoint());
  }
}

PositiveFunctional PositiveFunctional::from_eigensystem(MatrixAlgebra algebra, BlockEig eig) {
  PositiveFunctional x;
  x.algebra_ = std::move(algebra);
  x.eig_ = std::move(eig);
  x.trace_ = 0.0;
  x.min_eig_ = std::numeric_limits<double>::infinity();
  x.max_eig_ = 0.0;
  x.blocks_.resize(x.eig_.values.size());
  for (size_t i = 0; i < x.eig_.values.size(); ++i) {
    for (Eigen::Index j = 0; j < x.eig_.values[i].size(); ++j) {
      const double lam = x.eig_.values[i](j);
      x.trace_ += lam;
      x.min_eig_ = std::min(x.min_eig_, lam);
      x.max_eig_ = std::max(x.max_eig_, lam);
    }
    x.blocks_[i] = x.eig_.vectors[i] * x.eig_.values[i].asDiagonal() * x.eig_.vectors[i].adjoint();
    x.blocks_[i] = 0.5 * (x.blocks_[i] + x.blocks_[i].adjoint());
  }
  return x;
}

SelfAdjointFunctional operator-(const PositiveFunctional& a, const PositiveFunctional& b) {
  check_same_algebra(a.algebra(), b.algebra());
  return SelfAdjointFunctional::unchecked(a.algebra(), sub_blocks(a.blocks(), b.blocks()));
}

PositiveFunctional operator+(const PositiveFunctional& a, const PositiveFunctional& b) {
  check_same_algebra(a.algebra(), b.algebra());
  return PositiveFunctional(a.algebra(), add_blocks(a.blocks(), b.blocks()));
}

PositiveFunctional operator*(double c, const PositiveFunctional& a) {
  if (c < 0.0) throw ValidationError("negative scale applied to a positive functional");
  BlockEig e = a.eig();
  for (auto& v : e.values) v *= c;
  return PositiveFunctional::from_eigensystem(a.algebra(), std::move(e));
}

SelfAdjointFunctional as_functional(const HermitianElement& a) {
  return SelfAdjointFunctional::unchecked(a.algebra(), a.blocks());
}

HermitianElement as_element(const SelfAdjointFunctional& psi) {
  return HermitianElement::unchecked(psi.algebra(), psi.blocks());
}

SelfAdjointFunctional as_selfadjoint(const PositiveFunctional& omega) {
  return SelfAdjointFunctional::unchecked(omega.algebra(), omega.blocks());
}

// ---- operations ------------------------------------------------------------

BlockEig eig_herm(const Blocks& x, double herm_tol) {
  BlockEig out;
  out.values.reserve(x.size());
  out.vectors.reserve(x.size());
  for (size_t i = 0; i < x.size(); ++i) {
    const Matrix& b = x[i];
    if (b.rows() != b.cols()) throw ValidationError("block is not square");
    const double scale = b.norm();
    const double dev = 0.5 * (b - b.adjoint()).norm();
    if (dev > herm_tol * std::max(scale, 1e-300) && dev > 0.0)
      throw ValidationError("block is not Hermitian within tolerance",
                            "blocks[" + std::to_string(i) + "]");
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (b + b.adjoint()));
    if (es.info() != Eigen::Success)
      throw ValidationError("eigendecomposition failed");
    out.values.push_back(es.eigenvalues());
    out.vectors.push_back(es.eigenvectors());
  }
  return out;
}

BlockEig eig_herm(const HermitianElement& x) { return eig_herm(x.blocks(), 1.0); }

const BlockEig& eig_herm(const PositiveFunctional& x) { return x.eig(); }

Blocks mat_fn(const BlockEig& eig, const std::function<double(double)>& f,
              const std::function<bool(double)>& domain_guard,
              const std::string& what) {
  Blocks out(eig.values.size());
  for (size_t i = 0; i < eig.values.size(); ++i) {
    Eigen::VectorXd fv(eig.values[i].size());
    for (Eigen::Index j = 0; j < eig.values[i].size(); ++j) {
      const double lam = eig.values[i](j);
      if (domain_guard && !domain_guard(lam))
        throw DomainError("eigenvalue outside the domain of " + what, lam);
      fv(j) = f(lam);
    }
    out[i] = eig.vectors[i] * fv.asDiagonal() * eig.vectors[i].adjoint();
    out[i] = 0.5 * (out[i] + out[i].adjoint());
  }
  return out;
}

Blocks mat_fn(const Blocks& x, const std::function<double(double)>& f,
              const std::function<bool(double)>& domain_guard,
              const std::string& what) {
  return mat_fn(eig_herm(x), f, domain_guard, what);
}

HermitianElement mat_log(const PositiveFunctional& rho) {
  Blocks b = mat_fn(rho.eig(), [](double t) { return std::log(t); },
                    [](double t) { return t > 0.0; }, "log");
  return HermitianElement::unchecked(rho.algebra(), std::move(b));
}

PositiveFunctional mat_exp(const HermitianElement& h) {
  BlockEig e = eig_herm(h);
  for (auto& v : e.values)
    for (Eigen::Index j = 0; j < v.size(); ++j) v(j) = std::exp(v(j));
  return PositiveFunctional::from_eigensystem(h.algebra(), std::move(e));
}

Blocks mat_pow(const PositiveFunctional& rho, double s) {
  if (s < 0.0 && !rho.faithful())
    throw DomainError("negative power of a non-faithful functional", rho.min_eigenvalue());
  return mat_fn(rho.eig(), [s](double t) { return t == 0.0 ? 0.0 : std::pow(t, s); },
                nullptr, "pow");
}

double pairing_blocks(const Blocks& a, const Blocks& psi) {
  if (a.size() != psi.size()) throw ValidationError("block count mismatch");
  double v = 0.0;
  for (size_t i = 0; i < a.size(); ++i)
    v += (psi[i] * a[i]).trace().real();
  return v;
}

double pairing(const HermitianElement& a, const SelfAdjointFunctional& psi) {
  check_same_algebra(a.algebra(), psi.algebra());
  return pairing_blocks(a.blocks(), psi.blocks());
}

double pairing(const HermitianElement& a, const PositiveFunctional& omega) {
  check_same_algebra(a.algebra(), omega.algebra());
  return pairing_blocks(a.blocks(), omega.blocks());
}

double schatten_norm(const Blocks& x, double p) {
  if (!(p >= 1.0)) throw ValidationError("Schatten norm requires p >= 1", "p");
  std::vector<double> sv;
  for (const auto& b : x) {
    Eigen::JacobiSVD<Matrix> svd(b);
    const auto& s = svd.singularValues();
    for (Eigen::Index j = 0; j < s.size(); ++j) sv.push_back(s(j));
  }
  if (sv.empty()) return 0.0;
  const double smax = *std::max_element(sv.begin(), sv.end());
  if (smax == 0.0) return 0.0;
  if (std::isinf(p)) return smax;
  double acc = 0.0;
  for (double s : sv) acc += std::pow(s / smax, p);
  return smax * std::pow(acc, 1.0 / p);
}

}  // namespace qig
