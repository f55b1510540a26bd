#pragma once

#include <Eigen/Dense>

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "qig/errors.hpp"

namespace qig {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Blocks = std::vector<Matrix>;

/// Tolerances shared across the library.
namespace tol {
inline constexpr double kHermitian = 1e-12;   // relative Frobenius
inline constexpr double kPsd = 1e-12;         // relative to spectral norm
inline constexpr double kSupport = 1e-12;     // support projection threshold
inline constexpr double kBlockLeak = 1e-10;   // off-block mass after a channel
}  // namespace tol

/// A finite direct sum of full matrix blocks M_{n_1} ⊕ ... ⊕ M_{n_k}.
/// One block models B(H); all-1x1 blocks model a commutative algebra.
class MatrixAlgebra {
public:
  explicit MatrixAlgebra(std::vector<Eigen::Index> block_dims);

  const std::vector<Eigen::Index>& block_dims() const noexcept { return dims_; }
  Eigen::Index num_blocks() const noexcept { return static_cast<Eigen::Index>(dims_.size()); }
  Eigen::Index total_dim() const noexcept { return total_; }

  Blocks zero() const;
  Blocks identity() const;

  bool operator==(const MatrixAlgebra& other) const noexcept { return dims_ == other.dims_; }
  bool operator!=(const MatrixAlgebra& other) const noexcept { return !(*this == other); }

private:
  std::vector<Eigen::Index> dims_;
  Eigen::Index total_;
};

/// Blockwise eigensystem of a Hermitian block matrix.
struct BlockEig {
  std::vector<Eigen::VectorXd> values;
  std::vector<Matrix> vectors;  // unitary per block, columns are eigenvectors
};

// ---- raw block helpers -----------------------------------------------------

Blocks add_blocks(const Blocks& a, const Blocks& b);
Blocks sub_blocks(const Blocks& a, const Blocks& b);
Blocks scale_blocks(const Blocks& a, Complex c);
Blocks adjoint_blocks(const Blocks& a);
double trace_re(const Blocks& a);
double frobenius_norm(const Blocks& a);

/// Embed a block list as one block-diagonal matrix (and back). extract_blocks
/// raises a ValidationError if the off-block mass exceeds leak_tol relative
/// to the Frobenius norm of the input.
Matrix block_diag_embed(const MatrixAlgebra& alg, const Blocks& blocks);
Blocks extract_blocks(const MatrixAlgebra& alg, const Matrix& full,
                      double leak_tol = tol::kBlockLeak);

// ---- domain types ----------------------------------------------------------

/// Self-adjoint element of the algebra (observable side, a ∈ M^s).
/// Inputs are symmetrized on ingestion; the deviation is recorded and must
/// stay below the Hermitian tolerance.
class HermitianElement {
public:
  HermitianElement(MatrixAlgebra algebra, Blocks blocks);

  static HermitianElement zero(const MatrixAlgebra& algebra);
  /// Trusted constructor: caller guarantees exact Hermiticity.
  static HermitianElement unchecked(MatrixAlgebra algebra, Blocks blocks);

  const MatrixAlgebra& algebra() const noexcept { return algebra_; }
  const Blocks& blocks() const noexcept { return blocks_; }
  double ingest_deviation() const noexcept { return ingest_deviation_; }

  double sup_norm() const;  // operator norm, max |eigenvalue|

  HermitianElement operator-() const;
  HermitianElement& operator+=(const HermitianElement& other);
  HermitianElement& operator-=(const HermitianElement& other);
  HermitianElement& operator*=(double c);

private:
  HermitianElement() = default;
  MatrixAlgebra algebra_{std::vector<Eigen::Index>{1}};
  Blocks blocks_;
  double ingest_deviation_ = 0.0;
};

HermitianElement operator+(HermitianElement a, const HermitianElement& b);
HermitianElement operator-(HermitianElement a, const HermitianElement& b);
HermitianElement operator*(double c, HermitianElement a);

class PositiveFunctional;

/// Element of M_*^s: a Hermitian block matrix acting by the trace pairing.
class SelfAdjointFunctional {
public:
  SelfAdjointFunctional(MatrixAlgebra algebra, Blocks blocks);

  static SelfAdjointFunctional zero(const MatrixAlgebra& algebra);
  static SelfAdjointFunctional unchecked(MatrixAlgebra algebra, Blocks blocks);

  const MatrixAlgebra& algebra() const noexcept { return algebra_; }
  const Blocks& blocks() const noexcept { return blocks_; }
  double ingest_deviation() const noexcept { return ingest_deviation_; }

  /// Jordan decomposition ψ = ω_+ − ω_− by spectral split.
  std::pair<PositiveFunctional, PositiveFunctional> spectral_split() const;

  SelfAdjointFunctional operator-() const;
  SelfAdjointFunctional& operator+=(const SelfAdjointFunctional& other);
  SelfAdjointFunctional& operator-=(const SelfAdjointFunctional& other);
  SelfAdjointFunctional& operator*=(double c);

private:
  SelfAdjointFunctional() = default;
  MatrixAlgebra algebra_{std::vector<Eigen::Index>{1}};
  Blocks blocks_;
  double ingest_deviation_ = 0.0;
};

SelfAdjointFunctional operator+(SelfAdjointFunctional a, const SelfAdjointFunctional& b);
SelfAdjointFunctional operator-(SelfAdjointFunctional a, const SelfAdjointFunctional& b);
SelfAdjointFunctional operator*(double c, SelfAdjointFunctional a);

/// Element of M_*^+: a PSD block matrix h_ω with ω(a) = Tr[h_ω a].
/// Eigenvalues in [−kPsd·‖x‖, 0] are clipped to 0 and the blocks rebuilt from
/// the clipped eigensystem, so blocks, eigensystem and cached trace agree
/// exactly. The eigensystem is cached for functional calculus.
class PositiveFunctional {
public:
  PositiveFunctional(MatrixAlgebra algebra, Blocks blocks);

  /// Trusted constructor from a known eigensystem with nonnegative values.
  static PositiveFunctional from_eigensystem(MatrixAlgebra algebra, BlockEig eig);

  const MatrixAlgebra& algebra() const noexcept { return algebra_; }
  const Blocks& blocks() const noexcept { return blocks_; }
  const BlockEig& eig() const noexcept { return eig_; }

  double trace() const noexcept { return trace_; }
  double min_eigenvalue() const noexcept { return min_eig_; }
  double max_eigenvalue() const noexcept { return max_eig_; }
  bool faithful() const noexcept { return min_eig_ > 0.0; }

private:
  PositiveFunctional() = default;
  MatrixAlgebra algebra_{std::vector<Eigen::Index>{1}};
  Blocks blocks_;
  BlockEig eig_;
  double trace_ = 0.0;
  double min_eig_ = 0.0;
  double max_eig_ = 0.0;
};

SelfAdjointFunctional operator-(const PositiveFunctional& a, const PositiveFunctional& b);
PositiveFunctional operator+(const PositiveFunctional& a, const PositiveFunctional& b);
PositiveFunctional operator*(double c, const PositiveFunctional& a);  // c ≥ 0

/// Reinterpret between the observable and functional sides (same data).
SelfAdjointFunctional as_functional(const HermitianElement& a);
HermitianElement as_element(const SelfAdjointFunctional& psi);
SelfAdjointFunctional as_selfadjoint(const PositiveFunctional& omega);

// ---- operations ------------------------------------------------------------

/// Blockwise Hermitian eigendecomposition. Validates Hermiticity within the
/// relative Frobenius tolerance first.
BlockEig eig_herm(const Blocks& x, double herm_tol = tol::kHermitian);
BlockEig eig_herm(const HermitianElement& x);
const BlockEig& eig_herm(const PositiveFunctional& x);

/// Functional calculus x ↦ U diag(f(λ)) U†. Every eigenvalue must satisfy
/// the domain guard; a violation raises DomainError carrying the eigenvalue.
Blocks mat_fn(const BlockEig& eig, const std::function<double(double)>& f,
              const std::function<bool(double)>& domain_guard,
              const std::string& what);
Blocks mat_fn(const Blocks& x, const std::function<double(double)>& f,
              const std::function<bool(double)>& domain_guard,
              const std::string& what);

HermitianElement mat_log(const PositiveFunctional& rho);
PositiveFunctional mat_exp(const HermitianElement& h);
/// ρ^s with the convention 0^s = 0 for s > 0; s < 0 requires faithful ρ.
Blocks mat_pow(const PositiveFunctional& rho, double s);

/// ⟨a, ψ⟩ = Σ_i Re tr(ψ_i a_i), the duality ω(a) = Tr[h_ω a].
double pairing(const HermitianElement& a, const SelfAdjointFunctional& psi);
double pairing(const HermitianElement& a, const PositiveFunctional& omega);
double pairing_blocks(const Blocks& a, const Blocks& psi);

/// Schatten p-norm, p ∈ [1, ∞]. p = ∞ gives the largest singular value.
double schatten_norm(const Blocks& x, double p);

}  // namespace qig
