#pragma once

#include <optional>
#include <vector>

#include "qig/algebra.hpp"

namespace qig {

/// Trace-preserving completely positive map T: L_1(M) → L_1(N) given by
/// Kraus operators in the embedded (block-diagonal) coordinates. The adjoint
/// T* acts on the observable side and is unital.
class Channel {
public:
  Channel(MatrixAlgebra source, MatrixAlgebra target, std::vector<Matrix> kraus);

  static Channel identity(const MatrixAlgebra& alg);
  /// Partial trace over the second tensor factor, M_{d1·d2} → M_{d1}.
  static Channel partial_trace(Eigen::Index d1, Eigen::Index d2);
  /// Completely depolarizing channel on M_d.
  static Channel depolarizing(Eigen::Index d);
  /// Corner embedding σ ↦ σ ⊕ 0, M_d → M_d ⊕ M_pad.
  static Channel embedding(Eigen::Index d, Eigen::Index pad);
  /// Pinching onto the diagonal, M_d → C^d (d one-dimensional blocks).
  static Channel pinching(Eigen::Index d);

  const MatrixAlgebra& source() const noexcept { return source_; }
  const MatrixAlgebra& target() const noexcept { return target_; }
  const std::vector<Matrix>& kraus() const noexcept { return kraus_; }

  /// T(h) = Σ K h K†. Raises ValidationError if the image leaves the target
  /// block structure.
  Blocks apply(const Blocks& h) const;
  PositiveFunctional apply(const PositiveFunctional& omega) const;
  SelfAdjointFunctional apply(const SelfAdjointFunctional& psi) const;

  /// T*(a) = Σ K† a K, unital.
  Blocks adjoint_apply(const Blocks& a) const;
  HermitianElement adjoint_apply(const HermitianElement& a) const;

private:
  MatrixAlgebra source_;
  MatrixAlgebra target_;
  std::vector<Matrix> kraus_;
};

/// The Petz dual T*_ρ and recovery map T_ρ of a channel with respect to a
/// faithful ρ, defined by T(ρ^{1/2} a ρ^{1/2}) = T(ρ)^{1/2} T*_ρ(a) T(ρ)^{1/2}.
/// When T(ρ) is singular the target is automatically compressed to the
/// support corner e N e (per-block isometries); with restriction disabled a
/// singular T(ρ) raises DomainError.
class PetzDual {
public:
  PetzDual(Channel channel, PositiveFunctional rho, bool allow_restriction = true);

  const Channel& channel() const noexcept { return channel_; }
  const PositiveFunctional& base() const noexcept { return rho_; }
  const MatrixAlgebra& effective_target() const noexcept { return effective_target_; }
  bool compressed() const noexcept { return compressed_; }
  /// T(ρ) on the effective target; faithful by construction.
  const PositiveFunctional& pushforward() const noexcept { return pushforward_; }

  /// Map original-target blocks into the support corner. Validates that the
  /// input has no mass outside the corner.
  Blocks compress_target(const Blocks& sigma) const;
  /// Inclusion of the support corner back into the original target.
  Blocks expand_target(const Blocks& sigma) const;

  /// T*_ρ(a), an observable on the effective target. Unital and positive.
  Blocks dual(const Blocks& a) const;
  HermitianElement dual(const HermitianElement& a) const;

  /// The recovery map T_ρ(σ) = ρ^{1/2} T*(T(ρ)^{−1/2} σ T(ρ)^{−1/2}) ρ^{1/2}
  /// applied to a functional on the effective target.
  Blocks recover(const Blocks& sigma) const;
  PositiveFunctional recover(const PositiveFunctional& sigma) const;

  /// T_ρ as a channel in its own right, with Kraus operators
  /// ρ^{1/2} K† T(ρ)^{−1/2} from the effective target back to the source.
  Channel recovery_channel() const;

private:
  Channel channel_;
  PositiveFunctional rho_;
  MatrixAlgebra effective_target_;
  PositiveFunctional pushforward_;
  bool compressed_ = false;
  std::vector<Matrix> isometries_;     // original block dim × kept rank
  std::vector<Eigen::Index> kept_;     // original block indices with rank > 0
  Blocks push_inv_sqrt_;               // T(ρ)^{−1/2} on the effective target
  Blocks push_sqrt_;
  Blocks rho_sqrt_;
};

HermitianElement petz_dual(const Channel& T, const PositiveFunctional& rho,
                           const HermitianElement& a, bool allow_restriction = true);
PositiveFunctional recovery(const Channel& T, const PositiveFunctional& rho,
                            const PositiveFunctional& sigma_on_target,
                            bool allow_restriction = true);

/// F_ρ(ω) − F_{T(ρ)}(T(ω)) ≥ 0 (data processing for the shifted entropy).
double f_monotonicity_residual(const Channel& T, const PositiveFunctional& rho,
                               const PositiveFunctional& omega);

struct CertificateCheck {
  bool ok;
  double residual;
};

/// The four equivalent sufficiency certificates of the Petz theory for the
/// pair {ρ, ρ^h}: entropy preservation, membership of T(ρ^h) in the
/// transported exponential family, the fixed-point property T*∘T*_ρ(h) = h,
/// and exactness of the Petz recovery. On valid inputs the flags agree.
struct SufficiencyReport {
  CertificateCheck entropy_preserved;
  CertificateCheck family_transported;
  CertificateCheck fixed_point_h;
  CertificateCheck recovery_exact;
  HermitianElement transported_h0;  // T*_ρ(h) on the effective target
  MatrixAlgebra effective_target;
  bool compressed;

  bool sufficient() const {
    return entropy_preserved.ok && family_transported.ok && fixed_point_h.ok &&
           recovery_exact.ok;
  }
  bool consistent() const {
    return entropy_preserved.ok == family_transported.ok &&
           family_transported.ok == fixed_point_h.ok &&
           fixed_point_h.ok == recovery_exact.ok;
  }
};

/// Thresholds: 1e-8 absolute on entropy residuals, 1e-8 in trace norm on
/// state residuals, 1e-8 in operator norm on the recovered perturbation.
SufficiencyReport sufficiency_report(const Channel& T, const PositiveFunctional& rho,
                                     const HermitianElement& h);

struct TransportResult {
  HermitianElement transported;  // T*_ρ(h)
  double family_residual;        // ‖T(ρ^h) − T(ρ)^{T*_ρ(h)}‖₁
  double norm_residual;          // |‖h‖_{exp,ρ} − ‖T*_ρ(h)‖_{exp,T(ρ)}|
  bool ok;
};

/// Transport a generating family along T*_ρ, verifying T(ρ^h) = T(ρ)^{T*_ρ(h)}
/// and preservation of the exponential Orlicz norm.
std::vector<TransportResult> transport_family(const Channel& T,
                                              const PositiveFunctional& rho,
                                              const std::vector<HermitianElement>& family);

/// Kronecker product, row-major tensor index convention (i ⊗ j) ↦ i·cols+j.
Matrix kron(const Matrix& a, const Matrix& b);

}  // namespace qig
