#include "qig/channels.hpp"

#include <cmath>
#include <limits>

#include "qig/entropy.hpp"
#include "qig/orlicz.hpp"
#include "qig/perturbation.hpp"

namespace qig {

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// ---- Channel ----------------------------------------------------------------

Channel::Channel(MatrixAlgebra source, MatrixAlgebra target, std::vector<Matrix> kraus)
    : source_(std::move(source)), target_(std::move(target)), kraus_(std::move(kraus)) {
  if (kraus_.empty()) throw ValidationError("channel needs at least one Kraus operator", "kraus");
  const Eigen::Index ns = source_.total_dim(), nt = target_.total_dim();
  for (size_t i = 0; i < kraus_.size(); ++i)
    if (kraus_[i].rows() != nt || kraus_[i].cols() != ns)
      throw ValidationError("Kraus operator has wrong shape",
                            "kraus[" + std::to_string(i) + "]");
  Matrix tp = Matrix::Zero(ns, ns);
  for (const auto& k : kraus_) tp += k.adjoint() * k;
  tp -= Matrix::Identity(ns, ns);
  if (tp.norm() > 1e-10 * std::sqrt(static_cast<double>(ns)))
    throw ValidationError("channel is not trace preserving (|sum K'K - 1| = " +
                          std::to_string(tp.norm()) + ")", "kraus");
}

Channel Channel::identity(const MatrixAlgebra& alg) {
  return Channel(alg, alg, {Matrix::Identity(alg.total_dim(), alg.total_dim())});
}

Channel Channel::partial_trace(Eigen::Index d1, Eigen::Index d2) {
  std::vector<Matrix> kraus;
  kraus.reserve(d2);
  for (Eigen::Index i = 0; i < d2; ++i) {
    Matrix k = Matrix::Zero(d1, d1 * d2);
    for (Eigen::Index j = 0; j < d1; ++j) k(j, j * d2 + i) = 1.0;
    kraus.push_back(std::move(k));
  }
  return Channel(MatrixAlgebra({d1 * d2}), MatrixAlgebra({d1}), std::move(kraus));
}

Channel Channel::depolarizing(Eigen::Index d) {
  std::vector<Matrix> kraus;
  kraus.reserve(d * d);
  const double s = 1.0 / std::sqrt(static_cast<double>(d));
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) {
      Matrix k = Matrix::Zero(d, d);
      k(i, j) = s;
      kraus.push_back(std::move(k));
    }
  return Channel(MatrixAlgebra({d}), MatrixAlgebra({d}), std::move(kraus));
}

Channel Channel::embedding(Eigen::Index d, Eigen::Index pad) {
  Matrix k = Matrix::Zero(d + pad, d);
  k.topRows(d) = Matrix::Identity(d, d);
  return Channel(MatrixAlgebra({d}), MatrixAlgebra({d, pad}), {std::move(k)});
}

Channel Channel::pinching(Eigen::Index d) {
  std::vector<Matrix> kraus;
  kraus.reserve(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    Matrix k = Matrix::Zero(d, d);
    k(i, i) = 1.0;
    kraus.push_back(std::move(k));
  }
  return Channel(MatrixAlgebra({d}), MatrixAlgebra(std::vector<Eigen::Index>(d, 1)),
                 std::move(kraus));
}

Blocks Channel::apply(const Blocks& h) const {
  const Matrix full = block_diag_embed(source_, h);
  Matrix out = Matrix::Zero(target_.total_dim(), target_.total_dim());
  for (const auto& k : kraus_) out += k * full * k.adjoint();
  return extract_blocks(target_, out);
}

PositiveFunctional Channel::apply(const PositiveFunctional& omega) const {
  if (omega.algebra() != source_) throw ValidationError("functional lives on the wrong algebra");
  return PositiveFunctional(target_, apply(omega.blocks()));
}

SelfAdjointFunctional Channel::apply(const SelfAdjointFunctional& psi) const {
  if (psi.algebra() != source_) throw ValidationError("functional lives on the wrong algebra");
  return SelfAdjointFunctional(target_, apply(psi.blocks()));
}

Blocks Channel::adjoint_apply(const Blocks& a) const {
  const Matrix full = block_diag_embed(target_, a);
  Matrix out = Matrix::Zero(source_.total_dim(), source_.total_dim());
  for (const auto& k : kraus_) out += k.adjoint() * full * k;
  return extract_blocks(source_, out);
}

HermitianElement Channel::adjoint_apply(const HermitianElement& a) const {
  if (a.algebra() != target_) throw ValidationError("observable lives on the wrong algebra");
  return HermitianElement(source_, adjoint_apply(a.blocks()));
}

// ---- PetzDual ----------------------------------------------------------------

PetzDual::PetzDual(Channel channel, PositiveFunctional rho, bool allow_restriction)
    : channel_(std::move(channel)),
      rho_(std::move(rho)),
      effective_target_(channel_.target()),
      pushforward_(channel_.apply(rho_)) {
  if (rho_.algebra() != channel_.source())
    throw ValidationError("base functional lives on the wrong algebra");
  if (!rho_.faithful())
    throw DomainError("Petz dual requires a faithful base", rho_.min_eigenvalue());

  if (!pushforward_.faithful()) {
    if (!allow_restriction)
      throw DomainError("T(rho) is not faithful and support restriction is disabled",
                        pushforward_.min_eigenvalue());
    compressed_ = true;
    const double thresh = tol::kSupport * pushforward_.max_eigenvalue();
    std::vector<Eigen::Index> dims;
    BlockEig ceig;
    for (Eigen::Index b = 0; b < channel_.target().num_blocks(); ++b) {
      const auto& lam = pushforward_.eig().values[b];
      const Matrix& u = pushforward_.eig().vectors[b];
      std::vector<Eigen::Index> keep;
      for (Eigen::Index j = 0; j < lam.size(); ++j)
        if (lam(j) > thresh) keep.push_back(j);
      if (keep.empty()) continue;
      Matrix v(u.rows(), static_cast<Eigen::Index>(keep.size()));
      Eigen::VectorXd lam_kept(static_cast<Eigen::Index>(keep.size()));
      for (size_t c = 0; c < keep.size(); ++c) {
        v.col(static_cast<Eigen::Index>(c)) = u.col(keep[c]);
        lam_kept(static_cast<Eigen::Index>(c)) = lam(keep[c]);
      }
      kept_.push_back(b);
      isometries_.push_back(std::move(v));
      dims.push_back(static_cast<Eigen::Index>(keep.size()));
      ceig.values.push_back(std::move(lam_kept));
      ceig.vectors.push_back(Matrix::Identity(dims.back(), dims.back()));
    }
    if (dims.empty())
      throw DomainError("T(rho) vanishes entirely", pushforward_.max_eigenvalue());
    effective_target_ = MatrixAlgebra(dims);
    pushforward_ = PositiveFunctional::from_eigensystem(effective_target_, std::move(ceig));
  } else {
    for (Eigen::Index b = 0; b < channel_.target().num_blocks(); ++b) kept_.push_back(b);
  }

  push_sqrt_ = mat_pow(pushforward_, 0.5);
  push_inv_sqrt_ = mat_pow(pushforward_, -0.5);
  rho_sqrt_ = mat_pow(rho_, 0.5);
}

Blocks PetzDual::compress_target(const Blocks& sigma) const {
  if (!compressed_) return sigma;
  if (sigma.size() != static_cast<size_t>(channel_.target().num_blocks()))
    throw ValidationError("block count does not match the channel target");
  Blocks out;
  out.reserve(kept_.size());
  for (size_t i = 0; i < kept_.size(); ++i) {
    const Matrix& v = isometries_[i];
    out.push_back(v.adjoint() * sigma[static_cast<size_t>(kept_[i])] * v);
  }
  // residual of sigma against the corner e sigma e, measured directly
  double leak_sq = 0.0, total_sq = 0.0;
  for (size_t b = 0, i = 0; b < sigma.size(); ++b) {
    total_sq += sigma[b].squaredNorm();
    if (i < kept_.size() && kept_[i] == static_cast<Eigen::Index>(b)) {
      const Matrix& v = isometries_[i];
      leak_sq += (sigma[b] - v * out[i] * v.adjoint()).squaredNorm();
      ++i;
    } else {
      leak_sq += sigma[b].squaredNorm();
    }
  }
  if (std::sqrt(leak_sq) > tol::kBlockLeak * std::max(std::sqrt(total_sq), 1e-300))
    throw ValidationError("functional has mass outside the support of T(rho)");
  return out;
}

Blocks PetzDual::expand_target(const Blocks& sigma) const {
  if (!compressed_) return sigma;
  Blocks out = channel_.target().zero();
  for (size_t i = 0; i < kept_.size(); ++i) {
    const Matrix& v = isometries_[i];
    out[static_cast<size_t>(kept_[i])] = v * sigma[i] * v.adjoint();
  }
  return out;
}

Blocks PetzDual::dual(const Blocks& a) const {
  Blocks mid(a.size());
  for (size_t i = 0; i < a.size(); ++i)
    mid[i] = rho_sqrt_[i] * a[i] * rho_sqrt_[i];
  Blocks pushed = compress_target(channel_.apply(mid));
  for (size_t i = 0; i < pushed.size(); ++i)
    pushed[i] = push_inv_sqrt_[i] * pushed[i] * push_inv_sqrt_[i];
  return pushed;
}

HermitianElement PetzDual::dual(const HermitianElement& a) const {
  if (a.algebra() != channel_.source())
    throw ValidationError("observable lives on the wrong algebra");
  return HermitianElement(effective_target_, dual(a.blocks()));
}

Blocks PetzDual::recover(const Blocks& sigma) const {
  Blocks mid(sigma.size());
  for (size_t i = 0; i < sigma.size(); ++i)
    mid[i] = push_inv_sqrt_[i] * sigma[i] * push_inv_sqrt_[i];
  Blocks back = channel_.adjoint_apply(expand_target(mid));
  for (size_t i = 0; i < back.size(); ++i)
    back[i] = rho_sqrt_[i] * back[i] * rho_sqrt_[i];
  return back;
}

PositiveFunctional PetzDual::recover(const PositiveFunctional& sigma) const {
  if (sigma.algebra() != effective_target_)
    throw ValidationError("functional lives on the wrong algebra");
  return PositiveFunctional(channel_.source(), recover(sigma.blocks()));
}

Channel PetzDual::recovery_channel() const {
  // embed the per-block factors as full matrices on the two algebras
  const Matrix rho_half = block_diag_embed(channel_.source(), rho_sqrt_);
  const Matrix push_inv_half = block_diag_embed(effective_target_, push_inv_sqrt_);
  Matrix include = Matrix::Zero(channel_.target().total_dim(), effective_target_.total_dim());
  if (compressed_) {
    Eigen::Index col = 0;
    std::vector<Eigen::Index> row_offsets(channel_.target().num_blocks(), 0);
    for (Eigen::Index b = 0, off = 0; b < channel_.target().num_blocks(); ++b) {
      row_offsets[static_cast<size_t>(b)] = off;
      off += channel_.target().block_dims()[static_cast<size_t>(b)];
    }
    for (size_t i = 0; i < kept_.size(); ++i) {
      const Matrix& v = isometries_[i];
      include.block(row_offsets[static_cast<size_t>(kept_[i])], col, v.rows(), v.cols()) = v;
      col += v.cols();
    }
  } else {
    include = Matrix::Identity(channel_.target().total_dim(), effective_target_.total_dim());
  }
  std::vector<Matrix> kraus;
  kraus.reserve(channel_.kraus().size());
  for (const auto& k : channel_.kraus())
    kraus.push_back(rho_half * k.adjoint() * include * push_inv_half);
  return Channel(effective_target_, channel_.source(), std::move(kraus));
}

HermitianElement petz_dual(const Channel& T, const PositiveFunctional& rho,
                           const HermitianElement& a, bool allow_restriction) {
  return PetzDual(T, rho, allow_restriction).dual(a);
}

PositiveFunctional recovery(const Channel& T, const PositiveFunctional& rho,
                            const PositiveFunctional& sigma_on_target,
                            bool allow_restriction) {
  PetzDual petz(T, rho, allow_restriction);
  if (sigma_on_target.algebra() != T.target())
    throw ValidationError("functional lives on the wrong algebra");
  const Blocks compressed = petz.compress_target(sigma_on_target.blocks());
  return PositiveFunctional(T.source(), petz.recover(compressed));
}

// ---- monotonicity and sufficiency -------------------------------------------

double f_monotonicity_residual(const Channel& T, const PositiveFunctional& rho,
                               const PositiveFunctional& omega) {
  PetzDual petz(T, rho);
  const PositiveFunctional pushed(petz.effective_target(),
                                  petz.compress_target(T.apply(omega.blocks())));
  return F_rho(omega, rho) - F_rho(pushed, petz.pushforward());
}

SufficiencyReport sufficiency_report(const Channel& T, const PositiveFunctional& rho,
                                     const HermitianElement& h) {
  PetzDual petz(T, rho);
  const PositiveFunctional rho_h = perturb(rho, h).perturbed;
  const PositiveFunctional t_rho = petz.pushforward();
  const PositiveFunctional t_rho_h(petz.effective_target(),
                                   petz.compress_target(T.apply(rho_h.blocks())));

  constexpr double kThresh = 1e-8;
  SufficiencyReport report{
      {}, {}, {}, {}, HermitianElement::zero(petz.effective_target()),
      petz.effective_target(), petz.compressed()};

  const double s_source = relative_entropy(rho_h, rho);
  const double s_target = relative_entropy(t_rho_h, t_rho);
  report.entropy_preserved = {std::abs(s_source - s_target) < kThresh,
                              std::abs(s_source - s_target)};

  const HermitianElement h0 = petz.dual(h);
  report.transported_h0 = h0;

  const PositiveFunctional family_member = perturb(t_rho, h0).perturbed;
  const double family_res =
      schatten_norm(sub_blocks(t_rho_h.blocks(), family_member.blocks()), 1.0);
  report.family_transported = {family_res < kThresh, family_res};

  const Blocks pulled = T.adjoint_apply(petz.expand_target(h0.blocks()));
  const double fixed_res =
      schatten_norm(sub_blocks(pulled, h.blocks()), std::numeric_limits<double>::infinity());
  report.fixed_point_h = {fixed_res < kThresh, fixed_res};

  const Blocks recovered = petz.recover(t_rho_h.blocks());
  const double recovery_res =
      schatten_norm(sub_blocks(recovered, rho_h.blocks()), 1.0);
  report.recovery_exact = {recovery_res < kThresh, recovery_res};

  return report;
}

std::vector<TransportResult> transport_family(const Channel& T,
                                              const PositiveFunctional& rho,
                                              const std::vector<HermitianElement>& family) {
  PetzDual petz(T, rho);
  const PositiveFunctional t_rho = petz.pushforward();

  std::vector<TransportResult> out;
  out.reserve(family.size());
  for (const auto& h : family) {
    const HermitianElement h0 = petz.dual(h);
    const PositiveFunctional rho_h = perturb(rho, h).perturbed;
    const PositiveFunctional t_rho_h(petz.effective_target(),
                                     petz.compress_target(T.apply(rho_h.blocks())));
    const PositiveFunctional member = perturb(t_rho, h0).perturbed;
    const double family_res =
        schatten_norm(sub_blocks(t_rho_h.blocks(), member.blocks()), 1.0);
    const double norm_res = std::abs(exp_norm(rho, h) - exp_norm(t_rho, h0));
    out.push_back({h0, family_res, norm_res,
                   family_res < 1e-8 && norm_res < 1e-6});
  }
  return out;
}

}  // namespace qig
