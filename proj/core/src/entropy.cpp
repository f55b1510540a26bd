#include "qig/entropy.hpp"

#include <cmath>
#include <limits>

#include "qig/kosaki_lp.hpp"

namespace qig {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }
}  // namespace

double relative_entropy(const PositiveFunctional& omega, const PositiveFunctional& rho) {
  if (omega.algebra() != rho.algebra()) throw ValidationError("algebra mismatch");

  const double tau_rho = tol::kSupport * rho.max_eigenvalue();
  const double omega_scale = omega.max_eigenvalue();

  // Tr[(1 − s(ρ)) ω] against the support surrogate.
  double leak = 0.0;
  double tr_omega_log_rho = 0.0;
  for (size_t i = 0; i < rho.eig().values.size(); ++i) {
    const auto& lam = rho.eig().values[i];
    const Matrix& u = rho.eig().vectors[i];
    const Matrix om = u.adjoint() * omega.blocks()[i] * u;
    for (Eigen::Index j = 0; j < lam.size(); ++j) {
      const double mass = om(j, j).real();
      if (lam(j) <= tau_rho)
        leak += mass;
      else
        tr_omega_log_rho += mass * std::log(lam(j));
    }
  }
  if (leak > tol::kSupport * std::max(omega_scale, 1e-300)) return kInf;

  double tr_omega_log_omega = 0.0;
  for (const auto& v : omega.eig().values)
    for (Eigen::Index j = 0; j < v.size(); ++j) tr_omega_log_omega += xlogx(v(j));

  return tr_omega_log_omega - tr_omega_log_rho;
}

double F_rho(const PositiveFunctional& omega, const PositiveFunctional& rho) {
  if (!rho.faithful())
    throw ValidationError("F_rho requires a faithful base functional");
  const double s = relative_entropy(omega, rho);
  return s == kInf ? kInf : s - omega.trace();
}

double F_rho(const SelfAdjointFunctional& omega, const PositiveFunctional& rho) {
  if (!rho.faithful())
    throw ValidationError("F_rho requires a faithful base functional");
  BlockEig e = eig_herm(omega.blocks());
  double max_abs = 0.0, min_eig = 0.0;
  for (const auto& v : e.values) {
    if (v.size() == 0) continue;
    max_abs = std::max(max_abs, v.cwiseAbs().maxCoeff());
    min_eig = std::min(min_eig, v.minCoeff());
  }
  if (min_eig < -tol::kPsd * max_abs) return kInf;
  for (auto& v : e.values) v = v.cwiseMax(0.0);
  return F_rho(PositiveFunctional::from_eigensystem(omega.algebra(), std::move(e)), rho);
}

double donald_residual(const std::vector<PositiveFunctional>& parts,
                       const PositiveFunctional& rho) {
  if (parts.empty()) throw ValidationError("donald_residual needs at least one part");
  PositiveFunctional omega = parts[0];
  for (size_t i = 1; i < parts.size(); ++i) omega = omega + parts[i];

  double lhs = relative_entropy(omega, rho);
  double rhs = 0.0;
  for (const auto& part : parts) {
    lhs += relative_entropy(part, omega);
    rhs += relative_entropy(part, rho);
  }
  return std::abs(lhs - rhs);
}

namespace {

void validate_step_function(const MatrixAlgebra& alg, const StepFunction& s) {
  if (s.n < 1) throw ValidationError("step function cutoff n must be >= 1", "n");
  if (s.breakpoints.empty())
    throw ValidationError("step function needs at least the cutoff breakpoint", "breakpoints");
  const double t0 = s.breakpoints.front();
  if (std::abs(t0 - 1.0 / s.n) > 1e-12 * std::max(1.0, t0))
    throw ValidationError("first breakpoint must equal 1/n", "breakpoints[0]");
  for (size_t j = 1; j < s.breakpoints.size(); ++j)
    if (!(s.breakpoints[j] > s.breakpoints[j - 1]))
      throw ValidationError("breakpoints must be strictly increasing",
                            "breakpoints[" + std::to_string(j) + "]");
  if (s.values.size() + 1 != s.breakpoints.size())
    throw ValidationError("need one value per interval between breakpoints", "values");
  for (size_t j = 0; j < s.values.size(); ++j) {
    if (s.values[j].size() != static_cast<size_t>(alg.num_blocks()))
      throw ValidationError("step value block count mismatch",
                            "values[" + std::to_string(j) + "]");
    for (size_t b = 0; b < s.values[j].size(); ++b) {
      const auto n = alg.block_dims()[b];
      if (s.values[j][b].rows() != n || s.values[j][b].cols() != n)
        throw ValidationError("step value block shape mismatch",
                              "values[" + std::to_string(j) + "][" + std::to_string(b) + "]");
    }
  }
}

}  // namespace

double kosaki_lower_bound(const PositiveFunctional& omega,
                          const PositiveFunctional& rho, const StepFunction& s) {
  if (omega.algebra() != rho.algebra()) throw ValidationError("algebra mismatch");
  validate_step_function(omega.algebra(), s);

  const Blocks one = omega.algebra().identity();
  double integral = 0.0;
  // interior intervals: ∫ dt/t = log, ∫ dt/t² = 1/t_{j−1} − 1/t_j
  for (size_t j = 0; j < s.values.size(); ++j) {
    const double lo = s.breakpoints[j], hi = s.breakpoints[j + 1];
    const Blocks& x = s.values[j];
    double omega_yy = 0.0, rho_xx = 0.0;
    for (size_t b = 0; b < x.size(); ++b) {
      const Matrix y = one[b] - x[b];
      omega_yy += (omega.blocks()[b] * (y.adjoint() * y)).trace().real();
      rho_xx += (rho.blocks()[b] * (x[b] * x[b].adjoint())).trace().real();
    }
    integral += omega_yy * std::log(hi / lo) + rho_xx * (1.0 / lo - 1.0 / hi);
  }
  // tail (t_m, ∞): x = 1, y = 0, so only ρ(1)·∫ dt/t² = ρ(1)/t_m survives
  integral += rho.trace() / s.breakpoints.back();

  return omega.trace() * std::log(static_cast<double>(s.n)) - integral;
}

double renyi_f(const PositiveFunctional& omega, const PositiveFunctional& rho,
               double alpha) {
  if (!(alpha > 1.0)) throw ValidationError("renyi_f requires alpha > 1", "alpha");
  if (omega.trace() <= 0.0) throw ValidationError("renyi_f requires omega != 0", "omega");
  if (!rho.faithful())
    throw DomainError("renyi_f requires a faithful base functional", rho.min_eigenvalue());
  const double norm = lp_norm(omega.blocks(), rho, alpha);
  return (alpha * std::log(norm) - std::log(omega.trace())) / (alpha - 1.0);
}

}  // namespace qig
