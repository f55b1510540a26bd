#pragma once

#include <vector>

#include "qig/algebra.hpp"

namespace qig {

/// Relative entropy S(ω‖ρ) = Tr ω(log ω − log ρ) on the support of ω,
/// in nats. Returns +∞ when the support of ω is not contained in the
/// support of ρ (detected via the eigenvalue threshold kSupport·‖ρ‖
/// against the ω-mass outside, relative to ‖ω‖).
double relative_entropy(const PositiveFunctional& omega, const PositiveFunctional& rho);

/// F_ρ(ω) = S(ω‖ρ) − ω(1) for positive ω, +∞ when ω has a genuinely
/// negative eigenvalue. ρ must be faithful.
double F_rho(const PositiveFunctional& omega, const PositiveFunctional& rho);
double F_rho(const SelfAdjointFunctional& omega, const PositiveFunctional& rho);

/// |S(ω‖ρ) + Σ_i S(ω_i‖ω) − Σ_i S(ω_i‖ρ)| for ω = Σ_i ω_i.
double donald_residual(const std::vector<PositiveFunctional>& parts,
                       const PositiveFunctional& rho);

/// Step function x : (1/n, ∞) → M with finite range. The value on
/// (t_{j−1}, t_j] is values[j−1]; past the last breakpoint the value is
/// the identity (so y(t) = 1 − x(t) vanishes and the integral converges).
struct StepFunction {
  int n = 1;
  std::vector<double> breakpoints;  // t_0 = 1/n < t_1 < ... < t_m
  std::vector<Blocks> values;       // size breakpoints.size() − 1
};

/// Evaluate the bracket of the Kosaki variational formula
///   ω(1)·log n − ∫_{1/n}^∞ (ω(y(t)†y(t)) + t⁻¹ ρ(x(t)x(t)†)) dt/t
/// for one step function, with closed-form per-interval integrals.
/// By the variational formula the result is ≤ S(ω‖ρ).
double kosaki_lower_bound(const PositiveFunctional& omega,
                          const PositiveFunctional& rho, const StepFunction& s);

/// f(α) = (α−1)⁻¹ log(‖h_ω‖_{α,ρ}^α / ω(1)), increasing on (1, p] with
/// limit S(ω‖ρ)/ω(1) as α ↓ 1.
double renyi_f(const PositiveFunctional& omega, const PositiveFunctional& rho,
               double alpha);

}  // namespace qig
