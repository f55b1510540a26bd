#pragma once

#include <functional>
#include <optional>
#include <utility>

#include "qig/algebra.hpp"

namespace qig {

/// The exponential Young function Φ_ρ(a) = ½(C_ρ(a) + C_ρ(−a)) − ρ(1).
/// Strictly convex, even, zero exactly at a = 0.
double phi(const PositiveFunctional& rho, const HermitianElement& a);

struct AscentOptions {
  double grad_tol = 1e-8;
  double objective_tol = 1e-12;
  long max_iterations = 100000;
  double armijo = 1e-4;
};

/// Certificate for an evaluation of the dual Young function Ψ_ρ. The sup
/// form carries the maximizer; the inf form carries a feasible decomposition
/// 2ψ = ω_+ − ω_−. gap is |sup − inf| when both forms were computed.
struct DualNormCertificate {
  double psi_value;
  HermitianElement maximizer_a;
  std::optional<std::pair<PositiveFunctional, PositiveFunctional>> decomposition;
  double gap;
  long iterations;
  double gradient_norm;
};

/// Ψ_ρ(ψ) = sup_a ψ(a) − Φ_ρ(a), solved by gradient ascent with backtracking
/// (gradient ψ − ½(ρ^a − ρ^{−a}), start a = 0).
DualNormCertificate psi_sup(const PositiveFunctional& rho,
                            const SelfAdjointFunctional& psi,
                            const AscentOptions& opts = {});

/// Ψ_ρ(ψ) = ½ inf { F_ρ(ω_+) + F_ρ(ω_−) : 2ψ = ω_+ − ω_−, ω_± ≥ 0 } + ρ(1),
/// solved by projected descent over ω_− with eigenvalue clipping.
DualNormCertificate psi_inf(const PositiveFunctional& rho,
                            const SelfAdjointFunctional& psi,
                            const AscentOptions& opts = {});

/// Runs both forms, checks the decomposition reconstructs 2ψ, and fills gap.
DualNormCertificate psi_certificate(const PositiveFunctional& rho,
                                    const SelfAdjointFunctional& psi,
                                    const AscentOptions& opts = {});

/// Luxemburg norm inf{λ > 0 : Φ(x/λ) ≤ 1} by bracketing and bisection.
/// phi_of_lambda must evaluate λ ↦ Φ(x/λ) (nonincreasing); is_zero short
/// circuits ‖0‖ = 0. Terminates when Φ(x/λ) ∈ [1−value_tol, 1+value_tol] or
/// the bracket is relatively tighter than 1e-8, with a 200 iteration cap.
double luxemburg_norm(const std::function<double(double)>& phi_of_lambda,
                      bool is_zero, double value_tol = 1e-8);

/// ‖a‖_{exp,ρ}: Luxemburg norm of Φ_ρ.
double exp_norm(const PositiveFunctional& rho, const HermitianElement& a,
                double tol = 1e-8);

/// ‖ψ‖_{log,ρ}: Luxemburg norm of Ψ_ρ, evaluated through the sup form.
double log_norm(const PositiveFunctional& rho, const SelfAdjointFunctional& psi,
                double tol = 1e-8, const AscentOptions& inner = {1e-9, 1e-12, 100000, 1e-4});

}  // namespace qig
