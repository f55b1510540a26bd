#pragma once

#include "qig/algebra.hpp"

namespace qig {

/// Result of perturbing ρ by h: the functional ρ^h = exp(log ρ + h) and the
/// conjugate value C_ρ(h) = ρ^h(1).
struct PerturbationResult {
  PositiveFunctional perturbed;
  double c_value;
};

/// ρ^h = exp(log ρ + h). Requires faithful ρ; the result is faithful.
PerturbationResult perturb(const PositiveFunctional& rho, const HermitianElement& h);

/// C_ρ(h) = Tr exp(log ρ + h).
double c_rho(const PositiveFunctional& rho, const HermitianElement& h);

/// |ω(h) + S(ω‖ρ^h) − S(ω‖ρ)|.
double perturbed_entropy_residual(const PositiveFunctional& omega,
                                  const PositiveFunctional& rho,
                                  const HermitianElement& h);

/// max(‖ρ^{h+k} − (ρ^h)^k‖₁, |C_ρ(h+k) − C_{ρ^h}(k)|).
double chain_rule_residual(const PositiveFunctional& rho, const HermitianElement& h,
                           const HermitianElement& k);

/// Gateaux derivative of C_ρ at h, which equals ρ^h.
PositiveFunctional c_gradient(const PositiveFunctional& rho, const HermitianElement& h);

/// Truncated expansional series for the perturbed vector
///   ξ(a) = Σ_n ∫_{1/2 ≥ t_1 ≥ ... ≥ t_n ≥ 0} Δ_ρ^{t_n} a Δ_ρ^{t_{n−1}−t_n} a ... a ρ^{1/2} dt,
/// with Δ_ρ^t(x) = ρ^t x ρ^{−t}. Converges to (ρ^a)^{1/2} = exp((log ρ + a)/2).
/// The simplex integrals are evaluated by iterated Gauss–Legendre quadrature
/// after the substitution t_j = t_{j−1}·u_j; the inner iterated integrals are
/// carried on the quadrature grid and interpolated barycentrically.
struct SeriesResult {
  Blocks xi;
  double truncation_estimate;  // Hilbert–Schmidt norm of the last term
  int order;
  int quadrature_points;
};

SeriesResult perturbed_vector_series(const PositiveFunctional& rho,
                                     const HermitianElement& a, int order,
                                     int quadrature_points);

/// Gauss–Legendre nodes and weights on [0, 1].
void gauss_legendre_01(int n, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace qig
