#pragma once

#include <vector>

#include "qig/algebra.hpp"

namespace qig {

/// Chart of the exponential manifold at a faithful base point: the map
/// h ↦ ρ^h on the unit ball of ‖·‖_{exp,ρ}. At finite dimension the map is
/// globally defined and invertible, so leaving the ball only sets a flag.
struct Chart {
  PositiveFunctional base;
  double radius = 1.0;
};

struct ChartPoint {
  PositiveFunctional state;
  bool inside_ball;
  double h_exp_norm;
};

ChartPoint chart_forward(const Chart& chart, const HermitianElement& h);

/// Inverse chart: σ ↦ log σ − log ρ. σ must be faithful (DomainError).
HermitianElement chart_inverse(const Chart& chart, const PositiveFunctional& sigma);

/// Transition map e_{ρ2} ∘ s_{ρ1}: h1 ↦ h1 + k with k = log ρ1 − log ρ2.
HermitianElement transition(const PositiveFunctional& rho1,
                            const PositiveFunctional& rho2,
                            const HermitianElement& h1);

/// Canonical (Bregman) divergence of C_ρ:
/// D_ρ(h‖k) = C_ρ(h) − C_ρ(k) − ⟨ρ^k, h−k⟩ = S(ρ^k‖ρ^h) − (ρ^k − ρ^h)(1).
double canonical_divergence(const PositiveFunctional& rho, const HermitianElement& h,
                            const HermitianElement& k);

/// |D(h‖k) + D(k‖l) − D(h‖l) − (ρ^k − ρ^l)(k − h)|; the exact Pythagorean
/// identity holds when the correction pairing vanishes.
double pythagorean_residual(const PositiveFunctional& rho, const HermitianElement& h,
                            const HermitianElement& k, const HermitianElement& l);

/// Exponential family E_ρ(E) = {ρ^h, h ∈ span(generators)}.
struct ExponentialFamily {
  PositiveFunctional base;
  std::vector<HermitianElement> generators;

  PositiveFunctional member(const std::vector<double>& coefficients) const;
};

}  // namespace qig
