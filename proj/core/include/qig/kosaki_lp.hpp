#pragma once

#include "qig/algebra.hpp"

namespace qig {

/// Kosaki L_p(M,ρ) norm of an element h of L_1(M), realized through the
/// symmetric embedding i_{p,ρ}: k ↦ ρ^{1/2q} k ρ^{1/2q} (1/p + 1/q = 1):
///   ‖h‖_{p,ρ} = ‖ρ^{−1/2q} h ρ^{−1/2q}‖_p.
/// p = 1 reduces to the trace norm, p = ∞ to ‖ρ^{−1/2} h ρ^{−1/2}‖_∞.
double lp_norm(const Blocks& h, const PositiveFunctional& rho, double p);

/// The embedding i_{p,ρ} itself: a ↦ ρ^{1/2q} a ρ^{1/2q}. p = ∞ gives the
/// symmetric embedding M → L_1(M), p = 1 is the identity.
Blocks kosaki_embed(const Blocks& a, const PositiveFunctional& rho, double p);

/// Duality pairing between L_p(M,ρ) and L_q(M,ρ):
/// ⟨i_{p,ρ}(k), i_{q,ρ}(l)⟩ = Tr[kl].
double lp_duality_pairing(const Blocks& h_p, const Blocks& h_q,
                          const PositiveFunctional& rho, double p);

/// |‖h‖_{p,ρ} − ⟨h, k⟩| with k the analytic unit-q-norm maximizer built from
/// the polar decomposition of the L_p representative. 1 < p < ∞.
double lp_duality_gap(const Blocks& h, const PositiveFunctional& rho, double p);

/// An element of L_p(M,ρ): the ambient L_1 matrix together with p and the
/// faithful base.
struct LpElement {
  double p;
  Blocks ambient;
  PositiveFunctional base;

  double norm() const { return lp_norm(ambient, base, p); }
};

}  // namespace qig
