#include "qig/manifold.hpp"

#include <cmath>

#include "qig/orlicz.hpp"
#include "qig/perturbation.hpp"

namespace qig {

ChartPoint chart_forward(const Chart& chart, const HermitianElement& h) {
  const double norm = exp_norm(chart.base, h);
  return {perturb(chart.base, h).perturbed, norm < chart.radius, norm};
}

HermitianElement chart_inverse(const Chart& chart, const PositiveFunctional& sigma) {
  if (sigma.algebra() != chart.base.algebra())
    throw ValidationError("algebra mismatch");
  if (!sigma.faithful())
    throw DomainError("chart inverse needs a faithful functional",
                      sigma.min_eigenvalue());
  return mat_log(sigma) - mat_log(chart.base);
}

HermitianElement transition(const PositiveFunctional& rho1,
                            const PositiveFunctional& rho2,
                            const HermitianElement& h1) {
  if (rho1.algebra() != rho2.algebra() || h1.algebra() != rho1.algebra())
    throw ValidationError("algebra mismatch");
  if (!rho1.faithful() || !rho2.faithful())
    throw DomainError("transition needs faithful base points",
                      std::min(rho1.min_eigenvalue(), rho2.min_eigenvalue()));
  return h1 + (mat_log(rho1) - mat_log(rho2));
}

double canonical_divergence(const PositiveFunctional& rho, const HermitianElement& h,
                            const HermitianElement& k) {
  const auto at_k = perturb(rho, k);
  const double c_h = c_rho(rho, h);
  return c_h - at_k.c_value - pairing(h - k, at_k.perturbed);
}

double pythagorean_residual(const PositiveFunctional& rho, const HermitianElement& h,
                            const HermitianElement& k, const HermitianElement& l) {
  const double lhs = canonical_divergence(rho, h, k) + canonical_divergence(rho, k, l);
  const double rhs = canonical_divergence(rho, h, l) +
                     pairing(k - h, perturb(rho, k).perturbed - perturb(rho, l).perturbed);
  return std::abs(lhs - rhs);
}

PositiveFunctional ExponentialFamily::member(const std::vector<double>& coefficients) const {
  if (coefficients.size() != generators.size())
    throw ValidationError("coefficient count does not match the generators");
  HermitianElement h = HermitianElement::zero(base.algebra());
  for (size_t i = 0; i < generators.size(); ++i) h += coefficients[i] * generators[i];
  return perturb(base, h).perturbed;
}

}  // namespace qig
