#include "qig/kosaki_lp.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <limits>

namespace qig {

namespace {

// 1/2q with 1/p + 1/q = 1
double embed_exponent(double p) {
  if (!(p >= 1.0)) throw ValidationError("Kosaki L_p requires p >= 1", "p");
  if (std::isinf(p)) return 0.5;
  return (p - 1.0) / (2.0 * p);
}

Blocks sandwich(const Blocks& h, const PositiveFunctional& rho, double exponent) {
  if (exponent == 0.0) return h;
  const Blocks w = mat_pow(rho, exponent);
  Blocks out(h.size());
  for (size_t i = 0; i < h.size(); ++i) out[i] = w[i] * h[i] * w[i];
  return out;
}

void check_shapes(const PositiveFunctional& rho, const Blocks& h) {
  if (h.size() != static_cast<size_t>(rho.algebra().num_blocks()))
    throw ValidationError("block count does not match the base algebra");
  for (size_t i = 0; i < h.size(); ++i) {
    const auto n = rho.algebra().block_dims()[i];
    if (h[i].rows() != n || h[i].cols() != n)
      throw ValidationError("block shape does not match the base algebra",
                            "h[" + std::to_string(i) + "]");
  }
}

}  // namespace

double lp_norm(const Blocks& h, const PositiveFunctional& rho, double p) {
  if (!rho.faithful())
    throw DomainError("Kosaki L_p norm requires a faithful base", rho.min_eigenvalue());
  check_shapes(rho, h);
  const double e = embed_exponent(p);
  return schatten_norm(sandwich(h, rho, -e), p);
}

Blocks kosaki_embed(const Blocks& a, const PositiveFunctional& rho, double p) {
  if (!rho.faithful())
    throw DomainError("Kosaki embedding requires a faithful base", rho.min_eigenvalue());
  check_shapes(rho, a);
  return sandwich(a, rho, embed_exponent(p));
}

double lp_duality_pairing(const Blocks& h_p, const Blocks& h_q,
                          const PositiveFunctional& rho, double p) {
  if (!rho.faithful())
    throw DomainError("Kosaki duality requires a faithful base", rho.min_eigenvalue());
  check_shapes(rho, h_p);
  check_shapes(rho, h_q);
  const double ep = embed_exponent(p);
  double q = std::isinf(p) ? 1.0 : (p == 1.0 ? std::numeric_limits<double>::infinity()
                                             : p / (p - 1.0));
  const double eq = embed_exponent(q);
  const Blocks k = sandwich(h_p, rho, -ep);
  const Blocks l = sandwich(h_q, rho, -eq);
  double v = 0.0;
  for (size_t i = 0; i < k.size(); ++i) v += (k[i] * l[i]).trace().real();
  return v;
}

double lp_duality_gap(const Blocks& h, const PositiveFunctional& rho, double p) {
  if (!(p > 1.0) || std::isinf(p))
    throw ValidationError("duality gap is defined for 1 < p < inf", "p");
  if (!rho.faithful())
    throw DomainError("Kosaki duality requires a faithful base", rho.min_eigenvalue());
  check_shapes(rho, h);

  const double e = embed_exponent(p);
  const Blocks rep = sandwich(h, rho, -e);
  const double norm_p = schatten_norm(rep, p);
  if (norm_p == 0.0) return 0.0;

  // polar maximizer: rep = V Σ W†  →  l = W Σ^{p−1} V† / ‖rep‖_p^{p−1}
  double paired = 0.0;
  for (const auto& b : rep) {
    Eigen::JacobiSVD<Matrix> svd(b, Eigen::ComputeThinU | Eigen::ComputeThinV);
    Eigen::VectorXd s = svd.singularValues();
    for (Eigen::Index j = 0; j < s.size(); ++j) s(j) = std::pow(s(j), p - 1.0);
    const Matrix l = svd.matrixV() * s.asDiagonal() * svd.matrixU().adjoint() /
                     std::pow(norm_p, p - 1.0);
    paired += (b * l).trace().real();
  }
  return std::abs(norm_p - paired);
}

}  // namespace qig
