#include "qig/perturbation.hpp"

#include <cmath>
#include <numbers>

#include "qig/entropy.hpp"

namespace qig {

PerturbationResult perturb(const PositiveFunctional& rho, const HermitianElement& h) {
  if (rho.algebra() != h.algebra()) throw ValidationError("algebra mismatch");
  if (!rho.faithful())
    throw DomainError("perturbation requires a faithful base", rho.min_eigenvalue());
  PositiveFunctional perturbed = mat_exp(mat_log(rho) + h);
  return {perturbed, perturbed.trace()};
}

double c_rho(const PositiveFunctional& rho, const HermitianElement& h) {
  return perturb(rho, h).c_value;
}

double perturbed_entropy_residual(const PositiveFunctional& omega,
                                  const PositiveFunctional& rho,
                                  const HermitianElement& h) {
  const PositiveFunctional rho_h = perturb(rho, h).perturbed;
  return std::abs(pairing(h, omega) + relative_entropy(omega, rho_h) -
                  relative_entropy(omega, rho));
}

double chain_rule_residual(const PositiveFunctional& rho, const HermitianElement& h,
                           const HermitianElement& k) {
  const auto one_step = perturb(rho, h + k);
  const auto two_step = perturb(perturb(rho, h).perturbed, k);
  const double state_gap =
      schatten_norm(sub_blocks(one_step.perturbed.blocks(), two_step.perturbed.blocks()), 1.0);
  const double value_gap = std::abs(one_step.c_value - two_step.c_value);
  return std::max(state_gap, value_gap);
}

PositiveFunctional c_gradient(const PositiveFunctional& rho, const HermitianElement& h) {
  return perturb(rho, h).perturbed;
}

// ---- Gauss–Legendre --------------------------------------------------------

void gauss_legendre_01(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 1) throw ValidationError("quadrature needs at least one point", "quadrature_points");
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  // Newton iteration on P_n over [-1, 1], then map to [0, 1]
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    nodes[i] = 0.5 * (1.0 - x);          // symmetric partner below
    nodes[n - 1 - i] = 0.5 * (1.0 + x);
    weights[i] = 0.5 * w;
    weights[n - 1 - i] = 0.5 * w;
  }
}

// ---- expansional series ----------------------------------------------------

namespace {

// Barycentric interpolation weights for the node set, scale-normalized.
std::vector<double> barycentric_weights(const std::vector<double>& x) {
  const size_t n = x.size();
  const double span = x.back() - x.front();
  const double scale = span > 0.0 ? 4.0 / span : 1.0;
  std::vector<double> w(n, 1.0);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      if (i != j) w[i] /= (x[i] - x[j]) * scale;
  return w;
}

Matrix interpolate(const std::vector<double>& x, const std::vector<double>& bw,
                   const std::vector<Matrix>& values, double s) {
  double denom = 0.0;
  Matrix num = Matrix::Zero(values[0].rows(), values[0].cols());
  for (size_t i = 0; i < x.size(); ++i) {
    const double d = s - x[i];
    if (d == 0.0) return values[i];
    const double c = bw[i] / d;
    denom += c;
    num += c * values[i];
  }
  return num / denom;
}

}  // namespace

SeriesResult perturbed_vector_series(const PositiveFunctional& rho,
                                     const HermitianElement& a, int order,
                                     int quadrature_points) {
  if (rho.algebra() != a.algebra()) throw ValidationError("algebra mismatch");
  if (!rho.faithful())
    throw DomainError("expansional series requires a faithful base", rho.min_eigenvalue());
  if (order < 0 || order > 6)
    throw ValidationError("series truncation order must be in [0, 6]", "order");

  std::vector<double> u, w;
  gauss_legendre_01(quadrature_points, u, w);
  const int q = quadrature_points;

  std::vector<double> grid(q);  // master nodes on [0, 1/2]
  for (int i = 0; i < q; ++i) grid[i] = 0.5 * u[i];
  const std::vector<double> bw = barycentric_weights(grid);

  const auto& eig = rho.eig();
  Blocks xi(eig.values.size());
  double tail_sq = 0.0;

  for (size_t b = 0; b < eig.values.size(); ++b) {
    const Eigen::Index d = eig.values[b].size();
    const Matrix& unit = eig.vectors[b];
    Eigen::VectorXd loglam(d);
    for (Eigen::Index i = 0; i < d; ++i) loglam(i) = std::log(eig.values[b](i));
    const Matrix a_tilde = unit.adjoint() * a.blocks()[b] * unit;

    // B(t) = ρ^t a ρ^{−t} in the eigenbasis
    auto B = [&](double t) {
      Matrix m(d, d);
      for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j)
          m(i, j) = a_tilde(i, j) * std::exp(t * (loglam(i) - loglam(j)));
      return m;
    };

    std::vector<Matrix> b_grid(q);
    for (int r = 0; r < q; ++r) b_grid[r] = B(grid[r]);

    // ordered integrals I_n(T) = ∫_0^T I_{n−1}(t)·B(t) dt, I_0 ≡ 1;
    // level values carried on the master grid, endpoint T = 1/2 on the side
    Matrix sum_end = Matrix::Identity(d, d);  // n = 0 term
    std::vector<Matrix> level(q, Matrix::Identity(d, d));
    Matrix last_end = Matrix::Identity(d, d);
    bool level_is_constant = true;

    for (int n = 1; n <= order; ++n) {
      std::vector<Matrix> next(q);
      for (int r = 0; r < q; ++r) {
        const double T = grid[r];
        Matrix acc = Matrix::Zero(d, d);
        for (int s = 0; s < q; ++s) {
          const double t = T * u[s];
          const Matrix inner =
              level_is_constant ? level[0] : interpolate(grid, bw, level, t);
          acc += w[s] * (inner * B(t));
        }
        next[r] = T * acc;
      }
      // endpoint T = 1/2: the inner values live exactly on the master grid
      Matrix acc_end = Matrix::Zero(d, d);
      for (int s = 0; s < q; ++s)
        acc_end += w[s] * ((level_is_constant ? level[0] : interpolate(grid, bw, level, grid[s])) *
                           b_grid[s]);
      last_end = 0.5 * acc_end;
      sum_end += last_end;
      level = std::move(next);
      level_is_constant = false;
    }

    Eigen::VectorXd sqrt_lam = eig.values[b].cwiseSqrt();
    xi[b] = unit * (sum_end * sqrt_lam.asDiagonal()) * unit.adjoint();
    tail_sq += (last_end * sqrt_lam.asDiagonal()).squaredNorm();
  }

  return {std::move(xi), order == 0 ? 0.0 : std::sqrt(tail_sq), order, quadrature_points};
}

}  // namespace qig
