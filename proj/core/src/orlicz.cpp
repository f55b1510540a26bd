#include "qig/orlicz.hpp"

#include <cmath>
#include <limits>

#include "qig/entropy.hpp"
#include "qig/perturbation.hpp"

namespace qig {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

double dot(const Blocks& a, const Blocks& b) {
  double v = 0.0;
  for (size_t i = 0; i < a.size(); ++i) v += (a[i].adjoint() * b[i]).trace().real();
  return v;
}
}  // namespace

double phi(const PositiveFunctional& rho, const HermitianElement& a) {
  return 0.5 * (c_rho(rho, a) + c_rho(rho, -a)) - rho.trace();
}

DualNormCertificate psi_sup(const PositiveFunctional& rho,
                            const SelfAdjointFunctional& psi,
                            const AscentOptions& opts) {
  if (rho.algebra() != psi.algebra()) throw ValidationError("algebra mismatch");
  if (!rho.faithful()) throw ValidationError("psi_sup requires faithful rho");

  const HermitianElement log_rho = mat_log(rho);
  const double rho_trace = rho.trace();

  // value and gradient of g(a) = ψ(a) − Φ_ρ(a) from two matrix exponentials
  struct Eval {
    double value;
    Blocks grad;
  };
  auto eval = [&](const HermitianElement& a) {
    const PositiveFunctional plus = mat_exp(log_rho + a);
    const PositiveFunctional minus = mat_exp(log_rho - a);
    Eval e;
    e.value = pairing(a, psi) - 0.5 * (plus.trace() + minus.trace()) + rho_trace;
    e.grad = psi.blocks();
    for (size_t i = 0; i < e.grad.size(); ++i)
      e.grad[i] -= 0.5 * (plus.blocks()[i] - minus.blocks()[i]);
    return e;
  };

  HermitianElement a = HermitianElement::zero(rho.algebra());
  Eval cur = eval(a);
  double step = 1.0;
  double grad_norm = std::sqrt(dot(cur.grad, cur.grad));
  long iter = 0;

  for (; iter < opts.max_iterations; ++iter) {
    if (grad_norm < opts.grad_tol) break;

    // backtracking ascent along the gradient
    const double g2 = grad_norm * grad_norm;
    double t = step;
    HermitianElement trial = a;
    Eval next = cur;
    bool accepted = false;
    for (int halvings = 0; halvings < 60; ++halvings) {
      trial = HermitianElement::unchecked(
          a.algebra(), add_blocks(a.blocks(), scale_blocks(cur.grad, t)));
      next = eval(trial);
      if (next.value >= cur.value + opts.armijo * t * g2) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) break;  // step underflow: stagnated at numerical optimum

    const double delta = next.value - cur.value;

    // Barzilai–Borwein spectral step for the next trial
    Blocks s = sub_blocks(trial.blocks(), a.blocks());
    Blocks y = sub_blocks(next.grad, cur.grad);
    const double sy = dot(s, y);
    const double ss = dot(s, s);
    step = (sy < 0.0) ? std::min(std::max(-ss / sy, 1e-12), 1e12) : 1.0;

    a = trial;
    cur = next;
    grad_norm = std::sqrt(dot(cur.grad, cur.grad));

    if (std::abs(delta) < opts.objective_tol) break;
  }

  if (iter >= opts.max_iterations)
    throw ConvergenceError("psi_sup hit the iteration cap", cur.value, grad_norm, iter);

  return {cur.value, a, std::nullopt, std::numeric_limits<double>::quiet_NaN(),
          iter, grad_norm};
}

namespace {

// clip the spectrum at zero
PositiveFunctional clip_psd(const MatrixAlgebra& alg, const Blocks& x) {
  BlockEig e = eig_herm(x, 1.0);
  for (auto& v : e.values) v = v.cwiseMax(0.0);
  return PositiveFunctional::from_eigensystem(alg, std::move(e));
}

// ∇F_ρ(ω) = log ω − log ρ with an eigenvalue floor to keep it bounded
Blocks f_gradient(const PositiveFunctional& omega, const Blocks& log_rho) {
  const double floor = std::max(omega.max_eigenvalue(), 1e-300) * 1e-16;
  Blocks g = mat_fn(omega.eig(),
                    [floor](double t) { return std::log(std::max(t, floor)); },
                    nullptr, "log");
  for (size_t i = 0; i < g.size(); ++i) g[i] -= log_rho[i];
  return g;
}

}  // namespace

DualNormCertificate psi_inf(const PositiveFunctional& rho,
                            const SelfAdjointFunctional& psi,
                            const AscentOptions& opts) {
  if (rho.algebra() != psi.algebra()) throw ValidationError("algebra mismatch");
  if (!rho.faithful()) throw ValidationError("psi_inf requires faithful rho");

  const MatrixAlgebra& alg = rho.algebra();
  const Blocks log_rho = mat_log(rho).blocks();
  const Blocks two_psi = scale_blocks(psi.blocks(), 2.0);

  // J(ω_−) = F_ρ(ω_+) + F_ρ(ω_−) with ω_+ = 2ψ + ω_−; +∞ when infeasible
  auto objective = [&](const PositiveFunctional& minus,
                       PositiveFunctional* plus_out) -> double {
    BlockEig e = eig_herm(add_blocks(two_psi, minus.blocks()), 1.0);
    double max_abs = 0.0, min_eig = 0.0;
    for (const auto& v : e.values) {
      if (v.size() == 0) continue;
      max_abs = std::max(max_abs, v.cwiseAbs().maxCoeff());
      min_eig = std::min(min_eig, v.minCoeff());
    }
    if (min_eig < -1e-10 * std::max(max_abs, 1e-300)) return kInf;
    for (auto& v : e.values) v = v.cwiseMax(0.0);
    PositiveFunctional plus = PositiveFunctional::from_eigensystem(alg, std::move(e));
    const double value = F_rho(plus, rho) + F_rho(minus, rho);
    if (plus_out) *plus_out = std::move(plus);
    return value;
  };

  // strictly feasible start: ω_− = 2ψ_− + ρ, so ω_+ = 2ψ_+ + ρ
  auto split = as_functional(as_element(psi)).spectral_split();
  PositiveFunctional minus = 2.0 * split.second + rho;
  PositiveFunctional plus = rho;
  double cur = objective(minus, &plus);

  double step = 1.0;
  long iter = 0;
  double pg_norm = kInf;

  for (; iter < opts.max_iterations; ++iter) {
    Blocks grad = add_blocks(f_gradient(plus, log_rho), f_gradient(minus, log_rho));

    // projected-gradient stationarity measure at unit step
    const PositiveFunctional probe =
        clip_psd(alg, sub_blocks(minus.blocks(), grad));
    pg_norm = frobenius_norm(sub_blocks(minus.blocks(), probe.blocks()));
    if (pg_norm < opts.grad_tol) break;

    double t = step;
    bool accepted = false;
    PositiveFunctional trial = minus;
    PositiveFunctional trial_plus = plus;
    double next = cur;
    for (int halvings = 0; halvings < 60; ++halvings) {
      trial = clip_psd(alg, sub_blocks(minus.blocks(), scale_blocks(grad, t)));
      next = objective(trial, &trial_plus);
      const double moved = frobenius_norm(sub_blocks(minus.blocks(), trial.blocks()));
      if (next < kInf && next <= cur - opts.armijo / std::max(t, 1e-300) * moved * moved) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) break;

    const double delta = cur - next;
    step = std::min(std::max(t * 2.0, 1e-12), 1e12);
    minus = trial;
    plus = trial_plus;
    cur = next;
    if (delta < opts.objective_tol) break;
  }

  if (iter >= opts.max_iterations)
    throw ConvergenceError("psi_inf hit the iteration cap",
                           0.5 * cur + rho.trace(), pg_norm, iter);

  return {0.5 * cur + rho.trace(), HermitianElement::zero(alg),
          std::make_optional(std::make_pair(plus, minus)),
          std::numeric_limits<double>::quiet_NaN(), iter, pg_norm};
}

DualNormCertificate psi_certificate(const PositiveFunctional& rho,
                                    const SelfAdjointFunctional& psi,
                                    const AscentOptions& opts) {
  DualNormCertificate sup = psi_sup(rho, psi, opts);
  DualNormCertificate inf = psi_inf(rho, psi, opts);

  const auto& [plus, minus] = *inf.decomposition;
  Blocks recon = sub_blocks(plus.blocks(), minus.blocks());
  recon = sub_blocks(recon, scale_blocks(psi.blocks(), 2.0));
  if (frobenius_norm(recon) > 1e-8 * std::max(1.0, frobenius_norm(psi.blocks())))
    throw ValidationError("psi_inf decomposition does not reconstruct 2*psi");

  sup.decomposition = inf.decomposition;
  sup.gap = std::abs(sup.psi_value - inf.psi_value);
  return sup;
}

double luxemburg_norm(const std::function<double(double)>& phi_of_lambda,
                      bool is_zero, double value_tol) {
  if (is_zero) return 0.0;

  double lam = 1.0;
  double v = phi_of_lambda(lam);
  double lo, hi;
  if (v > 1.0) {
    lo = lam;
    hi = lam;
    int k = 0;
    do {
      hi *= 2.0;
      if (++k > 60)
        throw ValidationError("Young function stays above 1 up to the bracket cap");
      v = phi_of_lambda(hi);
    } while (v > 1.0);
  } else {
    hi = lam;
    lo = lam;
    int k = 0;
    do {
      lo *= 0.5;
      if (++k > 60) return 0.0;  // Φ(x/λ) ≤ 1 down to 2^−60: norm vanishes
      v = phi_of_lambda(lo);
    } while (v <= 1.0);
  }

  double mid = hi;
  for (int it = 0; it < 200; ++it) {
    mid = 0.5 * (lo + hi);
    v = phi_of_lambda(mid);
    if (std::abs(v - 1.0) <= value_tol) return mid;
    if (v > 1.0)
      lo = mid;
    else
      hi = mid;
    if (hi - lo <= 1e-8 * hi) break;
  }
  return 0.5 * (lo + hi);
}

double exp_norm(const PositiveFunctional& rho, const HermitianElement& a, double tol) {
  const bool zero = frobenius_norm(a.blocks()) == 0.0;
  return luxemburg_norm(
      [&](double lam) { return phi(rho, (1.0 / lam) * a); }, zero, tol);
}

double log_norm(const PositiveFunctional& rho, const SelfAdjointFunctional& psi,
                double tol, const AscentOptions& inner) {
  const bool zero = frobenius_norm(psi.blocks()) == 0.0;
  return luxemburg_norm(
      [&](double lam) { return psi_sup(rho, (1.0 / lam) * psi, inner).psi_value; },
      zero, tol);
}

}  // namespace qig
