#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "qig/channels.hpp"
#include "qig/entropy.hpp"
#include "qig/orlicz.hpp"
#include "qig/perturbation.hpp"
#include "qig/random.hpp"

using namespace qig;

namespace {
Matrix diag2(double a, double b) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

// scalar conjugate of cosh(x) − 1
double cosh_conjugate(double u) {
  return u * std::asinh(u) - std::sqrt(1.0 + u * u) + 1.0;
}
}  // namespace

TEST_CASE("phi: worked examples and symmetry") {
  MatrixAlgebra alg({2});
  PositiveFunctional rho(alg, {diag2(0.5, 0.5)});

  CHECK(phi(rho, HermitianElement::zero(alg)) == doctest::Approx(0.0).epsilon(1e-14));
  HermitianElement a(alg, {diag2(1.0, -1.0)});
  CHECK(phi(rho, a) == doctest::Approx(std::cosh(1.0) - 1.0).epsilon(1e-12));
  CHECK(phi(rho, a) == doctest::Approx(0.543081).epsilon(1e-6));

  Rng rng(1);
  MatrixAlgebra alg3({3});
  PositiveFunctional rho3 = random_faithful_state(alg3, rng, 0.05);
  for (int t = 0; t < 10; ++t) {
    HermitianElement h = random_hermitian(alg3, rng, 1.3);
    CHECK(std::abs(phi(rho3, h) - phi(rho3, -h)) < 1e-12);
    CHECK(phi(rho3, h) > 0.0);  // strict positivity away from zero
  }
}

TEST_CASE("commutative reduction of phi is exact") {
  MatrixAlgebra alg({1, 1, 1});
  Rng rng(2);
  for (int t = 0; t < 10; ++t) {
    PositiveFunctional rho = random_faithful_state(alg, rng, 0.2);
    HermitianElement a = random_hermitian(alg, rng, 1.5);
    double expected = 0.0;
    for (int i = 0; i < 3; ++i)
      expected += rho.blocks()[i](0, 0).real() *
                  (std::cosh(a.blocks()[i](0, 0).real()) - 1.0);
    CHECK(phi(rho, a) == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("psi_sup: base point and the scalar Legendre oracle") {
  MatrixAlgebra alg({1, 1});
  PositiveFunctional rho(alg,
                         {Matrix::Constant(1, 1, 0.3), Matrix::Constant(1, 1, 0.7)});

  SUBCASE("psi = 0 gives value 0 at maximizer 0") {
    auto cert = psi_sup(rho, SelfAdjointFunctional::zero(alg));
    CHECK(std::abs(cert.psi_value) < 1e-12);
    CHECK(frobenius_norm(cert.maximizer_a.blocks()) < 1e-6);
  }

  SUBCASE("diagonal case matches sum of scalar conjugates") {
    Rng rng(3);
    for (int t = 0; t < 10; ++t) {
      Blocks pb = {Matrix::Constant(1, 1, 2.0 * rng.uniform() - 1.0),
                   Matrix::Constant(1, 1, 2.0 * rng.uniform() - 1.0)};
      SelfAdjointFunctional psi(alg, pb);
      double expected = 0.0;
      for (int i = 0; i < 2; ++i) {
        const double ri = rho.blocks()[i](0, 0).real();
        expected += ri * cosh_conjugate(psi.blocks()[i](0, 0).real() / ri);
      }
      auto cert = psi_sup(rho, psi, {1e-10, 1e-14, 100000, 1e-4});
      CHECK(cert.psi_value == doctest::Approx(expected).epsilon(1e-8));
    }
  }
}

TEST_CASE("psi_inf agrees with psi_sup (Legendre conjugacy)") {
  Rng rng(5);
  for (Eigen::Index dim : {2, 3}) {
    MatrixAlgebra alg({dim});
    for (int t = 0; t < 8; ++t) {
      PositiveFunctional rho = random_faithful_state(alg, rng, 0.05);
      SelfAdjointFunctional psi = random_selfadjoint(alg, rng, 0.6);
      auto cert = psi_certificate(rho, psi);
      CHECK(cert.gap < 1e-4);
      REQUIRE(cert.decomposition.has_value());
      const auto& [plus, minus] = *cert.decomposition;
      CHECK(frobenius_norm(sub_blocks(sub_blocks(plus.blocks(), minus.blocks()),
                                      scale_blocks(psi.blocks(), 2.0))) < 1e-8);
      // weak duality sandwich: inf-form value is an upper bound up to solver slack
      const double inf_value =
          0.5 * (F_rho(plus, rho) + F_rho(minus, rho)) + rho.trace();
      CHECK(inf_value >= cert.psi_value - 1e-4);
    }
  }
}

TEST_CASE("psi_inf feasible-point certificate for psi = rho/2") {
  MatrixAlgebra alg({2});
  Rng rng(7);
  PositiveFunctional rho = random_faithful_state(alg, rng, 0.1);
  SelfAdjointFunctional psi = 0.5 * as_selfadjoint(rho);
  auto cert = psi_inf(rho, psi);
  // the decomposition (rho, 0) is feasible with value rho(1)/2, so the
  // optimum cannot exceed it
  CHECK(cert.psi_value <= 0.5 * rho.trace() + 1e-8);
}

TEST_CASE("luxemburg norm: worked example, homogeneity, zero") {
  MatrixAlgebra alg({2});
  PositiveFunctional rho(alg, {diag2(0.5, 0.5)});
  HermitianElement a(alg, {diag2(1.0, -1.0)});

  CHECK(exp_norm(rho, HermitianElement::zero(alg)) == 0.0);

  // cosh(1/λ) = 2 → λ = 1/arccosh(2) = 0.7593262...
  const double expected = 1.0 / std::acosh(2.0);
  CHECK(exp_norm(rho, a) == doctest::Approx(expected).epsilon(1e-6));
  CHECK(expected == doctest::Approx(0.759326).epsilon(1e-6));

  CHECK(exp_norm(rho, 2.0 * a) == doctest::Approx(2.0 * exp_norm(rho, a)).epsilon(1e-8));
}

TEST_CASE("exp and log norms satisfy norm axioms on random samples") {
  MatrixAlgebra alg({2});
  Rng rng(11);
  PositiveFunctional rho = random_faithful_state(alg, rng, 0.1);
  for (int t = 0; t < 5; ++t) {
    HermitianElement x = random_hermitian(alg, rng, 0.8);
    HermitianElement y = random_hermitian(alg, rng, 0.8);
    CHECK(exp_norm(rho, x + y) <= exp_norm(rho, x) + exp_norm(rho, y) + 1e-6);
    CHECK(exp_norm(rho, 1.7 * x) == doctest::Approx(1.7 * exp_norm(rho, x)).epsilon(1e-6));

    SelfAdjointFunctional p = random_selfadjoint(alg, rng, 0.5);
    SelfAdjointFunctional q = random_selfadjoint(alg, rng, 0.5);
    CHECK(log_norm(rho, p + q) <= log_norm(rho, p) + log_norm(rho, q) + 1e-6);
    CHECK(log_norm(rho, 1.3 * p) == doctest::Approx(1.3 * log_norm(rho, p)).epsilon(1e-5));
  }
}

TEST_CASE("Fenchel-Young inequality with equality at the gradient pair") {
  MatrixAlgebra alg({2});
  Rng rng(13);
  PositiveFunctional rho = random_faithful_state(alg, rng, 0.1);

  for (int t = 0; t < 10; ++t) {
    HermitianElement a = random_hermitian(alg, rng, 0.9);
    SelfAdjointFunctional psi = random_selfadjoint(alg, rng, 0.7);
    const double young = phi(rho, a) + psi_sup(rho, psi).psi_value;
    CHECK(pairing(a, psi) <= young + 1e-8);

    // equality case: psi = (rho^a − rho^{−a})/2 is the gradient of phi at a
    const SelfAdjointFunctional grad =
        0.5 * (as_selfadjoint(perturb(rho, a).perturbed) -
               as_selfadjoint(perturb(rho, -a).perturbed));
    const double lhs = pairing(a, grad);
    const double rhs = phi(rho, a) + psi_sup(rho, grad).psi_value;
    CHECK(std::abs(lhs - rhs) < 1e-4);
  }
}

TEST_CASE("biconjugation: F equals the conjugate of C at the stationary point") {
  MatrixAlgebra alg({3});
  Rng rng(17);
  for (int t = 0; t < 10; ++t) {
    PositiveFunctional rho = random_faithful_state(alg, rng, 0.05);
    PositiveFunctional omega = random_faithful_state(alg, rng, 0.05, false);
    // the supremum of ω(a) − C_ρ(a) is attained at a* = log ω − log ρ
    HermitianElement a_star = mat_log(omega) - mat_log(rho);
    const double value = pairing(a_star, omega) - c_rho(rho, a_star);
    CHECK(value == doctest::Approx(F_rho(omega, rho)).epsilon(1e-10));
    // stationarity: the gradient ω − ρ^{a*} vanishes
    CHECK(frobenius_norm(sub_blocks(omega.blocks(),
                                    perturb(rho, a_star).perturbed.blocks())) < 1e-10);
    // and no probe direction does better
    for (int k = 0; k < 5; ++k) {
      HermitianElement probe = random_hermitian(alg, rng, 1.0);
      CHECK(pairing(probe, omega) - c_rho(rho, probe) <= value + 1e-10);
    }
  }
}

TEST_CASE("unit ball of the log norm admits a bounded decomposition") {
  MatrixAlgebra alg({2});
  Rng rng(19);
  PositiveFunctional rho = random_faithful_state(alg, rng, 0.1);
  for (int t = 0; t < 5; ++t) {
    SelfAdjointFunctional psi0 = random_selfadjoint(alg, rng, 0.5);
    const double norm = log_norm(rho, psi0);
    REQUIRE(norm > 0.0);
    // scale just inside the unit ball
    SelfAdjointFunctional psi = (0.95 / norm) * psi0;
    auto cert = psi_inf(rho, psi);
    REQUIRE(cert.decomposition.has_value());
    const auto& [plus, minus] = *cert.decomposition;
    // F(ω_+) + F(ω_−) ≤ 2 − 2ρ(1) with solver slack
    CHECK(F_rho(plus, rho) + F_rho(minus, rho) <= 2.0 - 2.0 * rho.trace() + 1e-3);
  }
}

TEST_CASE("channel contraction of the dual Young function") {
  Rng rng(23);
  MatrixAlgebra src({3});
  for (int t = 0; t < 6; ++t) {
    PositiveFunctional rho = random_faithful_state(src, rng, 0.05);
    SelfAdjointFunctional psi = random_selfadjoint(src, rng, 0.6);
    Channel T = random_channel(3, 2, rng, 3);
    const PositiveFunctional t_rho = T.apply(rho);
    REQUIRE(t_rho.faithful());
    const double before = psi_sup(rho, psi).psi_value;
    const double after = psi_sup(t_rho, T.apply(psi)).psi_value;
    CHECK(after <= before + 1e-6);
  }
}

TEST_CASE("solver diagnostics and convergence error") {
  MatrixAlgebra alg({2});
  Rng rng(29);
  PositiveFunctional rho = random_faithful_state(alg, rng, 0.1);
  SelfAdjointFunctional psi = random_selfadjoint(alg, rng, 0.5);

  // with the objective-change stop disabled the gradient tolerance binds
  auto cert = psi_sup(rho, psi, {1e-8, 0.0, 100000, 1e-4});
  CHECK(cert.gradient_norm < 1e-8);
  CHECK(cert.iterations > 0);

  try {
    psi_sup(rho, psi, {1e-30, 0.0, 3, 1e-4});  // unreachable tolerance, tiny cap
    CHECK(false);
  } catch (const ConvergenceError& e) {
    CHECK(e.iterations() == 3);
    CHECK(std::isfinite(e.best_value()));
    CHECK(e.gradient_norm() > 0.0);
  }
}
