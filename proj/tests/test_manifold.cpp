#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "qig/entropy.hpp"
#include "qig/manifold.hpp"
#include "qig/orlicz.hpp"
#include "qig/perturbation.hpp"
#include "qig/random.hpp"

using namespace qig;

TEST_CASE("charts: round trip, base point, diagonal reweighting") {
  Rng rng(1);
  MatrixAlgebra alg({3});
  PositiveFunctional rho = random_faithful_state(alg, rng, 0.05);
  Chart chart{rho};

  SUBCASE("zero maps to the base point") {
    auto p = chart_forward(chart, HermitianElement::zero(alg));
    CHECK(frobenius_norm(sub_blocks(p.state.blocks(), rho.blocks())) < 1e-13);
    CHECK(p.inside_ball);
    CHECK(p.h_exp_norm == 0.0);
  }

  SUBCASE("round trips are exact at finite dimension") {
    for (int t = 0; t < 10; ++t) {
      HermitianElement h = random_hermitian(alg, rng, 0.6);
      auto p = chart_forward(chart, h);
      HermitianElement back = chart_inverse(chart, p.state);
      CHECK(frobenius_norm(sub_blocks(back.blocks(), h.blocks())) < 1e-10);

      PositiveFunctional sigma = random_faithful_state(alg, rng, 0.05);
      HermitianElement inv = chart_inverse(chart, sigma);
      auto forth = chart_forward(chart, inv);
      CHECK(schatten_norm(sub_blocks(forth.state.blocks(), sigma.blocks()), 1.0) < 1e-10);
    }
  }

  SUBCASE("diagonal case is classical reweighting") {
    MatrixAlgebra diag({1, 1});
    PositiveFunctional drho(diag, {Matrix::Constant(1, 1, 0.3), Matrix::Constant(1, 1, 0.7)});
    HermitianElement dh(diag, {Matrix::Constant(1, 1, 0.5), Matrix::Constant(1, 1, -0.1)});
    auto p = chart_forward({drho}, dh);
    CHECK(p.state.blocks()[0](0, 0).real() == doctest::Approx(0.3 * std::exp(0.5)));
    CHECK(p.state.blocks()[1](0, 0).real() == doctest::Approx(0.7 * std::exp(-0.1)));
  }

  SUBCASE("points outside the unit ball only raise the flag") {
    HermitianElement big = random_hermitian(alg, rng, 10.0);
    auto p = chart_forward(chart, big);
    CHECK(!p.inside_ball);
    CHECK(p.h_exp_norm > 1.0);
    CHECK(p.state.faithful());
  }

  SUBCASE("non-faithful sigma is outside the manifold") {
    Matrix sing = Matrix::Zero(3, 3);
    sing(0, 0) = 1.0;
    CHECK_THROWS_AS(chart_inverse(chart, PositiveFunctional(alg, {sing})), DomainError);
  }
}

TEST_CASE("chart inverse realizes the entropy-difference functional") {
  Rng rng(3);
  MatrixAlgebra alg({3});
  PositiveFunctional rho = random_faithful_state(alg, rng, 0.05);
  for (int t = 0; t < 10; ++t) {
    PositiveFunctional sigma = random_faithful_state(alg, rng, 0.05);
    HermitianElement h = chart_inverse({rho}, sigma);
    PositiveFunctional omega = random_faithful_state(alg, rng, 0.05, false);
    const double via_pairing = pairing(h, omega);
    const double via_entropies = relative_entropy(omega, rho) - relative_entropy(omega, sigma);
    CHECK(std::abs(via_pairing - via_entropies) < 1e-9);
  }
}

TEST_CASE("transitions between charts") {
  Rng rng(5);
  MatrixAlgebra alg({3});
  PositiveFunctional rho1 = random_faithful_state(alg, rng, 0.05);
  PositiveFunctional rho2 = random_faithful_state(alg, rng, 0.05);
  PositiveFunctional rho3 = random_faithful_state(alg, rng, 0.05);

  SUBCASE("same chart gives the identity") {
    HermitianElement h = random_hermitian(alg, rng, 0.7);
    CHECK(frobenius_norm(sub_blocks(transition(rho1, rho1, h).blocks(), h.blocks())) <
          1e-12);
  }

  SUBCASE("zero picks out the connecting perturbation k") {
    HermitianElement k = transition(rho1, rho2, HermitianElement::zero(alg));
    // rho1 = rho2^k by construction of k = log rho1 - log rho2
    auto forth = perturb(rho2, k).perturbed;
    CHECK(schatten_norm(sub_blocks(forth.blocks(), rho1.blocks()), 1.0) < 1e-10);
  }

  SUBCASE("transitions are consistent with the charts") {
    for (int t = 0; t < 10; ++t) {
      HermitianElement h1 = random_hermitian(alg, rng, 0.7);
      HermitianElement h2 = transition(rho1, rho2, h1);
      const Blocks via1 = perturb(rho1, h1).perturbed.blocks();
      const Blocks via2 = perturb(rho2, h2).perturbed.blocks();
      CHECK(schatten_norm(sub_blocks(via1, via2), 1.0) < 1e-9);
    }
  }

  SUBCASE("transitions compose along three charts") {
    HermitianElement h1 = random_hermitian(alg, rng, 0.7);
    HermitianElement via_two = transition(rho2, rho3, transition(rho1, rho2, h1));
    HermitianElement direct = transition(rho1, rho3, h1);
    CHECK(frobenius_norm(sub_blocks(via_two.blocks(), direct.blocks())) < 1e-9);
  }
}

TEST_CASE("canonical divergence") {
  Rng rng(7);
  MatrixAlgebra alg({3});
  PositiveFunctional rho = random_faithful_state(alg, rng, 0.05);

  SUBCASE("D(h||h) = 0 and D > 0 off the diagonal") {
    for (int t = 0; t < 10; ++t) {
      HermitianElement h = random_hermitian(alg, rng, 0.8);
      HermitianElement k = random_hermitian(alg, rng, 0.8);
      CHECK(std::abs(canonical_divergence(rho, h, h)) < 1e-12);
      CHECK(canonical_divergence(rho, h, k) > 1e-10);  // distinct random pair
    }
  }

  SUBCASE("Bregman form equals the entropy form") {
    for (int t = 0; t < 15; ++t) {
      HermitianElement h = random_hermitian(alg, rng, 0.9);
      HermitianElement k = random_hermitian(alg, rng, 0.9);
      const auto at_h = perturb(rho, h);
      const auto at_k = perturb(rho, k);
      const double entropy_form =
          relative_entropy(at_k.perturbed, at_h.perturbed) -
          (at_k.c_value - at_h.c_value);
      CHECK(std::abs(canonical_divergence(rho, h, k) - entropy_form) < 1e-9);
    }
  }

  SUBCASE("diagonal case reduces to the generalized KL divergence") {
    // unnormalized KL: sum of q - p ... with p = rho^k, q = rho^h entrywise:
    // D(h||k) = sum_i [ p_{h,i} - p_{k,i} + p_{k,i}(log p_{k,i} - log p_{h,i}) ]
    MatrixAlgebra diag({1, 1, 1});
    PositiveFunctional drho = random_faithful_state(diag, rng, 0.3);
    for (int t = 0; t < 10; ++t) {
      HermitianElement h = random_hermitian(diag, rng, 0.8);
      HermitianElement k = random_hermitian(diag, rng, 0.8);
      const auto rho_h = perturb(drho, h).perturbed;
      const auto rho_k = perturb(drho, k).perturbed;
      double expected = 0.0;
      for (int i = 0; i < 3; ++i) {
        const double ph = rho_h.blocks()[i](0, 0).real();
        const double pk = rho_k.blocks()[i](0, 0).real();
        expected += ph - pk + pk * (std::log(pk) - std::log(ph));
      }
      CHECK(expected >= -1e-14);
      CHECK(canonical_divergence(drho, h, k) ==
            doctest::Approx(expected).epsilon(1e-11));
    }
  }

  SUBCASE("joint continuity: shrinking perturbations shrink the divergence gap") {
    HermitianElement h = random_hermitian(alg, rng, 0.8);
    HermitianElement k = random_hermitian(alg, rng, 0.8);
    HermitianElement dh = random_hermitian(alg, rng, 1.0);
    HermitianElement dk = random_hermitian(alg, rng, 1.0);
    const double base = canonical_divergence(rho, h, k);
    double prev = std::numeric_limits<double>::infinity();
    for (int e = 1; e <= 5; ++e) {
      const double eps = std::pow(10.0, -e);
      const double moved = canonical_divergence(rho, h + eps * dh, k + eps * dk);
      CHECK(std::abs(moved - base) < prev);
      prev = std::abs(moved - base);
    }
  }

  SUBCASE("strict convexity and the gradient in the first argument") {
    HermitianElement h1 = random_hermitian(alg, rng, 0.8);
    HermitianElement h2 = random_hermitian(alg, rng, 0.8);
    HermitianElement k = random_hermitian(alg, rng, 0.8);
    const double mid = canonical_divergence(rho, 0.5 * (h1 + h2), k);
    const double avg = 0.5 * (canonical_divergence(rho, h1, k) +
                              canonical_divergence(rho, h2, k));
    CHECK(mid < avg - 1e-12);

    // finite differences of D(.||k) match rho^h - rho^k
    const double eps = 1e-5;
    const SelfAdjointFunctional grad =
        as_selfadjoint(perturb(rho, h1).perturbed) -
        as_selfadjoint(perturb(rho, k).perturbed);
    double worst = 0.0;
    for (int d = 0; d < 10; ++d) {
      HermitianElement b = random_hermitian(alg, rng, 1.0);
      const double fd = (canonical_divergence(rho, h1 + eps * b, k) -
                         canonical_divergence(rho, h1 - eps * b, k)) /
                        (2.0 * eps);
      worst = std::max(worst, std::abs(fd - pairing(b, grad)));
    }
    CHECK(worst < 1e-6);
  }
}

TEST_CASE("Pythagorean relation") {
  Rng rng(11);
  MatrixAlgebra alg({3});
  PositiveFunctional rho = random_faithful_state(alg, rng, 0.05);

  SUBCASE("l = k collapses to the same divergence") {
    HermitianElement h = random_hermitian(alg, rng, 0.8);
    HermitianElement k = random_hermitian(alg, rng, 0.8);
    CHECK(pythagorean_residual(rho, h, k, k) < 1e-12);
  }

  SUBCASE("random triples satisfy the four-point identity") {
    for (int t = 0; t < 20; ++t) {
      HermitianElement h = random_hermitian(alg, rng, 0.8);
      HermitianElement k = random_hermitian(alg, rng, 0.8);
      HermitianElement l = random_hermitian(alg, rng, 0.8);
      CHECK(pythagorean_residual(rho, h, k, l) < 1e-9);
    }
  }

  SUBCASE("constructed orthogonal triples satisfy the three-point identity") {
    // move l along the direction k - h until the correction pairing
    // (rho^k - rho^l)(k - h) vanishes; the pairing is strictly decreasing
    // in the line parameter so bisection applies
    for (int t = 0; t < 10; ++t) {
      HermitianElement h = random_hermitian(alg, rng, 0.7);
      HermitianElement k = random_hermitian(alg, rng, 0.7);
      HermitianElement l0 = random_hermitian(alg, rng, 0.7);
      HermitianElement dir = k - h;
      const SelfAdjointFunctional at_k = as_selfadjoint(perturb(rho, k).perturbed);
      auto g = [&](double s) {
        return pairing(dir, at_k - as_selfadjoint(
                                       perturb(rho, l0 + s * dir).perturbed));
      };
      double lo = 0.0, hi = 0.0, step = 1.0;
      const double g0 = g(0.0);
      if (g0 > 0.0) {
        while (g(hi += step) > 0.0) step *= 2.0;
        lo = hi - step;
      } else {
        while (g(lo -= step) < 0.0) step *= 2.0;
        hi = lo + step;
      }
      for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        (g(mid) > 0.0 ? lo : hi) = mid;
      }
      HermitianElement l = l0 + (0.5 * (lo + hi)) * dir;
      CHECK(std::abs(g(0.5 * (lo + hi))) < 1e-10);
      const double three_point = std::abs(canonical_divergence(rho, h, k) +
                                          canonical_divergence(rho, k, l) -
                                          canonical_divergence(rho, h, l));
      CHECK(three_point < 1e-9);
    }
  }
}
