#include <doctest.h>

#include <array>
#include <cmath>

#include "helpers.hpp"
#include "nmslab/feedback.hpp"

using namespace nmslab;
using doctest::Approx;

TEST_SUITE("feedback") {

TEST_CASE("solved fields satisfy the defining relations") {
  const Complex a_in(0.8, -0.35);
  for (const Real r : {-0.6, 0.0, 0.3, 0.7}) {
    for (const Real r_d : {0.2, 0.6, 0.9}) {
      const FeedbackChain fc = FeedbackChain::lossless(r, r_d);
      const ChainFields f = chain_solve(fc, a_in);
      const Real scale = std::abs(a_in) + std::abs(f.inner_back);
      CHECK(std::abs(f.in_prime - im_unit * fc.t * a_in -
                     im_unit * fc.r * f.out_prime) < 1e-14 * scale);
      CHECK(std::abs(f.out_prime - im_unit * fc.r_d * f.in_prime +
                     im_unit * fc.t_d * f.inner_back) < 1e-14 * scale);
      CHECK(std::abs(f.inner_back - fc.t_d * f.in_prime -
                     fc.r_d * f.inner_back) < 1e-14 * scale);
      CHECK(std::abs(f.out - fc.t * f.out_prime + fc.r * a_in) <
            1e-14 * scale);
      CHECK(f.inner_fwd == -f.inner_back);
    }
  }
}

TEST_CASE("lossless chain conserves the flux") {
  const Complex a_in(1.1, 0.4);
  for (const Real r : {-0.5, 0.0, 0.25, 0.8}) {
    for (const Real r_d : {0.1, 0.5, 0.95}) {
      const ChainFields f = chain_solve(FeedbackChain::lossless(r, r_d), a_in);
      // With no transmission loss the closed mirror-cavity section acts as a
      // pure pi/2 phase on reflection, and the splitter output keeps the
      // input modulus.
      CHECK(std::abs(f.out_prime + im_unit * f.in_prime) <
            1e-12 * std::abs(f.in_prime));
      CHECK(std::abs(f.out) == Approx(std::abs(a_in)).epsilon(1e-12));
    }
  }
}

TEST_CASE("closed-form elimination of the return field") {
  const Complex a_in(0.3, 0.9);
  for (const Real r : {-0.4, 0.2, 0.6}) {
    const FeedbackChain fc = FeedbackChain::small_loss(r, 5e-3);
    const ChainFields f = chain_solve(fc, a_in);
    const Complex expect =
        -im_unit * fc.t_d / (1.0 + fc.r * fc.r_d) * f.inner_back -
        fc.r_d / (1.0 + fc.r * fc.r_d) * fc.t * a_in;
    CHECK(std::abs(f.out_prime - expect) < 1e-13 * std::abs(f.out_prime));
  }
}

TEST_CASE("small-loss build-up intensity") {
  const Real r = 0.5;
  for (const Real gamma : {1e-2, 1e-3, 1e-4}) {
    const FeedbackChain fc = FeedbackChain::small_loss(r, gamma);
    const ChainFields f = chain_solve(fc, Complex(1.0, 0.0));
    const Real t2 = fc.t * fc.t;

    // Exact elimination of the linear chain, with r_d = 1 - gamma,
    // t_d^2 = 2 gamma.
    const Real exact = 2.0 * t2 / (gamma * std::pow(1.0 - r - r * gamma, 2));
    CHECK(std::norm(f.inner_back) == Approx(exact).epsilon(1e-12));
  }
}

TEST_CASE("leading-loss approximation error shrinks linearly") {
  const Real r = 0.5;
  const Real t2 = 1.0 - r * r;
  const std::array<Real, 3> gammas = {1e-2, 1e-3, 1e-4};
  const std::array<Real, 3> frozen = {0.020304050607080848,
                                      0.0020030040050060816,
                                      0.0002000300040003733};
  for (int k = 0; k < 3; ++k) {
    const Real gamma = gammas[k];
    const ChainFields f =
        chain_solve(FeedbackChain::small_loss(r, gamma), Complex(1.0, 0.0));
    const Real approx_intensity = 2.0 * t2 / (gamma * std::pow(1.0 - r, 2));
    const Real rel =
        std::abs(std::norm(f.inner_back) - approx_intensity) / approx_intensity;
    CHECK(rel == Approx(frozen[k]).epsilon(1e-9));
    // Deviation is ~ 2 r gamma / (1 - r), first order in the loss.
    CHECK(rel / gamma == Approx(2.0 * r / (1.0 - r)).epsilon(0.05));
  }
}

TEST_CASE("singular chains are rejected") {
  CHECK_THROWS_AS(chain_solve(FeedbackChain::lossless(0.3, 1.0), 1.0),
                  SingularChainError);
  FeedbackChain fc = FeedbackChain::lossless(-1.0, 1.0);
  CHECK_THROWS_AS(chain_solve(fc, 1.0), SingularChainError);
}

}  // TEST_SUITE
