#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "nmslab/timesim.hpp"

using namespace nmslab;
using doctest::Approx;

namespace {

// Fictitious well-conditioned system: an oscillator at 1e5 rad/s with
// damping 1e3 plus two uncoupled relaxators, scaled so the stationary
// covariance is known in closed form.
constexpr Real kVar = 13201.659431527709;

Mat4 toy_drift() {
  Mat4 M = Mat4::Zero();
  M(0, 1) = 1e5;
  M(1, 0) = -1e5;
  M(1, 1) = -1e3;
  M(2, 2) = -1e4;
  M(3, 3) = -1e4;
  return M;
}

Mat4 toy_diffusion() {
  Vec4 d;
  d << 0.0, 2e3 * kVar, 2e4, 2e4;
  return d.asDiagonal();
}

Mat4 toy_covariance() {
  Vec4 d;
  d << kVar, kVar, 1.0, 1.0;
  return d.asDiagonal();
}

}  // namespace

TEST_SUITE("timesim") {

TEST_CASE("diffusion matrix at the reference point") {
  const Model m = make_model(testutil::reference_params());
  const Mat4 N = diffusion_matrix(m);
  CHECK(N(0, 0) == 0.0);
  CHECK(N(1, 1) == Approx(23448418.96248473).epsilon(1e-12));
  CHECK(N(2, 2) == Approx(900589.894029074).epsilon(1e-12));
  CHECK(N(3, 3) == N(2, 2));
  CHECK(N.cwiseAbs().sum() == Approx(N.diagonal().cwiseAbs().sum()));
}

TEST_CASE("optical noise intensity equals twice the effective decay") {
  // 2 kappa t^2/(1+r)^2 = 2 kappa (1-r)/(1+r) identically.
  for (const Real r : {-0.6, 0.0, 0.5, 0.8}) {
    SystemParams p = testutil::reference_params();
    p.bs_reflectivity = r;
    const Model m = make_model(p);
    CHECK(diffusion_matrix(m)(2, 2) ==
          Approx(2.0 * m.drv.eff_decay).epsilon(1e-13));
  }
}

TEST_CASE("stationary covariance solves the fluctuation balance") {
  const Model m = make_model(testutil::reference_params());
  const SteadyState ss = solve_steady_state(m);
  const Mat4 M = drift_matrix(m, ss);
  const Mat4 N = diffusion_matrix(m);
  const Mat4 S = lyapunov_covariance(M, N);

  const Mat4 residual = M * S + S * M.transpose() + N;
  CHECK(residual.cwiseAbs().maxCoeff() <
        1e-10 * (M.cwiseAbs().maxCoeff() * S.cwiseAbs().maxCoeff()));
  CHECK((S - S.transpose()).cwiseAbs().maxCoeff() <
        1e-12 * S.cwiseAbs().maxCoeff());
}

TEST_CASE("decoupled covariance: thermal equipartition and optical vacuum") {
  const Model m = testutil::decoupled(make_model(testutil::reference_params()));
  const SteadyState ss = solve_steady_state(m);
  const Mat4 S = lyapunov_covariance(drift_matrix(m, ss), diffusion_matrix(m));

  CHECK(S(0, 0) == Approx(kVar).epsilon(1e-10));
  CHECK(S(1, 1) == Approx(kVar).epsilon(1e-10));
  CHECK(S(2, 2) == Approx(1.0).epsilon(1e-10));
  CHECK(S(3, 3) == Approx(1.0).epsilon(1e-10));
  Mat4 off = S;
  off.diagonal().setZero();
  CHECK(off.cwiseAbs().maxCoeff() < 1e-9 * kVar);
}

TEST_CASE("discretization") {
  const Model m = make_model(testutil::reference_params());
  const SteadyState ss = solve_steady_state(m);
  const Mat4 M = drift_matrix(m, ss);
  const Mat4 N = diffusion_matrix(m);

  SUBCASE("short-step expansion") {
    const Real dt = 1e-12;
    const Discretization d = discretize(M, N, dt);
    const Real scale = (M * dt).cwiseAbs().maxCoeff();
    CHECK((d.phi - Mat4::Identity() - M * dt).cwiseAbs().maxCoeff() <
          2.0 * scale * scale);
    CHECK((d.qd - N * dt).cwiseAbs().maxCoeff() <
          2.0 * scale * N.cwiseAbs().maxCoeff() * dt);
  }

  SUBCASE("stationary covariance is the fixed point of one step") {
    const Real dt = 2e-8;
    const Discretization d = discretize(M, N, dt);
    const Mat4 S = lyapunov_covariance(M, N);
    const Mat4 stepped = d.phi * S * d.phi.transpose() + d.qd;
    CHECK((stepped - S).cwiseAbs().maxCoeff() < 1e-8 * S.cwiseAbs().maxCoeff());
  }

  SUBCASE("noise factor reproduces the step covariance") {
    const Discretization d = discretize(M, N, 2e-8);
    const Mat4 rebuilt = d.noise_factor * d.noise_factor.transpose();
    CHECK((rebuilt - d.qd).cwiseAbs().maxCoeff() <
          1e-12 * d.qd.cwiseAbs().maxCoeff());
  }
}

TEST_CASE("trajectory generation is seeded and reproducible") {
  SimConfig cfg;
  cfg.dt = 1e-6;
  cfg.stride = 2;
  cfg.n_record = 512;
  cfg.burn_in = 1e-3;
  cfg.rng_seed = 11;

  const Trajectory t1 = run_ou(toy_drift(), toy_diffusion(), cfg);
  const Trajectory t2 = run_ou(toy_drift(), toy_diffusion(), cfg);
  CHECK(t1.samples == t2.samples);
  CHECK(t1.dt_record == Approx(2e-6));

  cfg.rng_seed = 12;
  const Trajectory t3 = run_ou(toy_drift(), toy_diffusion(), cfg);
  CHECK(t1.samples != t3.samples);
}

TEST_CASE("trajectory rejects bad configs and unstable drift") {
  SimConfig cfg;
  cfg.dt = 1e-6;
  cfg.n_record = 64;
  cfg.burn_in = 0.0;
  Mat4 M = toy_drift();
  M(2, 2) = +1e4;
  CHECK_THROWS_AS(run_ou(M, toy_diffusion(), cfg), InstabilityError);

  SimConfig bad = cfg;
  bad.dt = 0.0;
  CHECK_THROWS_AS(run_ou(toy_drift(), toy_diffusion(), bad), ValidationError);
  bad = cfg;
  bad.burn_in = -1.0;
  CHECK_THROWS_AS(run_ou(toy_drift(), toy_diffusion(), bad), ValidationError);
}

TEST_CASE("white-noise spectrum is flat at the analytic level") {
  const Real dt = 1e-4;
  const Real sigma = 1.7;
  const std::int64_t n = 1 << 17;
  std::mt19937_64 rng(5);
  std::normal_distribution<Real> gauss(0.0, sigma);
  VecX x(n);
  for (std::int64_t i = 0; i < n; ++i) x(i) = gauss(rng);

  const int nperseg = 1024;
  const WelchSpectrum w = welch_psd(x, dt, nperseg);
  REQUIRE(w.n_segments > 200);
  REQUIRE(w.freq.size() == nperseg / 2 + 1);
  CHECK(w.freq(1) == Approx(consts::two_pi / (nperseg * dt)).epsilon(1e-12));

  // Per-segment mean removal deliberately drains the two lowest bins; the
  // flat-level normalization check starts above them.
  const Real level = sigma * sigma * dt;
  const auto body = w.psd.segment(2, w.psd.size() - 2);
  CHECK(body.mean() == Approx(level).epsilon(0.02));
  for (int k = 2; k < w.psd.size(); ++k)
    CHECK(std::abs(w.psd(k) - level) < 8.0 * w.stderr_psd(k) + 0.02 * level);
  CHECK(w.psd(0) < 0.6 * level);
}

TEST_CASE("welch guards") {
  VecX x = VecX::Zero(100);
  CHECK_THROWS_AS(welch_psd(x, 1.0, 6), NumericalError);
  CHECK_THROWS_AS(welch_psd(x, 1.0, 9), NumericalError);
  CHECK_THROWS_AS(welch_psd(x, 1.0, 128), NumericalError);
}

TEST_CASE("sampled covariance of the toy system matches the closed form") {
  SimConfig cfg;
  cfg.dt = 1e-6;
  cfg.stride = 20;
  cfg.n_record = 1 << 17;
  cfg.burn_in = 0.02;
  cfg.rng_seed = 7;
  const Trajectory traj = run_ou(toy_drift(), toy_diffusion(), cfg);
  const CovarianceEstimate est = covariance_estimate(traj);
  const Mat4 S = toy_covariance();

  REQUIRE(est.n_batches == 32);
  for (int i = 0; i < 4; ++i) {
    CHECK(std::abs(est.cov(i, i) - S(i, i)) <
          6.0 * est.stderr_cov(i, i) + 1e-12);
    CHECK(est.cov(i, i) == Approx(S(i, i)).epsilon(0.10));
  }
}

TEST_CASE("sampled covariance at the reference point") {
  const Model m = make_model(testutil::reference_params());
  const SteadyState ss = solve_steady_state(m);
  const Mat4 M = drift_matrix(m, ss);
  const Mat4 N = diffusion_matrix(m);

  SimConfig cfg;
  cfg.dt = 3e-8;
  cfg.stride = 4;
  cfg.n_record = 1 << 16;
  cfg.burn_in = 2.2e-5;
  cfg.rng_seed = 9;
  const Trajectory traj = run_ou(M, N, cfg);
  const CovarianceEstimate est = covariance_estimate(traj);
  const Mat4 S = lyapunov_covariance(M, N);

  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      CHECK(std::abs(est.cov(i, j) - S(i, j)) <
            6.0 * est.stderr_cov(i, j) + 1e-6 * S.cwiseAbs().maxCoeff());
}

TEST_CASE("model-level simulation guards") {
  const Model m = make_model(testutil::reference_params());
  SimConfig cfg;
  cfg.dt = 1e-6;  // too coarse for a 947 kHz oscillator
  cfg.n_record = 1 << 16;
  CHECK_THROWS_AS(simulate(m, cfg), ValidationError);

  cfg.dt = 8e-9;       // fine enough, but
  cfg.n_record = 100;  // far below 50 mechanical periods
  CHECK_THROWS_AS(simulate(m, cfg), ValidationError);
}

}  // TEST_SUITE
