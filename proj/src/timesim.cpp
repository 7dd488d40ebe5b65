#include "nmslab/timesim.hpp"

#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/FFT>
#include <unsupported/Eigen/MatrixFunctions>

#include "nmslab/errors.hpp"
#include "nmslab/steady_state.hpp"

namespace nmslab {

Mat4 diffusion_matrix(const Model& m) {
  const Real s_xi = 4.0 * m.drv.mech_damping * consts::k_boltzmann *
                    m.sys.temperature / (consts::hbar * m.sys.mech_freq);
  const Real s_in = std::sqrt(2.0 * m.sys.cavity_decay) *
                    m.drv.bs_transmissivity / (1.0 + m.sys.bs_reflectivity);
  Mat4 n = Mat4::Zero();
  n(1, 1) = s_xi;
  n(2, 2) = s_in * s_in;
  n(3, 3) = s_in * s_in;
  return n;
}

Mat4 lyapunov_covariance(const Mat4& M, const Mat4& N) {
  // vec(M S + S M^T) = (I (x) M + M (x) I) vec(S) in column-major vec.
  Eigen::Matrix<Real, 16, 16> K = Eigen::Matrix<Real, 16, 16>::Zero();
  for (int j = 0; j < 4; ++j)
    K.block<4, 4>(4 * j, 4 * j) += M;
  for (int j = 0; j < 4; ++j)
    for (int i = 0; i < 4; ++i)
      for (int k = 0; k < 4; ++k) K(4 * j + k, 4 * i + k) += M(j, i);

  Eigen::Matrix<Real, 16, 1> rhs;
  for (int j = 0; j < 4; ++j)
    for (int i = 0; i < 4; ++i) rhs(4 * j + i) = -N(i, j);

  const Eigen::Matrix<Real, 16, 1> vecs = K.fullPivLu().solve(rhs);
  Mat4 S;
  for (int j = 0; j < 4; ++j)
    for (int i = 0; i < 4; ++i) S(i, j) = vecs(4 * j + i);
  return 0.5 * (S + S.transpose());
}

Discretization discretize(const Mat4& M, const Mat4& N, Real dt) {
  Eigen::Matrix<Real, 8, 8> block = Eigen::Matrix<Real, 8, 8>::Zero();
  block.topLeftCorner<4, 4>() = M;
  block.topRightCorner<4, 4>() = N;
  block.bottomRightCorner<4, 4>() = -M.transpose();
  const Eigen::Matrix<Real, 8, 8> e = (block * dt).exp();

  Discretization d;
  d.phi = e.topLeftCorner<4, 4>();
  d.qd = e.topRightCorner<4, 4>() * d.phi.transpose();
  d.qd = (0.5 * (d.qd + d.qd.transpose())).eval();

  Eigen::SelfAdjointEigenSolver<Mat4> es(d.qd);
  if (es.info() != Eigen::Success)
    throw NumericalError("noise covariance factorization failed");
  Vec4 lam = es.eigenvalues().cwiseMax(0.0);
  d.noise_factor = es.eigenvectors() * lam.cwiseSqrt().asDiagonal();
  return d;
}

Trajectory run_ou(const Mat4& M, const Mat4& N, const SimConfig& cfg) {
  if (!(cfg.dt > 0) || cfg.n_record <= 0 || cfg.stride < 1 ||
      cfg.burn_in < 0)
    throw ValidationError({"simulation config requires dt > 0, n_record > 0, "
                           "stride >= 1, burn_in >= 0"});
  if (!stability_eigen(M).eigen_stable)
    throw InstabilityError("refusing to simulate an unstable drift matrix");

  const Discretization d = discretize(M, N, cfg.dt);
  std::mt19937_64 rng(cfg.rng_seed);
  std::normal_distribution<Real> normal(0.0, 1.0);
  auto step = [&](Vec4& x) {
    Vec4 z(normal(rng), normal(rng), normal(rng), normal(rng));
    x = (d.phi * x + d.noise_factor * z).eval();
  };

  Vec4 x = Vec4::Zero();
  const auto n_burn = static_cast<std::int64_t>(std::ceil(cfg.burn_in / cfg.dt));
  for (std::int64_t i = 0; i < n_burn; ++i) step(x);

  Trajectory traj;
  traj.dt_record = cfg.dt * cfg.stride;
  traj.rng_seed = cfg.rng_seed;
  traj.samples.resize(cfg.n_record, 4);
  for (std::int64_t i = 0; i < cfg.n_record; ++i) {
    for (int s = 0; s < cfg.stride; ++s) step(x);
    traj.samples.row(i) = x.transpose();
  }
  return traj;
}

Trajectory simulate(const Model& m, const SimConfig& cfg) {
  SimConfig c = cfg;
  if (c.burn_in < 0) c.burn_in = 10.0 / m.drv.mech_damping;
  const Real dt_max =
      0.05 * std::min(1.0 / m.sys.mech_freq, 1.0 / m.drv.eff_decay);
  if (!(c.dt > 0 && c.dt < dt_max))
    throw ValidationError(
        {"dt must resolve the fastest scale: dt < 0.05 min(1/omega_m, "
         "1/kappa_eff)"});
  const Real span = c.dt * c.stride * static_cast<Real>(c.n_record);
  if (span * m.sys.mech_freq / consts::two_pi < 50.0)
    throw ValidationError(
        {"recorded span must cover at least 50 mechanical periods"});

  const SteadyState ss = solve_steady_state(m);
  return run_ou(drift_matrix(m, ss), diffusion_matrix(m), c);
}

WelchSpectrum welch_psd(const VecX& x, Real dt, int nperseg) {
  const auto n = static_cast<std::int64_t>(x.size());
  if (nperseg < 8 || nperseg % 2 != 0 || nperseg > n)
    throw NumericalError("segment too short or series shorter than a segment");
  const std::int64_t hop = nperseg / 2;
  const auto n_seg = static_cast<int>((n - nperseg) / hop + 1);

  VecX window(nperseg);
  for (int i = 0; i < nperseg; ++i)
    window(i) = 0.5 * (1.0 - std::cos(consts::two_pi * i / nperseg));
  const Real wss = window.squaredNorm();

  const int n_bins = nperseg / 2 + 1;
  MatX per_seg(n_seg, n_bins);
  Eigen::FFT<Real> fft;
  std::vector<Complex> in(nperseg), out(nperseg);
  for (int s = 0; s < n_seg; ++s) {
    const auto base = s * hop;
    const Real mean = x.segment(base, nperseg).mean();
    for (int i = 0; i < nperseg; ++i)
      in[i] = Complex((x(base + i) - mean) * window(i), 0.0);
    fft.fwd(out, in);
    for (int k = 0; k < n_bins; ++k)
      per_seg(s, k) = dt * std::norm(out[k]) / wss;
  }

  WelchSpectrum w;
  w.n_segments = n_seg;
  w.freq.resize(n_bins);
  for (int k = 0; k < n_bins; ++k)
    w.freq(k) = consts::two_pi * k / (static_cast<Real>(nperseg) * dt);
  w.psd = per_seg.colwise().mean().transpose();
  VecX var = (per_seg.rowwise() - w.psd.transpose())
                 .array()
                 .square()
                 .colwise()
                 .sum()
                 .transpose() /
             std::max(1, n_seg - 1);
  w.stderr_psd = (var / n_seg).cwiseSqrt();
  return w;
}

WelchSpectrum psd_estimate(const Trajectory& traj, int channel, int nperseg) {
  return welch_psd(traj.samples.col(channel), traj.dt_record, nperseg);
}

CovarianceEstimate covariance_estimate(const Trajectory& traj, int n_batches) {
  const auto n = static_cast<std::int64_t>(traj.samples.rows());
  if (n_batches < 2 || n / n_batches < 2)
    throw NumericalError("too few samples for batch-means covariance");
  const std::int64_t len = n / n_batches;
  const Eigen::RowVector4d mean = traj.samples.colwise().mean();

  std::vector<Mat4> batch(n_batches);
  Mat4 total = Mat4::Zero();
  for (int b = 0; b < n_batches; ++b) {
    const MatX centered =
        traj.samples.middleRows(b * len, len).rowwise() - mean;
    batch[b] = (centered.transpose() * centered) / static_cast<Real>(len);
    total += batch[b];
  }

  CovarianceEstimate est;
  est.n_batches = n_batches;
  est.cov = total / n_batches;
  Mat4 var = Mat4::Zero();
  for (const auto& c : batch) {
    const Mat4 dev = c - est.cov;
    var += dev.cwiseProduct(dev);
  }
  est.stderr_cov = (var / ((n_batches - 1.0) * n_batches)).cwiseSqrt();
  return est;
}

}  // namespace nmslab
