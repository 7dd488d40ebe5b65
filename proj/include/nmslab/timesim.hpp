#pragma once

#include <cstdint>

#include "nmslab/dynamics.hpp"
#include "nmslab/params.hpp"
#include "nmslab/types.hpp"

namespace nmslab {

// Diffusion matrix N of the classical Langevin model dX = M X dt + dW,
// cov(dW) = N dt, over (dQ, dP, dx, dy):
//   N = diag(0, S_xi, s^2, s^2)
// with the thermal force intensity S_xi = 4 gamma_m kB T / (hbar omega_m)
// (high-temperature symmetrized correlator) and the optical vacuum intensity
// s^2 = 2 kappa t^2 / (1+r)^2, the squared input coupling of the response
// module. Vacuum noise is represented as symmetric classical white noise of
// the matching symmetrized strength: valid for symmetrized spectra of a
// linear system, which bounds this oracle's scope.
Mat4 diffusion_matrix(const Model& m);

// Stationary covariance solving M S + S M^T + N = 0, via the 16x16
// Kronecker-product linear system (independent of any time stepping).
Mat4 lyapunov_covariance(const Mat4& M, const Mat4& N);

// Exact one-step discretization of the linear SDE: phi = e^{M dt} and
// qd = Integral_0^dt e^{Ms} N e^{M^T s} ds from one Van Loan block
// exponential, plus a factor L with L L^T = qd (eigen decomposition with
// tiny negative eigenvalues clamped to zero). No discretization bias: the
// sampled chain has the exact transition law of the continuous process.
struct Discretization {
  Mat4 phi;
  Mat4 qd;
  Mat4 noise_factor;
};
Discretization discretize(const Mat4& M, const Mat4& N, Real dt);

struct SimConfig {
  Real dt = 0;              // raw integrator step [s]
  int stride = 1;           // record every stride-th raw step
  std::int64_t n_record = 0;  // recorded samples after burn-in
  Real burn_in = -1.0;      // seconds discarded; negative = 10 / gamma_m
  std::uint64_t rng_seed = 1;
};

struct Trajectory {
  Real dt_record = 0;  // dt * stride
  MatX samples;        // n_record x 4, columns (dQ, dP, dx, dy)
  std::uint64_t rng_seed = 0;
};

// Stationary trajectory of dX = M X dt + dW from the exact discretization.
// Requires a stable M (throws InstabilityError otherwise: trajectories of an
// unstable system diverge) and an explicit non-negative burn_in. Fixed seed
// gives a bit-identical trajectory on repeat.
Trajectory run_ou(const Mat4& M, const Mat4& N, const SimConfig& cfg);

// run_ou on the model's drift and diffusion with step-size guards:
// dt < 0.05 min(1/omega_m, 1/kappa_eff) and a recorded span of at least 50
// mechanical periods. Negative burn_in resolves to 10 / gamma_m.
Trajectory simulate(const Model& m, const SimConfig& cfg);

// Averaged-periodogram (Welch) spectral density: Hann window, 50% overlap,
// per-segment mean removal. Normalization S(w_k) = dt |sum_n win_n x_n
// e^{i w_k t_n}|^2 / sum_n win_n^2, the two-sided density matching the
// analytic spectra convention Var = Integral S dw / 2pi; a white sequence of
// per-sample variance c/dt has flat S = c. Bins k = 0..nperseg/2 are
// returned (the process spectra are even in w).
struct WelchSpectrum {
  VecX freq;  // angular frequencies [rad/s]
  VecX psd;
  VecX stderr_psd;  // per-bin standard error over segments
  int n_segments = 0;
};
WelchSpectrum welch_psd(const VecX& x, Real dt, int nperseg);
WelchSpectrum psd_estimate(const Trajectory& traj, int channel, int nperseg);

// Covariance with batch-means standard errors: the series splits into
// n_batches contiguous batches, second moments are taken about the global
// mean per batch, and the spread across batches gives the standard error of
// each covariance entry.
struct CovarianceEstimate {
  Mat4 cov;
  Mat4 stderr_cov;
  int n_batches = 0;
};
CovarianceEstimate covariance_estimate(const Trajectory& traj,
                                       int n_batches = 32);

}  // namespace nmslab
