#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "nmslab/dynamics.hpp"
#include "nmslab/errors.hpp"
#include "nmslab/params.hpp"
#include "nmslab/steady_state.hpp"
#include "nmslab/types.hpp"

namespace testutil {

using namespace nmslab;

// Operating point used throughout: 1064 nm, 25 mm, 145 ng, kappa/2pi =
// 215 kHz, omega_m/2pi = 947 kHz, Q' = 6700, T = 0.3 K, P = 2 mW,
// G = 0.5 kappa, theta = -pi/4, r = 0.5, degenerate detuning.
inline SystemParams reference_params() {
  SystemParams p;
  p.wavelength = 1064e-9;
  p.cavity_length = 25e-3;
  p.mirror_mass = 1.45e-10;
  p.cavity_decay = consts::two_pi * 215e3;
  p.mech_freq = consts::two_pi * 947e3;
  p.quality = 6700.0;
  p.temperature = 0.3;
  p.input_power = 2e-3;
  p.opa_gain = 0.5 * consts::two_pi * 215e3;
  p.opa_phase = -consts::pi / 4;
  p.bs_reflectivity = 0.5;
  return p;
}

// Independent route to the steady field: the defining balance
//   (kappa_eff + i Delta) a = t eps_l/(1+r) + 2 G e^{i theta} conj(a)
// iterated to its fixed point. Contractive below threshold.
inline Complex fixed_point_field(const Model& m, int iters = 400) {
  const Real ke = m.drv.eff_decay;
  const Complex denom(ke, m.detuning);
  const Complex drive = m.drv.bs_transmissivity * m.drv.drive_amplitude /
                        (1.0 + m.sys.bs_reflectivity);
  const Complex pump = 2.0 * m.sys.opa_gain * std::polar(1.0, m.sys.opa_phase);
  Complex a = 0.0;
  for (int i = 0; i < iters; ++i) a = (drive + pump * std::conj(a)) / denom;
  return a;
}

// Nonlinear mean-field vector field over (Q, P, x, y) with x = a + conj(a),
// y = i(conj(a) - a), whose fixed point is the steady state and whose
// Jacobian there must match the drift matrix. The bare detuning is
// reconstructed from the effective one: Delta0 = Delta + g0 Q_s.
inline Vec4 mean_field_rhs(const Model& m, const SteadyState& ss,
                           const Vec4& u) {
  const Real wm = m.sys.mech_freq;
  const Real gm = m.drv.mech_damping;
  const Real g0 = m.drv.coupling_const;
  const Real delta0 = m.detuning + g0 * ss.pos;
  const Complex drive = m.drv.bs_transmissivity * m.drv.drive_amplitude /
                        (1.0 + m.sys.bs_reflectivity);
  const Complex pump = 2.0 * m.sys.opa_gain * std::polar(1.0, m.sys.opa_phase);

  const Complex a(0.5 * u(2), 0.5 * u(3));
  const Complex adot = -Complex(m.drv.eff_decay, delta0) * a +
                       im_unit * g0 * a * u(0) + pump * std::conj(a) + drive;
  Vec4 f;
  f(0) = wm * u(1);
  f(1) = -wm * u(0) - gm * u(1) + 2.0 * g0 * std::norm(a);
  f(2) = 2.0 * adot.real();
  f(3) = 2.0 * adot.imag();
  return f;
}

// Central-difference Jacobian of mean_field_rhs. The field is quadratic, so
// central differences are exact up to roundoff.
inline Mat4 fd_jacobian(const Model& m, const SteadyState& ss, const Vec4& u) {
  Mat4 j;
  for (int col = 0; col < 4; ++col) {
    const Real h = 1e-4 * std::max(std::abs(u(col)), 1.0);
    Vec4 up = u, dn = u;
    up(col) += h;
    dn(col) -= h;
    j.col(col) = (mean_field_rhs(m, ss, up) - mean_field_rhs(m, ss, dn)) /
                 (2.0 * h);
  }
  return j;
}

struct Draw {
  Model model;
  SteadyState ss;
};

// Random operating point around the reference, restricted (or not) to the
// dynamically stable region. Degenerate detuning keeps every draw below the
// parametric threshold.
inline Draw random_draw(std::mt19937_64& rng, bool require_stable) {
  std::uniform_real_distribution<Real> uni(0.0, 1.0);
  for (;;) {
    SystemParams p = reference_params();
    p.bs_reflectivity = -0.7 + 1.4 * uni(rng);
    p.opa_gain = 1.2 * p.cavity_decay * uni(rng);
    p.opa_phase = consts::pi * (2.0 * uni(rng) - 1.0);
    p.input_power = (0.2 + 7.8 * uni(rng)) * 1e-3;
    Model m = make_model(p);
    SteadyState ss = solve_steady_state(m);
    if (!require_stable ||
        stability_eigen(drift_matrix(m, ss)).eigen_stable)
      return {m, ss};
  }
}

// The same model with the optomechanical coupling switched off, for passive
// network identities. Optionally also kills the parametric gain.
inline Model decoupled(Model m, bool keep_gain = false) {
  m.drv.coupling_const = 0.0;
  if (!keep_gain) m.sys.opa_gain = 0.0;
  return m;
}

inline Real rel_err(Real a, Real b) {
  return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}

inline Real rel_err(const Complex& a, const Complex& b) {
  return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}

}  // namespace testutil
