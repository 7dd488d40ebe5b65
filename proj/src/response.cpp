#include "nmslab/response.hpp"

#include <cmath>

#include <Eigen/LU>

#include "nmslab/errors.hpp"

namespace nmslab {

namespace {

struct Locals {
  Real wm, gm, g0, G, theta, ke, delta, r, t, kappa;
  Complex as, cas;       // a_s and conj(a_s)
  Complex eip, eim;      // e^{+i theta}, e^{-i theta}
  Real s_in;             // input-noise coupling sqrt(2 kappa) t / (1 + r)

  Locals(const Model& m, const SteadyState& ss)
      : wm(m.sys.mech_freq),
        gm(m.drv.mech_damping),
        g0(m.drv.coupling_const),
        G(m.sys.opa_gain),
        theta(m.sys.opa_phase),
        ke(m.drv.eff_decay),
        delta(m.detuning),
        r(m.sys.bs_reflectivity),
        t(m.drv.bs_transmissivity),
        kappa(m.sys.cavity_decay),
        as(ss.field),
        cas(std::conj(ss.field)),
        eip(std::polar(1.0, m.sys.opa_phase)),
        eim(std::polar(1.0, -m.sys.opa_phase)),
        s_in(std::sqrt(2.0 * m.sys.cavity_decay) * m.drv.bs_transmissivity /
             (1.0 + m.sys.bs_reflectivity)) {}

  Complex u(Real w) const { return Complex(ke, delta - w); }
  Complex v(Real w) const { return Complex(ke, -(delta + w)); }
  // Cavity response denominator (kappa_eff - i w)^2 + Delta^2 - 4 G^2.
  Complex dd(Real w) const {
    const Complex k(ke, -w);
    return k * k + delta * delta - 4.0 * G * G;
  }
};

void assemble_output(const Locals& lo, ResponseCoeffs& rc) {
  const Real pref = std::sqrt(2.0 * lo.kappa) / (1.0 + lo.r);
  for (int i = 0; i < 3; ++i) rc.C[i] = pref * rc.B[i];
  rc.C[0] -= lo.t / (1.0 + lo.r);
  for (int i = 0; i < 3; ++i) rc.D[i] = lo.t * rc.C[i];
  rc.D[0] -= lo.r;
}

}  // namespace

ResponseCoeffs solve_response(const Model& m, const SteadyState& ss, Real omega) {
  const Locals lo(m, ss);

  // Unknown order (dQ, dP, da, da^dag); one right-hand side per noise input.
  Eigen::Matrix4cd L;
  L << Complex(0, -omega), -lo.wm, 0.0, 0.0,                           //
      lo.wm, Complex(lo.gm, -omega), -2.0 * lo.g0 * lo.cas,            //
      -2.0 * lo.g0 * lo.as,                                            //
      -im_unit * lo.g0 * lo.as, 0.0, lo.u(omega), -2.0 * lo.G * lo.eip,  //
      im_unit * lo.g0 * lo.cas, 0.0, -2.0 * lo.G * lo.eim, lo.v(omega);

  Eigen::Matrix<Complex, 4, 3> rhs = Eigen::Matrix<Complex, 4, 3>::Zero();
  rhs(2, 0) = lo.s_in;
  rhs(3, 1) = lo.s_in;
  rhs(1, 2) = 1.0;

  Eigen::FullPivLU<Eigen::Matrix4cd> lu(L);
  if (!lu.isInvertible())
    throw SingularChainError("response system singular: undamped resonance");
  const Eigen::Matrix<Complex, 4, 3> x = lu.solve(rhs);

  ResponseCoeffs rc;
  for (int i = 0; i < 3; ++i) {
    rc.A[i] = x(0, i);
    rc.B[i] = x(2, i);
  }
  assemble_output(lo, rc);
  return rc;
}

std::array<Complex, 3> a_coeffs_closed_form(const Model& m,
                                            const SteadyState& ss, Real omega) {
  const Locals lo(m, ss);
  const Complex d = d_polynomial(m, ss).eval(Complex(omega, 0.0));
  const Real pre = 2.0 * std::sqrt(2.0 * lo.kappa) * lo.t * lo.g0 / (1.0 + lo.r);
  const Complex scale = -lo.wm / d;
  return {
      scale * pre * (lo.v(omega) * lo.cas + 2.0 * lo.G * lo.eim * lo.as),
      scale * pre * (lo.u(omega) * lo.as + 2.0 * lo.G * lo.eip * lo.cas),
      scale * lo.dd(omega),
  };
}

std::array<Complex, 3> d_coeffs_closed_form(const Model& m,
                                            const SteadyState& ss, Real omega) {
  const Locals lo(m, ss);
  const Complex d = d_polynomial(m, ss).eval(Complex(omega, 0.0));
  const Complex dd = lo.dd(omega);
  const Complex v = lo.v(omega);
  const Complex u = lo.u(omega);
  // Mechanical back-action loop closed through the cavity response.
  const Complex core = -(2.0 * lo.wm * lo.g0 * lo.g0 / d) * im_unit *
                       (v * lo.as - 2.0 * lo.G * lo.eip * lo.cas);
  const Complex pref =
      2.0 * lo.kappa * lo.t * lo.t / ((1.0 + lo.r) * (1.0 + lo.r) * dd);
  const Complex d1 =
      pref * (core * (v * lo.cas + 2.0 * lo.G * lo.eim * lo.as) + v) -
      lo.t * lo.t / (1.0 + lo.r) - lo.r;
  const Complex d2 =
      pref * (core * (u * lo.as + 2.0 * lo.G * lo.eip * lo.cas) +
              2.0 * lo.G * lo.eip);
  const Complex d3 = -(std::sqrt(2.0 * lo.kappa) * lo.wm * lo.g0 * lo.t /
                       ((1.0 + lo.r) * d)) *
                     im_unit * (v * lo.as - 2.0 * lo.G * lo.eip * lo.cas);
  return {d1, d2, d3};
}

}  // namespace nmslab
