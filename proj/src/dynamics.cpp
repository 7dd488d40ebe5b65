#include "nmslab/dynamics.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "nmslab/errors.hpp"

namespace nmslab {

Mat4 drift_matrix(const Model& m, const SteadyState& ss) {
  const Real wm = m.sys.mech_freq;
  const Real gm = m.drv.mech_damping;
  const Real g0 = m.drv.coupling_const;
  const Real G = m.sys.opa_gain;
  const Real theta = m.sys.opa_phase;
  const Real ke = m.drv.eff_decay;
  const Real delta = m.detuning;

  // Real combinations of the complex steady-state amplitude: the position
  // couples to the x-quadrature through re2 = a_s + conj(a_s) and to the
  // y-quadrature through im2 = i(a_s - conj(a_s)) = -2 Im(a_s).
  const Real re2 = 2.0 * ss.field.real();
  const Real im2 = -2.0 * ss.field.imag();
  const Real gc = G * std::cos(theta);
  const Real gs = G * std::sin(theta);

  Mat4 M;
  M << 0.0, wm, 0.0, 0.0,                              //
      -wm, -gm, g0 * re2, -g0 * im2,                   //
      g0 * im2, 0.0, 2.0 * gc - ke, 2.0 * gs + delta,  //
      g0 * re2, 0.0, 2.0 * gs - delta, -(2.0 * gc + ke);
  return M;
}

std::array<Real, 5> char_poly(const Mat4& M) {
  // Faddeev-LeVerrier: B_{k} = M (B_{k-1} + a_{k-1} I), a_k = -tr(B_k)/k.
  std::array<Real, 5> a{1.0, 0.0, 0.0, 0.0, 0.0};
  Mat4 B = M;
  a[1] = -B.trace();
  for (int k = 2; k <= 4; ++k) {
    B = M * (B + a[k - 1] * Mat4::Identity());
    a[k] = -B.trace() / k;
  }
  return a;
}

StabilityReport stability_eigen(const Mat4& M) {
  Eigen::EigenSolver<Mat4> solver(M, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success)
    throw NumericalError("eigensolver failed to converge on drift matrix");
  StabilityReport rep;
  rep.eigenvalues = solver.eigenvalues();
  rep.eigen_stable = (rep.eigenvalues.real().array() < 0.0).all();
  return rep;
}

StabilityReport routh_hurwitz(const Model& m, const SteadyState& ss) {
  const Mat4 M = drift_matrix(m, ss);
  StabilityReport rep = stability_eigen(M);
  const auto a = char_poly(M);
  rep.b1 = a[1];
  rep.b2 = a[1] * a[2] - a[3];
  rep.b3 = a[3] * rep.b2 - a[1] * a[1] * a[4];
  rep.b4 = a[4] / m.sys.mech_freq;
  rep.rh_stable = rep.b1 > 0 && rep.b2 > 0 && rep.b3 > 0 && rep.b4 > 0;
  return rep;
}

}  // namespace nmslab
