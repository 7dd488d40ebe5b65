#pragma once

#include <array>

#include "nmslab/params.hpp"
#include "nmslab/steady_state.hpp"
#include "nmslab/types.hpp"

namespace nmslab {

// Drift matrix of the linearized fluctuation dynamics over the state
// (dQ, dP, dx, dy) with x = da + da^dag, y = i(da^dag - da): component 0 is
// the oscillator coordinate (d/dt dQ = omega_m dP), component 1 the damped
// momentum receiving the thermal force, components 2 and 3 the optical
// quadratures receiving the vacuum inputs. Fixed entries: M(0,1) = omega_m,
// M(1,1) = -gamma_m, M(2,2) = 2 G cos(theta) - kappa_eff, trace =
// -gamma_m - 2 kappa_eff; every entry is real because only the combinations
// a_s + conj(a_s) and i(a_s - conj(a_s)) enter.
Mat4 drift_matrix(const Model& m, const SteadyState& ss);

// Coefficients {1, a1, a2, a3, a4} of the monic characteristic polynomial
// det(lambda I - M) = lambda^4 + a1 lambda^3 + a2 lambda^2 + a3 lambda + a4,
// computed by the Faddeev-LeVerrier trace recursion (no eigensolver).
std::array<Real, 5> char_poly(const Mat4& M);

struct StabilityReport {
  CVec4 eigenvalues;
  bool eigen_stable = false;  // every eigenvalue has Re < 0
  // Hurwitz quantities for the quartic: b1 = a1, b2 = a1 a2 - a3 (second
  // Hurwitz determinant), b3 = a3 b2 - a1^2 a4 (third Hurwitz determinant),
  // b4 = a4 / omega_m. All four positive iff the polynomial is Hurwitz.
  Real b1 = 0, b2 = 0, b3 = 0, b4 = 0;
  bool rh_stable = false;
};

// Eigenvalue half of the report. Throws NumericalError if the eigensolver
// fails to converge (distinct from an "unstable" verdict).
StabilityReport stability_eigen(const Mat4& M);

// Both verdicts: eigenvalues (ground truth) plus the algebraic
// Routh-Hurwitz positivity conditions derived from char_poly.
StabilityReport routh_hurwitz(const Model& m, const SteadyState& ss);

}  // namespace nmslab
