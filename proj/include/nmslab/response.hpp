#pragma once

#include <array>

#include "nmslab/modes.hpp"
#include "nmslab/params.hpp"
#include "nmslab/steady_state.hpp"
#include "nmslab/types.hpp"

namespace nmslab {

// Frequency-domain transfer amplitudes at one real frequency, with the
// Fourier convention f(omega) = Integral f(t) e^{+i omega t} dt and
// [f^dag](omega) = conjugate-partner pattern f^dag(omega) paired with
// f(-omega). Index order of the noise inputs everywhere: 0 -> vacuum input
// da_in, 1 -> da_in^dag, 2 -> thermal force xi.
struct ResponseCoeffs {
  std::array<Complex, 3> A{};  // mirror position dQ per noise input
  std::array<Complex, 3> B{};  // intracavity field da per noise input
  std::array<Complex, 3> C{};  // cavity output per noise input
  std::array<Complex, 3> D{};  // post-feedback-splitter output per input
};

// Solves the Fourier-transformed linearized equations of motion in the
// variables (dQ, dP, da, da^dag) against each noise input, then assembles
//   C1 = sqrt(2 kappa)/(1+r) B1 - t/(1+r),   C2,3 = sqrt(2 kappa)/(1+r) B2,3
//   D1 = t C1 - r,                           D2,3 = t C2,3.
// Throws SingularChainError if the linear system is rank-deficient (an
// undamped resonance hit exactly).
ResponseCoeffs solve_response(const Model& m, const SteadyState& ss, Real omega);

// Closed-form A coefficients:
//   A1 = -(omega_m/d) pre (v conj(a_s) + 2 G e^{-i th} a_s)
//   A2 = -(omega_m/d) pre (u a_s + 2 G e^{+i th} conj(a_s))
//   A3 = -(omega_m/d) [(kappa_eff - i omega)^2 + Delta^2 - 4 G^2]
// with u = kappa_eff + i(Delta - omega), v = kappa_eff - i(Delta + omega),
// pre = 2 sqrt(2 kappa) t g0 / (1 + r), and d the quartic denominator.
// Used as a cross-check against solve_response; disagreement is a bug, never
// silently reconciled.
std::array<Complex, 3> a_coeffs_closed_form(const Model& m,
                                            const SteadyState& ss, Real omega);

// Closed-form D coefficients, with the output-denominator grouping
// (1+r)^2 [(kappa_eff - i omega)^2 + Delta^2 - 4 G^2]; only this grouping is
// dimensionally consistent and matches the linear-solve pipeline.
std::array<Complex, 3> d_coeffs_closed_form(const Model& m,
                                            const SteadyState& ss, Real omega);

}  // namespace nmslab
