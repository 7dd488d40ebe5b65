#pragma once

#include <array>
#include <functional>
#include <vector>

#include "nmslab/dynamics.hpp"
#include "nmslab/params.hpp"
#include "nmslab/steady_state.hpp"
#include "nmslab/types.hpp"

namespace nmslab {

// Quartic response denominator d(omega) = sum_k c[k] omega^k whose complex
// zeros are the normal modes: real parts give mode frequencies, |imaginary
// parts| give linewidths. Expanded from
//   (omega^2 - omega_m^2 + i gamma_m omega)
//     * [(kappa_eff - i omega)^2 + Delta^2 - 4 G^2]
//   + 4 omega_m g0^2 [Delta |a_s|^2 + i G (a_s^2 e^{-i theta}
//                                          - conj(a_s)^2 e^{i theta})].
// The constant bracket is real by conjugation symmetry and the leading
// coefficient is exactly -1.
struct Quartic {
  std::array<Complex, 5> c{};  // c[k] multiplies omega^k

  Complex eval(Complex omega) const {
    Complex v = c[4];
    for (int k = 3; k >= 0; --k) v = v * omega + c[k];
    return v;
  }
};

Quartic d_polynomial(const Model& m, const SteadyState& ss);

struct ModeSet {
  std::array<Complex, 4> roots{};     // all zeros of d(omega) [rad/s]
  std::vector<Complex> positive_re;   // roots with Re > 0, ascending by Re
  std::vector<Real> linewidths;       // |Im| of positive_re entries
  Real separation = 0;                // Re gap of the two positive_re roots
  bool split = false;                 // normal-mode splitting flag
};

// All four roots via companion-matrix eigenvalues of the monic-normalized
// quartic (scaled for conditioning), polished by one Newton step each.
// Guarantees |d(root)| / max_k |c[k] * scale^k| < 1e-9 or throws
// NumericalError.
std::array<Complex, 4> quartic_roots(const Quartic& q);

// Splitting detection threshold: the Re gap must exceed
// max(1e-6 * omega_m, 1e-3 * mean linewidth). An exact-equality test is
// meaningless at the bifurcation.
Real splitting_tolerance(Real mech_freq, Real mean_linewidth);

ModeSet normal_modes(const Model& m);

// One point of a parameter sweep. Unstable points keep their ModeSet for
// inspection but carry stable = false so consumers can exclude them.
struct SweepPoint {
  Real value = 0;  // swept-variable value
  ModeSet modes;
  bool stable = false;
  bool valid = false;  // false when the point failed (e.g. above threshold)
};

// Which scalar a sweep varies.
enum class SweepVar { Reflectivity, OpaGain, InputPower, OpaPhase };

// Applies the swept value onto a copy of the base parameters.
SystemParams with_swept(const SystemParams& base, SweepVar var, Real value);

// Evaluates normal modes along an inclusive linear grid. Per-point failures
// (threshold, instability) are recorded inline, never thrown.
std::vector<SweepPoint> sweep_modes(const SystemParams& base, SweepVar var,
                                    Real lo, Real hi, int n);

// Bifurcation point where the two Re>0 roots transition between equal and
// distinct, located by coarse scan plus bisection to 1e-3 absolute in the
// swept variable. Throws NumericalError("no onset in range") when the split
// state never changes across the scan.
Real nms_onset(const SystemParams& base, SweepVar var, Real lo, Real hi,
               int coarse = 120, Real tol = 1e-3);

}  // namespace nmslab
