#pragma once

#include "nmslab/params.hpp"
#include "nmslab/types.hpp"

namespace nmslab {

// Classical operating point of the driven cavity-mirror-OPA loop.
struct SteadyState {
  Complex field;           // a_s, intracavity amplitude
  Real photon_number = 0;  // |a_s|^2
  Real pos = 0;            // Q_s = (2 g0 / omega_m) |a_s|^2 (dimensionless)
  Real mom = 0;            // P_s, exactly 0 in steady state
  Real enhanced_coupling = 0;  // g = 2 g0 |a_s| >= 0 (magnitude convention)
  Real detuning_eff = 0;       // effective detuning used [rad/s]
};

// Margin to the parametric-gain threshold: kappa_eff^2 + Delta^2 - 4 G^2.
// The below-threshold steady state requires this to be strictly positive.
Real threshold_margin(const Model& m);

// Steady-state solution
//   a_s = (kappa_eff - i Delta + 2 G e^{i theta}) / (kappa_eff^2 + Delta^2 - 4 G^2)
//         * t eps_l / (1 + r).
// The detuning is the already-effective one held in the model; the
// self-consistent shift of the bare detuning by the static mirror
// displacement is absorbed into it. Throws ThresholdError when
// 4 G^2 >= kappa_eff^2 + Delta^2.
SteadyState solve_steady_state(const Model& m);

}  // namespace nmslab
