#include "nmslab/steady_state.hpp"

#include <cmath>

#include "nmslab/errors.hpp"

namespace nmslab {

Real threshold_margin(const Model& m) {
  const Real G = m.sys.opa_gain;
  const Real ke = m.drv.eff_decay;
  const Real delta = m.detuning;
  return ke * ke + delta * delta - 4.0 * G * G;
}

SteadyState solve_steady_state(const Model& m) {
  const Real margin = threshold_margin(m);
  if (!(margin > 0))
    throw ThresholdError("above OPA threshold: 4G^2 >= kappa_eff^2 + Delta^2");

  const Real G = m.sys.opa_gain;
  const Real theta = m.sys.opa_phase;
  const Real ke = m.drv.eff_decay;
  const Real r = m.sys.bs_reflectivity;
  const Real t = m.drv.bs_transmissivity;
  const Real drive = t * m.drv.drive_amplitude / (1.0 + r);

  SteadyState ss;
  ss.detuning_eff = m.detuning;
  ss.field = (Complex(ke, -m.detuning) + 2.0 * G * std::polar(1.0, theta)) /
             margin * drive;
  ss.photon_number = std::norm(ss.field);
  ss.pos = 2.0 * m.drv.coupling_const / m.sys.mech_freq * ss.photon_number;
  ss.mom = 0.0;
  ss.enhanced_coupling = 2.0 * m.drv.coupling_const * std::abs(ss.field);
  return ss;
}

}  // namespace nmslab
