#pragma once

#include <optional>

#include "nmslab/types.hpp"

namespace nmslab {

// All physical inputs in SI units. Frequencies and rates are angular (rad/s);
// user-facing config files may give Hz instead, converted on ingestion.
struct SystemParams {
  Real wavelength = 0;       // laser wavelength [m]
  Real cavity_length = 0;    // [m]
  Real mirror_mass = 0;      // [kg]
  Real cavity_decay = 0;     // kappa [rad/s]
  Real mech_freq = 0;        // omega_m [rad/s]
  Real quality = 0;          // mechanical quality factor
  Real temperature = 0;      // bath temperature [K]
  Real input_power = 0;      // [W]
  Real opa_gain = 0;         // G [rad/s]
  Real opa_phase = 0;        // theta [rad]
  Real bs_reflectivity = 0;  // r, amplitude reflectivity, in (-1, 1)

  // Effective cavity detuning [rad/s]. Empty means "degenerate": resolved to
  // sqrt(omega_m^2 + 4 G^2), the choice that maximizes normal-mode coupling.
  std::optional<Real> detuning;
};

// Quantities derived from SystemParams. The cavity is driven at resonance
// scale: omega_c is taken equal to omega_l = 2*pi*c/lambda when computing the
// single-photon coupling; at 1064 nm the relative error of this
// identification is ~Delta/omega_c ~ 1e-8 and is negligible.
struct DerivedParams {
  Real laser_freq = 0;       // omega_l [rad/s]
  Real cavity_freq = 0;      // omega_c, set equal to omega_l [rad/s]
  Real drive_amplitude = 0;  // eps_l = sqrt(2 kappa P_in / (hbar omega_l))
  Real coupling_const = 0;   // g0 = (omega_c/L) sqrt(hbar / (2 m omega_m))
  Real mech_damping = 0;     // gamma_m = omega_m / quality [rad/s]
  Real eff_decay = 0;        // kappa_eff = kappa (1-r)/(1+r) [rad/s]
  Real bs_transmissivity = 0;  // t = +sqrt(1 - r^2)
};

// A validated parameter set with its derived constants and the resolved
// effective detuning. Single source of truth handed to all downstream code.
struct Model {
  SystemParams sys;
  DerivedParams drv;
  Real detuning = 0;  // resolved effective detuning [rad/s]
};

// Detuning that places the cavity-like mode on top of the OPA-shifted
// mechanical resonance: sqrt(omega_m^2 + 4 G^2).
Real degenerate_detuning(Real mech_freq, Real opa_gain);

// Returns the input iff every SystemParams invariant holds; otherwise throws
// ValidationError naming each violated invariant with the offending value.
const SystemParams& validate(const SystemParams& p);

// Pure and deterministic: identical inputs give bit-identical outputs.
DerivedParams derive_constants(const SystemParams& p);

// validate + derive_constants + detuning resolution in one step.
Model make_model(const SystemParams& p);

}  // namespace nmslab
