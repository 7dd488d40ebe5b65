#include "nmslab/params.hpp"

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "nmslab/errors.hpp"

namespace nmslab {

namespace {

std::string describe(const char* name, Real value, const char* what) {
  std::ostringstream os;
  os << name << " " << what << " (got " << value << ")";
  return os.str();
}

}  // namespace

Real degenerate_detuning(Real mech_freq, Real opa_gain) {
  return std::hypot(mech_freq, 2.0 * opa_gain);
}

const SystemParams& validate(const SystemParams& p) {
  std::vector<std::string> bad;
  auto positive = [&](const char* name, Real v) {
    if (!(v > 0)) bad.push_back(describe(name, v, "must be positive"));
  };
  positive("wavelength", p.wavelength);
  positive("cavity_length", p.cavity_length);
  positive("mirror_mass", p.mirror_mass);
  positive("cavity_decay", p.cavity_decay);
  positive("mech_freq", p.mech_freq);
  positive("quality", p.quality);
  positive("temperature", p.temperature);
  positive("input_power", p.input_power);
  if (!(p.opa_gain >= 0))
    bad.push_back(describe("opa_gain", p.opa_gain, "must be non-negative"));
  if (!(p.bs_reflectivity > -1.0 && p.bs_reflectivity < 1.0))
    bad.push_back(describe("bs_reflectivity", p.bs_reflectivity,
                           "out of open interval (-1, 1)"));
  if (p.detuning && !std::isfinite(*p.detuning))
    bad.push_back(describe("detuning", *p.detuning, "must be finite"));
  if (!bad.empty()) throw ValidationError(std::move(bad));
  return p;
}

DerivedParams derive_constants(const SystemParams& p) {
  validate(p);
  DerivedParams d;
  d.laser_freq = consts::two_pi * consts::c0 / p.wavelength;
  d.cavity_freq = d.laser_freq;
  d.drive_amplitude =
      std::sqrt(2.0 * p.cavity_decay * p.input_power / (consts::hbar * d.laser_freq));
  d.coupling_const = (d.cavity_freq / p.cavity_length) *
                     std::sqrt(consts::hbar / (2.0 * p.mirror_mass * p.mech_freq));
  d.mech_damping = p.mech_freq / p.quality;
  const Real r = p.bs_reflectivity;
  d.eff_decay = p.cavity_decay * (1.0 - r) / (1.0 + r);
  d.bs_transmissivity = std::sqrt(1.0 - r * r);
  return d;
}

Model make_model(const SystemParams& p) {
  Model m;
  m.sys = p;
  m.drv = derive_constants(p);
  m.detuning = p.detuning ? *p.detuning
                          : degenerate_detuning(p.mech_freq, p.opa_gain);
  return m;
}

}  // namespace nmslab
