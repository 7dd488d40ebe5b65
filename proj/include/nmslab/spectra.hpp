#pragma once

#include <string>
#include <vector>

#include "nmslab/params.hpp"
#include "nmslab/response.hpp"
#include "nmslab/steady_state.hpp"
#include "nmslab/types.hpp"

namespace nmslab {

// Thermal occupation factor entering the Brownian-noise correlator.
//   Coth:  coth(hbar omega / 2 kB T), exact at any temperature
//   HighT: 2 kB T / (hbar omega), first term of the coth expansion
// Both are odd in omega, so omega * factor is even and positive.
enum class ThermalModel { Coth, HighT };

Real thermal_factor(Real omega, Real temperature, ThermalModel tm);

// Symmetrized position spectrum of the mirror,
//   S_Q = 1/2 [A1(w) A2(-w) + A2(w) A1(-w)]
//         + 2 (gamma_m/omega_m) w * factor(w) * A3(w) A3(-w),
// assembled from the closed-form transfer coefficients. The assembly is real
// up to roundoff; an imaginary residue above 1e-10 relative throws
// NumericalError, otherwise it is discarded. Throws InstabilityError when
// the operating point is dynamically unstable.
Real s_q(const Model& m, const SteadyState& ss, Real omega, ThermalModel tm);

struct OutputSpectra {
  Real photon = 0;      // S_aout, normally-ordered output photon spectrum
  Real amp_quad = 0;    // S_xout, output amplitude-quadrature spectrum
  Real phase_quad = 0;  // S_yout, output phase-quadrature spectrum
};

// Output-field spectra assembled from the D coefficients with the thermal
// bracket [factor(w) - 1] (the normally-ordered share of the Brownian
// noise). Vacuum inputs contribute the conjugate-pair products; for the
// passive lossless network (g0 = G = 0) this gives S_xout = S_yout = 1 and
// S_aout = 0 identically.
OutputSpectra output_spectra(const Model& m, const SteadyState& ss, Real omega,
                             ThermalModel tm);

enum class SpectrumKind { PosQuad, OutPhoton, OutAmpQuad, OutPhaseQuad };

struct SpectrumSeries {
  std::vector<Real> grid;    // strictly increasing frequencies [rad/s]
  std::vector<Real> values;  // real non-negative samples
  SpectrumKind kind = SpectrumKind::PosQuad;
  ThermalModel thermal = ThermalModel::Coth;
  bool scaled_by_gamma_m = false;  // S_Q times gamma_m plotting convention
  SystemParams params_snapshot;
};

// Samples one spectrum kind over an inclusive linear grid of n points.
// Throws NumericalError("grid must be non-empty ascending") on a bad grid
// spec. scale_gamma_m applies only to the position spectrum.
SpectrumSeries spectrum_series(SpectrumKind kind, const Model& m, Real lo,
                               Real hi, int n, ThermalModel tm,
                               bool scale_gamma_m = false);

// A local maximum of a sampled series, refined by parabolic interpolation
// through the three samples around the grid maximum.
struct Peak {
  Real position = 0;
  Real height = 0;
  int index = 0;  // grid index of the unrefined maximum
};

// Interior local maxima sorted by descending height.
std::vector<Peak> find_peaks(const std::vector<Real>& grid,
                             const std::vector<Real>& values);

// Distance between the positions of the two tallest local maxima; zero when
// the series has fewer than two (merged doublet).
Real peak_separation(const std::vector<Peak>& peaks);

// Full width of the tallest peak at half its height, walking outward from
// the peak to the half-height crossings with linear interpolation. When the
// valley between a barely-resolved doublet stays above half height the width
// spans the doublet; that is the visually meaningful resolution measure.
Real peak_fwhm(const std::vector<Real>& grid, const std::vector<Real>& values,
               const Peak& peak);

}  // namespace nmslab
