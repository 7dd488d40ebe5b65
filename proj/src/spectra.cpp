#include "nmslab/spectra.hpp"

#include <algorithm>
#include <cmath>

#include "nmslab/dynamics.hpp"
#include "nmslab/errors.hpp"

namespace nmslab {

namespace {

void ensure_stable(const Model& m, const SteadyState& ss) {
  if (!stability_eigen(drift_matrix(m, ss)).eigen_stable)
    throw InstabilityError("spectrum requested at a dynamically unstable point");
}

// Normally-ordered share of the Brownian-noise correlator entering the
// output spectra: 2 (gamma_m/omega_m) omega [factor - 1].
Real thermal_bracket(const Model& m, Real omega, ThermalModel tm) {
  return 2.0 * (m.drv.mech_damping / m.sys.mech_freq) * omega *
         (thermal_factor(omega, m.sys.temperature, tm) - 1.0);
}

}  // namespace

Real thermal_factor(Real omega, Real temperature, ThermalModel tm) {
  const Real x = consts::hbar * omega / (2.0 * consts::k_boltzmann * temperature);
  switch (tm) {
    case ThermalModel::Coth:
      return 1.0 / std::tanh(x);
    case ThermalModel::HighT:
      return 1.0 / x;
  }
  return 0;
}

Real s_q(const Model& m, const SteadyState& ss, Real omega, ThermalModel tm) {
  ensure_stable(m, ss);
  const auto ap = a_coeffs_closed_form(m, ss, omega);
  const auto am = a_coeffs_closed_form(m, ss, -omega);
  const Real tfac = omega * thermal_factor(omega, m.sys.temperature, tm);
  const Complex val = 0.5 * (ap[0] * am[1] + ap[1] * am[0]) +
                      2.0 * (m.drv.mech_damping / m.sys.mech_freq) * tfac *
                          ap[2] * am[2];
  if (std::abs(val.imag()) > 1e-10 * std::abs(val))
    throw NumericalError("position spectrum has non-negligible imaginary part");
  return val.real();
}

OutputSpectra output_spectra(const Model& m, const SteadyState& ss, Real omega,
                             ThermalModel tm) {
  ensure_stable(m, ss);
  const auto dp = d_coeffs_closed_form(m, ss, omega);
  const auto dm = d_coeffs_closed_form(m, ss, -omega);
  const Real br = thermal_bracket(m, omega, tm);

  OutputSpectra out;
  out.photon = std::norm(dp[1]) + br * std::norm(dp[2]);
  out.amp_quad = std::norm(dp[1] + std::conj(dm[0])) +
                 br * std::norm(dp[2] + std::conj(dm[2]));
  out.phase_quad = std::norm(dp[1] - std::conj(dm[0])) +
                   br * std::norm(dp[2] - std::conj(dm[2]));
  return out;
}

SpectrumSeries spectrum_series(SpectrumKind kind, const Model& m, Real lo,
                               Real hi, int n, ThermalModel tm,
                               bool scale_gamma_m) {
  if (n < 2 || !(hi > lo) || !(lo > 0))
    throw NumericalError("grid must be non-empty ascending");
  const SteadyState ss = solve_steady_state(m);
  ensure_stable(m, ss);

  SpectrumSeries series;
  series.kind = kind;
  series.thermal = tm;
  series.scaled_by_gamma_m = scale_gamma_m && kind == SpectrumKind::PosQuad;
  series.params_snapshot = m.sys;
  series.grid.resize(n);
  series.values.resize(n);
  for (int i = 0; i < n; ++i) {
    const Real w = lo + (hi - lo) * i / (n - 1);
    series.grid[i] = w;
    Real v = 0;
    switch (kind) {
      case SpectrumKind::PosQuad:
        v = s_q(m, ss, w, tm);
        if (series.scaled_by_gamma_m) v *= m.drv.mech_damping;
        break;
      case SpectrumKind::OutPhoton:
        v = output_spectra(m, ss, w, tm).photon;
        break;
      case SpectrumKind::OutAmpQuad:
        v = output_spectra(m, ss, w, tm).amp_quad;
        break;
      case SpectrumKind::OutPhaseQuad:
        v = output_spectra(m, ss, w, tm).phase_quad;
        break;
    }
    series.values[i] = v;
  }
  return series;
}

std::vector<Peak> find_peaks(const std::vector<Real>& grid,
                             const std::vector<Real>& values) {
  std::vector<Peak> peaks;
  for (int i = 1; i + 1 < static_cast<int>(values.size()); ++i) {
    if (!(values[i] > values[i - 1] && values[i] > values[i + 1])) continue;
    Peak pk;
    pk.index = i;
    // Parabola through the three samples around the sample maximum.
    const Real denom = values[i - 1] - 2.0 * values[i] + values[i + 1];
    const Real shift =
        denom != 0 ? 0.5 * (values[i - 1] - values[i + 1]) / denom : 0.0;
    const Real h = 0.5 * (grid[i + 1] - grid[i - 1]);
    pk.position = grid[i] + shift * h;
    pk.height = values[i] - 0.25 * (values[i - 1] - values[i + 1]) * shift;
    peaks.push_back(pk);
  }
  std::sort(peaks.begin(), peaks.end(),
            [](const Peak& a, const Peak& b) { return a.height > b.height; });
  return peaks;
}

Real peak_separation(const std::vector<Peak>& peaks) {
  if (peaks.size() < 2) return 0.0;
  return std::abs(peaks[0].position - peaks[1].position);
}

Real peak_fwhm(const std::vector<Real>& grid, const std::vector<Real>& values,
               const Peak& peak) {
  const Real half = 0.5 * peak.height;
  const int n = static_cast<int>(values.size());

  int lo = peak.index;
  while (lo > 0 && values[lo] > half) --lo;
  int hi = peak.index;
  while (hi < n - 1 && values[hi] > half) ++hi;

  auto cross = [&](int a, int b) {
    if (values[b] == values[a]) return grid[a];
    return grid[a] + (half - values[a]) * (grid[b] - grid[a]) /
                         (values[b] - values[a]);
  };
  const Real left = values[lo] > half ? grid[lo] : cross(lo, lo + 1);
  const Real right = values[hi] > half ? grid[hi] : cross(hi - 1, hi);
  return right - left;
}

}  // namespace nmslab
