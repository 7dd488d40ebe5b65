#include "nmslab/modes.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "nmslab/errors.hpp"

namespace nmslab {

Quartic d_polynomial(const Model& m, const SteadyState& ss) {
  const Real wm = m.sys.mech_freq;
  const Real gm = m.drv.mech_damping;
  const Real g0 = m.drv.coupling_const;
  const Real G = m.sys.opa_gain;
  const Real theta = m.sys.opa_phase;
  const Real ke = m.drv.eff_decay;
  const Real delta = m.detuning;
  const Real s = ke * ke + delta * delta - 4.0 * G * G;

  // Constant bracket Delta|a_s|^2 + iG(a_s^2 e^{-i th} - conj(a_s)^2 e^{i th});
  // the second term is i G (z - conj z) = -2 G Im(z), so the bracket is real.
  const Complex z = ss.field * ss.field * std::polar(1.0, -theta);
  const Real bracket = delta * ss.photon_number - 2.0 * G * z.imag();

  Quartic q;
  q.c[4] = Complex(-1.0, 0.0);
  q.c[3] = Complex(0.0, -(2.0 * ke + gm));
  q.c[2] = Complex(s + wm * wm + 2.0 * ke * gm, 0.0);
  q.c[1] = Complex(0.0, 2.0 * ke * wm * wm + gm * s);
  q.c[0] = Complex(4.0 * wm * g0 * g0 * bracket - wm * wm * s, 0.0);
  return q;
}

std::array<Complex, 4> quartic_roots(const Quartic& q) {
  // Scale omega = s*z so the monic polynomial in z has O(1) coefficients.
  Real scale = 0.0;
  for (int k = 0; k < 4; ++k) {
    const Real mag = std::abs(q.c[k] / q.c[4]);
    if (mag > 0) scale = std::max(scale, std::pow(mag, 1.0 / (4 - k)));
  }
  if (scale == 0) scale = 1.0;

  std::array<Complex, 4> monic;  // z^4 + monic[3] z^3 + ... + monic[0]
  Real pk = 1.0;
  for (int k = 0; k < 4; ++k) {
    monic[k] = q.c[k] * pk / (q.c[4] * std::pow(scale, 4.0));
    pk *= scale;
  }

  Eigen::Matrix4cd companion = Eigen::Matrix4cd::Zero();
  companion(1, 0) = companion(2, 1) = companion(3, 2) = 1.0;
  for (int k = 0; k < 4; ++k) companion(k, 3) = -monic[k];

  Eigen::ComplexEigenSolver<Eigen::Matrix4cd> solver(companion);
  if (solver.info() != Eigen::Success)
    throw NumericalError("companion-matrix eigensolver failed on quartic");

  std::array<Complex, 4> roots;
  for (int k = 0; k < 4; ++k) {
    Complex w = scale * solver.eigenvalues()(k);
    for (int it = 0; it < 2; ++it) {  // Newton polish
      Complex d = q.eval(w);
      Complex dp = 4.0 * q.c[4];
      for (int j = 3; j >= 1; --j) dp = dp * w + Real(j) * q.c[j];
      if (dp != Complex(0, 0)) w -= d / dp;
    }
    roots[k] = w;
  }

  Real cmax = 0.0;
  for (const auto& c : q.c) cmax = std::max(cmax, std::abs(c));
  for (const auto& w : roots) {
    if (!(std::abs(q.eval(w)) / cmax < 1e-9))
      throw NumericalError("quartic root residual exceeds 1e-9");
  }
  return roots;
}

Real splitting_tolerance(Real mech_freq, Real mean_linewidth) {
  return std::max(1e-6 * mech_freq, 1e-3 * mean_linewidth);
}

ModeSet normal_modes(const Model& m) {
  const SteadyState ss = solve_steady_state(m);
  ModeSet set;
  set.roots = quartic_roots(d_polynomial(m, ss));

  std::vector<Complex> pos;
  for (const auto& w : set.roots)
    if (w.real() > 0) pos.push_back(w);
  std::sort(pos.begin(), pos.end(),
            [](const Complex& a, const Complex& b) { return a.real() < b.real(); });
  // Conjugation symmetry pairs every Re>0 root with a Re<0 partner, so more
  // than two positives only happens from roundoff on a Re ~ 0 root; keep the
  // two genuinely positive ones.
  while (pos.size() > 2) pos.erase(pos.begin());
  set.positive_re = pos;
  for (const auto& w : pos) set.linewidths.push_back(std::abs(w.imag()));

  if (pos.size() == 2) {
    set.separation = pos[1].real() - pos[0].real();
    const Real mean_lw = 0.5 * (set.linewidths[0] + set.linewidths[1]);
    set.split = set.separation > splitting_tolerance(m.sys.mech_freq, mean_lw);
  }
  return set;
}

SystemParams with_swept(const SystemParams& base, SweepVar var, Real value) {
  SystemParams p = base;
  switch (var) {
    case SweepVar::Reflectivity: p.bs_reflectivity = value; break;
    case SweepVar::OpaGain: p.opa_gain = value; break;
    case SweepVar::InputPower: p.input_power = value; break;
    case SweepVar::OpaPhase: p.opa_phase = value; break;
  }
  return p;
}

std::vector<SweepPoint> sweep_modes(const SystemParams& base, SweepVar var,
                                    Real lo, Real hi, int n) {
  if (n < 2 || !(hi > lo))
    throw NumericalError("sweep grid must be ascending with at least 2 points");
  std::vector<SweepPoint> out(n);
  for (int i = 0; i < n; ++i) {
    SweepPoint& pt = out[i];
    pt.value = lo + (hi - lo) * i / (n - 1);
    try {
      const Model m = make_model(with_swept(base, var, pt.value));
      const SteadyState ss = solve_steady_state(m);
      pt.modes = normal_modes(m);
      pt.stable = stability_eigen(drift_matrix(m, ss)).eigen_stable;
      pt.valid = true;
    } catch (const Error&) {
      pt.valid = false;
    }
  }
  return out;
}

namespace {

// Split flag at a single point; empty when the point is invalid.
std::optional<bool> split_at(const SystemParams& base, SweepVar var, Real v) {
  try {
    return normal_modes(make_model(with_swept(base, var, v))).split;
  } catch (const Error&) {
    return std::nullopt;
  }
}

}  // namespace

Real nms_onset(const SystemParams& base, SweepVar var, Real lo, Real hi,
               int coarse, Real tol) {
  if (!(hi > lo) || coarse < 2)
    throw NumericalError("onset range must be ascending with >= 2 intervals");

  Real a = lo;
  std::optional<bool> sa = split_at(base, var, a);
  Real b = 0;
  std::optional<bool> sb;
  bool found = false;
  for (int i = 1; i <= coarse; ++i) {
    b = lo + (hi - lo) * i / coarse;
    sb = split_at(base, var, b);
    if (sa && sb && *sa != *sb) {
      found = true;
      break;
    }
    a = b;
    sa = sb;
  }
  if (!found) throw NumericalError("no onset in range");

  while (b - a > tol) {
    const Real mid = 0.5 * (a + b);
    const std::optional<bool> sm = split_at(base, var, mid);
    if (!sm) throw NumericalError("invalid point inside onset bracket");
    if (*sm == *sa)
      a = mid;
    else
      b = mid;
  }
  return 0.5 * (a + b);
}

}  // namespace nmslab
