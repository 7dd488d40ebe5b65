#include "nmslab/cli.hpp"

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "nmslab/dynamics.hpp"
#include "nmslab/errors.hpp"
#include "nmslab/feedback.hpp"
#include "nmslab/io.hpp"
#include "nmslab/modes.hpp"
#include "nmslab/params.hpp"
#include "nmslab/plot.hpp"
#include "nmslab/response.hpp"
#include "nmslab/spectra.hpp"
#include "nmslab/steady_state.hpp"
#include "nmslab/timesim.hpp"
#include "nmslab/types.hpp"

namespace nmslab {

namespace {

using nlohmann::json;

constexpr const char* kVersion = "0.1.0";

constexpr const char* kBaseConfig =
    "# Reference operating point: 1064 nm drive, 25 mm cavity, 145 ng mirror.\n"
    "wavelength = 1064e-9\n"
    "cavity_length = 25e-3\n"
    "mirror_mass = 1.45e-10\n"
    "cavity_decay_hz = 215e3\n"
    "mech_freq_hz = 947e3\n"
    "quality = 6700\n"
    "temperature = 0.3\n"
    "input_power = 2e-3\n"
    "opa_phase = -0.7853981633974483\n"
    "detuning = degenerate\n";

const std::map<std::string, std::string>& builtin_map() {
  static const std::map<std::string, std::string> configs = {
      {"fig2", std::string(kBaseConfig) +
                   "opa_gain_hz = 0\n"
                   "bs_reflectivity = 0\n"},
      {"fig3", std::string(kBaseConfig) +
                   "opa_gain_hz = 0\n"
                   "bs_reflectivity = 0\n"},
      {"fig4", std::string(kBaseConfig) +
                   "opa_gain_hz = 107.5e3\n"
                   "bs_reflectivity = 0\n"},
      {"fig5", std::string(kBaseConfig) +
                   "opa_gain_hz = 107.5e3\n"
                   "bs_reflectivity = 0.5\n"},
      {"fig6", std::string(kBaseConfig) +
                   "opa_gain_hz = 0\n"
                   "bs_reflectivity = 0.5\n"},
  };
  return configs;
}

struct Opts {
  std::string config;
  std::string out = ".";
  std::string grid;
  std::string thermal = "coth";
  std::string var = "r";
  std::string kind = "sq";
  std::uint64_t seed = 1;
  bool svg = false;
  bool scale_gamma_m = false;
  bool dump_traj = false;
  double dt = 8e-9;
  int stride = 8;
  std::int64_t samples = 1 << 17;
  int nperseg = 4096;
};

struct GridSpec {
  Real lo = 0, hi = 0;
  int n = 0;
};

GridSpec parse_grid(const std::string& spec) {
  const auto c1 = spec.find(':');
  const auto c2 = spec.find(':', c1 == std::string::npos ? c1 : c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos)
    throw ConfigError("grid must be lo:hi:n, got: " + spec);
  GridSpec g;
  try {
    size_t used = 0;
    g.lo = std::stod(spec.substr(0, c1), &used);
    if (used != c1) throw std::invalid_argument(spec);
    const std::string mid = spec.substr(c1 + 1, c2 - c1 - 1);
    g.hi = std::stod(mid, &used);
    if (used != mid.size()) throw std::invalid_argument(spec);
    const std::string tail = spec.substr(c2 + 1);
    g.n = std::stoi(tail, &used);
    if (used != tail.size()) throw std::invalid_argument(spec);
  } catch (const std::exception&) {
    throw ConfigError("grid must be lo:hi:n with numeric parts, got: " + spec);
  }
  if (g.n < 2 || !(g.hi > g.lo))
    throw ConfigError("grid must be ascending with n >= 2, got: " + spec);
  return g;
}

ThermalModel parse_thermal(const std::string& s) {
  if (s == "coth") return ThermalModel::Coth;
  if (s == "hight") return ThermalModel::HighT;
  throw ConfigError("--thermal accepts coth or hight, got: " + s);
}

SweepVar parse_var(const std::string& s) {
  if (s == "r") return SweepVar::Reflectivity;
  if (s == "gain") return SweepVar::OpaGain;
  if (s == "power") return SweepVar::InputPower;
  if (s == "phase") return SweepVar::OpaPhase;
  throw ConfigError("--var accepts r, gain, power or phase, got: " + s);
}

ParsedConfig config_or_builtin(const Opts& opts, const std::string& fig) {
  if (!opts.config.empty()) return load_config(opts.config);
  if (!fig.empty()) return parse_config(builtin_map().at(fig));
  throw ConfigError("--config is required for this subcommand");
}

std::filesystem::path ensure_outdir(const Opts& opts) {
  std::string out = opts.out;
  if (const char* env = std::getenv("NMSLAB_OUT"); env && *env) out = env;
  std::filesystem::path dir(out);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory: " + out);
  return dir;
}

json params_json(const Model& m) {
  json sys{{"wavelength", m.sys.wavelength},
           {"cavity_length", m.sys.cavity_length},
           {"mirror_mass", m.sys.mirror_mass},
           {"cavity_decay_rad_s", m.sys.cavity_decay},
           {"mech_freq_rad_s", m.sys.mech_freq},
           {"quality", m.sys.quality},
           {"temperature", m.sys.temperature},
           {"input_power", m.sys.input_power},
           {"opa_gain_rad_s", m.sys.opa_gain},
           {"opa_phase", m.sys.opa_phase},
           {"bs_reflectivity", m.sys.bs_reflectivity},
           {"detuning_rad_s",
            m.sys.detuning ? json(*m.sys.detuning) : json("degenerate")}};
  json drv{{"laser_freq", m.drv.laser_freq},
           {"drive_amplitude", m.drv.drive_amplitude},
           {"coupling_const", m.drv.coupling_const},
           {"mech_damping", m.drv.mech_damping},
           {"eff_decay", m.drv.eff_decay},
           {"bs_transmissivity", m.drv.bs_transmissivity}};
  return json{{"system", sys},
              {"derived", drv},
              {"detuning_resolved_rad_s", m.detuning}};
}

void write_manifest(const std::filesystem::path& dir, const std::string& name,
                    const std::string& subcommand, const ParsedConfig& cfg,
                    const Model& m, const json& extra,
                    const std::vector<std::string>& outputs) {
  json manifest{{"tool", "nmslab"},
                {"version", kVersion},
                {"subcommand", subcommand},
                {"config_hash", hash_hex(cfg.hash)},
                {"params", params_json(m)},
                {"outputs", outputs}};
  for (const auto& [key, value] : extra.items()) manifest[key] = value;
  write_text((dir / name).string(), manifest.dump(2) + "\n");
}

std::string fmt_flag(bool b) { return b ? "1" : "0"; }

void write_sweep_csv(const std::filesystem::path& path, std::uint64_t hash,
                     const std::vector<SweepPoint>& points) {
  const std::vector<std::string> cols = {"swept_var", "re_root_1", "re_root_2",
                                         "im_root_1", "im_root_2", "split",
                                         "stable"};
  std::vector<std::vector<std::string>> rows;
  const Real nan = std::numeric_limits<Real>::quiet_NaN();
  for (const auto& pt : points) {
    Real re1 = nan, re2 = nan, im1 = nan, im2 = nan;
    if (pt.valid && pt.modes.positive_re.size() == 2) {
      re1 = pt.modes.positive_re[0].real();
      re2 = pt.modes.positive_re[1].real();
      im1 = pt.modes.positive_re[0].imag();
      im2 = pt.modes.positive_re[1].imag();
    }
    rows.push_back({format_full(pt.value), format_full(re1), format_full(re2),
                    format_full(im1), format_full(im2),
                    fmt_flag(pt.valid && pt.modes.split),
                    fmt_flag(pt.valid && pt.stable)});
  }
  write_csv(path.string(), hash, cols, rows);
}

// Re and Im branch series of one sweep, restricted to usable points.
void append_sweep_series(const std::vector<SweepPoint>& points,
                         const std::string& label, std::vector<Series>& re_out,
                         std::vector<Series>& im_out) {
  Series re1{label + " upper", {}, {}}, re2{label + " lower", {}, {}};
  Series im1{label + " upper", {}, {}}, im2{label + " lower", {}, {}};
  for (const auto& pt : points) {
    if (!(pt.valid && pt.stable && pt.modes.positive_re.size() == 2)) continue;
    re1.x.push_back(pt.value);
    re2.x.push_back(pt.value);
    im1.x.push_back(pt.value);
    im2.x.push_back(pt.value);
    re2.y.push_back(pt.modes.positive_re[0].real());
    re1.y.push_back(pt.modes.positive_re[1].real());
    im2.y.push_back(pt.modes.positive_re[0].imag());
    im1.y.push_back(pt.modes.positive_re[1].imag());
  }
  re_out.push_back(std::move(re2));
  re_out.push_back(std::move(re1));
  im_out.push_back(std::move(im2));
  im_out.push_back(std::move(im1));
}

void write_spectrum_csv(const std::filesystem::path& path, std::uint64_t hash,
                        const SpectrumSeries& series, Real mech_freq) {
  const std::vector<std::string> cols = {"omega_rad_s", "omega_over_omega_m",
                                         "value"};
  std::vector<std::vector<std::string>> rows;
  for (size_t i = 0; i < series.grid.size(); ++i)
    rows.push_back({format_full(series.grid[i]),
                    format_full(series.grid[i] / mech_freq),
                    format_full(series.values[i])});
  write_csv(path.string(), hash, cols, rows);
}

json complex_json(const Complex& z) { return json{z.real(), z.imag()}; }

int run_steady(const Opts& opts) {
  const ParsedConfig cfg = config_or_builtin(opts, "");
  const Model m = make_model(cfg.params);
  const SteadyState ss = solve_steady_state(m);
  json out{{"field", complex_json(ss.field)},
           {"photon_number", ss.photon_number},
           {"pos", ss.pos},
           {"mom", ss.mom},
           {"enhanced_coupling", ss.enhanced_coupling},
           {"detuning_eff", ss.detuning_eff},
           {"config_hash", hash_hex(cfg.hash)}};
  std::cout << out.dump(2) << "\n";
  return 0;
}

int run_stability(const Opts& opts) {
  const ParsedConfig cfg = config_or_builtin(opts, "");
  const Model m = make_model(cfg.params);
  const SteadyState ss = solve_steady_state(m);
  const StabilityReport rep = routh_hurwitz(m, ss);
  json eigs = json::array();
  for (int i = 0; i < 4; ++i) eigs.push_back(complex_json(rep.eigenvalues(i)));
  json out{{"eigenvalues", eigs},
           {"eigen_stable", rep.eigen_stable},
           {"b1", rep.b1},
           {"b2", rep.b2},
           {"b3", rep.b3},
           {"b4", rep.b4},
           {"rh_stable", rep.rh_stable},
           {"config_hash", hash_hex(cfg.hash)}};
  std::cout << out.dump(2) << "\n";
  return 0;
}

int run_modes(const Opts& opts) {
  const ParsedConfig cfg = config_or_builtin(opts, "");
  const Model m = make_model(cfg.params);
  const ModeSet set = normal_modes(m);
  json roots = json::array();
  for (const auto& w : set.roots) roots.push_back(complex_json(w));
  json pos = json::array();
  for (const auto& w : set.positive_re) pos.push_back(complex_json(w));
  json out{{"roots", roots},
           {"positive_re_roots", pos},
           {"linewidths", set.linewidths},
           {"separation", set.separation},
           {"split", set.split},
           {"config_hash", hash_hex(cfg.hash)}};
  std::cout << out.dump(2) << "\n";
  return 0;
}

int run_sweep(const Opts& opts) {
  const ParsedConfig cfg = config_or_builtin(opts, "");
  const Model m = make_model(cfg.params);
  const SweepVar var = parse_var(opts.var);
  const GridSpec g =
      parse_grid(opts.grid.empty() ? "-0.9:0.9:181" : opts.grid);
  const auto dir = ensure_outdir(opts);

  const auto points = sweep_modes(cfg.params, var, g.lo, g.hi, g.n);
  write_sweep_csv(dir / "sweep.csv", cfg.hash, points);
  std::vector<std::string> outputs = {"sweep.csv"};

  if (opts.svg) {
    std::vector<Series> re_series, im_series;
    append_sweep_series(points, opts.var, re_series, im_series);
    write_svg((dir / "sweep.svg").string(),
              {Panel{"mode frequencies", opts.var, "Re root [rad/s]", re_series},
               Panel{"mode linewidths", opts.var, "Im root [rad/s]", im_series}});
    outputs.push_back("sweep.svg");
  }
  write_manifest(dir, "sweep.json", "sweep", cfg, m,
                 json{{"grid", {{"var", opts.var},
                                {"lo", g.lo},
                                {"hi", g.hi},
                                {"n", g.n}}}},
                 outputs);
  return 0;
}

SpectrumKind parse_kind(const std::string& s) {
  if (s == "sq") return SpectrumKind::PosQuad;
  if (s == "saout") return SpectrumKind::OutPhoton;
  if (s == "sxout") return SpectrumKind::OutAmpQuad;
  if (s == "syout") return SpectrumKind::OutPhaseQuad;
  throw ConfigError("--kind accepts sq, saout, sxout or syout, got: " + s);
}

const char* kind_label(SpectrumKind k) {
  switch (k) {
    case SpectrumKind::PosQuad: return "S_Q";
    case SpectrumKind::OutPhoton: return "S_aout";
    case SpectrumKind::OutAmpQuad: return "S_xout";
    case SpectrumKind::OutPhaseQuad: return "S_yout";
  }
  return "";
}

int run_spectra(const Opts& opts) {
  const ParsedConfig cfg = config_or_builtin(opts, "");
  const Model m = make_model(cfg.params);
  const SpectrumKind kind = parse_kind(opts.kind);
  const ThermalModel tm = parse_thermal(opts.thermal);
  const GridSpec g = parse_grid(opts.grid.empty() ? "0.5:1.5:2001" : opts.grid);
  const auto dir = ensure_outdir(opts);

  const Real wm = m.sys.mech_freq;
  const SpectrumSeries series = spectrum_series(
      kind, m, g.lo * wm, g.hi * wm, g.n, tm, opts.scale_gamma_m);
  write_spectrum_csv(dir / "spectra.csv", cfg.hash, series, wm);
  std::vector<std::string> outputs = {"spectra.csv"};

  if (opts.svg) {
    Series s{kind_label(kind), {}, {}};
    for (size_t i = 0; i < series.grid.size(); ++i) {
      s.x.push_back(series.grid[i] / wm);
      s.y.push_back(series.values[i]);
    }
    write_svg((dir / "spectra.svg").string(),
              {Panel{kind_label(kind), "omega / omega_m", kind_label(kind),
                     {s}}});
    outputs.push_back("spectra.svg");
  }
  write_manifest(
      dir, "spectra.json", "spectra", cfg, m,
      json{{"grid", {{"unit", "omega_m"}, {"lo", g.lo}, {"hi", g.hi}, {"n", g.n}}},
           {"kind", opts.kind},
           {"thermal", opts.thermal},
           {"scaled_by_gamma_m", series.scaled_by_gamma_m}},
      outputs);
  return 0;
}

int run_simulate(const Opts& opts) {
  const ParsedConfig cfg = config_or_builtin(opts, "");
  const Model m = make_model(cfg.params);
  const auto dir = ensure_outdir(opts);

  SimConfig sc;
  sc.dt = opts.dt;
  sc.stride = opts.stride;
  sc.n_record = opts.samples;
  sc.rng_seed = opts.seed;
  const Trajectory traj = simulate(m, sc);
  const WelchSpectrum psd = psd_estimate(traj, 0, opts.nperseg);

  const std::vector<std::string> cols = {"omega_rad_s", "omega_over_omega_m",
                                         "value"};
  std::vector<std::vector<std::string>> rows;
  for (int k = 0; k < psd.freq.size(); ++k)
    rows.push_back({format_full(psd.freq(k)),
                    format_full(psd.freq(k) / m.sys.mech_freq),
                    format_full(psd.psd(k))});
  write_csv((dir / "psd.csv").string(), cfg.hash, cols, rows);
  std::vector<std::string> outputs = {"psd.csv"};

  if (opts.dump_traj) {
    const std::vector<std::string> tcols = {"time", "dq", "dp", "dx", "dy"};
    std::vector<std::vector<std::string>> trows;
    for (Eigen::Index i = 0; i < traj.samples.rows(); ++i)
      trows.push_back({format_full(i * traj.dt_record),
                       format_full(traj.samples(i, 0)),
                       format_full(traj.samples(i, 1)),
                       format_full(traj.samples(i, 2)),
                       format_full(traj.samples(i, 3))});
    write_csv((dir / "traj.csv").string(), cfg.hash, tcols, trows);
    outputs.push_back("traj.csv");
  }

  write_manifest(dir, "simulate.json", "simulate", cfg, m,
                 json{{"sim", {{"dt", sc.dt},
                               {"stride", sc.stride},
                               {"n_record", sc.n_record},
                               {"seed", sc.rng_seed},
                               {"nperseg", opts.nperseg},
                               {"n_segments", psd.n_segments}}}},
                 outputs);
  return 0;
}

int run_feedback_check(const Opts& opts) {
  const ParsedConfig cfg = config_or_builtin(opts, "");
  const Real r = cfg.params.bs_reflectivity;
  const Real kappa = cfg.params.cavity_decay;
  const Real omega_l = consts::two_pi * consts::c0 / cfg.params.wavelength;

  json rows = json::array();
  for (const Real gamma : {1e-2, 1e-3, 1e-4}) {
    const ChainFields chain =
        chain_solve(FeedbackChain::small_loss(r, gamma), Complex(1.0, 0.0));
    const Real chain_photon = std::norm(chain.inner_back);

    // Main-text operating point at zero detuning and zero gain, with the
    // drive amplitude eps_l = sqrt(2 kappa / tau) matching a unit input.
    SystemParams p = cfg.params;
    p.opa_gain = 0;
    p.detuning = 0.0;
    p.input_power = consts::hbar * omega_l * kappa / gamma;
    const SteadyState ss = solve_steady_state(make_model(p));

    const Real rel = std::abs(chain_photon - ss.photon_number) / ss.photon_number;
    rows.push_back(json{{"gamma", gamma},
                        {"chain_photon", chain_photon},
                        {"steady_photon", ss.photon_number},
                        {"rel_deviation", rel},
                        {"rel_deviation_over_gamma", rel / gamma}});
  }
  json out{{"bs_reflectivity", r},
           {"rows", rows},
           {"config_hash", hash_hex(cfg.hash)}};
  std::cout << out.dump(2) << "\n";
  return 0;
}

int run_fig_sweep(const Opts& opts, const std::string& fig, SweepVar loop_var,
                  const std::vector<std::pair<std::string, Real>>& curves,
                  const std::string& curve_label_prefix) {
  const ParsedConfig cfg = config_or_builtin(opts, fig);
  const Model base_model = make_model(cfg.params);
  const GridSpec g =
      parse_grid(opts.grid.empty() ? "-0.9:0.9:181" : opts.grid);
  const auto dir = ensure_outdir(opts);

  std::vector<std::string> outputs;
  std::vector<Series> re_series, im_series;
  json curve_info = json::array();
  for (const auto& [tag, value] : curves) {
    const SystemParams p = with_swept(cfg.params, loop_var, value);
    const auto points = sweep_modes(p, SweepVar::Reflectivity, g.lo, g.hi, g.n);
    const std::string name = fig + "_" + tag + ".csv";
    write_sweep_csv(dir / name, cfg.hash, points);
    outputs.push_back(name);
    curve_info.push_back(json{{"tag", tag}, {"value", value}});
    if (opts.svg)
      append_sweep_series(points, curve_label_prefix + tag, re_series,
                          im_series);
  }
  if (opts.svg) {
    const std::string name = fig + ".svg";
    write_svg((dir / name).string(),
              {Panel{"mode frequencies", "r", "Re root [rad/s]", re_series},
               Panel{"mode linewidths", "r", "Im root [rad/s]", im_series}});
    outputs.push_back(name);
  }
  write_manifest(dir, fig + ".json", fig, cfg, base_model,
                 json{{"grid", {{"var", "r"}, {"lo", g.lo}, {"hi", g.hi},
                                {"n", g.n}}},
                      {"curves", curve_info}},
                 outputs);
  return 0;
}

int run_fig_spectra(const Opts& opts, const std::string& fig,
                    SweepVar loop_var,
                    const std::vector<std::pair<std::string, Real>>& curves,
                    const std::string& curve_label_prefix) {
  const ParsedConfig cfg = config_or_builtin(opts, fig);
  const Model base_model = make_model(cfg.params);
  const ThermalModel tm = parse_thermal(opts.thermal);
  const GridSpec g = parse_grid(opts.grid.empty() ? "0.5:1.5:2001" : opts.grid);
  const auto dir = ensure_outdir(opts);
  const Real wm = cfg.params.mech_freq;

  std::vector<std::string> outputs;
  std::vector<Series> sq_series, sa_series;
  json curve_info = json::array();
  for (const auto& [tag, value] : curves) {
    const Model m = make_model(with_swept(cfg.params, loop_var, value));
    const SpectrumSeries sq =
        spectrum_series(SpectrumKind::PosQuad, m, g.lo * wm, g.hi * wm, g.n,
                        tm, /*scale_gamma_m=*/true);
    const SpectrumSeries sa = spectrum_series(SpectrumKind::OutPhoton, m,
                                              g.lo * wm, g.hi * wm, g.n, tm);
    const std::string sq_name = fig + "_sq_" + tag + ".csv";
    const std::string sa_name = fig + "_sa_" + tag + ".csv";
    write_spectrum_csv(dir / sq_name, cfg.hash, sq, wm);
    write_spectrum_csv(dir / sa_name, cfg.hash, sa, wm);
    outputs.push_back(sq_name);
    outputs.push_back(sa_name);
    curve_info.push_back(json{{"tag", tag}, {"value", value}});
    if (opts.svg) {
      Series s1{curve_label_prefix + tag, {}, {}};
      Series s2{curve_label_prefix + tag, {}, {}};
      for (int i = 0; i < g.n; ++i) {
        s1.x.push_back(sq.grid[i] / wm);
        s1.y.push_back(sq.values[i]);
        s2.x.push_back(sa.grid[i] / wm);
        s2.y.push_back(sa.values[i]);
      }
      sq_series.push_back(std::move(s1));
      sa_series.push_back(std::move(s2));
    }
  }
  if (opts.svg) {
    const std::string name = fig + ".svg";
    write_svg((dir / name).string(),
              {Panel{"position spectrum (x gamma_m)", "omega / omega_m",
                     "S_Q gamma_m", sq_series},
               Panel{"output photon spectrum", "omega / omega_m", "S_aout",
                     sa_series}});
    outputs.push_back(name);
  }
  write_manifest(dir, fig + ".json", fig, cfg, base_model,
                 json{{"grid", {{"unit", "omega_m"}, {"lo", g.lo},
                                {"hi", g.hi}, {"n", g.n}}},
                      {"thermal", opts.thermal},
                      {"curves", curve_info}},
                 outputs);
  return 0;
}

int dispatch(const std::string& sub, const Opts& opts) {
  if (sub == "steady") return run_steady(opts);
  if (sub == "stability") return run_stability(opts);
  if (sub == "modes") return run_modes(opts);
  if (sub == "sweep") return run_sweep(opts);
  if (sub == "spectra") return run_spectra(opts);
  if (sub == "simulate") return run_simulate(opts);
  if (sub == "feedback-check") return run_feedback_check(opts);

  if (sub == "fig2" || sub == "fig3" || sub == "fig4") {
    ParsedConfig cfg = config_or_builtin(opts, sub);
    const Real kappa = cfg.params.cavity_decay;
    if (sub == "fig2")
      return run_fig_sweep(opts, "fig2", SweepVar::OpaGain,
                           {{"g00", 0.0}, {"g05", 0.5 * kappa},
                            {"g11", 1.1 * kappa}},
                           "G ");
    if (sub == "fig3")
      return run_fig_sweep(opts, "fig3", SweepVar::InputPower,
                           {{"p20", 2e-3}, {"p40", 4e-3}, {"p69", 6.9e-3}},
                           "P ");
    return run_fig_sweep(opts, "fig4", SweepVar::OpaPhase,
                         {{"thp4", consts::pi / 4}, {"th00", 0.0},
                          {"thm4", -consts::pi / 4}},
                         "theta ");
  }
  if (sub == "fig5")
    return run_fig_spectra(opts, "fig5", SweepVar::Reflectivity,
                           {{"r00", 0.0}, {"r03", 0.3}, {"r05", 0.5},
                            {"r07", 0.7}},
                           "r ");
  if (sub == "fig6") {
    ParsedConfig cfg = config_or_builtin(opts, "fig6");
    const Real kappa = cfg.params.cavity_decay;
    return run_fig_spectra(opts, "fig6", SweepVar::OpaGain,
                           {{"g00", 0.0}, {"g05", 0.5 * kappa},
                            {"g11", 1.1 * kappa}},
                           "G ");
  }
  throw ConfigError("unknown subcommand: " + sub);
}

}  // namespace

std::string builtin_config(const std::string& name) {
  const auto& m = builtin_map();
  const auto it = m.find(name);
  return it == m.end() ? std::string() : it->second;
}

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"numerical laboratory for a coherent-feedback optomechanical "
               "cavity with intracavity parametric gain"};
  app.require_subcommand(1);

  Opts opts;
  const std::vector<std::string> subs = {
      "steady",   "stability", "modes",          "sweep", "spectra",
      "simulate", "feedback-check", "fig2", "fig3",  "fig4",
      "fig5",     "fig6"};
  const char* help[] = {
      "print the steady-state operating point as JSON",
      "print eigenvalues and algebraic stability conditions as JSON",
      "print the normal-mode set as JSON",
      "sweep one variable and write mode branches as CSV",
      "sample one spectrum kind over a frequency grid",
      "integrate the stochastic model and estimate the position PSD",
      "compare the static feedback chain against the steady-state formula",
      "mode branches vs r for three parametric gains",
      "mode branches vs r for three drive powers",
      "mode branches vs r for three pump phases",
      "position and output spectra for four feedback reflectivities",
      "position and output spectra for three parametric gains"};
  for (size_t i = 0; i < subs.size(); ++i) {
    auto* sub = app.add_subcommand(subs[i], help[i]);
    sub->add_option("--config", opts.config, "config file path");
    sub->add_option("--out", opts.out, "output directory (default .)");
    sub->add_option("--grid", opts.grid, "grid spec lo:hi:n");
    sub->add_option("--thermal", opts.thermal,
                    "thermal factor model: coth | hight");
    sub->add_option("--seed", opts.seed, "RNG seed");
    sub->add_flag("--svg", opts.svg, "also write SVG plots");
    if (subs[i] == "sweep")
      sub->add_option("--var", opts.var, "swept variable: r|gain|power|phase");
    if (subs[i] == "spectra") {
      sub->add_option("--kind", opts.kind,
                      "spectrum kind: sq|saout|sxout|syout");
      sub->add_flag("--scale-gamma-m", opts.scale_gamma_m,
                    "scale the position spectrum by gamma_m");
    }
    if (subs[i] == "simulate") {
      sub->add_option("--dt", opts.dt, "raw integrator step [s]");
      sub->add_option("--stride", opts.stride, "record every n-th step");
      sub->add_option("--samples", opts.samples, "recorded samples");
      sub->add_option("--nperseg", opts.nperseg, "segment length for the PSD");
      sub->add_flag("--dump-traj", opts.dump_traj,
                    "also write the recorded trajectory as CSV");
    }
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    return dispatch(app.get_subcommands().front()->get_name(), opts);
  } catch (const ConfigError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const ThresholdError& e) {
    std::cerr << e.what() << "\n";
    return 3;
  } catch (const InstabilityError& e) {
    std::cerr << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return 4;
  }
}

}  // namespace nmslab
