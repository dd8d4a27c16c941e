#ifndef PEAKON_CLI_SCENARIO_HPP_
#define PEAKON_CLI_SCENARIO_HPP_

// Scenario plumbing for the peakon_lab tool: a flat key=value config, an
// initial-condition mini-language and the per-mode runners that write CSV
// snapshots and a summary file.
//
// Config keys: mode, ic, bump, t, dt, nchars, threshold, out, a, c, dynamics.
// Lines are `key = value`; `#` starts a comment.
//
// ic grammar: signed sum of terms `[coef*]basis`, basis one of sin, cos,
// sinK, cosK (K a wavenumber) or a bare number for the constant mode;
// `zero` is the empty profile. Example: 0.01*sin - 0.5*cos3 + 0.2

#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "peakon/energetics.hpp"
#include "peakon/initial_condition.hpp"
#include "peakon/kernel.hpp"
#include "peakon/linear_dynamics.hpp"
#include "peakon/nonlinear_dynamics.hpp"
#include "peakon/quadrature.hpp"
#include "peakon/state.hpp"
#include "peakon/wave_families.hpp"

namespace peakon::cli {

enum class Mode { linear_exact, linear_ode, nonlinear, energies, classify };

inline const char* to_string(Mode m) {
  switch (m) {
    case Mode::linear_exact: return "linear-exact";
    case Mode::linear_ode: return "linear-ode";
    case Mode::nonlinear: return "nonlinear";
    case Mode::energies: return "energies";
    case Mode::classify: return "classify";
  }
  return "unknown";
}

inline Mode parse_mode(const std::string& s) {
  if (s == "linear-exact") return Mode::linear_exact;
  if (s == "linear-ode") return Mode::linear_ode;
  if (s == "nonlinear") return Mode::nonlinear;
  if (s == "energies") return Mode::energies;
  if (s == "classify") return Mode::classify;
  throw std::invalid_argument("unknown mode '" + s + "'");
}

struct ScenarioConfig {
  Mode mode = Mode::linear_exact;
  std::string ic_text = "sin";
  double bump = 0.0;
  std::vector<double> t_samples{0.0, 1.0, 2.0, 4.0};
  double dt = 1e-3;
  std::size_t n_chars = 257;
  double slope_threshold = 1e6;
  std::string output_dir = "peakon_out";
  double a = 0.0;
  double c = kPeakHeight;
  bool nonlinear_energies = false;  // energies mode: follow the full dynamics

  void validate() const {
    if (t_samples.empty()) throw std::invalid_argument("t: need at least one sample time");
    for (std::size_t i = 0; i < t_samples.size(); ++i) {
      if (!(t_samples[i] >= 0.0) || !std::isfinite(t_samples[i])) {
        throw std::invalid_argument("t: sample times must be finite and non-negative");
      }
      if (i > 0 && !(t_samples[i] > t_samples[i - 1])) throw std::invalid_argument("t: sample times must increase");
    }
    if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("dt: must be positive");
    if (n_chars < 16) throw std::invalid_argument("nchars: need at least 16");
    if (!(slope_threshold > 0.0)) throw std::invalid_argument("threshold: must be positive");
    if (output_dir.empty()) throw std::invalid_argument("out: empty output directory");
  }
};

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

inline double parse_double(const std::string& s) {
  const std::string t = trim(s);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a number: '" + t + "'");
  }
  if (used != t.size() || !std::isfinite(v)) throw std::invalid_argument("not a finite number: '" + t + "'");
  return v;
}

inline std::size_t parse_count(const std::string& s) {
  const double v = parse_double(s);
  if (v < 0.0 || v != std::floor(v) || v > 1e9) throw std::invalid_argument("not a count: '" + trim(s) + "'");
  return static_cast<std::size_t>(v);
}

inline std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_double(item));
  return out;
}

inline void add_mode(std::vector<double>& coeffs, std::size_t k, double amp) {
  if (coeffs.size() <= k) coeffs.resize(k + 1, 0.0);
  coeffs[k] += amp;
}

}  // namespace detail

/// Parses the ic mini-language; the bump amplitude is supplied separately.
inline InitialCondition parse_initial_condition(const std::string& text, double bump = 0.0) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  }
  if (s.empty()) throw std::invalid_argument("ic: empty expression");
  std::vector<double> cos_c, sin_c;
  if (s != "zero") {
    // split into signed terms; a sign right after e/E or * belongs to a number
    std::vector<std::string> terms;
    std::string cur;
    for (std::size_t i = 0; i < s.size(); ++i) {
      const char ch = s[i];
      const bool sign = ch == '+' || ch == '-';
      const bool glued = i > 0 && (s[i - 1] == 'e' || s[i - 1] == 'E' || s[i - 1] == '*');
      if (sign && !cur.empty() && !glued) {
        terms.push_back(cur);
        cur.clear();
      }
      cur += ch;
    }
    terms.push_back(cur);
    for (std::string term : terms) {
      double sign = 1.0;
      while (!term.empty() && (term[0] == '+' || term[0] == '-')) {
        if (term[0] == '-') sign = -sign;
        term.erase(0, 1);
      }
      if (term.empty()) throw std::invalid_argument("ic: dangling sign in '" + text + "'");
      double coef = 1.0;
      std::string basis = term;
      if (const auto star = term.find('*'); star != std::string::npos) {
        coef = detail::parse_double(term.substr(0, star));
        basis = term.substr(star + 1);
      }
      coef *= sign;
      if (basis.rfind("sin", 0) == 0 || basis.rfind("cos", 0) == 0) {
        const std::string k_text = basis.substr(3);
        const std::size_t k = k_text.empty() ? 1 : detail::parse_count(k_text);
        if (basis[0] == 's') {
          if (k == 0) throw std::invalid_argument("ic: sin0 is identically zero");
          detail::add_mode(sin_c, k, coef);
        } else {
          detail::add_mode(cos_c, k, coef);
        }
      } else if (term.find('*') == std::string::npos) {
        detail::add_mode(cos_c, 0, sign * detail::parse_double(basis));
      } else {
        throw std::invalid_argument("ic: unknown basis '" + basis + "'");
      }
    }
  }
  return InitialCondition(std::move(cos_c), std::move(sin_c), bump);
}

/// Applies one setting; `where` prefixes error messages.
inline void apply_setting(ScenarioConfig& cfg, const std::string& key_in, const std::string& value,
                          const std::string& where) {
  const std::string key = detail::trim(key_in);
  try {
    if (key == "mode") {
      cfg.mode = parse_mode(detail::trim(value));
    } else if (key == "ic") {
      cfg.ic_text = detail::trim(value);
      parse_initial_condition(cfg.ic_text);
    } else if (key == "bump") {
      cfg.bump = detail::parse_double(value);
    } else if (key == "t") {
      cfg.t_samples = detail::parse_list(value);
    } else if (key == "dt") {
      cfg.dt = detail::parse_double(value);
    } else if (key == "nchars") {
      cfg.n_chars = detail::parse_count(value);
    } else if (key == "threshold") {
      cfg.slope_threshold = detail::parse_double(value);
    } else if (key == "out") {
      cfg.output_dir = detail::trim(value);
    } else if (key == "a") {
      cfg.a = detail::parse_double(value);
    } else if (key == "c") {
      const std::string v = detail::trim(value);
      cfg.c = v == "M" ? kPeakHeight : detail::parse_double(v);
    } else if (key == "dynamics") {
      const std::string v = detail::trim(value);
      if (v != "linear" && v != "nonlinear") throw std::invalid_argument("expected linear or nonlinear");
      cfg.nonlinear_energies = v == "nonlinear";
    } else {
      throw std::invalid_argument("unknown key");
    }
  } catch (const std::exception& e) {
    throw std::invalid_argument(where + ": key '" + key + "': " + e.what());
  }
}

inline void apply_config_text(ScenarioConfig& cfg, const std::string& text, const std::string& source = "config") {
  std::stringstream ss(text);
  std::string line;
  std::size_t number = 0;
  while (std::getline(ss, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (detail::trim(line).empty()) continue;
    const auto eq = line.find('=');
    const std::string where = source + " line " + std::to_string(number);
    if (eq == std::string::npos) throw std::invalid_argument(where + ": expected key = value");
    apply_setting(cfg, line.substr(0, eq), line.substr(eq + 1), where);
  }
}

inline void apply_config_file(ScenarioConfig& cfg, const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  apply_config_text(cfg, buf.str(), path);
}

// ---------------------------------------------------------------- output

inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

/// File name for the snapshot at time t, e.g. v_t0.5.csv.
inline std::string snapshot_name(double t) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "v_t%g.csv", t);
  return buf;
}

/// Header and rows s, X, V, U, W over [-2 pi, 2 pi]: the fundamental data
/// shifted by -2 pi (W shifted by -2 pi vbar), then the data itself.
inline std::string snapshot_csv(const CharacteristicState& st) {
  std::string out = "s,X,V,U,W\n";
  auto row = [&](double s, double x, double v, double u, double w) {
    out += format_double(s);
    out += ',';
    out += format_double(x);
    out += ',';
    out += format_double(v);
    out += ',';
    out += format_double(u);
    out += ',';
    out += format_double(w);
    out += '\n';
  };
  for (std::size_t j = 0; j < st.size(); ++j) {
    row(st.s[j] - two_pi, st.X[j] - two_pi, st.V[j], st.U[j], st.W[j] - two_pi * st.vbar);
  }
  for (std::size_t j = 0; j < st.size(); ++j) row(st.s[j], st.X[j], st.V[j], st.U[j], st.W[j]);
  return out;
}

struct SnapshotTable {
  std::vector<double> s, X, V, U, W;
};

/// Reads a snapshot CSV back; with `fundamental_only` only the unshifted rows.
inline SnapshotTable read_snapshot_csv(const std::string& path, bool fundamental_only = true) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  std::string line;
  std::getline(in, line);
  if (line != "s,X,V,U,W") throw std::runtime_error("unexpected CSV header in '" + path + "'");
  SnapshotTable all;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    double v[5];
    for (double& x : v) {
      if (!std::getline(ss, cell, ',')) throw std::runtime_error("short CSV row in '" + path + "'");
      x = std::stod(cell);
    }
    all.s.push_back(v[0]);
    all.X.push_back(v[1]);
    all.V.push_back(v[2]);
    all.U.push_back(v[3]);
    all.W.push_back(v[4]);
  }
  if (!fundamental_only) return all;
  const std::size_t half = all.s.size() / 2;
  SnapshotTable t;
  auto tail = [&](const std::vector<double>& a, std::vector<double>& b) {
    b.assign(a.begin() + static_cast<std::ptrdiff_t>(half), a.end());
  };
  tail(all.s, t.s);
  tail(all.X, t.X);
  tail(all.V, t.V);
  tail(all.U, t.U);
  tail(all.W, t.W);
  return t;
}

struct ScenarioResult {
  int exit_code = 0;  // 0 completed, 2 blow-up detected
  std::vector<std::string> files;
  std::string summary;
};

namespace detail {

inline void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

inline void line(std::string& out, const std::string& key, const std::string& value) {
  out += key;
  out += " = ";
  out += value;
  out += '\n';
}

inline void line(std::string& out, const std::string& key, double value) { line(out, key, format_double(value)); }

inline std::string energy_header() { return "t,E_v,F_v,P,S,E_u,F_u,v_peak,vbar,combo_linear,combo_nonlinear"; }

inline std::string energy_row(const EnergyReport& r) {
  std::string s = format_double(r.t);
  for (double x : {r.E_v, r.F_v, r.P, r.S, r.E_u, r.F_u, r.v_peak, r.vbar, r.combo_linear, r.combo_nonlinear}) {
    s += ',';
    s += format_double(x);
  }
  return s;
}

inline void drift_lines(std::string& out, const std::vector<EnergyReport>& reports) {
  const ConservationDrifts d = check_conserved(reports);
  line(out, "drift.combo_linear", d.combo_linear);
  line(out, "drift.combo_nonlinear", d.combo_nonlinear);
  line(out, "drift.E_u", d.E_u);
  line(out, "drift.F_u", d.F_u);
  line(out, "drift.vbar", d.vbar);
}

}  // namespace detail

/// Runs one scenario and writes its files under cfg.output_dir.
inline ScenarioResult run_scenario(const ScenarioConfig& cfg) {
  cfg.validate();
  namespace fs = std::filesystem;
  const fs::path dir(cfg.output_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw std::runtime_error("cannot create output directory '" + cfg.output_dir + "'");

  ScenarioResult result;
  std::string& sum = result.summary;
  detail::line(sum, "mode", to_string(cfg.mode));

  auto emit = [&](const std::string& name, const std::string& text) {
    detail::write_text(dir / name, text);
    result.files.push_back((dir / name).string());
  };

  if (cfg.mode == Mode::classify) {
    const WaveFamily w = classify(cfg.a, cfg.c);
    std::string roots;
    for (std::size_t i = 0; i < w.critical_points.size(); ++i) {
      if (i) roots += ';';
      roots += format_double(w.critical_points[i]);
    }
    const std::string table = "a,c,family,critical_points,degenerate\n" + format_double(w.a) + "," +
                              format_double(w.c) + "," + to_string(w.family) + "," + roots + "," +
                              (w.degenerate ? "true" : "false") + "\n";
    emit("classify.csv", table);
    detail::line(sum, "a", w.a);
    detail::line(sum, "c", w.c);
    detail::line(sum, "family", to_string(w.family));
    detail::line(sum, "critical_points", roots);
    detail::line(sum, "degenerate", w.degenerate ? "true" : "false");
    emit("summary.txt", sum);
    return result;
  }

  const InitialCondition ic = parse_initial_condition(cfg.ic_text, cfg.bump);
  detail::line(sum, "ic", cfg.ic_text);
  detail::line(sum, "bump", cfg.bump);
  detail::line(sum, "v0_at_peak", ic.at_peak());
  detail::line(sum, "v0_slope_right", ic.slope_right());
  detail::line(sum, "v0_slope_left", ic.slope_left());
  detail::line(sum, "vbar", ic.mean());
  detail::line(sum, "nchars", static_cast<double>(cfg.n_chars));
  if (cfg.mode != Mode::linear_exact) detail::line(sum, "dt", cfg.dt);

  const Grid grid = Grid::chebyshev(cfg.n_chars - 1);
  std::vector<CharacteristicState> snaps;
  std::vector<EnergyReport> reports;
  RecordPlan plan;
  plan.sample_times = cfg.t_samples;
  const double t_end = cfg.t_samples.back();

  const bool nonlinear = cfg.mode == Mode::nonlinear || (cfg.mode == Mode::energies && cfg.nonlinear_energies);
  if (cfg.mode == Mode::linear_exact) {
    for (double t : cfg.t_samples) snaps.push_back(exact_state(t, ic, grid));
  } else if (!nonlinear) {
    snaps = integrate_linear(ic, t_end, cfg.dt, cfg.n_chars, plan).states;
  } else {
    NonlinearOptions opts;
    opts.slope_threshold = cfg.slope_threshold;
    opts.record = plan;
    NonlinearRun run = integrate_nonlinear(ic, t_end, cfg.dt, cfg.n_chars, opts);
    for (const auto& st : run.trajectory.states) {
      for (double t : cfg.t_samples) {
        if (st.t == t) snaps.push_back(st);
      }
    }
    const BlowupReport& r = run.report;
    const bool blew = r.status == RunStatus::blew_up;
    detail::line(sum, "status", blew ? "blew_up" : "completed");
    detail::line(sum, "t_stop", r.t_stop);
    detail::line(sum, "max_abs_slope", r.max_abs_slope);
    detail::line(sum, "t_slope_one", r.t_slope_one);
    detail::line(sum, "forcing_bound", r.forcing_bound);
    detail::line(sum, "riccati_blowup_time", riccati_blowup_time(ic.slope_right(), r.forcing_bound));
    if (blew) {
      result.exit_code = 2;
      // keep the last state reached as a final snapshot
      const auto& last = run.trajectory.back();
      if (snaps.empty() || snaps.back().t != last.t) snaps.push_back(last);
    }
  }

  for (const auto& st : snaps) reports.push_back(energies(st, grid));

  if (cfg.mode == Mode::energies) {
    const H1Law law = h1_law(ic);
    std::string table = detail::energy_header() + (nonlinear ? "\n" : ",E_pred\n");
    for (const auto& r : reports) {
      table += detail::energy_row(r);
      if (!nonlinear) table += "," + format_double(law.energy(r.t));
      table += '\n';
    }
    emit("energies.csv", table);
  } else {
    for (const auto& st : snaps) emit(snapshot_name(st.t), snapshot_csv(st));
  }

  sum += "# t,u_right,u_left,E_v,E_u,F_u,combo_linear,combo_nonlinear\n";
  for (std::size_t i = 0; i < snaps.size(); ++i) {
    const auto& st = snaps[i];
    const auto& r = reports[i];
    std::string row = format_double(st.t);
    for (double x : {st.U.front(), st.U.back(), r.E_v, r.E_u, r.F_u, r.combo_linear, r.combo_nonlinear}) {
      row += ',';
      row += format_double(x);
    }
    detail::line(sum, "sample." + std::to_string(i), row);
  }
  if (cfg.mode == Mode::linear_exact || cfg.mode == Mode::linear_ode) {
    const PeakSlopes p = peak_slopes_exact(snaps.back().t, ic);
    detail::line(sum, "exact_slope_right_at_end", p.right);
    detail::line(sum, "exact_slope_left_at_end", p.left);
  }
  detail::drift_lines(sum, reports);
  emit("summary.txt", sum);
  return result;
}

}  // namespace peakon::cli

#endif  // PEAKON_CLI_SCENARIO_HPP_
