#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "lpns/afld.hpp"
#include "lpns/inequality_lab.hpp"
#include "lpns/initial_data.hpp"
#include "lpns/norm_spec.hpp"
#include "lpns/run_config.hpp"

namespace lpns {

inline constexpr const char* kVersion = "1.0.0";
inline constexpr int kMonitorCsvVersion = 1;

inline std::string format17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

/// Monitor CSV: a version comment, a header naming every record field, then
/// one row per record with 17 significant digits.
inline void write_monitor_csv(std::ostream& o, std::span<const MonitorRecord> records) {
  o << "# lpns monitor csv v" << kMonitorCsvVersion << "\n";
  const auto& cols = monitor_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) o << (i ? "," : "") << cols[i];
  o << "\n";
  for (const auto& m : records) {
    const auto v = monitor_values(m);
    for (std::size_t i = 0; i < v.size(); ++i) o << (i ? "," : "") << format17(v[i]);
    o << "\n";
  }
}

inline VelocityField initial_velocity(const RunConfig& c) {
  const Grid g(c.n);
  switch (c.init) {
    case InitKind::zero: return VelocityField::zero(g);
    case InitKind::taylor_green: return initial_taylor_green(g, c.init_amplitude);
    case InitKind::abc: return initial_abc(g, c.init_amplitude, c.init_amplitude, c.init_amplitude);
    case InitKind::random: {
      RandomSpec s;
      s.seed = c.seed;
      s.kmin = c.init_kmin;
      s.kmax = c.init_kmax;
      s.slope = c.init_slope;
      s.energy = c.init_energy;
      return initial_random_bandlimited(g, s);
    }
  }
  throw InvariantError("unknown init kind");
}

namespace detail {
inline std::string snapshot_name(long step) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "snap_%06ld.afld", step);
  return buf;
}

inline MonitorRecord breakdown_record(const MonitorRecord& last, double time) {
  MonitorRecord m;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  m = last;
  m.time = time;
  for (double* f : {&m.v3_crit, &m.omega_lr, &m.bp_max, &m.excluded_energy, &m.om_half_sq,
                    &m.grad_om_half_sq, &m.d33v3_sq, &m.d3v3_sq, &m.grad_d3v3_sq, &m.forcing51})
    *f = nan;
  m.breakdown = true;
  return m;
}
}  // namespace detail

/// Result of an in-process run, also used by the acceptance suite.
struct RunResult {
  std::vector<MonitorRecord> records;
  EventLog events;
  StateSnapshot final_state;
  bool breakdown = false;
};

/// Integrates the configured run, observing the monitor at its cadence and
/// writing snapshots when `snapshot_dir` is non-empty.
inline RunResult run_simulation(const RunConfig& cfg, const std::string& snapshot_dir = {}) {
  cfg.validate();
  const Grid g(cfg.n);
  VelocityField v0 = initial_velocity(cfg);
  VectorSpectral comps = v0.components();
  for (auto& c : comps) c.enforce_hermitian();
  StateSnapshot s{0.0, VelocityField(std::move(comps)), 0};
  const NavierStokesSolver solver(g, cfg.solver);
  CriterionMonitor monitor(cfg.monitor);
  RunResult out{{}, {}, s, false};
  std::ofstream index;
  if (!snapshot_dir.empty() && cfg.snapshot_every > 0) {
    index.open(std::filesystem::path(snapshot_dir) / "snapshots.csv");
    index << "step,time,file\n";
  }
  const long steps = std::lround(cfg.solver.t_end / cfg.solver.dt);
  for (long n = 0;; ++n) {
    if (n % cfg.monitor.cadence == 0) monitor.observe(s);
    if (index.is_open() && n % cfg.snapshot_every == 0) {
      const std::string name = detail::snapshot_name(n);
      write_afld((std::filesystem::path(snapshot_dir) / name).string(), s.velocity.span());
      index << n << "," << format17(s.time) << "," << name << "\n";
    }
    if (n == steps) break;
    try {
      s = solver.step(s, &out.events);
    } catch (const NumericalBreakdown&) {
      out.records = monitor.history();
      out.records.push_back(detail::breakdown_record(out.records.back(), s.time + cfg.solver.dt));
      out.final_state = s;
      out.breakdown = true;
      return out;
    }
  }
  out.records = monitor.history();
  out.final_state = s;
  out.breakdown = !out.records.empty() && out.records.back().breakdown;
  return out;
}

/// Recomputes the monitor records from the snapshots a run stored in `dir`.
inline std::vector<MonitorRecord> monitor_from_snapshots(const std::string& dir, const MonitorConfig& mc) {
  std::ifstream index(std::filesystem::path(dir) / "snapshots.csv");
  if (!index) throw Error("no snapshots.csv in '" + dir + "'");
  std::string line;
  std::getline(index, line);
  CriterionMonitor monitor(mc);
  int lineno = 1;
  while (std::getline(index, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string step, time, file;
    if (!std::getline(ss, step, ',') || !std::getline(ss, time, ',') || !std::getline(ss, file))
      throw ParseError("snapshots.csv: expected step,time,file", lineno);
    const auto comps = read_afld((std::filesystem::path(dir) / file).string());
    if (comps.size() != 3) throw ParseError("snapshot '" + file + "' is not a velocity field", lineno);
    StateSnapshot s{detail::parse_real(time, line), VelocityField(VectorSpectral{comps[0], comps[1], comps[2]}),
                    detail::config_int(step, lineno, "step")};
    monitor.observe(s);
  }
  return monitor.history();
}

// ---------------------------------------------------------------------------
// Subcommands. Each returns the process exit status.

/// run: writes monitor.csv, events.csv, manifest.txt and optional snapshots
/// into output.dir. Exit 0 on success, 3 when the run broke down.
inline int cmd_run(const std::string& config_path, std::ostream& log = std::cerr) {
  const RunConfig cfg = load_run_config(config_path);
  std::filesystem::create_directories(cfg.output_dir);
  const RunResult res = run_simulation(cfg, cfg.output_dir);
  {
    std::ofstream csv(std::filesystem::path(cfg.output_dir) / "monitor.csv");
    write_monitor_csv(csv, res.records);
  }
  {
    std::ofstream ev(std::filesystem::path(cfg.output_dir) / "events.csv");
    ev << "kind,step,time,value\n";
    for (const auto& e : res.events)
      ev << "cfl_warning," << e.step_index << "," << format17(e.time) << "," << format17(e.value) << "\n";
  }
  {
    std::ofstream man(std::filesystem::path(cfg.output_dir) / "manifest.txt");
    man << "# lpns " << kVersion << ", fftw " << fftw_version << "\n"
        << "# seed " << cfg.seed << ", records " << res.records.size() << ", cfl warnings "
        << res.events.size() << (res.breakdown ? ", numerical breakdown" : "") << "\n"
        << render_run_config(cfg);
  }
  if (!res.events.empty()) log << "warning: " << res.events.size() << " CFL warning(s), see events.csv\n";
  if (res.breakdown) {
    log << "error: numerical breakdown after t = " << format17(res.final_state.time) << "\n";
    return 3;
  }
  return 0;
}

/// norms: one value per norm string, 17 significant digits, one per line.
inline int cmd_norms(const std::string& field_path, const std::vector<std::string>& specs, std::ostream& out) {
  const auto comps = read_afld(field_path);
  std::vector<NormSpec> parsed;
  for (const auto& s : specs) parsed.push_back(parse_norm_spec(s));
  for (const auto& p : parsed) out << format17(evaluate(p, comps)) << "\n";
  return 0;
}

enum class DecomposeMode { iso, h, v, hv };

inline DecomposeMode parse_decompose_mode(const std::string& s) {
  if (s == "iso") return DecomposeMode::iso;
  if (s == "h") return DecomposeMode::h;
  if (s == "v") return DecomposeMode::v;
  if (s == "hv") return DecomposeMode::hv;
  throw ParseError("decompose mode must be iso, h, v or hv, got '" + s + "'");
}

/// decompose: CSV of block Lᵖ norms; `lp` is the plain ‖Δ a‖_{Lᵖ} and
/// `weighted` multiplies it by 2^{js} (2^{ks + ℓs_v} for hv).
inline int cmd_decompose(const std::string& field_path, DecomposeMode mode, double p, double s, double s_v,
                         std::ostream& out) {
  const auto comps = read_afld(field_path);
  if (mode == DecomposeMode::hv) {
    out << "component,k,l,lp,weighted\n";
    for (std::size_t c = 0; c < comps.size(); ++c)
      for (const auto& b : aniso_block_lp_norms(comps[c], p))
        out << c << "," << b.k << "," << b.l << "," << format17(b.value) << ","
            << format17(std::exp2(b.k * s + b.l * s_v) * b.value) << "\n";
    return 0;
  }
  const Direction d = mode == DecomposeMode::iso ? Direction::iso
                      : mode == DecomposeMode::h ? Direction::horizontal
                                                 : Direction::vertical;
  out << "component,j,lp,weighted\n";
  for (std::size_t c = 0; c < comps.size(); ++c)
    for (const auto& [j, v] : block_lp_norms(comps[c], d, p))
      out << c << "," << j << "," << format17(v) << "," << format17(std::exp2(j * s) * v) << "\n";
  return 0;
}

/// check: per-member CSV on `csv`, summary on `summary`; exit 1 iff the
/// case's assertion fails.
inline int cmd_check(const InequalityCase& c, const EnsembleSpec& ens, std::ostream& csv, std::ostream& summary) {
  const CaseReport rep = run_case(c, ens);
  csv << "case,resolution,member,ratio\n";
  for (const auto& r : rep.per_resolution)
    for (std::size_t i = 0; i < r.ratios.size(); ++i)
      csv << c.id << "," << r.resolution << "," << i << "," << format17(r.ratios[i]) << "\n";
  summary << "case (" << c.id << ") " << c.name() << " ["
          << (c.mode == ConstantMode::exact_one ? "exact_one" : "fitted") << "], class "
          << class_name(ens.cls) << ", seed " << ens.seed << ", " << ens.count << " fields\n";
  for (const auto& r : rep.per_resolution)
    summary << "  N = " << r.resolution << ": max ratio " << format17(r.max_ratio) << " (member " << r.argmax
            << ")" << (r.excluded ? ", excluded " + std::to_string(r.excluded) : "") << "\n";
  summary << "  growth N -> 2N: " << format17(rep.growth) << "\n"
          << (rep.passed ? "PASS" : "FAIL") << ": " << rep.message << "\n";
  return rep.passed ? 0 : 1;
}

/// field: writes a sample field. Kinds: sin1 (scalar sin x1), taylor_green,
/// abc, random (divergence-free, seeded), scalar_random (member 0 of a
/// bandlimited_random ensemble).
inline int cmd_field(const std::string& kind, int n, std::uint64_t seed, const std::string& path,
                     AfldLayout layout = AfldLayout::half_spectrum) {
  const Grid g(n);
  std::vector<SpectralField> comps;
  if (kind == "sin1") {
    comps.push_back(forward(RealField::sample(g, [](double x1, double, double) { return std::sin(x1); })));
  } else if (kind == "taylor_green" || kind == "abc" || kind == "random") {
    RunConfig c;
    c.n = n;
    c.seed = seed;
    c.init = kind == "taylor_green" ? InitKind::taylor_green : kind == "abc" ? InitKind::abc : InitKind::random;
    const VelocityField v = initial_velocity(c);
    comps.assign(v.components().begin(), v.components().end());
  } else if (kind == "scalar_random") {
    EnsembleSpec e;
    e.seed = seed;
    e.count = 1;
    e.resolution = n;
    comps = make_ensemble(e).front().comps;
  } else {
    throw ParseError("field kind must be sin1, taylor_green, abc, random or scalar_random, got '" + kind + "'");
  }
  write_afld(path, comps, layout);
  return 0;
}

}  // namespace lpns
