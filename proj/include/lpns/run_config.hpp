#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "lpns/ensemble.hpp"
#include "lpns/monitor.hpp"
#include "lpns/norm_spec.hpp"

namespace lpns {

enum class InitKind { zero, taylor_green, abc, random };

inline const char* init_name(InitKind k) {
  switch (k) {
    case InitKind::zero: return "zero";
    case InitKind::taylor_green: return "taylor_green";
    case InitKind::abc: return "abc";
    case InitKind::random: return "random";
  }
  return "?";
}

/// Everything a `run` needs. Text form: one `key = value` per line, `#`
/// starts a comment, unknown or repeated keys are errors.
struct RunConfig {
  int n = 32;
  SolverConfig solver;
  MonitorConfig monitor;
  InitKind init = InitKind::random;
  std::uint64_t seed = 1;
  double init_amplitude = 1.0;  ///< taylor_green / abc amplitude
  double init_kmin = 1.0;
  double init_kmax = 4.0;
  double init_energy = 0.5;
  double init_slope = -5.0 / 3.0;
  std::string output_dir = "out";
  int snapshot_every = 0;  ///< steps between AFLD snapshots; 0 = none

  void validate() const {
    Grid g(n);
    solver.validate();
    monitor.validate();
    if (snapshot_every < 0) throw DomainError("output.snapshot_every", snapshot_every, "[0, inf[", "RunConfig");
    if (output_dir.empty()) throw ParseError("output.dir must not be empty");
  }
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline double config_real(const std::string& v, int line, const std::string& key) {
  try {
    return parse_real(v, key);
  } catch (const ParseError&) {
    throw ParseError(key + ": '" + v + "' is not a number", line);
  }
}

inline long config_int(const std::string& v, int line, const std::string& key) {
  long out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size() || v.empty())
    throw ParseError(key + ": '" + v + "' is not an integer", line);
  return out;
}

}  // namespace detail

inline RunConfig parse_run_config(std::istream& in) {
  RunConfig c;
  std::map<std::string, int> seen;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string text = detail::trim(raw.substr(0, hash));
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw ParseError("expected 'key = value'", line);
    const std::string key = detail::trim(text.substr(0, eq));
    const std::string val = detail::trim(text.substr(eq + 1));
    if (val.empty()) throw ParseError(key + ": missing value", line);
    if (auto it = seen.find(key); it != seen.end())
      throw ParseError("duplicate key '" + key + "' (first set on line " + std::to_string(it->second) + ")", line);
    seen[key] = line;
    auto real = [&] { return detail::config_real(val, line, key); };
    auto integer = [&] { return detail::config_int(val, line, key); };
    try {
      if (key == "grid.n") c.n = int(integer());
      else if (key == "solver.nu") c.solver.nu = real();
      else if (key == "solver.dt") c.solver.dt = real();
      else if (key == "solver.t_end") c.solver.t_end = real();
      else if (key == "solver.integrator") {
        if (val == "etdrk4") c.solver.integrator = IntegratorKind::etdrk4;
        else if (val == "ifrk4") c.solver.integrator = IntegratorKind::ifrk4;
        else throw ParseError("solver.integrator: expected etdrk4 or ifrk4, got '" + val + "'", line);
      } else if (key == "solver.dealias") {
        if (val == "three_halves") c.solver.dealias = Dealias::three_halves_pad;
        else if (val == "two_thirds") c.solver.dealias = Dealias::two_thirds;
        else throw ParseError("solver.dealias: expected three_halves or two_thirds, got '" + val + "'", line);
      } else if (key == "monitor.p") c.monitor.p = real();
      else if (key == "monitor.r") c.monitor.r = real();
      else if (key == "monitor.theta") c.monitor.theta = real();
      else if (key == "monitor.e") {
        std::istringstream ss(val);
        std::string tok;
        std::vector<double> e;
        while (ss >> tok) e.push_back(detail::config_real(tok, line, key));
        if (e.size() != 3) throw ParseError("monitor.e: expected three reals", line);
        c.monitor.e = {e[0], e[1], e[2]};
      } else if (key == "monitor.cadence") c.monitor.cadence = int(integer());
      else if (key == "init.kind") {
        if (val == "zero") c.init = InitKind::zero;
        else if (val == "taylor_green") c.init = InitKind::taylor_green;
        else if (val == "abc") c.init = InitKind::abc;
        else if (val == "random") c.init = InitKind::random;
        else throw ParseError("init.kind: expected zero, taylor_green, abc or random, got '" + val + "'", line);
      } else if (key == "init.seed") {
        const long s = integer();
        if (s < 0) throw ParseError("init.seed must be non-negative", line);
        c.seed = std::uint64_t(s);
      } else if (key == "init.amplitude") c.init_amplitude = real();
      else if (key == "init.kmin") c.init_kmin = real();
      else if (key == "init.kmax") c.init_kmax = real();
      else if (key == "init.energy") c.init_energy = real();
      else if (key == "init.slope") c.init_slope = real();
      else if (key == "output.dir") c.output_dir = val;
      else if (key == "output.snapshot_every") c.snapshot_every = int(integer());
      else throw ParseError("unknown key '" + key + "'", line);
    } catch (const DomainError& e) {
      throw ParseError(e.what(), line);
    }
  }
  c.solver.monitor_every = c.monitor.cadence;
  try {
    c.validate();
  } catch (const DomainError& e) {
    const auto it = seen.find(e.parameter().rfind("solver.", 0) == 0 || e.parameter().rfind("output.", 0) == 0
                                  ? e.parameter()
                                  : "monitor." + e.parameter());
    throw ParseError(e.what(), it != seen.end() ? it->second : 0);
  } catch (const InvariantError& e) {
    throw ParseError(std::string("grid.n: ") + e.what(), seen.count("grid.n") ? seen["grid.n"] : 0);
  }
  return c;
}

inline RunConfig load_run_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error("cannot open config '" + path + "'");
  return parse_run_config(f);
}

/// Canonical `key = value` rendering; parsing it gives back the same config.
inline std::string render_run_config(const RunConfig& c) {
  std::ostringstream o;
  auto num = [](double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return std::string(buf);
  };
  o << "grid.n = " << c.n << "\n"
    << "solver.nu = " << num(c.solver.nu) << "\n"
    << "solver.dt = " << num(c.solver.dt) << "\n"
    << "solver.t_end = " << num(c.solver.t_end) << "\n"
    << "solver.integrator = " << (c.solver.integrator == IntegratorKind::etdrk4 ? "etdrk4" : "ifrk4") << "\n"
    << "solver.dealias = " << (c.solver.dealias == Dealias::three_halves_pad ? "three_halves" : "two_thirds") << "\n"
    << "monitor.p = " << num(c.monitor.p) << "\n"
    << "monitor.r = " << num(c.monitor.r) << "\n"
    << "monitor.theta = " << num(c.monitor.theta) << "\n"
    << "monitor.e = " << num(c.monitor.e[0]) << " " << num(c.monitor.e[1]) << " " << num(c.monitor.e[2]) << "\n"
    << "monitor.cadence = " << c.monitor.cadence << "\n"
    << "init.kind = " << init_name(c.init) << "\n"
    << "init.seed = " << c.seed << "\n"
    << "init.amplitude = " << num(c.init_amplitude) << "\n"
    << "init.kmin = " << num(c.init_kmin) << "\n"
    << "init.kmax = " << num(c.init_kmax) << "\n"
    << "init.energy = " << num(c.init_energy) << "\n"
    << "init.slope = " << num(c.init_slope) << "\n"
    << "output.dir = " << c.output_dir << "\n"
    << "output.snapshot_every = " << c.snapshot_every << "\n";
  return o.str();
}

}  // namespace lpns
