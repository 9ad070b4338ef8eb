// Command-line front end: run, norms, decompose, check, field, monitor.
#include <CLI11.hpp>

#include "lpns/lpns.hpp"

namespace {

double parse_exponent(const std::string& s) { return lpns::detail::parse_real(s, s); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Anisotropic Littlewood-Paley norms, Navier-Stokes runs and inequality checks"};
  app.require_subcommand(1);

  std::string config;
  auto* run = app.add_subcommand("run", "integrate a configured run and write monitor CSV, manifest and snapshots");
  run->add_option("config", config, "key = value configuration file")->required();

  auto* remon = app.add_subcommand("monitor", "recompute the monitor CSV of a run from its stored snapshots");
  std::string remon_out;
  remon->add_option("config", config, "configuration of the original run")->required();
  remon->add_option("--out", remon_out, "output CSV (default <output.dir>/monitor_rerun.csv)");

  std::string field;
  std::vector<std::string> specs;
  auto* norms = app.add_subcommand("norms", "print norms of an AFLD field, 17 significant digits");
  norms->add_option("field", field, "AFLD file")->required();
  norms->add_option("specs", specs, "norm specs, e.g. L2 Linf H:0.5 Htheta:0.03,1.8 B:0,inf,inf Bp:6")->required();

  std::string mode = "iso", p_text = "2";
  double s = 0.0, s_v = 0.0;
  auto* dec = app.add_subcommand("decompose", "CSV of dyadic block Lp norms");
  dec->add_option("field", field, "AFLD file")->required();
  dec->add_option("--mode", mode, "iso | h | v | hv")->capture_default_str();
  dec->add_option("--p", p_text, "block Lebesgue exponent (inf allowed)")->capture_default_str();
  dec->add_option("--s", s, "regularity weight of the weighted column (horizontal for hv)")->capture_default_str();
  dec->add_option("--sv", s_v, "vertical regularity weight for hv")->capture_default_str();

  std::string case_id, cls, variant = "h_ball", csv_path;
  lpns::EnsembleSpec ens;
  std::map<std::string, double> overrides;
  std::vector<std::string> sets;
  bool exact = false;
  auto* check = app.add_subcommand("check", "run one inequality case on a seeded ensemble at N and 2N");
  check->add_option("case", case_id, "case id a..k")->required();
  check->add_option("--class", cls, "ensemble field class (default depends on the case)");
  check->add_option("--seed", ens.seed, "ensemble seed")->capture_default_str();
  check->add_option("--count", ens.count, "ensemble size")->capture_default_str();
  check->add_option("--n", ens.resolution, "base resolution N")->capture_default_str();
  check->add_option("--kmax", ens.kmax, "band radius (0: N/8)")->capture_default_str();
  check->add_option("--variant", variant, "Bernstein variant h_ball | v_ball | h_ring | v_ring")->capture_default_str();
  check->add_option("--set", sets, "parameter override name=value (r theta beta s p q p1 p2 s1 s2 sigma1 sigma2 p_lo p_hi other)");
  check->add_flag("--exact", exact, "assert the constant 1 instead of fitting it");
  check->add_option("--csv", csv_path, "per-member CSV output (default stdout)");

  std::string kind = "sin1", out_path, layout = "half";
  int n = 32;
  std::uint64_t seed = 1;
  auto* fld = app.add_subcommand("field", "write a sample field as AFLD");
  fld->add_option("kind", kind, "sin1 | taylor_green | abc | random | scalar_random")->required();
  fld->add_option("--n", n, "grid size")->capture_default_str();
  fld->add_option("--seed", seed, "seed for random kinds")->capture_default_str();
  fld->add_option("--layout", layout, "half | real")->capture_default_str();
  fld->add_option("--out", out_path, "output path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return lpns::cmd_run(config);
    if (*remon) {
      const lpns::RunConfig cfg = lpns::load_run_config(config);
      const auto recs = lpns::monitor_from_snapshots(cfg.output_dir, cfg.monitor);
      std::ofstream o(remon_out.empty() ? (std::filesystem::path(cfg.output_dir) / "monitor_rerun.csv").string()
                                        : remon_out);
      lpns::write_monitor_csv(o, recs);
      return 0;
    }
    if (*norms) return lpns::cmd_norms(field, specs, std::cout);
    if (*dec)
      return lpns::cmd_decompose(field, lpns::parse_decompose_mode(mode), parse_exponent(p_text), s, s_v, std::cout);
    if (*check) {
      if (case_id.size() != 1) throw lpns::ParseError("case id must be a single letter a..k");
      lpns::InequalityCase c = lpns::default_case(case_id[0]);
      ens.cls = cls.empty() ? lpns::default_class(case_id[0]) : lpns::parse_field_class(cls);
      c.params.variant = lpns::parse_variant(variant);
      if (exact) c.mode = lpns::ConstantMode::exact_one;
      auto& P = c.params;
      std::map<std::string, double*> slots{{"r", &P.r},       {"theta", &P.theta}, {"beta", &P.beta},
                                           {"s", &P.s},       {"p", &P.p},         {"q", &P.q},
                                           {"p1", &P.p1},     {"p2", &P.p2},       {"s1", &P.s1},
                                           {"s2", &P.s2},     {"sigma1", &P.sigma1}, {"sigma2", &P.sigma2},
                                           {"p_lo", &P.p_lo}, {"p_hi", &P.p_hi},   {"other", &P.other}};
      for (const auto& kv : sets) {
        const auto eq = kv.find('=');
        const auto it = eq == std::string::npos ? slots.end() : slots.find(kv.substr(0, eq));
        if (it == slots.end()) throw lpns::ParseError("--set expects name=value with a known name, got '" + kv + "'");
        *it->second = parse_exponent(kv.substr(eq + 1));
      }
      if (csv_path.empty()) return lpns::cmd_check(c, ens, std::cout, std::cerr);
      std::ofstream csv(csv_path);
      return lpns::cmd_check(c, ens, csv, std::cout);
    }
    if (*fld) {
      if (layout != "half" && layout != "real") throw lpns::ParseError("--layout must be half or real");
      return lpns::cmd_field(kind, n, seed, out_path,
                             layout == "real" ? lpns::AfldLayout::real : lpns::AfldLayout::half_spectrum);
    }
  } catch (const lpns::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
