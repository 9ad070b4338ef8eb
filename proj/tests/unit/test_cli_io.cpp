#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "unit/test_util.hpp"

using namespace lpns;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("lpns_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), {}};
}

RunConfig parse(const std::string& text) {
  std::istringstream in(text);
  return parse_run_config(in);
}

int error_line(const std::string& text) {
  try {
    parse(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return -1;
}

RunConfig small_run(const fs::path& dir, InitKind init) {
  RunConfig c;
  c.n = 16;
  c.init = init;
  c.seed = 5;
  c.solver.nu = 0.05;
  c.solver.dt = 5e-3;
  c.solver.t_end = 0.05;
  c.monitor.cadence = 2;
  c.solver.monitor_every = 2;
  c.snapshot_every = 2;
  c.output_dir = dir.string();
  return c;
}

void write_config(const fs::path& path, const RunConfig& c) {
  std::ofstream(path) << render_run_config(c);
}

}  // namespace

TEST(Afld, HalfSpectrumRoundTripIsBitExact) {
  const Grid g(8, 10, 12);
  const VelocityField v = test::random_velocity(Grid(12), 31);
  std::vector<SpectralField> comps{forward(test::noise(g, 1)), forward(test::noise(g, 2))};
  for (auto& c : comps) c.enforce_hermitian();
  for (const auto& set : {comps, std::vector<SpectralField>(v.components().begin(), v.components().end())}) {
    AfldHeader h;
    const auto bytes = encode_afld(set, AfldLayout::half_spectrum);
    const auto back = decode_afld(bytes, &h);
    EXPECT_EQ(bytes.size(), AfldHeader::kBytes + 8 * h.payload_doubles());
    ASSERT_EQ(back.size(), set.size());
    for (std::size_t c = 0; c < set.size(); ++c)
      for (std::size_t i = 0; i < set[c].size(); ++i) ASSERT_EQ(back[c][i], set[c][i]) << c << " " << i;
  }
}

TEST(Afld, SampleRoundTripIsBitExact) {
  const Grid g(8, 10, 12);
  const std::vector<RealField> f{test::noise(g, 3), test::noise(g, 4), test::noise(g, 5)};
  const auto back = decode_afld_samples(encode_afld_samples(f));
  ASSERT_EQ(back.size(), 3u);
  for (int c = 0; c < 3; ++c)
    for (std::size_t i = 0; i < f[c].size(); ++i) ASSERT_EQ(back[c][i], f[c][i]);
  // a real-layout file also decodes as coefficients
  const auto coeff = decode_afld(encode_afld_samples(f));
  EXPECT_LT(test::max_abs_diff(inverse(coeff[1]), f[1]), 1e-13);
}

TEST(Afld, HeaderLayout) {
  const Grid g(8, 10, 12);
  const auto bytes = encode_afld(std::vector<SpectralField>{SpectralField(g)}, AfldLayout::half_spectrum);
  EXPECT_EQ(std::string(bytes.begin(), bytes.begin() + 4), "AFLD");
  EXPECT_EQ(bytes[4], 1);  // version, little endian
  EXPECT_EQ(bytes[5], 0);
  EXPECT_EQ(bytes[6], 8);
  EXPECT_EQ(bytes[10], 10);
  EXPECT_EQ(bytes[14], 12);
  EXPECT_EQ(bytes[18], 1);  // ncomp
  EXPECT_EQ(bytes[20], 1);  // half spectrum
  EXPECT_EQ(bytes.size(), 21u + 8u * 2 * 8 * 10 * 7);
}

TEST(Afld, RejectsMalformedInput) {
  const Grid g(8);
  auto bytes = encode_afld(std::vector<SpectralField>{forward(test::noise(g, 6))}, AfldLayout::half_spectrum);
  auto truncated = bytes;
  truncated.pop_back();
  EXPECT_THROW(decode_afld(truncated), ParseError);
  auto longer = bytes;
  longer.push_back(0);
  EXPECT_THROW(decode_afld(longer), ParseError);
  auto magic = bytes;
  magic[0] = 'X';
  EXPECT_THROW(decode_afld(magic), ParseError);
  auto version = bytes;
  version[4] = 2;
  EXPECT_THROW(decode_afld(version), ParseError);
  auto layout = bytes;
  layout[20] = 7;
  EXPECT_THROW(decode_afld(layout), ParseError);
  EXPECT_THROW(decode_afld(std::vector<unsigned char>(10, 0)), ParseError);
  EXPECT_THROW(read_afld("/nonexistent/field.afld"), Error);
}

TEST(RunConfigParse, ReadsEveryKey) {
  const RunConfig c = parse(
      "# comment\n"
      "grid.n = 24\n"
      "solver.nu = 0.01   # trailing\n"
      "solver.dt = 2e-3\n"
      "solver.t_end = 0.5\n"
      "solver.integrator = ifrk4\n"
      "solver.dealias = two_thirds\n"
      "monitor.p = 5\n"
      "monitor.r = 1.7\n"
      "monitor.theta = 0.05\n"
      "monitor.e = 0 1 0\n"
      "monitor.cadence = 3\n"
      "init.kind = abc\n"
      "init.seed = 9\n"
      "init.amplitude = 2\n"
      "output.dir = results\n"
      "output.snapshot_every = 10\n");
  EXPECT_EQ(c.n, 24);
  EXPECT_EQ(c.solver.nu, 0.01);
  EXPECT_EQ(c.solver.integrator, IntegratorKind::ifrk4);
  EXPECT_EQ(c.solver.dealias, Dealias::two_thirds);
  EXPECT_EQ(c.monitor.e[1], 1.0);
  EXPECT_EQ(c.monitor.cadence, 3);
  EXPECT_EQ(c.solver.monitor_every, 3);
  EXPECT_EQ(c.init, InitKind::abc);
  EXPECT_EQ(c.seed, 9u);
  EXPECT_EQ(c.output_dir, "results");
  EXPECT_EQ(c.snapshot_every, 10);
}

TEST(RunConfigParse, ErrorsCarryTheLine) {
  EXPECT_EQ(error_line("grid.n = 16\nsolver.nu = 0.1\nbogus = 3\n"), 3);
  EXPECT_EQ(error_line("grid.n = 16\ngrid.n = 32\n"), 2);
  EXPECT_EQ(error_line("\n\nsolver.nu\n"), 3);
  EXPECT_EQ(error_line("solver.nu = abc\n"), 1);
  EXPECT_EQ(error_line("solver.nu = 1\nsolver.integrator = euler\n"), 2);
  EXPECT_EQ(error_line("# x\nmonitor.r = 2.5\n"), 2);
  EXPECT_EQ(error_line("monitor.e = 1 0\n"), 1);
  EXPECT_EQ(error_line("solver.dt = 1e-3\nsolver.nu = -1\n"), 2);
  EXPECT_EQ(error_line("grid.n = 15\n"), 1);
  EXPECT_EQ(error_line("grid.n = 16\n"), -1);
}

TEST(RunConfigParse, RenderRoundTrips) {
  RunConfig c;
  c.n = 20;
  c.solver.nu = 1.0 / 3.0;
  c.solver.dt = 1e-3 / 7;
  c.monitor.theta = 0.031;
  c.init = InitKind::taylor_green;
  c.init_energy = 0.1;
  c.snapshot_every = 4;
  const RunConfig d = parse(render_run_config(c));
  EXPECT_EQ(render_run_config(d), render_run_config(c));
  EXPECT_EQ(d.solver.nu, c.solver.nu);
  EXPECT_EQ(d.solver.dt, c.solver.dt);
}

TEST(NormSpec, Parsing) {
  EXPECT_TRUE(std::holds_alternative<norm::Lp>(parse_norm_spec("L2")));
  EXPECT_EQ(std::get<norm::Lp>(parse_norm_spec("Linf")).p, kInf);
  EXPECT_EQ(std::get<norm::Lp>(parse_norm_spec("Lp:1.5")).p, 1.5);
  const auto b = std::get<norm::BesovAniso>(parse_norm_spec("Baniso:0.5,2,1,0.25,inf"));
  EXPECT_EQ(b.q2, kInf);
  EXPECT_EQ(std::get<norm::HThetaR>(parse_norm_spec("Htheta:0.03,1.8")).r, 1.8);
  EXPECT_THROW(parse_norm_spec("B:1,2"), ParseError);
  EXPECT_THROW(parse_norm_spec("Q:1"), ParseError);
  EXPECT_THROW(parse_norm_spec("H:x"), ParseError);
  EXPECT_THROW(parse_norm_spec("foo"), ParseError);
}

TEST(Commands, NormsOfSinX1) {
  const fs::path dir = scratch("norms");
  cmd_field("sin1", 16, 0, (dir / "s.afld").string());
  std::ostringstream out;
  EXPECT_EQ(cmd_norms((dir / "s.afld").string(), {"L2", "H:0", "Linf", "H:1"}, out), 0);
  std::istringstream in(out.str());
  double l2, h0, linf, h1;
  in >> l2 >> h0 >> linf >> h1;
  EXPECT_NEAR(l2, std::pow(2 * kPi, 1.5) / std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(h0, 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(linf, 1.0, 1e-15);
  EXPECT_NEAR(h1, 1.0 / std::sqrt(2.0), 1e-15);
}

TEST(Commands, DecomposeCsv) {
  const fs::path dir = scratch("decompose");
  cmd_field("sin1", 16, 0, (dir / "s.afld").string());
  std::ostringstream iso, hv;
  cmd_decompose((dir / "s.afld").string(), DecomposeMode::iso, 2.0, 1.0, 0.0, iso);
  cmd_decompose((dir / "s.afld").string(), DecomposeMode::hv, 2.0, 0.0, 0.0, hv);
  EXPECT_EQ(iso.str().substr(0, iso.str().find('\n')), "component,j,lp,weighted");
  EXPECT_EQ(hv.str().substr(0, hv.str().find('\n')), "component,k,l,lp,weighted");
  EXPECT_THROW(parse_decompose_mode("x"), ParseError);
}

TEST(Commands, ZeroRunWritesZeros) {
  const fs::path dir = scratch("zero");
  RunConfig c = small_run(dir / "out", InitKind::zero);
  write_config(dir / "zero.cfg", c);
  std::ostringstream log;
  ASSERT_EQ(cmd_run((dir / "zero.cfg").string(), log), 0);
  std::istringstream csv(slurp(dir / "out" / "monitor.csv"));
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "# lpns monitor csv v1");
  std::getline(csv, line);
  EXPECT_EQ(line.substr(0, 13), "time,v3_crit,");
  int rows = 0;
  while (std::getline(csv, line)) {
    ++rows;
    std::istringstream ss(line);
    std::string cell;
    std::getline(ss, cell, ',');
    while (std::getline(ss, cell, ',')) EXPECT_EQ(std::stod(cell), 0.0) << line;
  }
  EXPECT_EQ(rows, 6);  // steps 0, 2, …, 10
}

TEST(Commands, ReRunIsByteIdentical) {
  const fs::path dir = scratch("rerun");
  for (const char* sub : {"a", "b"}) {
    const RunConfig c = small_run(dir / sub, InitKind::random);
    write_config(dir / (std::string(sub) + ".cfg"), c);
    std::ostringstream log;
    ASSERT_EQ(cmd_run((dir / (std::string(sub) + ".cfg")).string(), log), 0);
  }
  EXPECT_EQ(slurp(dir / "a" / "monitor.csv"), slurp(dir / "b" / "monitor.csv"));
  EXPECT_EQ(slurp(dir / "a" / "snap_000010.afld"), slurp(dir / "b" / "snap_000010.afld"));
}

TEST(Commands, MonitorFromSnapshotsReproducesTheRun) {
  const fs::path dir = scratch("snapshots");
  const RunConfig c = small_run(dir, InitKind::random);
  const RunResult live = run_simulation(c, dir.string());
  const auto again = monitor_from_snapshots(dir.string(), c.monitor);
  ASSERT_EQ(again.size(), live.records.size());
  for (std::size_t i = 0; i < again.size(); ++i) {
    const auto a = monitor_values(again[i]), b = monitor_values(live.records[i]);
    for (std::size_t j = 0; j < a.size(); ++j) ASSERT_EQ(a[j], b[j]) << monitor_columns()[j] << " row " << i;
  }
}

TEST(Commands, BreakdownIsFlaggedAndExitsNonZero) {
  const fs::path dir = scratch("breakdown");
  RunConfig c = small_run(dir / "out", InitKind::random);
  c.init_energy = 1e300;
  c.solver.nu = 1e-3;
  c.solver.dt = 1.0;
  c.solver.t_end = 5.0;
  c.monitor.cadence = 1;
  c.snapshot_every = 0;
  write_config(dir / "b.cfg", c);
  std::ostringstream log;
  EXPECT_EQ(cmd_run((dir / "b.cfg").string(), log), 3);
  const std::string csv = slurp(dir / "out" / "monitor.csv");
  EXPECT_NE(csv.rfind(",1\n"), std::string::npos);
}

TEST(Commands, CheckExitStatus) {
  EnsembleSpec e;
  e.seed = 3;
  e.count = 4;
  e.resolution = 16;
  e.cls = FieldClass::divfree_random;
  std::ostringstream csv, summary;
  EXPECT_EQ(cmd_check(default_case('i'), e, csv, summary), 0);
  EXPECT_NE(summary.str().find("PASS"), std::string::npos);
  EXPECT_EQ(csv.str().substr(0, csv.str().find('\n')), "case,resolution,member,ratio");
  // an impossible unit-constant claim fails
  InequalityCase k = default_case('f');
  k.mode = ConstantMode::exact_one;
  e.cls = FieldClass::bandlimited_random;
  std::ostringstream csv2, summary2;
  EXPECT_EQ(cmd_check(k, e, csv2, summary2), 1);
}

TEST(Commands, FieldKinds) {
  const fs::path dir = scratch("fields");
  for (const char* kind : {"sin1", "taylor_green", "abc", "random", "scalar_random"}) {
    EXPECT_EQ(cmd_field(kind, 16, 1, (dir / kind).string()), 0);
    EXPECT_FALSE(read_afld((dir / kind).string()).empty());
  }
  EXPECT_THROW(cmd_field("vortex", 16, 1, (dir / "x").string()), ParseError);
}
