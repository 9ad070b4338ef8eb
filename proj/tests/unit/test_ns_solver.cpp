#include <gtest/gtest.h>

#include "unit/test_util.hpp"

using namespace lpns;

namespace {

StateSnapshot start(const VelocityField& v) { return {0.0, v, 0}; }

StateSnapshot integrate(StateSnapshot s, const SolverConfig& cfg, int steps, EventLog* log = nullptr) {
  const NavierStokesSolver solver(s.velocity.grid(), cfg);
  for (int n = 0; n < steps; ++n) s = solver.step(s, log);
  return s;
}

double energy(const VelocityField& v) {
  double e = 0.0;
  for (int c = 0; c < 3; ++c) e += 0.5 * std::pow(v[c].coefficient_norm(), 2);
  return e;
}

double enstrophy(const VelocityField& v) {
  double s = 0.0;
  for (int c = 0; c < 3; ++c) s += std::pow(sobolev_iso_norm(v[c], 1.0), 2);
  return s;
}

double max_component_diff(const VelocityField& a, const VelocityField& b) {
  double m = 0.0;
  for (int c = 0; c < 3; ++c) m = std::max(m, test::max_abs_diff(inverse(a[c]), inverse(b[c])));
  return m;
}

}  // namespace

TEST(SolverConfig, Validation) {
  SolverConfig c;
  c.nu = 0.0;
  EXPECT_THROW(c.validate(), DomainError);
  c = {};
  c.dt = -1.0;
  EXPECT_THROW(c.validate(), DomainError);
  c = {};
  c.monitor_every = 0;
  EXPECT_THROW(c.validate(), DomainError);
}

TEST(Nonlinear, TaylorGreenIsAStationaryEulerFlow) {
  const Grid g(16);
  const VelocityField v = initial_taylor_green(g);
  for (Dealias d : {Dealias::three_halves_pad, Dealias::two_thirds})
    for (NonlinearForm f : {NonlinearForm::divergence, NonlinearForm::rotational}) {
      const VectorSpectral r = ns_rhs(v, d, f);
      for (int c = 0; c < 3; ++c) EXPECT_LT(r[c].coefficient_norm(), 1e-15);
    }
}

TEST(Nonlinear, DivergenceAndRotationalFormsAgree) {
  const Grid g(16);
  const VelocityField v = test::random_velocity(g, 3, 5.0);
  const VectorSpectral a = ns_rhs(v, Dealias::three_halves_pad, NonlinearForm::divergence);
  const VectorSpectral b = ns_rhs(v, Dealias::three_halves_pad, NonlinearForm::rotational);
  for (int c = 0; c < 3; ++c) EXPECT_LT(relative_difference(a[c], b[c]), 1e-12);
}

TEST(Nonlinear, ConservesEnergyUnderExactDealiasing) {
  const Grid g(16);
  const VelocityField v = test::random_velocity(g, 4, 5.0);
  const VectorSpectral r = ns_rhs(v);
  double dot = 0.0, scale = 0.0;
  for (int c = 0; c < 3; ++c)
    for (std::size_t i = 0; i < r[c].size(); ++i) {
      dot += (std::conj(v[c][i]) * r[c][i]).real();
      scale += std::abs(v[c][i]) * std::abs(r[c][i]);
    }
  EXPECT_LT(std::abs(dot), 1e-13 * scale);
}

TEST(Integrator, HeatEquationDecaysEachModeExactly) {
  const Grid g(16);
  const VelocityField v0 = test::random_velocity(g, 5, 7.0);
  for (IntegratorKind kind : {IntegratorKind::etdrk4, IntegratorKind::ifrk4}) {
    SolverConfig cfg;
    cfg.nu = 0.7;
    cfg.dt = 0.01;
    cfg.integrator = kind;
    cfg.nonlinear = false;
    const StateSnapshot s = integrate(start(v0), cfg, 10);
    for (int c = 0; c < 3; ++c)
      for_each_mode(g, [&](std::size_t i, const Wavevector& k) {
        const cplx expect = v0[c][i] * std::exp(-0.7 * double(k.norm_sq()) * 0.1);
        EXPECT_LT(std::abs(s.velocity[c][i] - expect), 1e-15);
      });
  }
}

TEST(Integrator, TaylorGreenDecaysExactly) {
  const Grid g(16);
  SolverConfig cfg;
  cfg.nu = 1.0;
  cfg.dt = 1e-3;
  const StateSnapshot s = integrate(start(initial_taylor_green(g)), cfg, 50);
  const VelocityField expect = initial_taylor_green(g, std::exp(-2.0 * s.time));
  EXPECT_LT(max_component_diff(s.velocity, expect), 1e-12);
}

TEST(Integrator, EnergyBalanceOfNavierStokes) {
  // E(t) − E(0) = −ν ∫ ‖∇v‖², Simpson in time over fine steps
  const Grid g(16);
  SolverConfig cfg;
  cfg.nu = 0.05;
  cfg.dt = 2e-3;
  StateSnapshot s = start(test::random_velocity(g, 6, 5.0, 1.0));
  const NavierStokesSolver solver(g, cfg);
  const double e0 = energy(s.velocity);
  std::vector<double> d{enstrophy(s.velocity)};
  for (int n = 0; n < 50; ++n) {
    s = solver.step(s);
    d.push_back(enstrophy(s.velocity));
  }
  double integral = d.front() + d.back();
  for (std::size_t i = 1; i + 1 < d.size(); ++i) integral += (i % 2 ? 4.0 : 2.0) * d[i];
  integral *= cfg.dt / 3.0;
  const double lhs = energy(s.velocity) - e0, rhs = -cfg.nu * integral;
  EXPECT_NEAR(lhs, rhs, 1e-6 * std::abs(rhs));
}

TEST(Integrator, Etdrk4IsFourthOrder) {
  const Grid g(16);
  const VelocityField v0 = test::random_velocity(g, 8, 5.0, 2.0);
  auto run = [&](double dt, IntegratorKind kind) {
    SolverConfig cfg;
    cfg.nu = 0.1;
    cfg.dt = dt;
    cfg.integrator = kind;
    return integrate(start(v0), cfg, int(std::lround(0.2 / dt))).velocity;
  };
  for (IntegratorKind kind : {IntegratorKind::etdrk4, IntegratorKind::ifrk4}) {
    const VelocityField ref = run(0.2 / 160, kind);
    const double e1 = max_component_diff(run(0.2 / 10, kind), ref);
    const double e2 = max_component_diff(run(0.2 / 20, kind), ref);
    EXPECT_GE(std::log2(e1 / e2), 3.8) << (kind == IntegratorKind::etdrk4 ? "etdrk4" : "ifrk4");
  }
}

TEST(Solver, RemainsDivergenceFreeAndHermitian) {
  const Grid g(16);
  SolverConfig cfg;
  cfg.nu = 0.02;
  cfg.dt = 5e-3;
  const StateSnapshot s = integrate(start(test::random_velocity(g, 9, 5.0, 2.0)), cfg, 40);
  EXPECT_LT(divergence_residual(s.velocity.components()), 1e-13);
  for (int c = 0; c < 3; ++c)
    for_each_mode(g, [&](std::size_t i, const Wavevector& k) {
      const Wavevector m{-k.k1, -k.k2, -k.k3};
      if (g.contains(m)) EXPECT_EQ(s.velocity[c][i], std::conj(s.velocity[c].at(m)));
    });
}

TEST(Solver, DeterministicBitForBit) {
  const Grid g(16);
  SolverConfig cfg;
  cfg.nu = 0.05;
  cfg.dt = 4e-3;
  const VelocityField v0 = test::random_velocity(g, 10, 5.0, 1.0);
  const StateSnapshot a = integrate(start(v0), cfg, 10), b = integrate(start(v0), cfg, 10);
  for (int c = 0; c < 3; ++c)
    for (std::size_t i = 0; i < a.velocity[c].size(); ++i) ASSERT_EQ(a.velocity[c][i], b.velocity[c][i]);
}

TEST(Solver, LogsCflWarnings) {
  const Grid g(16);
  SolverConfig cfg;
  cfg.dt = 0.5;
  EventLog log;
  integrate(start(initial_taylor_green(g)), cfg, 1, &log);
  ASSERT_EQ(log.size(), 1u);
  EXPECT_EQ(log[0].kind, SolverEvent::Kind::cfl_warning);
  EXPECT_GE(log[0].value, 1.0);
}

TEST(Solver, NonFiniteStateRaisesNumericalBreakdown) {
  const Grid g(16);
  SolverConfig cfg;
  cfg.nu = 1e-3;
  cfg.dt = 1.0;
  RandomSpec spec;
  spec.seed = 11;
  spec.energy = 1e300;
  StateSnapshot s = start(initial_random_bandlimited(g, spec));
  try {
    integrate(s, cfg, 5);
    FAIL() << "expected NumericalBreakdown";
  } catch (const NumericalBreakdown& e) {
    EXPECT_GE(e.last_valid_step(), 0);
  }
}

TEST(TransportDiffusion, DiffusesAModeExactlyWithoutFlow) {
  const Grid g(16);
  const SpectralField a = SpectralField::mode(g, {2, 1, 0}, 0.5) + SpectralField::mode(g, {-2, -1, 0}, 0.5);
  const SpectralField next = transport_diffusion_step(a, VelocityField::zero(g), SpectralField(g), 0.01, 2.0);
  EXPECT_NEAR(next.at({2, 1, 0}).real(), 0.5 * std::exp(-2.0 * 5.0 * 0.01), 1e-16);
}

TEST(TransportDiffusion, ShearAdvectionOfAPlaneWave) {
  // a = cos(x2) advected by the uniform-in-x2 flow v = (0, 0, sin x1): v·∇a = 0,
  // so only diffusion acts.
  const Grid g(16);
  VectorSpectral v = zero_vector(g);
  v[2] = SpectralField::mode(g, {1, 0, 0}, cplx(0, -0.5)) + SpectralField::mode(g, {-1, 0, 0}, cplx(0, 0.5));
  const SpectralField a = SpectralField::mode(g, {0, 1, 0}, 0.5) + SpectralField::mode(g, {0, -1, 0}, 0.5);
  const SpectralField next = transport_diffusion_step(a, VelocityField(v), SpectralField(g), 0.05);
  EXPECT_NEAR(next.at({0, 1, 0}).real(), 0.5 * std::exp(-0.05), 1e-15);
}
