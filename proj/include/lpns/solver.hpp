#pragma once

#include <functional>
#include <string>
#include <vector>

#include "lpns/flow.hpp"

namespace lpns {

enum class IntegratorKind { etdrk4, ifrk4 };
enum class Dealias { three_halves_pad, two_thirds };
enum class NonlinearForm { divergence, rotational };

struct SolverConfig {
  double nu = 1.0;
  double dt = 1e-3;
  double t_end = 0.1;
  IntegratorKind integrator = IntegratorKind::etdrk4;
  Dealias dealias = Dealias::three_halves_pad;
  int monitor_every = 1;
  NonlinearForm form = NonlinearForm::divergence;
  bool nonlinear = true;  ///< test hook: false reduces (NS) to the heat equation

  void validate() const {
    if (!(nu > 0.0)) throw DomainError("solver.nu", nu, "]0, inf[", "SolverConfig");
    if (!(dt > 0.0)) throw DomainError("solver.dt", dt, "]0, inf[", "SolverConfig");
    if (!(t_end >= 0.0)) throw DomainError("solver.t_end", t_end, "[0, inf[", "SolverConfig");
    if (monitor_every < 1)
      throw DomainError("monitor_every", monitor_every, "[1, inf[", "SolverConfig");
  }
};

struct StateSnapshot {
  double time = 0.0;
  VelocityField velocity;
  long step_index = 0;
};

struct SolverEvent {
  enum class Kind { cfl_warning };
  Kind kind;
  long step_index;
  double time;
  double value;
};

using EventLog = std::vector<SolverEvent>;

// ---------------------------------------------------------------------------
// Dealiased quadratic products

namespace detail {

/// Zeroes modes outside |k_i| < n_i/3.
inline void two_thirds_filter(SpectralField& a) {
  const Grid& g = a.grid();
  for_each_mode(g, [&](std::size_t i, const Wavevector& k) {
    for (int ax = 0; ax < 3; ++ax)
      if (3 * std::abs(k[ax]) >= g.n(ax)) {
        a[i] = 0.0;
        return;
      }
  });
}

/// Physical samples of each input on the product grid for the given policy.
inline std::vector<ComplexField> product_samples(std::span<const SpectralField> in, Dealias d) {
  std::vector<ComplexField> out;
  out.reserve(in.size());
  for (const auto& f : in) {
    if (d == Dealias::three_halves_pad) {
      out.push_back(padded_samples(f));
    } else {
      SpectralField t = f;
      two_thirds_filter(t);
      out.push_back(inverse_complex(t));
    }
  }
  return out;
}

/// Zeroes the unpaired Nyquist modes (some k_i = −n_i/2). Their mirror image
/// is not on the grid, so the Leray projector cannot act on them consistently.
inline void drop_nyquist(SpectralField& a) {
  const Grid& g = a.grid();
  for_each_mode(g, [&](std::size_t i, const Wavevector& k) {
    if (2 * k.k1 == -g.n1() || 2 * k.k2 == -g.n2() || 2 * k.k3 == -g.n3()) a[i] = 0.0;
  });
}

inline SpectralField back_to_grid(const ComplexField& p, const Grid& g, Dealias d) {
  if (d == Dealias::three_halves_pad) return from_padded_samples(p, g);
  SpectralField s = forward(p);
  two_thirds_filter(s);
  return s;
}

}  // namespace detail

/// Convective tendency −P[div(v ⊗ v)] (viscous term excluded).
inline VectorSpectral ns_rhs(const VectorSpectral& v, Dealias dealias = Dealias::three_halves_pad,
                             NonlinearForm form = NonlinearForm::divergence) {
  const Grid& g = v[0].grid();
  VectorSpectral tend = zero_vector(g);
  if (form == NonlinearForm::divergence) {
    const auto s = detail::product_samples(v, dealias);
    const Grid& pg = s[0].grid();
    // products v^i v^j, i ≤ j
    static constexpr int pairs[6][2] = {{0, 0}, {0, 1}, {0, 2}, {1, 1}, {1, 2}, {2, 2}};
    std::array<SpectralField, 6> vv{SpectralField(g), SpectralField(g), SpectralField(g),
                                    SpectralField(g), SpectralField(g), SpectralField(g)};
    ComplexField prod(pg);
    for (int p = 0; p < 6; ++p) {
      const auto& a = s[pairs[p][0]];
      const auto& b = s[pairs[p][1]];
      for (std::size_t i = 0; i < pg.size(); ++i) prod[i] = a[i] * b[i];
      vv[p] = detail::back_to_grid(prod, g, dealias);
    }
    auto at = [&](int i, int j) -> const SpectralField& {
      if (i > j) std::swap(i, j);
      for (int p = 0; p < 6; ++p)
        if (pairs[p][0] == i && pairs[p][1] == j) return vv[p];
      return vv[0];
    };
    for_each_mode(g, [&](std::size_t idx, const Wavevector& k) {
      for (int i = 0; i < 3; ++i) {
        cplx d = 0.0;
        for (int j = 0; j < 3; ++j) d += cplx(0.0, g.derivative_wavenumber(Grid::slot(k[j], g.n(j)), j)) * at(i, j)[idx];
        tend[i][idx] = -d;
      }
    });
  } else {
    // v·∇v = ω × v + ∇|v|²/2, so −P(v·∇v) = P(v × ω)
    const VectorSpectral w = curl(v);
    const auto sv = detail::product_samples(v, dealias);
    const auto sw = detail::product_samples(w, dealias);
    const Grid& pg = sv[0].grid();
    ComplexField prod(pg);
    for (int c = 0; c < 3; ++c) {
      const int a = (c + 1) % 3, b = (c + 2) % 3;
      for (std::size_t i = 0; i < pg.size(); ++i) prod[i] = sv[a][i] * sw[b][i] - sv[b][i] * sw[a][i];
      tend[c] = detail::back_to_grid(prod, g, dealias);
    }
  }
  for (auto& t : tend) detail::drop_nyquist(t);
  return leray_apply(tend);
}

inline VectorSpectral ns_rhs(const VelocityField& v, Dealias dealias = Dealias::three_halves_pad,
                             NonlinearForm form = NonlinearForm::divergence) {
  return ns_rhs(v.components(), dealias, form);
}

namespace detail {

/// −div(v a) with the samples of v already on the product grid.
inline SpectralField advection_from_samples(const SpectralField& a, std::span<const ComplexField> vs,
                                            Dealias dealias) {
  const Grid& g = a.grid();
  const SpectralField in[1] = {a};
  const ComplexField sa = std::move(product_samples(in, dealias).front());
  ComplexField prod(sa.grid());
  SpectralField out(g);
  for (int j = 0; j < 3; ++j) {
    for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = sa[i] * vs[j][i];
    out -= derivative(back_to_grid(prod, g, dealias), j);
  }
  return out;
}

}  // namespace detail

/// −div(v a) = −v·∇a for divergence-free v, dealiased.
inline SpectralField advection_tendency(const SpectralField& a, const VelocityField& v,
                                        Dealias dealias = Dealias::three_halves_pad) {
  return detail::advection_from_samples(a, detail::product_samples(v.span(), dealias), dealias);
}

// ---------------------------------------------------------------------------
// Exponential integrators for u_t = −κ|k|² u + N(u)

/// Diagonal-stiff integrator; the linear part is integrated exactly through
/// e^{−κ|k|²dt}. Coefficients are tabulated on the integer values of |k|².
/// ETDRK4 φ-type functions are evaluated by averaging over a circle of radius
/// 1 with 64 nodes around each z = −κ|k|²dt.
class ExponentialIntegrator {
 public:
  static constexpr int kContourPoints = 64;
  static constexpr double kContourRadius = 1.0;

  ExponentialIntegrator(const Grid& g, double diffusivity, double dt, IntegratorKind kind)
      : grid_(g), dt_(dt), kind_(kind) {
    const long max_sq = long(g.n1() / 2) * (g.n1() / 2) + long(g.n2() / 2) * (g.n2() / 2) +
                        long(g.n3() / 2) * (g.n3() / 2);
    const std::size_t m = std::size_t(max_sq) + 1;
    e_.resize(m);
    e2_.resize(m);
    q_.resize(m);
    f1_.resize(m);
    f2_.resize(m);
    f3_.resize(m);
    for (std::size_t s = 0; s < m; ++s) {
      const double z = -diffusivity * double(s) * dt;
      e_[s] = std::exp(z);
      e2_[s] = std::exp(0.5 * z);
      if (kind == IntegratorKind::etdrk4) {
        cplx q = 0.0, a = 0.0, b = 0.0, c = 0.0;
        for (int p = 0; p < kContourPoints; ++p) {
          const double th = kPi * (p + 0.5) / kContourPoints;
          const cplx zz = z + kContourRadius * std::exp(cplx(0.0, 2.0 * th));
          const cplx ez = std::exp(zz), ez2 = std::exp(0.5 * zz);
          const cplx z3 = zz * zz * zz;
          q += (ez2 - 1.0) / zz;
          a += (-4.0 - zz + ez * (4.0 - 3.0 * zz + zz * zz)) / z3;
          b += (2.0 + zz + ez * (-2.0 + zz)) / z3;
          c += (-4.0 - 3.0 * zz - zz * zz + ez * (4.0 - zz)) / z3;
        }
        q_[s] = dt * (q / double(kContourPoints)).real();
        f1_[s] = dt * (a / double(kContourPoints)).real();
        f2_[s] = dt * (b / double(kContourPoints)).real();
        f3_[s] = dt * (c / double(kContourPoints)).real();
      }
    }
  }

  using State = std::vector<SpectralField>;

  /// One step of size dt from u, with N evaluated by `nonlinear(State) -> State`.
  template <class Nonlinear>
  State advance(const State& u, Nonlinear&& nonlinear) const {
    return kind_ == IntegratorKind::etdrk4 ? etdrk4(u, nonlinear) : ifrk4(u, nonlinear);
  }

  double dt() const { return dt_; }

 private:
  // out = c0(s)·x0 + c1(s)·x1 + ..., per mode with s = |k|².
  template <class F>
  State combine(const State& like, F&& f) const {
    State out;
    for (std::size_t c = 0; c < like.size(); ++c) out.emplace_back(grid_);
    for_each_mode(grid_, [&](std::size_t i, const Wavevector& k) {
      const std::size_t s = std::size_t(k.norm_sq());
      for (std::size_t c = 0; c < like.size(); ++c) out[c][i] = f(c, i, s);
    });
    return out;
  }

  template <class Nonlinear>
  State etdrk4(const State& u, Nonlinear& nonlinear) const {
    const State nu = nonlinear(u);
    const State a = combine(u, [&](std::size_t c, std::size_t i, std::size_t s) {
      return e2_[s] * u[c][i] + q_[s] * nu[c][i];
    });
    const State na = nonlinear(a);
    const State b = combine(u, [&](std::size_t c, std::size_t i, std::size_t s) {
      return e2_[s] * u[c][i] + q_[s] * na[c][i];
    });
    const State nb = nonlinear(b);
    const State cc = combine(u, [&](std::size_t c, std::size_t i, std::size_t s) {
      return e2_[s] * a[c][i] + q_[s] * (2.0 * nb[c][i] - nu[c][i]);
    });
    const State nc = nonlinear(cc);
    return combine(u, [&](std::size_t c, std::size_t i, std::size_t s) {
      return e_[s] * u[c][i] + f1_[s] * nu[c][i] + 2.0 * f2_[s] * (na[c][i] + nb[c][i]) +
             f3_[s] * nc[c][i];
    });
  }

  template <class Nonlinear>
  State ifrk4(const State& u, Nonlinear& nonlinear) const {
    const double h = dt_;
    const State k1 = nonlinear(u);
    const State u1 = combine(u, [&](std::size_t c, std::size_t i, std::size_t s) {
      return e2_[s] * (u[c][i] + 0.5 * h * k1[c][i]);
    });
    const State k2 = nonlinear(u1);
    const State u2 = combine(u, [&](std::size_t c, std::size_t i, std::size_t s) {
      return e2_[s] * u[c][i] + 0.5 * h * k2[c][i];
    });
    const State k3 = nonlinear(u2);
    const State u3 = combine(u, [&](std::size_t c, std::size_t i, std::size_t s) {
      return e_[s] * u[c][i] + h * e2_[s] * k3[c][i];
    });
    const State k4 = nonlinear(u3);
    return combine(u, [&](std::size_t c, std::size_t i, std::size_t s) {
      return e_[s] * u[c][i] +
             h / 6.0 * (e_[s] * k1[c][i] + 2.0 * e2_[s] * (k2[c][i] + k3[c][i]) + k4[c][i]);
    });
  }

  Grid grid_;
  double dt_;
  IntegratorKind kind_;
  std::vector<double> e_, e2_, q_, f1_, f2_, f3_;
};

// ---------------------------------------------------------------------------
// Navier-Stokes stepping

inline double max_speed(const VelocityField& v) {
  double m2 = 0.0;
  const RealField a = inverse(v[0]), b = inverse(v[1]), c = inverse(v[2]);
  for (std::size_t i = 0; i < a.size(); ++i) m2 = std::max(m2, a[i] * a[i] + b[i] * b[i] + c[i] * c[i]);
  return std::sqrt(m2);
}

/// Advances (NS) with a reusable integrator (coefficients computed once).
class NavierStokesSolver {
 public:
  NavierStokesSolver(const Grid& g, SolverConfig cfg)
      : cfg_((cfg.validate(), cfg)), integrator_(g, cfg.nu, cfg.dt, cfg.integrator) {}

  const SolverConfig& config() const { return cfg_; }

  StateSnapshot step(const StateSnapshot& s, EventLog* log = nullptr) const {
    const Grid& g = s.velocity.grid();
    const double kmax = g.max_norm();
    const double cfl = cfg_.dt * max_speed(s.velocity) * kmax;
    if (cfl >= 1.0 && log) log->push_back({SolverEvent::Kind::cfl_warning, s.step_index, s.time, cfl});

    ExponentialIntegrator::State u(s.velocity.components().begin(), s.velocity.components().end());
    auto nonlinear = [&](const ExponentialIntegrator::State& x) {
      if (!cfg_.nonlinear) return ExponentialIntegrator::State(3, SpectralField(g));
      const VectorSpectral t = ns_rhs(VectorSpectral{x[0], x[1], x[2]}, cfg_.dealias, cfg_.form);
      return ExponentialIntegrator::State(t.begin(), t.end());
    };
    ExponentialIntegrator::State next = integrator_.advance(u, nonlinear);
    for (auto& c : next) {
      if (!c.all_finite()) throw NumericalBreakdown(s.time, s.step_index);
      detail::drop_nyquist(c);
      c.enforce_hermitian();
    }
    // Re-projection removes round-off drift in k·v̂ and the mean.
    VectorSpectral v{std::move(next[0]), std::move(next[1]), std::move(next[2])};
    return {s.time + cfg_.dt, VelocityField(leray_apply(v)), s.step_index + 1};
  }

 private:
  SolverConfig cfg_;
  ExponentialIntegrator integrator_;
};

inline StateSnapshot step(const StateSnapshot& s, const SolverConfig& cfg, EventLog* log = nullptr) {
  return NavierStokesSolver(s.velocity.grid(), cfg).step(s, log);
}

/// Steps ∂_t a − κΔa + v·∇a = f for a frozen velocity v and forcing f.
class TransportDiffusion {
 public:
  TransportDiffusion(const VelocityField& v, const SpectralField& f, double dt, double diffusivity = 1.0,
                     IntegratorKind kind = IntegratorKind::etdrk4)
      : f_((require_same_grid(v.grid(), f.grid(), "TransportDiffusion"), f)),
        vs_(detail::product_samples(v.span(), Dealias::three_halves_pad)),
        integ_(f.grid(), diffusivity, dt, kind) {}

  SpectralField step(const SpectralField& a) const {
    require_same_grid(a.grid(), f_.grid(), "TransportDiffusion::step");
    auto nonlinear = [&](const ExponentialIntegrator::State& x) {
      SpectralField t = detail::advection_from_samples(x[0], vs_, Dealias::three_halves_pad);
      t += f_;
      return ExponentialIntegrator::State{std::move(t)};
    };
    SpectralField out = std::move(integ_.advance({a}, nonlinear)[0]);
    if (!out.all_finite()) throw NumericalBreakdown(0.0, 0);
    return out;
  }

 private:
  SpectralField f_;
  std::vector<ComplexField> vs_;
  ExponentialIntegrator integ_;
};

/// One step of ∂_t a − κΔa + v·∇a = f with v and f frozen over the step.
inline SpectralField transport_diffusion_step(const SpectralField& a, const VelocityField& v,
                                              const SpectralField& f, double dt,
                                              double diffusivity = 1.0,
                                              IntegratorKind kind = IntegratorKind::etdrk4) {
  require_same_grid(a.grid(), v.grid(), "transport_diffusion_step");
  return TransportDiffusion(v, f, dt, diffusivity, kind).step(a);
}

}  // namespace lpns
