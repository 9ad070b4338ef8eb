#pragma once

#include <random>

#include "lpns/flow.hpp"

namespace lpns {

/// v = (cos x1 sin x2, −sin x1 cos x2, 0)
inline VelocityField initial_taylor_green(const Grid& g, double amplitude = 1.0) {
  VectorSpectral v = zero_vector(g);
  for (int s1 : {-1, 1})
    for (int s2 : {-1, 1}) {
      const Wavevector k{s1, s2, 0};
      v[0].at(k) = amplitude * cplx(0.0, -0.25 * s2);
      v[1].at(k) = amplitude * cplx(0.0, 0.25 * s1);
    }
  return VelocityField(std::move(v));
}

/// Arnold-Beltrami-Childress flow
///   v = (A sin x3 + C cos x2, B sin x1 + A cos x3, C sin x2 + B cos x1),
/// an eigenfield of the curl with eigenvalue 1.
inline VelocityField initial_abc(const Grid& g, double A, double B, double C) {
  VectorSpectral v = zero_vector(g);
  auto add_sin = [&](int comp, int axis, double amp) {
    Wavevector k{};
    for (int s : {1, -1}) {
      k = {axis == 0 ? s : 0, axis == 1 ? s : 0, axis == 2 ? s : 0};
      v[comp].at(k) += amp * cplx(0.0, -0.5 * s);
    }
  };
  auto add_cos = [&](int comp, int axis, double amp) {
    for (int s : {1, -1}) {
      const Wavevector k{axis == 0 ? s : 0, axis == 1 ? s : 0, axis == 2 ? s : 0};
      v[comp].at(k) += amp * 0.5;
    }
  };
  add_sin(0, 2, A);
  add_cos(0, 1, C);
  add_sin(1, 0, B);
  add_cos(1, 2, A);
  add_sin(2, 1, C);
  add_cos(2, 0, B);
  return VelocityField(std::move(v));
}

/// Shell-shaped random spectrum: modes kmin ≤ |k| ≤ kmax, shell energies
/// proportional to m^slope for integer shells m, total ½Σ|v̂|² = energy.
struct RandomSpec {
  std::uint64_t seed = 1;
  double kmin = 1.0;
  double kmax = 4.0;
  double slope = -5.0 / 3.0;
  double energy = 0.5;
};

namespace detail {

/// Calls f(k) for the canonical representative of each ±k pair inside the
/// box |k_i| ≤ kmax, in an order that depends only on kmax.
template <class F>
void for_each_half_box(int kmax, F&& f) {
  for (int k3 = 0; k3 <= kmax; ++k3)
    for (int k2 = -kmax; k2 <= kmax; ++k2)
      for (int k1 = -kmax; k1 <= kmax; ++k1) {
        if (k3 == 0 && (k2 < 0 || (k2 == 0 && k1 <= 0))) continue;
        f(Wavevector{k1, k2, k3});
      }
}

inline void require_band(const Grid& g, double kmax, const char* ctx) {
  const int lim = std::min({g.n1(), g.n2(), g.n3()}) / 2 - 1;
  if (!(kmax <= lim)) throw DomainError("kmax", kmax, "[1, " + std::to_string(lim) + "]", ctx);
}

inline int shell_of(const Wavevector& k) { return int(std::lround(k.norm())); }

}  // namespace detail

/// Random divergence-free field; the coefficients depend on (seed, band, slope, energy) only,
/// not on the grid, so the same seed gives the same function at any admissible
/// resolution.
inline VelocityField initial_random_bandlimited(const Grid& g, const RandomSpec& spec) {
  detail::require_band(g, spec.kmax, "initial_random_bandlimited");
  if (!(spec.kmin >= 1.0 && spec.kmin <= spec.kmax))
    throw DomainError("kmin", spec.kmin, "[1, kmax]", "initial_random_bandlimited");
  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> normal;
  VectorSpectral v = zero_vector(g);
  const int box = int(std::floor(spec.kmax));
  detail::for_each_half_box(box, [&](const Wavevector& k) {
    cplx u[3];
    for (auto& c : u) c = cplx(normal(rng), normal(rng));
    const double n = k.norm();
    if (n < spec.kmin || n > spec.kmax) return;
    const double kk[3] = {double(k.k1), double(k.k2), double(k.k3)};
    const cplx dot = kk[0] * u[0] + kk[1] * u[1] + kk[2] * u[2];
    for (int c = 0; c < 3; ++c) {
      const cplx w = u[c] - kk[c] * dot / double(k.norm_sq());
      v[c].at(k) = w;
      v[c].at(Wavevector{-k.k1, -k.k2, -k.k3}) = std::conj(w);
    }
  });
  // Rescale integer shells to E(m) ∝ m^slope.
  const int top = detail::shell_of(Wavevector{box, box, box}) + 1;
  std::vector<double> shell(std::size_t(top) + 1, 0.0);
  for_each_mode(g, [&](std::size_t i, const Wavevector& k) {
    if (k.is_zero()) return;
    const int m = detail::shell_of(k);
    if (m <= top)
      for (int c = 0; c < 3; ++c) shell[std::size_t(m)] += 0.5 * std::norm(v[c][i]);
  });
  double total = 0.0;
  for (int m = 1; m <= top; ++m)
    if (shell[std::size_t(m)] > 0.0) total += std::pow(double(m), spec.slope);
  for_each_mode(g, [&](std::size_t i, const Wavevector& k) {
    if (k.is_zero()) return;
    const int m = detail::shell_of(k);
    if (m > top || shell[std::size_t(m)] == 0.0) return;
    const double target = spec.energy * std::pow(double(m), spec.slope) / total;
    const double f = std::sqrt(target / shell[std::size_t(m)]);
    for (int c = 0; c < 3; ++c) v[c][i] *= f;
  });
  return VelocityField(std::move(v));
}

/// Shell energies E(m) = ½ Σ_{round|k| = m} |v̂(k)|².
inline std::vector<double> shell_spectrum(const VelocityField& v) {
  const Grid& g = v.grid();
  std::vector<double> e(std::size_t(g.max_norm()) + 2, 0.0);
  for_each_mode(g, [&](std::size_t i, const Wavevector& k) {
    const int m = detail::shell_of(k);
    for (int c = 0; c < 3; ++c) e[std::size_t(m)] += 0.5 * std::norm(v[c][i]);
  });
  return e;
}

}  // namespace lpns
