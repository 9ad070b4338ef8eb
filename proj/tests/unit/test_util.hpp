#pragma once

#include <random>

#include "lpns/lpns.hpp"

namespace lpns::test {

/// Mean-zero real scalar with Gaussian coefficients on 1 ≤ |k| ≤ kmax.
inline SpectralField random_scalar(const Grid& g, std::uint64_t seed, int kmax) {
  EnsembleSpec s;
  s.seed = seed;
  s.count = 1;
  s.resolution = g.n1();
  s.kmax = kmax;
  std::mt19937_64 rng(seed);
  return detail::random_scalar(g, rng, kmax, -1.0, [&](const Wavevector& k) { return k.norm() <= kmax; });
}

/// Real field with white-noise samples, including Nyquist content.
inline RealField noise(const Grid& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n;
  RealField f(g);
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = n(rng);
  return f;
}

/// Direct O(N²) discrete Fourier coefficient (1/N)Σ_x f(x) e^{−ik·x}.
inline cplx direct_dft(const RealField& f, const Wavevector& k) {
  const Grid& g = f.grid();
  cplx s = 0.0;
  for_each_point(g, [&](std::size_t i, double x1, double x2, double x3) {
    s += f[i] * std::polar(1.0, -(k.k1 * x1 + k.k2 * x2 + k.k3 * x3));
  });
  return s / double(g.size());
}

inline double max_abs_diff(const RealField& a, const RealField& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline VelocityField random_velocity(const Grid& g, std::uint64_t seed, double kmax = 4.0, double energy = 0.5) {
  RandomSpec s;
  s.seed = seed;
  s.kmax = kmax;
  s.energy = energy;
  return initial_random_bandlimited(g, s);
}

}  // namespace lpns::test
