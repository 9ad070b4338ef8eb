#pragma once

#include <cmath>
#include <limits>
#include <string>

#include "lpns/fft.hpp"

namespace lpns {

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

// ---------------------------------------------------------------------------
// Differentiation and multipliers

/// ∂_axis as the multiplier i·k_axis (axis is 0, 1 or 2 for x1, x2, x3).
inline SpectralField derivative(const SpectralField& a, int axis) {
  if (axis < 0 || axis > 2) throw DomainError("axis", axis, "{0, 1, 2}", "derivative");
  const Grid& g = a.grid();
  SpectralField out(g);
  std::size_t idx = 0;
  for (int i1 = 0; i1 < g.n1(); ++i1)
    for (int i2 = 0; i2 < g.n2(); ++i2)
      for (int i3 = 0; i3 < g.n3(); ++i3, ++idx) {
        const int i = axis == 0 ? i1 : axis == 1 ? i2 : i3;
        out[idx] = cplx(0.0, g.derivative_wavenumber(i, axis)) * a[idx];
      }
  return out;
}

/// Policy for wavevectors k ≠ 0 where a multiplier is not finite.
enum class SingularModes {
  reject,  ///< MultiplierError if the coefficient there is nonzero
  zero,    ///< map those modes to zero (e.g. Δ_h^{-1} on k_h = 0)
};

/// coeff'(k) = m(k)·coeff(k). The k = 0 mode is mapped to zero when m is
/// singular there (homogeneous convention) and multiplied otherwise.
template <class Multiplier>
SpectralField apply_multiplier(const SpectralField& a, Multiplier&& m,
                               SingularModes policy = SingularModes::reject) {
  SpectralField out(a.grid());
  for_each_mode(a.grid(), [&](std::size_t i, const Wavevector& k) {
    const cplx w = m(k);
    if (std::isfinite(w.real()) && std::isfinite(w.imag())) {
      out[i] = w * a[i];
      return;
    }
    if (!k.is_zero() && policy == SingularModes::reject && a[i] != cplx{})
      throw MultiplierError({k.k1, k.k2, k.k3});
    out[i] = 0.0;
  });
  return out;
}

/// Δ^{-1}; zero on k = 0.
inline SpectralField inverse_laplacian(const SpectralField& a) {
  return apply_multiplier(a, [](const Wavevector& k) {
    return cplx(k.is_zero() ? 0.0 : -1.0 / double(k.norm_sq()));
  });
}

/// Δ_h^{-1}; zero on every mode with k_h = 0.
inline SpectralField inverse_horizontal_laplacian(const SpectralField& a) {
  return apply_multiplier(a, [](const Wavevector& k) {
    return cplx(k.horizontal_sq() == 0 ? 0.0 : -1.0 / double(k.horizontal_sq()));
  });
}

inline SpectralField laplacian(const SpectralField& a) {
  return apply_multiplier(a, [](const Wavevector& k) { return cplx(-double(k.norm_sq())); });
}

// ---------------------------------------------------------------------------
// Lebesgue norms (plain grid Riemann sums with cell volume (2π)³/(n1·n2·n3))

namespace detail {
inline void require_exponent(double p, const char* context) {
  if (!(p >= 1.0)) throw DomainError("p", p, "[1, inf]", context);
}

template <class Abs>
double lp_sum(std::size_t n, double cellvol, double p, Abs&& abs_at) {
  if (p == kInf) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, abs_at(i));
    return m;
  }
  double s = 0.0;
  if (p == 2.0) {
    for (std::size_t i = 0; i < n; ++i) {
      const double x = abs_at(i);
      s += x * x;
    }
    return std::sqrt(s * cellvol);
  }
  for (std::size_t i = 0; i < n; ++i) s += std::pow(abs_at(i), p);
  return std::pow(s * cellvol, 1.0 / p);
}
}  // namespace detail

inline double lp_norm(const RealField& f, double p) {
  detail::require_exponent(p, "lp_norm");
  return detail::lp_sum(f.size(), f.grid().cell_volume(), p,
                        [&](std::size_t i) { return std::abs(f[i]); });
}

inline double lp_norm(const ComplexField& f, double p) {
  detail::require_exponent(p, "lp_norm");
  return detail::lp_sum(f.size(), f.grid().cell_volume(), p,
                        [&](std::size_t i) { return std::abs(f[i]); });
}

/// Lᵖ norm of the Euclidean magnitude of a vector of real fields.
inline double lp_norm(std::span<const RealField> comps, double p) {
  detail::require_exponent(p, "lp_norm");
  const RealField& f0 = comps.front();
  return detail::lp_sum(f0.size(), f0.grid().cell_volume(), p, [&](std::size_t i) {
    double s = 0.0;
    for (const auto& c : comps) s += c[i] * c[i];
    return std::sqrt(s);
  });
}

/// Mixed norm L^{p}_h(L^{q}_v): Lq over x3 first, then Lp over (x1, x2).
inline double mixed_lp_norm(const ComplexField& f, double p_h, double q_v) {
  detail::require_exponent(p_h, "mixed_lp_norm");
  detail::require_exponent(q_v, "mixed_lp_norm");
  const Grid& g = f.grid();
  const double dx3 = 2.0 * kPi / g.n3();
  const double dxh = 4.0 * kPi * kPi / (double(g.n1()) * g.n2());
  std::vector<double> inner(std::size_t(g.n1()) * g.n2());
  for (std::size_t c = 0; c < inner.size(); ++c) {
    const std::size_t base = c * g.n3();
    inner[c] = detail::lp_sum(std::size_t(g.n3()), dx3, q_v,
                              [&](std::size_t i) { return std::abs(f[base + i]); });
  }
  return detail::lp_sum(inner.size(), dxh, p_h, [&](std::size_t i) { return inner[i]; });
}

// ---------------------------------------------------------------------------
// Homogeneous Sobolev norms (coefficient sums, no (2π)^{3/2} factor)

namespace detail {
inline bool has_mean(const SpectralField& a) {
  const double m = std::abs(a.mean());
  return m > 1e-12 * a.coefficient_norm() && m > 0.0;
}
}  // namespace detail

/// ‖a‖_{Ḣ^{s,s'}} = (Σ |k_h|^{2s}|k3|^{2s'}|coeff(k)|²)^{1/2}. Modes with
/// k_h = 0 are excluded when s < 0 and modes with k3 = 0 when s' < 0.
inline double sobolev_aniso_norm(const SpectralField& a, double s, double s_v) {
  if ((s < 0.0 || s_v < 0.0) && detail::has_mean(a))
    throw InvariantError("sobolev_aniso_norm: negative exponent on a field with nonzero mean");
  double sum = 0.0;
  for_each_mode(a.grid(), [&](std::size_t i, const Wavevector& k) {
    const long kh2 = k.horizontal_sq();
    const long k32 = long(k.k3) * k.k3;
    if ((s < 0.0 && kh2 == 0) || (s_v < 0.0 && k32 == 0)) return;
    const double w = std::pow(double(kh2), s) * std::pow(double(k32), s_v);
    sum += w * std::norm(a[i]);
  });
  return std::sqrt(sum);
}

/// ‖a‖_{Ḣ^s} with weight |k|^{2s}; k = 0 is excluded when s < 0.
inline double sobolev_iso_norm(const SpectralField& a, double s) {
  if (s < 0.0 && detail::has_mean(a))
    throw InvariantError("sobolev_iso_norm: negative exponent on a field with nonzero mean");
  double sum = 0.0;
  for_each_mode(a.grid(), [&](std::size_t i, const Wavevector& k) {
    const long n2 = k.norm_sq();
    if (s < 0.0 && n2 == 0) return;
    sum += std::pow(double(n2), s) * std::norm(a[i]);
  });
  return std::sqrt(sum);
}

/// Euclidean combination (Σ_c ‖a_c‖²)^{1/2} of a per-component norm.
template <class Norm>
double vector_norm(std::span<const SpectralField> comps, Norm&& norm) {
  double s = 0.0;
  for (const auto& c : comps) {
    const double v = norm(c);
    s += v * v;
  }
  return std::sqrt(s);
}

/// Fraction of Σ|coeff|² carried by modes with k_h = 0.
inline double horizontal_axis_fraction(std::span<const SpectralField> comps) {
  double on_axis = 0.0, total = 0.0;
  for (const auto& a : comps)
    for_each_mode(a.grid(), [&](std::size_t i, const Wavevector& k) {
      const double e = std::norm(a[i]);
      total += e;
      if (k.horizontal_sq() == 0) on_axis += e;
    });
  return total > 0.0 ? on_axis / total : 0.0;
}

// ---------------------------------------------------------------------------
// Scaling exponent α(r) = 1/r − 1/2 and the space H^{θ,r} = Ḣ^{−3α(r)+θ, −θ}

inline double alpha_of(double r) { return 1.0 / r - 0.5; }

/// Integrability index r of the vorticity together with α(r).
class AlphaR {
 public:
  explicit AlphaR(double r) : r_(r), alpha_(alpha_of(r)) {
    if (!(r >= 1.5 && r <= 2.0)) throw DomainError("r", r, "[3/2, 2]", "alpha(r)");
  }
  double r() const { return r_; }
  double alpha() const { return alpha_; }

 private:
  double r_;
  double alpha_;
};

/// Throws unless r ∈ [3/2, 2[ and θ ∈ ]0, α(r)[.
inline void validate_htheta_r(double theta, double r) {
  if (!(r >= 1.5 && r < 2.0))
    throw DomainError("r", r, "[3/2, 2[", "H^{theta,r}");
  const double a = alpha_of(r);
  if (!(theta > 0.0 && theta < a))
    throw DomainError("theta", theta, "]0, alpha(r)[ = ]0, " + std::to_string(a) + "[",
                      "H^{theta,r}");
}

inline double htheta_r_norm(const SpectralField& a, double theta, double r) {
  validate_htheta_r(theta, r);
  return sobolev_aniso_norm(a, -3.0 * alpha_of(r) + theta, -theta);
}

}  // namespace lpns
