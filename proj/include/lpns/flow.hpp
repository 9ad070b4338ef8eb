#pragma once

#include <array>

#include "lpns/spectral.hpp"

namespace lpns {

using VectorSpectral = std::array<SpectralField, 3>;
using HorizontalField = std::array<SpectralField, 2>;

inline VectorSpectral zero_vector(const Grid& g) {
  return {SpectralField(g), SpectralField(g), SpectralField(g)};
}

/// max_k |k·û(k)| / max_k |û(k)|, 0 for the zero field.
inline double divergence_residual(const VectorSpectral& u) {
  double num = 0.0, den = 0.0;
  for_each_mode(u[0].grid(), [&](std::size_t i, const Wavevector& k) {
    const cplx d = double(k.k1) * u[0][i] + double(k.k2) * u[1][i] + double(k.k3) * u[2][i];
    num = std::max(num, std::abs(d));
    den = std::max({den, std::abs(u[0][i]), std::abs(u[1][i]), std::abs(u[2][i])});
  });
  return den > 0.0 ? num / den : 0.0;
}

/// Divergence-free, zero-mean velocity v = (v1, v2, v3) in Fourier space.
class VelocityField {
 public:
  static constexpr double kDivergenceTolerance = 1e-10;

  /// Checks the invariants; throws InvariantError otherwise.
  explicit VelocityField(VectorSpectral v) : v_(std::move(v)) {
    require_same_grid(v_[0].grid(), v_[1].grid(), "VelocityField");
    require_same_grid(v_[0].grid(), v_[2].grid(), "VelocityField");
    double scale = 0.0;
    for (const auto& c : v_) scale = std::max(scale, c.max_abs());
    for (int c = 0; c < 3; ++c)
      if (std::abs(v_[c].mean()) > 1e-12 * scale)
        throw InvariantError("VelocityField: component " + std::to_string(c + 1) +
                             " has nonzero mean");
    const double res = divergence_residual(v_);
    if (!(res < kDivergenceTolerance))
      throw InvariantError("VelocityField: divergence residual " + std::to_string(res) +
                           " exceeds 1e-10");
  }

  static VelocityField zero(const Grid& g) { return VelocityField(zero_vector(g)); }

  const Grid& grid() const { return v_[0].grid(); }
  const SpectralField& operator[](int c) const { return v_[c]; }
  const VectorSpectral& components() const { return v_; }
  std::span<const SpectralField> span() const { return v_; }

 private:
  VectorSpectral v_;
};

/// v̂ = û − k(k·û)/|k|², with every mean removed. Idempotent.
inline VectorSpectral leray_apply(const VectorSpectral& u) {
  const Grid& g = u[0].grid();
  VectorSpectral out = zero_vector(g);
  for_each_mode(g, [&](std::size_t i, const Wavevector& k) {
    if (k.is_zero()) return;
    const double kk[3] = {double(k.k1), double(k.k2), double(k.k3)};
    const cplx dot = kk[0] * u[0][i] + kk[1] * u[1][i] + kk[2] * u[2][i];
    const double inv = 1.0 / double(k.norm_sq());
    for (int c = 0; c < 3; ++c) out[c][i] = u[c][i] - kk[c] * dot * inv;
  });
  return out;
}

inline VelocityField leray_project(const VectorSpectral& u) {
  require_same_grid(u[0].grid(), u[1].grid(), "leray_project");
  require_same_grid(u[0].grid(), u[2].grid(), "leray_project");
  return VelocityField(leray_apply(u));
}

/// ω = ∂1v² − ∂2v¹
inline SpectralField vertical_vorticity(const VelocityField& v) {
  return derivative(v[1], 0) - derivative(v[0], 1);
}

/// ∂3v³
inline SpectralField d3v3(const VelocityField& v) { return derivative(v[2], 2); }

/// Full vorticity ∇ × v.
inline VectorSpectral curl(const VectorSpectral& v) {
  return {derivative(v[2], 1) - derivative(v[1], 2), derivative(v[0], 2) - derivative(v[2], 0),
          derivative(v[1], 0) - derivative(v[0], 1)};
}

inline SpectralField divergence(const VectorSpectral& v) {
  return derivative(v[0], 0) + derivative(v[1], 1) + derivative(v[2], 2);
}

/// The two scalar unknowns ω and ∂3v³ of a velocity field.
struct VorticityState {
  SpectralField omega;
  SpectralField d3v3;

  static VorticityState of(const VelocityField& v) { return {vertical_vorticity(v), lpns::d3v3(v)}; }
};

/// v_h = v_curl + v_div with v_curl = ∇_h^⊥ Δ_h^{−1} ω and
/// v_div = −∇_h Δ_h^{−1} ∂3v³. Modes with k_h = 0 map to zero.
struct HorizontalSplit {
  HorizontalField curl_part;
  HorizontalField div_part;
};

inline HorizontalSplit horizontal_biot_savart(const VorticityState& s) {
  const SpectralField psi = inverse_horizontal_laplacian(s.omega);
  const SpectralField chi = inverse_horizontal_laplacian(s.d3v3);
  SpectralField dchi1 = derivative(chi, 0), dchi2 = derivative(chi, 1);
  dchi1 *= -1.0;
  dchi2 *= -1.0;
  SpectralField curl1 = derivative(psi, 1);
  curl1 *= -1.0;  // ∇_h^⊥ = (−∂2, ∂1)
  return {{std::move(curl1), derivative(psi, 0)}, {std::move(dchi1), std::move(dchi2)}};
}

/// Σ_{ℓ,m} ∂_ℓ v^m ∂_m v^ℓ with dealiased products.
inline SpectralField velocity_gradient_contraction(const VelocityField& v) {
  std::array<std::array<SpectralField, 3>, 3> grad{
      {{derivative(v[0], 0), derivative(v[0], 1), derivative(v[0], 2)},
       {derivative(v[1], 0), derivative(v[1], 1), derivative(v[1], 2)},
       {derivative(v[2], 0), derivative(v[2], 1), derivative(v[2], 2)}}};
  // grad[m][l] = ∂_l v^m
  const Grid& g = v.grid();
  const Grid pg = g.padded();
  std::array<std::array<ComplexField, 3>, 3> ps{
      {{ComplexField(pg), ComplexField(pg), ComplexField(pg)},
       {ComplexField(pg), ComplexField(pg), ComplexField(pg)},
       {ComplexField(pg), ComplexField(pg), ComplexField(pg)}}};
  for (int m = 0; m < 3; ++m)
    for (int l = 0; l < 3; ++l) ps[m][l] = padded_samples(grad[m][l]);
  ComplexField sum(pg);
  for (std::size_t i = 0; i < pg.size(); ++i) {
    cplx s = 0.0;
    for (int l = 0; l < 3; ++l)
      for (int m = 0; m < 3; ++m) s += ps[m][l][i] * ps[l][m][i];
    sum[i] = s;
  }
  return from_padded_samples(sum, g);
}

/// Π = −Δ^{−1} Σ_{ℓ,m} ∂_ℓ v^m ∂_m v^ℓ
inline SpectralField pressure_from_velocity(const VelocityField& v) {
  SpectralField p = inverse_laplacian(velocity_gradient_contraction(v));
  p *= -1.0;
  return p;
}

/// a_α = sign(a)|a|^α pointwise, α ∈ ]0, 1].
inline RealField signed_power(const RealField& a, double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("alpha", alpha, "]0, 1]", "signed_power");
  RealField out(a.grid());
  if (alpha == 1.0) return a;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double x = a[i];
    out[i] = x == 0.0 ? 0.0 : std::copysign(std::pow(std::abs(x), alpha), x);
  }
  return out;
}

/// a |a|^{γ−1} for any γ > 0 (e.g. a_{r−1} = |a|^{r−2}a); not range checked.
inline RealField signed_power_any(const RealField& a, double gamma) {
  RealField out(a.grid());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double x = a[i];
    out[i] = x == 0.0 ? 0.0 : std::copysign(std::pow(std::abs(x), gamma), x);
  }
  return out;
}

/// Samples of a scalar field on the 3/2-padded grid, taken as real.
inline RealField padded_real(const SpectralField& a) { return padded_samples(a).real_part(); }

/// Quantities of the transformed field a_{r/2} measured on the padded grid:
/// ‖a_{r/2}‖²_{L²} and ‖∇a_{r/2}‖²_{L²}, the gradient by spectral
/// differentiation of the transformed samples.
struct SignedPowerEnergy {
  double l2_sq = 0.0;
  double grad_l2_sq = 0.0;
};

inline SignedPowerEnergy signed_power_energy(const SpectralField& a, double r) {
  const RealField ar = signed_power(padded_real(a), r / 2.0);
  const SpectralField h = forward(ar);
  double sum = 0.0, gsum = 0.0;
  for_each_mode(h.grid(), [&](std::size_t i, const Wavevector& k) {
    const double e = std::norm(h[i]);
    sum += e;
    long kk = 0;
    for (int ax = 0; ax < 3; ++ax) {
      const int kd = k[ax] == -h.grid().n(ax) / 2 ? 0 : k[ax];
      kk += long(kd) * kd;
    }
    gsum += double(kk) * e;
  });
  const double vol = 8.0 * kPi * kPi * kPi;
  return {vol * sum, vol * gsum};
}

}  // namespace lpns
