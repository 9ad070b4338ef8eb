#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <span>
#include <vector>

#include "lpns/grid.hpp"

namespace lpns {

using cplx = std::complex<double>;

/// Real samples of a scalar on a Grid, in the grid's row-major order.
class RealField {
 public:
  explicit RealField(Grid g) : grid_(g), v_(g.size(), 0.0) {}
  RealField(Grid g, std::vector<double> samples) : grid_(g), v_(std::move(samples)) {
    if (v_.size() != grid_.size())
      throw GridMismatch("RealField: " + std::to_string(v_.size()) +
                         " samples for a grid of " + std::to_string(grid_.size()));
  }

  /// Samples f(x1, x2, x3) at every grid point.
  template <class F>
  static RealField sample(Grid g, F&& f) {
    RealField out(g);
    for_each_point(g, [&](std::size_t i, double x1, double x2, double x3) {
      out.v_[i] = f(x1, x2, x3);
    });
    return out;
  }

  const Grid& grid() const { return grid_; }
  std::size_t size() const { return v_.size(); }
  double& operator[](std::size_t i) { return v_[i]; }
  double operator[](std::size_t i) const { return v_[i]; }
  std::span<double> values() { return v_; }
  std::span<const double> values() const { return v_; }

  bool all_finite() const {
    return std::all_of(v_.begin(), v_.end(), [](double x) { return std::isfinite(x); });
  }

 private:
  Grid grid_;
  std::vector<double> v_;
};

/// Complex physical-space samples; produced by inverse transforms of fields
/// that need not be real (single complex exponentials, padded products).
class ComplexField {
 public:
  explicit ComplexField(Grid g) : grid_(g), v_(g.size(), cplx{}) {}
  const Grid& grid() const { return grid_; }
  std::size_t size() const { return v_.size(); }
  cplx& operator[](std::size_t i) { return v_[i]; }
  const cplx& operator[](std::size_t i) const { return v_[i]; }
  std::span<cplx> values() { return v_; }
  std::span<const cplx> values() const { return v_; }

  RealField real_part() const {
    RealField out(grid_);
    for (std::size_t i = 0; i < v_.size(); ++i) out[i] = v_[i].real();
    return out;
  }

 private:
  Grid grid_;
  std::vector<cplx> v_;
};

/// Fourier coefficients of a scalar: coeff(k) with f(x) = Σ_k coeff(k) e^{ik·x}.
class SpectralField {
 public:
  explicit SpectralField(Grid g) : grid_(g), c_(g.size(), cplx{}) {}

  /// Unit-amplitude complex exponential e^{ik·x}, times `amplitude`.
  static SpectralField mode(Grid g, Wavevector k, cplx amplitude = 1.0) {
    if (!g.contains(k)) throw InvariantError("mode outside the grid's wavevector range");
    SpectralField out(g);
    out[g.index_of(k)] = amplitude;
    return out;
  }

  const Grid& grid() const { return grid_; }
  std::size_t size() const { return c_.size(); }
  cplx& operator[](std::size_t i) { return c_[i]; }
  const cplx& operator[](std::size_t i) const { return c_[i]; }
  cplx& at(const Wavevector& k) { return c_[grid_.index_of(k)]; }
  const cplx& at(const Wavevector& k) const { return c_[grid_.index_of(k)]; }
  std::span<cplx> coeffs() { return c_; }
  std::span<const cplx> coeffs() const { return c_; }

  cplx mean() const { return c_[0]; }

  SpectralField& operator+=(const SpectralField& o) {
    require_same_grid(grid_, o.grid_, "SpectralField +=");
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  SpectralField& operator-=(const SpectralField& o) {
    require_same_grid(grid_, o.grid_, "SpectralField -=");
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  SpectralField& operator*=(cplx s) {
    for (auto& c : c_) c *= s;
    return *this;
  }
  friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
  friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
  friend SpectralField operator*(cplx s, SpectralField a) { return a *= s; }

  /// a += s·b
  void axpy(cplx s, const SpectralField& b) {
    require_same_grid(grid_, b.grid_, "SpectralField axpy");
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += s * b.c_[i];
  }

  /// (Σ_k |coeff(k)|²)^{1/2}
  double coefficient_norm() const {
    double s = 0.0;
    for (const auto& c : c_) s += std::norm(c);
    return std::sqrt(s);
  }
  double max_abs() const {
    double m = 0.0;
    for (const auto& c : c_) m = std::max(m, std::abs(c));
    return m;
  }
  bool all_finite() const {
    return std::all_of(c_.begin(), c_.end(), [](const cplx& c) {
      return std::isfinite(c.real()) && std::isfinite(c.imag());
    });
  }

  /// Makes the coefficients exactly Hermitian, coeff(−k) = conj(coeff(k))
  /// with −k taken modulo the grid. Slots above n3/2 are overwritten from
  /// their mirrors; inside the self-mirrored planes k3 = 0 and k3 = −n3/2 the
  /// later slot of each pair is overwritten and self-paired slots made real.
  void enforce_hermitian() {
    const Grid& g = grid_;
    const int h = g.n3() / 2;
    for (int i1 = 0; i1 < g.n1(); ++i1)
      for (int i2 = 0; i2 < g.n2(); ++i2) {
        const int j1 = (g.n1() - i1) % g.n1();
        const int j2 = (g.n2() - i2) % g.n2();
        for (int i3 = h + 1; i3 < g.n3(); ++i3)
          c_[g.index(i1, i2, i3)] = std::conj(c_[g.index(j1, j2, g.n3() - i3)]);
        for (int i3 : {0, h}) {
          const std::size_t a = g.index(i1, i2, i3), b = g.index(j1, j2, i3);
          if (a == b) c_[a] = c_[a].real();
          else if (a > b) c_[a] = std::conj(c_[b]);
        }
      }
  }

 private:
  Grid grid_;
  std::vector<cplx> c_;
};

/// Relative distance ‖a − b‖/‖b‖ in coefficient norm (absolute when b = 0).
inline double relative_difference(const SpectralField& a, const SpectralField& b) {
  require_same_grid(a.grid(), b.grid(), "relative_difference");
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += std::norm(a[i] - b[i]);
    den += std::norm(b[i]);
  }
  return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

}  // namespace lpns
