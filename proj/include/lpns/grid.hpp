#pragma once

#include <cmath>
#include <cstddef>
#include <string>

#include "lpns/error.hpp"

namespace lpns {

/// Integer wavevector k = (k1, k2, k3); k_h = (k1, k2) is the horizontal part.
struct Wavevector {
  int k1 = 0, k2 = 0, k3 = 0;

  long horizontal_sq() const { return long(k1) * k1 + long(k2) * k2; }
  long norm_sq() const { return horizontal_sq() + long(k3) * k3; }
  double horizontal() const { return std::sqrt(double(horizontal_sq())); }
  double vertical() const { return std::abs(double(k3)); }
  double norm() const { return std::sqrt(double(norm_sq())); }
  int operator[](int axis) const { return axis == 0 ? k1 : axis == 1 ? k2 : k3; }
  bool is_zero() const { return k1 == 0 && k2 == 0 && k3 == 0; }
  friend bool operator==(const Wavevector&, const Wavevector&) = default;
};

/// Uniform periodic grid on [0, 2π)³ with n1 × n2 × n3 samples.
///
/// Samples and coefficients share one row-major layout with x3 (resp. k3)
/// varying fastest: index = (i1·n2 + i2)·n3 + i3. Coefficient index i maps to
/// wavenumber i for i < n/2 and i − n otherwise, so k ∈ {−n/2, …, n/2 − 1}.
class Grid {
 public:
  Grid(int n1, int n2, int n3) : n_{n1, n2, n3} {
    for (int a = 0; a < 3; ++a) {
      if (n_[a] < 8 || n_[a] % 2 != 0)
        throw InvariantError("grid size n" + std::to_string(a + 1) + " = " +
                             std::to_string(n_[a]) +
                             " must be even and at least 8");
    }
  }
  explicit Grid(int n) : Grid(n, n, n) {}

  int n(int axis) const { return n_[axis]; }
  int n1() const { return n_[0]; }
  int n2() const { return n_[1]; }
  int n3() const { return n_[2]; }
  std::size_t size() const { return std::size_t(n_[0]) * n_[1] * n_[2]; }

  std::size_t index(int i1, int i2, int i3) const {
    return (std::size_t(i1) * n_[1] + i2) * n_[2] + i3;
  }

  static int wavenumber(int i, int n) { return i < n / 2 ? i : i - n; }
  static int slot(int k, int n) { return ((k % n) + n) % n; }

  Wavevector wavevector(int i1, int i2, int i3) const {
    return {wavenumber(i1, n_[0]), wavenumber(i2, n_[1]), wavenumber(i3, n_[2])};
  }

  bool contains(const Wavevector& k) const {
    for (int a = 0; a < 3; ++a)
      if (k[a] < -n_[a] / 2 || k[a] >= n_[a] / 2) return false;
    return true;
  }

  std::size_t index_of(const Wavevector& k) const {
    return index(slot(k.k1, n_[0]), slot(k.k2, n_[1]), slot(k.k3, n_[2]));
  }

  /// Wavenumber used for a first derivative along `axis`; the unpaired
  /// Nyquist mode −n/2 is mapped to 0 so that real fields stay real.
  int derivative_wavenumber(int i, int axis) const {
    const int k = wavenumber(i, n_[axis]);
    return k == -n_[axis] / 2 ? 0 : k;
  }

  double cell_volume() const {
    constexpr double two_pi = 6.283185307179586476925286766559;
    return two_pi * two_pi * two_pi / double(size());
  }

  /// Grid coordinate x_axis of sample i.
  double coordinate(int i, int axis) const {
    return 6.283185307179586476925286766559 * double(i) / double(n_[axis]);
  }

  /// Largest |ξ_h|, |ξ3| and |ξ| over the represented wavevectors.
  double max_horizontal() const {
    return std::hypot(n_[0] / 2.0, n_[1] / 2.0);
  }
  double max_vertical() const { return n_[2] / 2.0; }
  double max_norm() const {
    return std::sqrt(n_[0] * n_[0] / 4.0 + n_[1] * n_[1] / 4.0 +
                     n_[2] * n_[2] / 4.0);
  }

  /// Grid for alias-free quadratic products: at least 3n/2 per axis, even.
  Grid padded() const {
    auto up = [](int n) {
      int m = (3 * n + 1) / 2;
      return m % 2 == 0 ? m : m + 1;
    };
    return Grid(up(n_[0]), up(n_[1]), up(n_[2]));
  }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  int n_[3];
};

inline void require_same_grid(const Grid& a, const Grid& b, const char* what) {
  if (!(a == b))
    throw GridMismatch(std::string(what) + ": grids differ (" +
                       std::to_string(a.n1()) + "x" + std::to_string(a.n2()) +
                       "x" + std::to_string(a.n3()) + " vs " +
                       std::to_string(b.n1()) + "x" + std::to_string(b.n2()) +
                       "x" + std::to_string(b.n3()) + ")");
}

/// Calls f(index, wavevector) for every coefficient slot of `g`.
template <class F>
void for_each_mode(const Grid& g, F&& f) {
  std::size_t idx = 0;
  for (int i1 = 0; i1 < g.n1(); ++i1) {
    const int k1 = Grid::wavenumber(i1, g.n1());
    for (int i2 = 0; i2 < g.n2(); ++i2) {
      const int k2 = Grid::wavenumber(i2, g.n2());
      for (int i3 = 0; i3 < g.n3(); ++i3, ++idx)
        f(idx, Wavevector{k1, k2, Grid::wavenumber(i3, g.n3())});
    }
  }
}

/// Calls f(index, x1, x2, x3) for every sample point of `g`.
template <class F>
void for_each_point(const Grid& g, F&& f) {
  std::size_t idx = 0;
  for (int i1 = 0; i1 < g.n1(); ++i1) {
    const double x1 = g.coordinate(i1, 0);
    for (int i2 = 0; i2 < g.n2(); ++i2) {
      const double x2 = g.coordinate(i2, 1);
      for (int i3 = 0; i3 < g.n3(); ++i3, ++idx) f(idx, x1, x2, g.coordinate(i3, 2));
    }
  }
}

}  // namespace lpns
