#pragma once

#include <array>

#include "lpns/littlewood_paley.hpp"

namespace lpns {

/// Bony's decomposition ab = T(a,b) + T(b,a) + R(a,b) in one direction:
///   T(a,b) = Σ_j S_{j−1}a Δ_j b,   R(a,b) = Σ_j Δ_j a (Δ_{j−1} + Δ_j + Δ_{j+1}) b,
/// with blocks taken in |ξ|, |ξ_h| or |ξ3|. Modes where that magnitude is zero
/// belong to no block, so the pieces reconstruct (Pa)(Pb) where P removes
/// them. All products are formed on the 3/2-padded grid.
struct BonySplit {
  SpectralField low_high;   ///< T(a, b)
  SpectralField high_low;   ///< T(b, a)
  SpectralField remainder;  ///< R(a, b)

  SpectralField sum() const { return low_high + high_low + remainder; }
};

/// Removes every mode whose magnitude in direction d is zero.
inline SpectralField without_zero_magnitude(const SpectralField& a, Direction d) {
  SpectralField out(a.grid());
  for_each_mode(a.grid(), [&](std::size_t i, const Wavevector& k) {
    if (magnitude_sq(k, d) != 0) out[i] = a[i];
  });
  return out;
}

inline BonySplit bony_split(const SpectralField& a, const SpectralField& b,
                            Direction d = Direction::iso) {
  require_same_grid(a.grid(), b.grid(), "bony_split");
  const Grid& g = a.grid();
  const Grid pg = g.padded();
  const auto [lo, hi] = block_range(g, d);
  const std::size_t n = pg.size();

  auto padded_block = [&](const SpectralField& f, int j) {
    if (j < lo || j > hi) return ComplexField(pg);
    return padded_samples(block(f, BlockIndex::delta(d, j)));
  };

  ComplexField t_ab(pg), t_ba(pg), rem(pg);
  ComplexField low_a(pg), low_b(pg);  // S_{j−1} = Σ_{j' ≤ j−2} Δ_{j'}
  // sliding window of Δ_{j−1}, Δ_j, Δ_{j+1}
  std::array<ComplexField, 3> wa{ComplexField(pg), padded_block(a, lo), padded_block(a, lo + 1)};
  std::array<ComplexField, 3> wb{ComplexField(pg), padded_block(b, lo), padded_block(b, lo + 1)};
  ComplexField prev2_a(pg), prev2_b(pg);  // Δ_{j−2}

  for (int j = lo; j <= hi; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      low_a[i] += prev2_a[i];
      low_b[i] += prev2_b[i];
      const cplx da = wa[1][i], db = wb[1][i];
      t_ab[i] += low_a[i] * db;
      t_ba[i] += low_b[i] * da;
      rem[i] += da * (wb[0][i] + db + wb[2][i]);
    }
    prev2_a = std::move(wa[0]);
    prev2_b = std::move(wb[0]);
    wa[0] = std::move(wa[1]);
    wa[1] = std::move(wa[2]);
    wa[2] = padded_block(a, j + 2);
    wb[0] = std::move(wb[1]);
    wb[1] = std::move(wb[2]);
    wb[2] = padded_block(b, j + 2);
  }
  return {from_padded_samples(t_ab, g), from_padded_samples(t_ba, g), from_padded_samples(rem, g)};
}

inline SpectralField paraproduct_T(const SpectralField& a, const SpectralField& b,
                                   Direction d = Direction::iso) {
  return bony_split(a, b, d).low_high;
}

inline SpectralField remainder_R(const SpectralField& a, const SpectralField& b,
                                 Direction d = Direction::iso) {
  return bony_split(a, b, d).remainder;
}

inline BonySplit vertical_bony_split(const SpectralField& a, const SpectralField& b) {
  return bony_split(a, b, Direction::vertical);
}

inline BonySplit horizontal_bony_split(const SpectralField& a, const SpectralField& b) {
  return bony_split(a, b, Direction::horizontal);
}

}  // namespace lpns
