#pragma once

#include <map>
#include <vector>

#include "lpns/cutoff.hpp"
#include "lpns/spectral.hpp"

namespace lpns {

/// Which frequency magnitude a block operator localizes: |ξ|, |ξ_h| or |ξ3|.
enum class Direction { iso, horizontal, vertical };

inline double magnitude(const Wavevector& k, Direction d) {
  switch (d) {
    case Direction::iso: return k.norm();
    case Direction::horizontal: return k.horizontal();
    case Direction::vertical: return k.vertical();
  }
  return 0.0;
}

inline long magnitude_sq(const Wavevector& k, Direction d) {
  switch (d) {
    case Direction::iso: return k.norm_sq();
    case Direction::horizontal: return k.horizontal_sq();
    case Direction::vertical: return long(k.k3) * k.k3;
  }
  return 0;
}

inline const char* direction_name(Direction d) {
  return d == Direction::iso ? "iso" : d == Direction::horizontal ? "h" : "v";
}

/// Block indices j with a possibly nonzero Δ_j on `g`; every other block is
/// exactly zero.
inline std::pair<int, int> block_range(const Grid& g, Direction d) {
  const double top = d == Direction::iso          ? g.max_norm()
                     : d == Direction::horizontal ? g.max_horizontal()
                                                  : g.max_vertical();
  return DyadicCutoff::nontrivial_range(1.0, top);
}

struct BlockIndex {
  enum class Kind { iso, horizontal, vertical, low_iso, low_h, low_v };
  Kind kind = Kind::iso;
  int index = 0;

  Direction direction() const {
    switch (kind) {
      case Kind::iso:
      case Kind::low_iso: return Direction::iso;
      case Kind::horizontal:
      case Kind::low_h: return Direction::horizontal;
      default: return Direction::vertical;
    }
  }
  bool is_low() const {
    return kind == Kind::low_iso || kind == Kind::low_h || kind == Kind::low_v;
  }

  static BlockIndex delta(Direction d, int j) {
    return {d == Direction::iso ? Kind::iso : d == Direction::horizontal ? Kind::horizontal
                                                                        : Kind::vertical,
            j};
  }
  static BlockIndex low(Direction d, int j) {
    return {d == Direction::iso ? Kind::low_iso : d == Direction::horizontal ? Kind::low_h
                                                                            : Kind::low_v,
            j};
  }
};

namespace detail {
// Cutoff values tabulated on the integer squared magnitudes |k|², |k_h|², k3².
inline std::vector<double> tabulate(long max_sq, bool low, int j) {
  std::vector<double> t(std::size_t(max_sq) + 1);
  for (long m = 0; m <= max_sq; ++m) {
    const double tau = std::sqrt(double(m));
    t[std::size_t(m)] = low ? DyadicCutoff::low_weight(j, tau) : DyadicCutoff::block_weight(j, tau);
  }
  return t;
}

inline long max_magnitude_sq(const Grid& g, Direction d) {
  const long h1 = g.n1() / 2, h2 = g.n2() / 2, h3 = g.n3() / 2;
  switch (d) {
    case Direction::iso: return h1 * h1 + h2 * h2 + h3 * h3;
    case Direction::horizontal: return h1 * h1 + h2 * h2;
    case Direction::vertical: return h3 * h3;
  }
  return 0;
}
}  // namespace detail

/// Δ_j, Δ_k^h, Δ_ℓ^v (multiplier φ(2^{−j}τ)) or S_j, S_k^h, S_ℓ^v (χ(2^{−j}τ),
/// zero where τ = 0).
inline SpectralField block(const SpectralField& a, BlockIndex b) {
  const Direction d = b.direction();
  const auto table = detail::tabulate(detail::max_magnitude_sq(a.grid(), d), b.is_low(), b.index);
  SpectralField out(a.grid());
  for_each_mode(a.grid(), [&](std::size_t i, const Wavevector& k) {
    const double w = table[std::size_t(magnitude_sq(k, d))];
    if (w != 0.0) out[i] = w * a[i];
  });
  return out;
}

/// Δ_k^h Δ_ℓ^v a
inline SpectralField aniso_block(const SpectralField& a, int k, int l) {
  const auto th = detail::tabulate(detail::max_magnitude_sq(a.grid(), Direction::horizontal), false, k);
  const auto tv = detail::tabulate(detail::max_magnitude_sq(a.grid(), Direction::vertical), false, l);
  SpectralField out(a.grid());
  for_each_mode(a.grid(), [&](std::size_t i, const Wavevector& kv) {
    const double w = th[std::size_t(kv.horizontal_sq())] * tv[std::size_t(long(kv.k3) * kv.k3)];
    if (w != 0.0) out[i] = w * a[i];
  });
  return out;
}

/// All nontrivial blocks of `a` in direction d, keyed by block index.
inline std::map<int, SpectralField> decompose(const SpectralField& a, Direction d) {
  std::map<int, SpectralField> out;
  const auto [lo, hi] = block_range(a.grid(), d);
  for (int j = lo; j <= hi; ++j) out.emplace(j, block(a, BlockIndex::delta(d, j)));
  return out;
}

// ---------------------------------------------------------------------------
// Sequence norms

/// ‖(x_j)‖_{ℓ^q}, q ∈ [1, ∞].
inline double sequence_norm(std::span<const double> x, double q) {
  if (q == kInf) {
    double m = 0.0;
    for (double v : x) m = std::max(m, std::abs(v));
    return m;
  }
  double s = 0.0;
  for (double v : x) s += std::pow(std::abs(v), q);
  return std::pow(s, 1.0 / q);
}

struct BesovSpec {
  double s = 0.0;
  double p = 2.0;
  double q = 2.0;

  void validate() const {
    if (!(p >= 1.0)) throw DomainError("p", p, "[1, inf]", "Besov norm");
    if (!(q >= 1.0)) throw DomainError("q", q, "[1, inf]", "Besov norm");
    if (!std::isfinite(s)) throw DomainError("s", s, "]-inf, inf[", "Besov norm");
  }
};

/// Horizontal (s1, q1) and vertical (s2, q2) regularity with common integrability p.
struct AnisoBesovSpec {
  double s1 = 0.0;
  double q1 = 2.0;
  double s2 = 0.0;
  double q2 = 2.0;
  double p = 2.0;

  void validate() const {
    if (!(p >= 1.0)) throw DomainError("p", p, "[1, inf]", "anisotropic Besov norm");
    if (!(q1 >= 1.0)) throw DomainError("q1", q1, "[1, inf]", "anisotropic Besov norm");
    if (!(q2 >= 1.0)) throw DomainError("q2", q2, "[1, inf]", "anisotropic Besov norm");
    if (!std::isfinite(s1) || !std::isfinite(s2))
      throw DomainError("s", std::isfinite(s1) ? s2 : s1, "]-inf, inf[", "anisotropic Besov norm");
  }
};

namespace detail {
inline constexpr double kTwoPiCubedSqrt = 15.749609945722419;  // (2π)^{3/2}

/// Lᵖ norm of the field with coefficients w(k)·coeff(k).
template <class Weight>
double weighted_block_lp(const SpectralField& a, double p, Weight&& w) {
  if (p == 2.0) {
    double s = 0.0;
    for_each_mode(a.grid(), [&](std::size_t i, const Wavevector& k) {
      const double wk = w(k);
      if (wk != 0.0) s += wk * wk * std::norm(a[i]);
    });
    return kTwoPiCubedSqrt * std::sqrt(s);
  }
  SpectralField b(a.grid());
  bool any = false;
  for_each_mode(a.grid(), [&](std::size_t i, const Wavevector& k) {
    const double wk = w(k);
    if (wk != 0.0 && a[i] != cplx{}) {
      b[i] = wk * a[i];
      any = true;
    }
  });
  return any ? lp_norm(inverse_complex(b), p) : 0.0;
}
}  // namespace detail

/// ‖Δ_j a‖_{Lᵖ} for every nontrivial j, as (j, value) pairs in increasing j.
inline std::vector<std::pair<int, double>> block_lp_norms(const SpectralField& a, Direction d, double p) {
  detail::require_exponent(p, "block_lp_norms");
  std::vector<std::pair<int, double>> out;
  const auto [lo, hi] = block_range(a.grid(), d);
  const long msq = detail::max_magnitude_sq(a.grid(), d);
  for (int j = lo; j <= hi; ++j) {
    const auto t = detail::tabulate(msq, false, j);
    out.emplace_back(j, detail::weighted_block_lp(a, p, [&](const Wavevector& k) {
                       return t[std::size_t(magnitude_sq(k, d))];
                     }));
  }
  return out;
}

struct AnisoBlockNorm {
  int k;
  int l;
  double value;
};

/// ‖Δ_k^h Δ_ℓ^v a‖_{Lᵖ} for every nontrivial (k, ℓ), k-major.
inline std::vector<AnisoBlockNorm> aniso_block_lp_norms(const SpectralField& a, double p) {
  detail::require_exponent(p, "aniso_block_lp_norms");
  std::vector<AnisoBlockNorm> out;
  const auto [klo, khi] = block_range(a.grid(), Direction::horizontal);
  const auto [llo, lhi] = block_range(a.grid(), Direction::vertical);
  const long mh = detail::max_magnitude_sq(a.grid(), Direction::horizontal);
  const long mv = detail::max_magnitude_sq(a.grid(), Direction::vertical);
  for (int k = klo; k <= khi; ++k) {
    const auto th = detail::tabulate(mh, false, k);
    for (int l = llo; l <= lhi; ++l) {
      const auto tv = detail::tabulate(mv, false, l);
      out.push_back({k, l, detail::weighted_block_lp(a, p, [&](const Wavevector& kv) {
                       return th[std::size_t(kv.horizontal_sq())] *
                              tv[std::size_t(long(kv.k3) * kv.k3)];
                     })});
    }
  }
  return out;
}

/// ‖a‖_{Ḃ^s_{p,q}} = ‖(2^{js}‖Δ_j a‖_{Lᵖ})_j‖_{ℓ^q}, over the nontrivial blocks.
inline double besov_norm(const SpectralField& a, const BesovSpec& spec) {
  spec.validate();
  std::vector<double> seq;
  for (const auto& [j, v] : block_lp_norms(a, Direction::iso, spec.p))
    seq.push_back(std::exp2(j * spec.s) * v);
  return sequence_norm(seq, spec.q);
}

/// ‖a‖_{(Ḃ^{s1}_{p,q1})_h(Ḃ^{s2}_{p,q2})_v}: ℓ^{q2} over the vertical index
/// ℓ inside, then ℓ^{q1} over the horizontal index k.
inline double aniso_besov_norm(const SpectralField& a, const AnisoBesovSpec& spec) {
  spec.validate();
  const auto blocks = aniso_block_lp_norms(a, spec.p);
  std::vector<double> outer, inner;
  for (std::size_t i = 0; i < blocks.size();) {
    const int k = blocks[i].k;
    inner.clear();
    for (; i < blocks.size() && blocks[i].k == k; ++i)
      inner.push_back(std::exp2(blocks[i].l * spec.s2) * blocks[i].value);
    outer.push_back(std::exp2(k * spec.s1) * sequence_norm(inner, spec.q2));
  }
  return sequence_norm(outer, spec.q1);
}

/// L^p_h((Ḃ^s_{p,q})_v): the vertical Besov norm of x3 ↦ a(x_h, x3) taken at
/// every horizontal point, then Lᵖ over x_h.
inline double horizontal_lp_vertical_besov(const SpectralField& a, const BesovSpec& spec) {
  spec.validate();
  const Grid& g = a.grid();
  const std::size_t columns = std::size_t(g.n1()) * g.n2();
  const double dx3 = 2.0 * kPi / g.n3();
  std::vector<std::vector<double>> seq(columns);
  const auto [lo, hi] = block_range(g, Direction::vertical);
  for (int l = lo; l <= hi; ++l) {
    const ComplexField b = inverse_complex(block(a, BlockIndex::delta(Direction::vertical, l)));
    const double w = std::exp2(l * spec.s);
    for (std::size_t c = 0; c < columns; ++c) {
      const std::size_t base = c * g.n3();
      seq[c].push_back(w * detail::lp_sum(std::size_t(g.n3()), dx3, spec.p,
                                          [&](std::size_t i) { return std::abs(b[base + i]); }));
    }
  }
  std::vector<double> col(columns);
  for (std::size_t c = 0; c < columns; ++c) col[c] = sequence_norm(seq[c], spec.q);
  const double dxh = 4.0 * kPi * kPi / (double(g.n1()) * g.n2());
  return detail::lp_sum(columns, dxh, spec.p, [&](std::size_t i) { return col[i]; });
}

/// ‖a‖_{𝓑_p} with 𝓑_p = Ḃ^{−2+2/p}_{∞,∞}: sup_j 2^{j(−2+2/p)}‖Δ_j a‖_{L∞}.
inline double bp_norm(const SpectralField& a, double p) {
  if (!(p > 1.0 && p < kInf)) throw DomainError("p", p, "]1, inf[", "B_p norm");
  return besov_norm(a, {-2.0 + 2.0 / p, kInf, kInf});
}

}  // namespace lpns
