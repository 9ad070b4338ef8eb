#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "lpns/initial_data.hpp"
#include "lpns/littlewood_paley.hpp"

namespace lpns {

enum class FieldClass {
  bandlimited_random,   ///< mean-zero scalar, modes 1 ≤ |k| ≤ kmax
  divfree_random,       ///< divergence-free velocity, modes 1 ≤ |k| ≤ kmax
  positive_smooth,      ///< 1 + band-limited perturbation with ℓ¹ coefficient mass ½
  single_cell,          ///< scalar supported where Δ_k^h Δ_ℓ^v acts as the identity
  anisotropic_pancake,  ///< scalar with 1 ≤ |k3| ≤ |k_h|/4
  anisotropic_tube      ///< scalar with 1 ≤ |k_h| ≤ |k3|/4
};

inline const char* class_name(FieldClass c) {
  switch (c) {
    case FieldClass::bandlimited_random: return "bandlimited_random";
    case FieldClass::divfree_random: return "divfree_random";
    case FieldClass::positive_smooth: return "positive_smooth";
    case FieldClass::single_cell: return "single_cell";
    case FieldClass::anisotropic_pancake: return "anisotropic_pancake";
    case FieldClass::anisotropic_tube: return "anisotropic_tube";
  }
  return "?";
}

inline FieldClass parse_field_class(const std::string& s) {
  for (FieldClass c : {FieldClass::bandlimited_random, FieldClass::divfree_random,
                       FieldClass::positive_smooth, FieldClass::single_cell,
                       FieldClass::anisotropic_pancake, FieldClass::anisotropic_tube})
    if (s == class_name(c)) return c;
  throw ParseError("unknown field class '" + s + "'");
}

/// Seeded ensemble description. kmax = 0 selects the resolution-scaled band
/// kmax = n/8, so doubling the resolution also doubles the resolved band.
struct EnsembleSpec {
  std::uint64_t seed = 1;
  int count = 50;
  int resolution = 32;
  FieldClass cls = FieldClass::bandlimited_random;
  int kmax = 0;
  int cell_k = 2;  ///< single_cell horizontal block index
  int cell_l = 1;  ///< single_cell vertical block index

  int band() const { return kmax > 0 ? kmax : std::max(2, resolution / 8); }
};

/// One ensemble member: a scalar (1 component) or a velocity (3 components).
struct Member {
  int id = 0;
  std::vector<SpectralField> comps;
  bool is_vector() const { return comps.size() == 3; }
  const SpectralField& scalar() const { return comps.front(); }
};

/// Post-generation class census.
struct ClassCheck {
  bool ok = true;
  double worst = 0.0;  ///< worst value of the checked class statistic
  std::string what;
};

namespace detail {

/// Anisotropy margin for the pancake/tube classes: support is confined to
/// |k_short| ≤ |k_long|/4 with |k_long| up to 3·band.
inline constexpr int kAspect = 4;

inline bool in_cell_window(double tau, int j) {
  // φ(2^{−j}τ) = 1 exactly on [4/3, 3/2]·2^j
  return tau >= std::ldexp(4.0 / 3.0, j) && tau <= std::ldexp(1.5, j);
}

/// Calls f(k) for every canonical half-space wavevector in the box of the
/// given extent; the visiting order depends on the extent only.
template <class Keep>
SpectralField random_scalar(const Grid& g, std::mt19937_64& rng, int extent, double slope, Keep&& keep) {
  std::normal_distribution<double> normal;
  SpectralField a(g);
  detail::for_each_half_box(extent, [&](const Wavevector& k) {
    const cplx z(normal(rng), normal(rng));
    if (!keep(k)) return;
    const cplx c = z * std::pow(k.norm(), slope);
    a.at(k) = c;
    a.at(Wavevector{-k.k1, -k.k2, -k.k3}) = std::conj(c);
  });
  return a;
}

inline int class_extent(const EnsembleSpec& s) {
  switch (s.cls) {
    case FieldClass::anisotropic_pancake:
    case FieldClass::anisotropic_tube: return 3 * s.band();
    case FieldClass::single_cell:
      return int(std::floor(std::max(std::ldexp(1.5, s.cell_k), std::ldexp(1.5, s.cell_l))));
    default: return s.band();
  }
}

inline Member make_member(const Grid& g, const EnsembleSpec& s, int id, std::uint64_t member_seed) {
  std::mt19937_64 rng(member_seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const double slope = -2.0 * uni(rng);  // per-member spectral slope in [−2, 0]
  const int K = s.band();
  Member m;
  m.id = id;
  switch (s.cls) {
    case FieldClass::bandlimited_random:
      m.comps.push_back(random_scalar(g, rng, K, slope, [&](const Wavevector& k) { return k.norm() <= K; }));
      break;
    case FieldClass::divfree_random: {
      RandomSpec rs;
      rs.seed = rng();
      rs.kmin = 1.0;
      rs.kmax = K;
      rs.slope = -1.0 - 2.0 * uni(rng);
      VelocityField v = initial_random_bandlimited(g, rs);
      m.comps.assign(v.components().begin(), v.components().end());
      break;
    }
    case FieldClass::positive_smooth: {
      SpectralField a = random_scalar(g, rng, K, slope, [&](const Wavevector& k) { return k.norm() <= K; });
      double l1 = 0.0;
      for (const auto& c : a.coeffs()) l1 += std::abs(c);
      if (l1 > 0.0) a *= 0.5 / l1;
      a.at(Wavevector{0, 0, 0}) = 1.0;
      m.comps.push_back(std::move(a));
      break;
    }
    case FieldClass::single_cell:
      m.comps.push_back(random_scalar(g, rng, class_extent(s), slope, [&](const Wavevector& k) {
        return in_cell_window(k.horizontal(), s.cell_k) && in_cell_window(std::abs(k.k3), s.cell_l);
      }));
      break;
    case FieldClass::anisotropic_pancake:
      m.comps.push_back(random_scalar(g, rng, 3 * K, slope, [&](const Wavevector& k) {
        return k.k3 != 0 && kAspect * std::abs(k.k3) <= k.horizontal() && k.horizontal() <= 3 * K;
      }));
      break;
    case FieldClass::anisotropic_tube:
      m.comps.push_back(random_scalar(g, rng, 3 * K, slope, [&](const Wavevector& k) {
        return k.horizontal_sq() != 0 && kAspect * k.horizontal() <= std::abs(k.k3) &&
               std::abs(k.k3) <= 3 * K;
      }));
      break;
  }
  return m;
}

}  // namespace detail

/// Verifies the defining property of the member's class.
inline ClassCheck check_class(const Member& m, const EnsembleSpec& s) {
  ClassCheck out;
  const Grid& g = m.comps.front().grid();
  auto energy_fraction = [&](auto&& pred) {
    double in = 0.0, tot = 0.0;
    for_each_mode(g, [&](std::size_t i, const Wavevector& k) {
      const double e = std::norm(m.scalar()[i]);
      tot += e;
      if (pred(k)) in += e;
    });
    return tot > 0.0 ? in / tot : 1.0;
  };
  switch (s.cls) {
    case FieldClass::divfree_random: {
      VectorSpectral v{m.comps[0], m.comps[1], m.comps[2]};
      out.worst = divergence_residual(v);
      out.ok = out.worst < VelocityField::kDivergenceTolerance;
      out.what = "relative divergence residual";
      break;
    }
    case FieldClass::positive_smooth: {
      const RealField f = inverse(m.scalar());
      out.worst = *std::min_element(f.values().begin(), f.values().end());
      out.ok = out.worst > 0.0;
      out.what = "minimum sample";
      break;
    }
    case FieldClass::bandlimited_random: {
      out.worst = std::abs(m.scalar().mean());
      out.ok = out.worst == 0.0;
      out.what = "mean";
      break;
    }
    case FieldClass::single_cell: {
      out.worst = energy_fraction([&](const Wavevector& k) {
        return detail::in_cell_window(k.horizontal(), s.cell_k) &&
               detail::in_cell_window(std::abs(k.k3), s.cell_l);
      });
      out.ok = out.worst == 1.0 && m.scalar().coefficient_norm() > 0.0;
      out.what = "energy fraction inside the cell window";
      break;
    }
    case FieldClass::anisotropic_pancake:
      out.worst = energy_fraction(
          [](const Wavevector& k) { return detail::kAspect * std::abs(k.k3) <= k.horizontal(); });
      out.ok = out.worst >= 0.99;
      out.what = "energy fraction with |k3| <= |k_h|/4";
      break;
    case FieldClass::anisotropic_tube:
      out.worst = energy_fraction(
          [](const Wavevector& k) { return detail::kAspect * k.horizontal() <= std::abs(k.k3); });
      out.ok = out.worst >= 0.99;
      out.what = "energy fraction with |k_h| <= |k3|/4";
      break;
  }
  return out;
}

/// Generates `count` members; every member passes its class check or the
/// call throws.
inline std::vector<Member> make_ensemble(const EnsembleSpec& s) {
  if (s.count < 1) throw DomainError("count", s.count, "[1, inf[", "make_ensemble");
  if (s.kmax < 0) throw DomainError("kmax", s.kmax, "[0, inf[", "make_ensemble");
  const Grid g(s.resolution);
  if (s.cls == FieldClass::single_cell &&
      (s.cell_k < 0 || s.cell_l < 0 || std::ldexp(4.0 / 3.0, s.cell_l) > std::floor(std::ldexp(1.5, s.cell_l))))
    throw DomainError("cell_l", s.cell_l, "[0, inf[ with an integer in [4/3, 3/2]*2^l", "single_cell");
  detail::require_band(g, detail::class_extent(s), class_name(s.cls));
  std::mt19937_64 master(s.seed);
  std::vector<Member> out;
  out.reserve(std::size_t(s.count));
  for (int i = 0; i < s.count; ++i) {
    out.push_back(detail::make_member(g, s, i, master()));
    const ClassCheck c = check_class(out.back(), s);
    if (!c.ok)
      throw InvariantError(std::string("make_ensemble: member ") + std::to_string(i) + " of class " +
                           class_name(s.cls) + " fails its check (" + c.what + " = " +
                           std::to_string(c.worst) + ")");
  }
  return out;
}

}  // namespace lpns
