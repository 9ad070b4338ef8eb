#pragma once

#include <cmath>
#include <utility>

namespace lpns {

/// The dyadic pair (χ, φ) behind every block operator.
///
/// χ is built from the C^∞ step S(x) = ψ(x)/(ψ(x) + ψ(1−x)), ψ(t) = e^{−1/t}:
/// χ = 1 on [0, 3/4], χ = 0 on [4/3, ∞) and χ(τ) = S(1 − x) in between with
/// x = (τ − 3/4)/(4/3 − 3/4). φ(τ) = χ(τ/2) − χ(τ) is then supported in
/// [3/4, 8/3], and both partitions of unity hold by telescoping:
///   Σ_{j∈ℤ} φ(2^{−j}τ) = 1 (τ > 0),   χ(τ) + Σ_{j≥0} φ(2^{−j}τ) = 1.
class DyadicCutoff {
 public:
  static constexpr double kInner = 0.75;
  static constexpr double kOuter = 4.0 / 3.0;
  static constexpr double kPhiLow = 0.75;
  static constexpr double kPhiHigh = 8.0 / 3.0;

  static double chi(double tau) {
    tau = std::abs(tau);
    if (tau <= kInner) return 1.0;
    if (tau >= kOuter) return 0.0;
    const double x = (tau - kInner) / (kOuter - kInner);
    // S(1 − x) = 1 / (1 + exp(1/(1−x) − 1/x))
    const double e = 1.0 / (1.0 - x) - 1.0 / x;
    if (e > 700.0) return 0.0;
    return 1.0 / (1.0 + std::exp(e));
  }

  static double phi(double tau) { return chi(0.5 * tau) - chi(tau); }

  /// φ(2^{−j}τ)
  static double block_weight(int j, double tau) { return phi(std::ldexp(tau, -j)); }

  /// χ(2^{−j}τ) for τ > 0, and 0 at τ = 0 (homogeneous convention).
  static double low_weight(int j, double tau) {
    return tau > 0.0 ? chi(std::ldexp(tau, -j)) : 0.0;
  }

  /// Indices j with φ(2^{−j}τ) ≠ 0 for some τ in [tau_min, tau_max]; empty
  /// (first > second) when tau_max <= 0.
  static std::pair<int, int> nontrivial_range(double tau_min, double tau_max) {
    if (tau_max <= 0.0) return {0, -1};
    // need 3/4 < 2^{−j}τ < 8/3  ⇔  log2(3τ/8) < j < log2(4τ/3)
    const int lo = int(std::floor(std::log2(3.0 * tau_min / 8.0))) + 1;
    const int hi = int(std::ceil(std::log2(4.0 * tau_max / 3.0))) - 1;
    return {lo, hi};
  }

  /// The (at most two) blocks active at τ > 0, as (j, φ(2^{−j}τ)).
  template <class F>
  static void for_each_active(double tau, F&& f) {
    if (tau <= 0.0) return;
    const int j0 = int(std::floor(std::log2(tau)));
    for (int j = j0 - 1; j <= j0 + 1; ++j) {
      const double w = block_weight(j, tau);
      if (w != 0.0) f(j, w);
    }
  }
};

}  // namespace lpns
