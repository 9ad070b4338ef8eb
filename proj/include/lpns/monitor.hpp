#pragma once

#include <optional>
#include <vector>

#include "lpns/littlewood_paley.hpp"
#include "lpns/solver.hpp"

namespace lpns {

/// Parameters of the tracked blow-up functionals. Admissible ranges:
///   r ∈ [3/2, 2[,  p ∈ ]4, 2r/(2−r)[,  θ ∈ ]max(0, 3α(r) − 2/p), α(r)[,  |e| = 1.
struct MonitorConfig {
  double p = 6.0;
  double r = 1.8;
  double theta = 0.03;
  std::array<double, 3> e{0.0, 0.0, 1.0};
  int cadence = 1;

  double alpha() const { return alpha_of(r); }
  double p_upper() const { return 2.0 * r / (2.0 - r); }
  double theta_lower() const { return std::max(0.0, 3.0 * alpha() - 2.0 / p); }

  void validate() const {
    if (!(r >= 1.5 && r < 2.0))
      throw DomainError("r", r, "[3/2, 2[", "vorticity integrability range");
    if (!(p > 4.0 && p < p_upper()))
      throw DomainError("p", p, "]4, 2r/(2-r)[ = ]4, " + std::to_string(p_upper()) + "[",
                        "blow-up criterion integrability range");
    if (!(theta > theta_lower() && theta < alpha()))
      throw DomainError("theta", theta,
                        "]max(0, 3alpha(r) - 2/p), alpha(r)[ = ]" + std::to_string(theta_lower()) +
                            ", " + std::to_string(alpha()) + "[",
                        "anisotropic energy estimate range");
    const double n = std::sqrt(e[0] * e[0] + e[1] * e[1] + e[2] * e[2]);
    if (!(std::abs(n - 1.0) <= 1e-12)) throw DomainError("|e|", n, "{1}", "direction vector");
    if (cadence < 1) throw DomainError("cadence", cadence, "[1, inf[", "monitor");
  }
};

/// One evaluation of every tracked functional. Fields suffixed _int are
/// running trapezoidal time integrals; prop*_rhs hold the constant-free core
/// of each right-hand side (see prop41_sides / prop51_sides).
struct MonitorRecord {
  double time = 0.0;
  double v3_crit = 0.0;        ///< ‖(v|e)‖_{Ḣ^{1/2+2/p}}
  double blowup_int = 0.0;     ///< ∫ v3_crit^p
  double omega_lr = 0.0;       ///< ‖ω‖_{Lʳ}
  double grad_om_int = 0.0;    ///< ∫ ‖∇ω_{r/2}‖²_{L²}
  double d33v3_int = 0.0;      ///< ∫ ‖∂3²v³‖²_{H^{θ,r}}
  double bp_max = 0.0;         ///< max_{k,ℓ} ‖∂_ℓ v^k‖_{𝓑_p}
  double excluded_energy = 0;  ///< energy fraction on k_h = 0 modes
  double prop41_lhs = 0.0;
  double prop41_rhs = 0.0;
  double prop51_lhs = 0.0;
  double prop51_rhs = 0.0;
  // instantaneous inputs of the two propositions
  double om_half_sq = 0.0;       ///< ‖ω_{r/2}‖²_{L²}
  double grad_om_half_sq = 0.0;  ///< ‖∇ω_{r/2}‖²_{L²}
  double d33v3_sq = 0.0;         ///< ‖∂3²v³‖²_{H^{θ,r}}
  double d3v3_sq = 0.0;          ///< ‖∂3v³‖²_{H^{θ,r}}
  double grad_d3v3_sq = 0.0;     ///< ‖∇∂3v³‖²_{H^{θ,r}}
  double grad_d3v3_int = 0.0;    ///< ∫ ‖∇∂3v³‖²_{H^{θ,r}}
  double forcing51 = 0.0;        ///< integrand of the history term of the ∂3v³ estimate
  double forcing51_int = 0.0;
  // initial-data terms carried along
  double om0_half_sq = 0.0;      ///< ‖|ω0|^{r/2}‖²_{L²}
  double vort0_lr_sq = 0.0;      ///< ‖Ω0‖²_{Lʳ}
  bool breakdown = false;  ///< set from the first record with a non-finite value on
};

/// CSV column names, in output order; version 1.
inline const std::vector<std::string>& monitor_columns() {
  static const std::vector<std::string> cols{
      "time",        "v3_crit",      "blowup_int",   "omega_lr",      "grad_om_int",
      "d33v3_int",   "bp_max",       "excluded_energy", "prop41_lhs", "prop41_rhs",
      "prop51_lhs",  "prop51_rhs",   "om_half_sq",   "grad_om_half_sq", "d33v3_sq",
      "d3v3_sq",     "grad_d3v3_sq", "grad_d3v3_int", "forcing51",    "forcing51_int",
      "om0_half_sq", "vort0_lr_sq",  "breakdown"};
  return cols;
}

inline std::vector<double> monitor_values(const MonitorRecord& m) {
  return {m.time,        m.v3_crit,      m.blowup_int,    m.omega_lr,        m.grad_om_int,
          m.d33v3_int,   m.bp_max,       m.excluded_energy, m.prop41_lhs,    m.prop41_rhs,
          m.prop51_lhs,  m.prop51_rhs,   m.om_half_sq,    m.grad_om_half_sq, m.d33v3_sq,
          m.d3v3_sq,     m.grad_d3v3_sq, m.grad_d3v3_int, m.forcing51,       m.forcing51_int,
          m.om0_half_sq, m.vort0_lr_sq,  m.breakdown ? 1.0 : 0.0};
}

/// ‖(v|e)‖_{Ḣ^{1/2+2/p}}
inline double directional_critical_norm(const VelocityField& v, const std::array<double, 3>& e,
                                        double p) {
  const double n = std::sqrt(e[0] * e[0] + e[1] * e[1] + e[2] * e[2]);
  if (!(std::abs(n - 1.0) <= 1e-12)) throw DomainError("|e|", n, "{1}", "direction vector");
  if (!(p >= 2.0 && p < kInf)) throw DomainError("p", p, "[2, inf[", "critical norm exponent");
  SpectralField ve(v.grid());
  for (int c = 0; c < 3; ++c)
    if (e[c] != 0.0) ve.axpy(e[c], v[c]);
  return sobolev_iso_norm(ve, 0.5 + 2.0 / p);
}

inline double directional_critical_norm(const VelocityField& v, const MonitorConfig& cfg) {
  cfg.validate();
  return directional_critical_norm(v, cfg.e, cfg.p);
}

/// max over the nine entries ∂_ℓ v^k of ‖·‖_{𝓑_p}.
inline double max_gradient_bp_norm(const VelocityField& v, double p) {
  double m = 0.0;
  for (int k = 0; k < 3; ++k)
    for (int l = 0; l < 3; ++l) m = std::max(m, bp_norm(derivative(v[k], l), p));
  return m;
}

namespace detail {

inline double htheta_sq(const SpectralField& a, const MonitorConfig& cfg) {
  const double n = htheta_r_norm(a, cfg.theta, cfg.r);
  return n * n;
}

/// Fills every instantaneous field of a record.
inline MonitorRecord measure(const StateSnapshot& s, const MonitorConfig& cfg) {
  const VelocityField& v = s.velocity;
  const double r = cfg.r, p = cfg.p, a = cfg.alpha();
  MonitorRecord m;
  m.time = s.time;
  m.v3_crit = directional_critical_norm(v, cfg.e, p);
  const SpectralField om = vertical_vorticity(v);
  const SignedPowerEnergy sp = signed_power_energy(om, r);
  m.om_half_sq = sp.l2_sq;
  m.grad_om_half_sq = sp.grad_l2_sq;
  m.omega_lr = std::pow(sp.l2_sq, 1.0 / r);
  const SpectralField d3 = d3v3(v);
  m.d3v3_sq = htheta_sq(d3, cfg);
  m.d33v3_sq = htheta_sq(derivative(d3, 2), cfg);
  m.grad_d3v3_sq = htheta_sq(derivative(d3, 0), cfg) + htheta_sq(derivative(d3, 1), cfg) + m.d33v3_sq;
  m.bp_max = max_gradient_bp_norm(v, p);
  m.excluded_energy = horizontal_axis_fraction(v.span());
  const double om_n = std::sqrt(m.om_half_sq), gom_n = std::sqrt(m.grad_om_half_sq);
  const double p_conj = p / (p - 1.0);
  m.forcing51 = m.v3_crit * std::pow(om_n, 2.0 * (2.0 * a + 1.0 / p)) * std::pow(gom_n, 2.0 / p_conj) +
                m.v3_crit * m.v3_crit * std::pow(om_n, 4.0 * (a + 1.0 / p)) *
                    std::pow(gom_n, 2.0 * (1.0 - 2.0 / p));
  return m;
}

inline double vorticity_lr_sq(const VelocityField& v, double r) {
  const VectorSpectral w = curl(v.components());
  const RealField comps[3] = {inverse(w[0]), inverse(w[1]), inverse(w[2])};
  const double n = lp_norm(std::span<const RealField>(comps), r);
  return n * n;
}

inline bool all_finite(const MonitorRecord& m) {
  for (double x : monitor_values(m))
    if (!std::isfinite(x)) return false;
  return true;
}

}  // namespace detail

/// Next record from the previous one (nullopt for the first snapshot).
/// Instantaneous quantities are recomputed; integrals advance by the
/// trapezoidal rule over [prev.time, snapshot.time].
inline MonitorRecord accumulate(const std::optional<MonitorRecord>& prev, const StateSnapshot& s,
                                const MonitorConfig& cfg) {
  cfg.validate();
  if (prev && s.time < prev->time)
    throw InvariantError("accumulate: snapshot time " + std::to_string(s.time) +
                         " precedes previous record time " + std::to_string(prev->time));
  MonitorRecord m = detail::measure(s, cfg);
  if (prev) {
    const double h = s.time - prev->time;
    auto trap = [h](double a, double b) { return 0.5 * h * (a + b); };
    m.blowup_int = prev->blowup_int + trap(std::pow(prev->v3_crit, cfg.p), std::pow(m.v3_crit, cfg.p));
    m.grad_om_int = prev->grad_om_int + trap(prev->grad_om_half_sq, m.grad_om_half_sq);
    m.d33v3_int = prev->d33v3_int + trap(prev->d33v3_sq, m.d33v3_sq);
    m.grad_d3v3_int = prev->grad_d3v3_int + trap(prev->grad_d3v3_sq, m.grad_d3v3_sq);
    m.forcing51_int = prev->forcing51_int + trap(prev->forcing51, m.forcing51);
    m.om0_half_sq = prev->om0_half_sq;
    m.vort0_lr_sq = prev->vort0_lr_sq;
  } else {
    m.om0_half_sq = m.om_half_sq;
    m.vort0_lr_sq = detail::vorticity_lr_sq(s.velocity, cfg.r);
  }
  const double r = cfg.r;
  m.prop41_lhs = m.om_half_sq / r + (r - 1.0) / (r * r) * m.grad_om_int;
  m.prop41_rhs = m.om0_half_sq / r + std::pow(m.d33v3_int, r / 2.0);
  m.prop51_lhs = m.d3v3_sq + m.grad_d3v3_int;
  m.prop51_rhs = m.vort0_lr_sq + m.forcing51_int;
  m.breakdown = (prev && prev->breakdown) || !detail::all_finite(m);
  return m;
}

/// Both sides of one of the two propositions along a history, with the
/// constant C replaced by the smallest value C* that makes lhs ≤ rhs at every
/// recorded time (+inf if no finite C does).
struct PropSides {
  std::vector<double> time, lhs, rhs, core, growth;
  double c_star = 0.0;
};

namespace detail {
inline void require_history(std::span<const MonitorRecord> h) {
  if (h.empty()) throw InvariantError("proposition sides: empty history");
}
}  // namespace detail

/// lhs = (1/r)‖ω_{r/2}‖² + ((r−1)/r²)∫‖∇ω_{r/2}‖²,
/// rhs = ((1/r)‖|ω0|^{r/2}‖² + (∫‖∂3²v³‖²_{H^{θ,r}})^{r/2})·exp(C ∫‖v³‖^p_{Ḣ^{1/2+2/p}}).
inline PropSides prop41_sides(std::span<const MonitorRecord> history, const MonitorConfig& cfg) {
  cfg.validate();
  detail::require_history(history);
  PropSides out;
  for (const auto& m : history) {
    out.time.push_back(m.time);
    out.lhs.push_back(m.prop41_lhs);
    out.core.push_back(m.prop41_rhs);
    out.growth.push_back(m.blowup_int);
    double need = 0.0;
    if (m.prop41_lhs > m.prop41_rhs)
      need = m.blowup_int > 0.0 ? std::log(m.prop41_lhs / m.prop41_rhs) / m.blowup_int : kInf;
    out.c_star = std::max(out.c_star, need);
  }
  for (std::size_t i = 0; i < out.lhs.size(); ++i)
    out.rhs.push_back(out.core[i] * std::exp(out.c_star * out.growth[i]));
  return out;
}

/// lhs = ‖∂3v³‖²_{H^{θ,r}} + ∫‖∇∂3v³‖²_{H^{θ,r}},
/// rhs = C exp(C ∫‖v³‖^p)·(‖Ω0‖²_{Lʳ} + ∫ forcing51).
inline PropSides prop51_sides(std::span<const MonitorRecord> history, const MonitorConfig& cfg) {
  cfg.validate();
  detail::require_history(history);
  PropSides out;
  for (const auto& m : history) {
    out.time.push_back(m.time);
    out.lhs.push_back(m.prop51_lhs);
    out.core.push_back(m.prop51_rhs);
    out.growth.push_back(m.blowup_int);
    double need = 0.0;
    if (m.prop51_lhs > 0.0) {
      if (!(m.prop51_rhs > 0.0)) {
        need = kInf;
      } else {
        const double ratio = m.prop51_lhs / m.prop51_rhs;
        const double B = m.blowup_int;
        if (B == 0.0) {
          need = ratio;
        } else {
          // C e^{CB} is increasing in C and ≥ C, so the root lies in [0, ratio]
          double lo = 0.0, hi = ratio;
          for (int it = 0; it < 200 && hi - lo > 1e-16 * hi; ++it) {
            const double mid = 0.5 * (lo + hi);
            (mid * std::exp(mid * B) < ratio ? lo : hi) = mid;
          }
          need = hi;
        }
      }
    }
    out.c_star = std::max(out.c_star, need);
  }
  for (std::size_t i = 0; i < out.lhs.size(); ++i)
    out.rhs.push_back(out.c_star * std::exp(out.c_star * out.growth[i]) * out.core[i]);
  return out;
}

/// Accumulates records over a snapshot stream at the configured cadence.
class CriterionMonitor {
 public:
  explicit CriterionMonitor(MonitorConfig cfg) : cfg_(cfg) { cfg_.validate(); }

  const MonitorRecord& observe(const StateSnapshot& s) {
    std::optional<MonitorRecord> prev;
    if (!history_.empty()) prev = history_.back();
    history_.push_back(accumulate(prev, s, cfg_));
    return history_.back();
  }

  const std::vector<MonitorRecord>& history() const { return history_; }
  const MonitorConfig& config() const { return cfg_; }

 private:
  MonitorConfig cfg_;
  std::vector<MonitorRecord> history_;
};

}  // namespace lpns
