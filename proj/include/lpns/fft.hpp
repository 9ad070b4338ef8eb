#pragma once

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>
#include <tuple>

#include "lpns/field.hpp"

namespace lpns {

namespace detail {

// FFTW's planner is not thread-safe; execution of an existing plan on new
// arrays is. Plans are created once per (shape, sign) under a lock.
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  fftw_plan get(int n1, int n2, int n3, int sign) {
    std::lock_guard lock(mu_);
    const auto key = std::make_tuple(n1, n2, n3, sign);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    const std::size_t n = std::size_t(n1) * n2 * n3;
    fftw_complex* scratch = fftw_alloc_complex(n);
    fftw_plan p = fftw_plan_dft_3d(n1, n2, n3, scratch, scratch, sign,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(scratch);
    plans_.emplace(key, p);
    return p;
  }

  ~PlanCache() {
    for (auto& [key, p] : plans_) fftw_destroy_plan(p);
  }

 private:
  PlanCache() = default;
  std::mutex mu_;
  std::map<std::tuple<int, int, int, int>, fftw_plan> plans_;
};

inline void fft_inplace(const Grid& g, std::span<cplx> data, int sign) {
  fftw_plan p = PlanCache::instance().get(g.n1(), g.n2(), g.n3(), sign);
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(p, ptr, ptr);
}

}  // namespace detail

/// Forward transform; coefficients are true Fourier coefficients, i.e. the
/// DFT divided by n1·n2·n3.
inline SpectralField forward(const RealField& f) {
  if (!f.all_finite()) throw InvariantError("forward: field has non-finite samples");
  SpectralField out(f.grid());
  auto c = out.coeffs();
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = f[i];
  detail::fft_inplace(f.grid(), c, FFTW_FORWARD);
  const double scale = 1.0 / double(c.size());
  for (auto& x : c) x *= scale;
  return out;
}

inline SpectralField forward(const ComplexField& f) {
  SpectralField out(f.grid());
  auto c = out.coeffs();
  std::copy(f.values().begin(), f.values().end(), c.begin());
  detail::fft_inplace(f.grid(), c, FFTW_FORWARD);
  const double scale = 1.0 / double(c.size());
  for (auto& x : c) x *= scale;
  return out;
}

/// Complex samples Σ_k coeff(k) e^{ik·x} at the grid points.
inline ComplexField inverse_complex(const SpectralField& a) {
  ComplexField out(a.grid());
  std::copy(a.coeffs().begin(), a.coeffs().end(), out.values().begin());
  detail::fft_inplace(a.grid(), out.values(), FFTW_BACKWARD);
  return out;
}

/// Real part of the inverse transform; exact for Hermitian coefficients.
inline RealField inverse(const SpectralField& a) { return inverse_complex(a).real_part(); }

namespace detail {

/// Calls f(k') for every wavevector aliased to k on `g` that differs from k
/// only by flipping unpaired Nyquist components −n/2 → +n/2.
template <class F>
void for_each_nyquist_image(const Grid& g, const Wavevector& k, F&& f) {
  int axes[3], m = 0;
  for (int ax = 0; ax < 3; ++ax)
    if (2 * k[ax] == -g.n(ax)) axes[m++] = ax;
  for (int mask = 0; mask < (1 << m); ++mask) {
    int c[3] = {k.k1, k.k2, k.k3};
    for (int b = 0; b < m; ++b)
      if (mask >> b & 1) c[axes[b]] = -c[axes[b]];
    f(Wavevector{c[0], c[1], c[2]}, m);
  }
}

}  // namespace detail

/// Embeds `a` into a larger grid (zero padding). A Nyquist coefficient at
/// −n/2 is split evenly between ±n/2 so real fields stay real and the
/// interpolant through the original samples is unchanged.
inline SpectralField pad_to(const SpectralField& a, const Grid& target) {
  const Grid& g = a.grid();
  for (int ax = 0; ax < 3; ++ax)
    if (target.n(ax) < g.n(ax)) throw GridMismatch("pad_to: target grid is smaller");
  SpectralField out(target);
  for_each_mode(g, [&](std::size_t i, const Wavevector& k) {
    if (a[i] == cplx{}) return;
    detail::for_each_nyquist_image(g, k, [&](const Wavevector& q, int m) {
      out.at(q) += a[i] * std::ldexp(1.0, -m);
    });
  });
  return out;
}

/// Keeps the wavevectors of `target`; the ±n/2 pairs of the source fold
/// onto the single Nyquist slot −n/2 of the target.
inline SpectralField truncate_to(const SpectralField& a, const Grid& target) {
  if (!a.grid().contains(Wavevector{-target.n1() / 2, -target.n2() / 2, -target.n3() / 2}))
    throw GridMismatch("truncate_to: target grid is larger");
  const Grid& g = a.grid();
  SpectralField out(target);
  for_each_mode(target, [&](std::size_t i, const Wavevector& k) {
    cplx s = 0.0;
    detail::for_each_nyquist_image(target, k, [&](const Wavevector& q, int) {
      if (g.contains(q)) s += a.at(q);
    });
    out[i] = s;
  });
  return out;
}

/// Complex samples of `a` on the 3/2-padded grid.
inline ComplexField padded_samples(const SpectralField& a) {
  return inverse_complex(pad_to(a, a.grid().padded()));
}

/// Back to `target` from products formed on the padded grid.
inline SpectralField from_padded_samples(const ComplexField& f, const Grid& target) {
  return truncate_to(forward(f), target);
}

/// Alias-free product: both factors are zero padded by the 3/2 rule,
/// multiplied pointwise, transformed back and truncated to the input grid.
inline SpectralField dealiased_product(const SpectralField& a, const SpectralField& b) {
  require_same_grid(a.grid(), b.grid(), "dealiased_product");
  ComplexField pa = padded_samples(a);
  const ComplexField pb = padded_samples(b);
  for (std::size_t i = 0; i < pa.size(); ++i) pa[i] *= pb[i];
  return from_padded_samples(pa, a.grid());
}

}  // namespace lpns
