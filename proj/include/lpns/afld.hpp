#pragma once

#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "lpns/fft.hpp"

namespace lpns {

/// AFLD field files. Byte layout (all integers and floats little-endian):
///   0  "AFLD"            4 bytes
///   4  version  u16      = 1
///   6  n1 n2 n3 u32 ×3
///   18 ncomp    u16
///   20 layout   u8       0 = real samples, 1 = complex half-spectrum
///   21 payload  f64 ×M   component-major, then row-major with x3 / k3 fastest
/// Real layout: M = ncomp·n1·n2·n3 samples.
/// Half-spectrum: M = 2·ncomp·n1·n2·(n3/2+1), (re, im) per coefficient, k3
/// slots 0…n3/2; the remaining slots are restored by Hermitian symmetry.
enum class AfldLayout : std::uint8_t { real = 0, half_spectrum = 1 };

struct AfldHeader {
  std::uint16_t version = 1;
  std::uint32_t n1 = 0, n2 = 0, n3 = 0;
  std::uint16_t ncomp = 0;
  AfldLayout layout = AfldLayout::half_spectrum;

  static constexpr std::size_t kBytes = 21;

  std::size_t payload_doubles() const {
    const std::size_t per = layout == AfldLayout::real ? std::size_t(n1) * n2 * n3
                                                       : 2 * std::size_t(n1) * n2 * (n3 / 2 + 1);
    return per * ncomp;
  }
};

namespace detail {

template <class T>
void put_le(std::vector<unsigned char>& out, T v) {
  using U = std::conditional_t<sizeof(T) == 8, std::uint64_t,
                               std::conditional_t<sizeof(T) == 4, std::uint32_t,
                                                   std::conditional_t<sizeof(T) == 2, std::uint16_t, std::uint8_t>>>;
  U u;
  std::memcpy(&u, &v, sizeof(T));
  for (std::size_t b = 0; b < sizeof(T); ++b) out.push_back(static_cast<unsigned char>(u >> (8 * b)));
}

template <class T>
T get_le(const unsigned char* p) {
  using U = std::conditional_t<sizeof(T) == 8, std::uint64_t,
                               std::conditional_t<sizeof(T) == 4, std::uint32_t,
                                                   std::conditional_t<sizeof(T) == 2, std::uint16_t, std::uint8_t>>>;
  U u = 0;
  for (std::size_t b = 0; b < sizeof(T); ++b) u |= U(p[b]) << (8 * b);
  T v;
  std::memcpy(&v, &u, sizeof(T));
  return v;
}

}  // namespace detail

/// Serializes spectral components in the given layout.
inline std::vector<unsigned char> encode_afld(std::span<const SpectralField> comps,
                                              AfldLayout layout = AfldLayout::half_spectrum) {
  if (comps.empty()) throw InvariantError("encode_afld: no components");
  const Grid& g = comps.front().grid();
  for (const auto& c : comps) require_same_grid(g, c.grid(), "encode_afld");
  AfldHeader h;
  h.n1 = std::uint32_t(g.n1());
  h.n2 = std::uint32_t(g.n2());
  h.n3 = std::uint32_t(g.n3());
  h.ncomp = std::uint16_t(comps.size());
  h.layout = layout;
  std::vector<unsigned char> out;
  out.reserve(AfldHeader::kBytes + 8 * h.payload_doubles());
  for (char c : {'A', 'F', 'L', 'D'}) out.push_back(static_cast<unsigned char>(c));
  detail::put_le(out, h.version);
  detail::put_le(out, h.n1);
  detail::put_le(out, h.n2);
  detail::put_le(out, h.n3);
  detail::put_le(out, h.ncomp);
  detail::put_le(out, static_cast<std::uint8_t>(h.layout));
  for (const auto& c : comps) {
    if (layout == AfldLayout::real) {
      const RealField f = inverse(c);
      for (double x : f.values()) detail::put_le(out, x);
    } else {
      for (int i1 = 0; i1 < g.n1(); ++i1)
        for (int i2 = 0; i2 < g.n2(); ++i2)
          for (int i3 = 0; i3 <= g.n3() / 2; ++i3) {
            const cplx z = c[g.index(i1, i2, i3)];
            detail::put_le(out, z.real());
            detail::put_le(out, z.imag());
          }
    }
  }
  return out;
}

inline std::vector<SpectralField> decode_afld(std::span<const unsigned char> bytes, AfldHeader* header = nullptr) {
  if (bytes.size() < AfldHeader::kBytes) throw ParseError("AFLD: file shorter than the 21-byte header");
  if (std::memcmp(bytes.data(), "AFLD", 4) != 0) throw ParseError("AFLD: bad magic");
  const unsigned char* p = bytes.data();
  AfldHeader h;
  h.version = detail::get_le<std::uint16_t>(p + 4);
  h.n1 = detail::get_le<std::uint32_t>(p + 6);
  h.n2 = detail::get_le<std::uint32_t>(p + 10);
  h.n3 = detail::get_le<std::uint32_t>(p + 14);
  h.ncomp = detail::get_le<std::uint16_t>(p + 18);
  const std::uint8_t layout = p[20];
  if (h.version != 1) throw ParseError("AFLD: unsupported version " + std::to_string(h.version));
  if (layout > 1) throw ParseError("AFLD: unknown layout " + std::to_string(layout));
  if (h.ncomp == 0) throw ParseError("AFLD: zero components");
  h.layout = AfldLayout(layout);
  const Grid g(int(h.n1), int(h.n2), int(h.n3));
  const std::size_t expect = AfldHeader::kBytes + 8 * h.payload_doubles();
  if (bytes.size() != expect)
    throw ParseError("AFLD: payload length " + std::to_string(bytes.size() - AfldHeader::kBytes) +
                     " bytes does not match the header (" + std::to_string(expect - AfldHeader::kBytes) + ")");
  const unsigned char* q = p + AfldHeader::kBytes;
  auto next = [&q] {
    const double v = detail::get_le<double>(q);
    q += 8;
    return v;
  };
  std::vector<SpectralField> out;
  for (int c = 0; c < h.ncomp; ++c) {
    if (h.layout == AfldLayout::real) {
      RealField f(g);
      for (std::size_t i = 0; i < f.size(); ++i) f[i] = next();
      out.push_back(forward(f));
    } else {
      SpectralField a(g);
      for (int i1 = 0; i1 < g.n1(); ++i1)
        for (int i2 = 0; i2 < g.n2(); ++i2)
          for (int i3 = 0; i3 <= g.n3() / 2; ++i3) {
            const double re = next();
            a[g.index(i1, i2, i3)] = cplx(re, next());
          }
      a.enforce_hermitian();
      out.push_back(std::move(a));
    }
  }
  if (header) *header = h;
  return out;
}

/// Real-sample payload of a layout-0 file, without transforming; the exact
/// inverse of encoding the same samples.
inline std::vector<unsigned char> encode_afld_samples(std::span<const RealField> comps) {
  if (comps.empty()) throw InvariantError("encode_afld_samples: no components");
  const Grid& g = comps.front().grid();
  std::vector<unsigned char> out;
  for (char c : {'A', 'F', 'L', 'D'}) out.push_back(static_cast<unsigned char>(c));
  detail::put_le(out, std::uint16_t(1));
  detail::put_le(out, std::uint32_t(g.n1()));
  detail::put_le(out, std::uint32_t(g.n2()));
  detail::put_le(out, std::uint32_t(g.n3()));
  detail::put_le(out, std::uint16_t(comps.size()));
  detail::put_le(out, static_cast<std::uint8_t>(AfldLayout::real));
  for (const auto& f : comps) {
    require_same_grid(g, f.grid(), "encode_afld_samples");
    for (double x : f.values()) detail::put_le(out, x);
  }
  return out;
}

inline std::vector<RealField> decode_afld_samples(std::span<const unsigned char> bytes) {
  AfldHeader h;
  if (bytes.size() < AfldHeader::kBytes || bytes[20] != std::uint8_t(AfldLayout::real))
    throw ParseError("AFLD: not a real-sample file");
  // validates header and length
  (void)decode_afld(bytes, &h);
  const Grid g(int(h.n1), int(h.n2), int(h.n3));
  const unsigned char* q = bytes.data() + AfldHeader::kBytes;
  std::vector<RealField> out;
  for (int c = 0; c < h.ncomp; ++c) {
    RealField f(g);
    for (std::size_t i = 0; i < f.size(); ++i, q += 8) f[i] = detail::get_le<double>(q);
    out.push_back(std::move(f));
  }
  return out;
}

inline void write_afld(const std::string& path, std::span<const SpectralField> comps,
                       AfldLayout layout = AfldLayout::half_spectrum) {
  const auto bytes = encode_afld(comps, layout);
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error("cannot open '" + path + "' for writing");
  f.write(reinterpret_cast<const char*>(bytes.data()), std::streamsize(bytes.size()));
  if (!f) throw Error("write to '" + path + "' failed");
}

inline std::vector<SpectralField> read_afld(const std::string& path, AfldHeader* header = nullptr) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open '" + path + "'");
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  return decode_afld(bytes, header);
}

}  // namespace lpns
