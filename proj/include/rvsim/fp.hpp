#pragma once

#include <cmath>
#include <cstdint>
#include <cstring>
#include <limits>

namespace rvsim {
namespace fp {

constexpr uint32_t kCanonicalNan = 0x7FC00000u;

inline float to_float(uint32_t bits) {
  float f;
  std::memcpy(&f, &bits, 4);
  return f;
}
inline uint32_t to_bits(float f) {
  uint32_t b;
  std::memcpy(&b, &f, 4);
  return b;
}
inline uint32_t canonicalize(uint32_t bits) {
  const uint32_t exp = (bits >> 23) & 0xFF;
  const uint32_t frac = bits & 0x7FFFFF;
  if (exp == 0xFF && frac != 0) return kCanonicalNan;
  return bits;
}

// Round-to-nearest-even arithmetic via host single-precision ops; NaN
// results are canonicalized so both simulator halves agree bit-for-bit.
inline uint32_t add(uint32_t a, uint32_t b) { return canonicalize(to_bits(to_float(a) + to_float(b))); }
inline uint32_t sub(uint32_t a, uint32_t b) { return canonicalize(to_bits(to_float(a) - to_float(b))); }
inline uint32_t mul(uint32_t a, uint32_t b) { return canonicalize(to_bits(to_float(a) * to_float(b))); }
inline uint32_t div(uint32_t a, uint32_t b) { return canonicalize(to_bits(to_float(a) / to_float(b))); }

inline uint32_t sgnj(uint32_t a, uint32_t b) { return (a & 0x7FFFFFFFu) | (b & 0x80000000u); }
inline uint32_t sgnjn(uint32_t a, uint32_t b) { return (a & 0x7FFFFFFFu) | (~b & 0x80000000u); }
inline uint32_t sgnjx(uint32_t a, uint32_t b) { return a ^ (b & 0x80000000u); }

inline bool is_nan(uint32_t a) {
  return ((a >> 23) & 0xFF) == 0xFF && (a & 0x7FFFFF) != 0;
}

inline uint32_t feq(uint32_t a, uint32_t b) {
  if (is_nan(a) || is_nan(b)) return 0;
  return to_float(a) == to_float(b) ? 1 : 0;
}
inline uint32_t flt(uint32_t a, uint32_t b) {
  if (is_nan(a) || is_nan(b)) return 0;
  return to_float(a) < to_float(b) ? 1 : 0;
}
inline uint32_t fle(uint32_t a, uint32_t b) {
  if (is_nan(a) || is_nan(b)) return 0;
  return to_float(a) <= to_float(b) ? 1 : 0;
}

// float -> int32, truncating, with RISC-V saturation (NaN -> max)
inline uint32_t cvt_w_s(uint32_t a) {
  if (is_nan(a)) return 0x7FFFFFFFu;
  const float f = to_float(a);
  if (f >= 2147483648.0f) return 0x7FFFFFFFu;
  if (f < -2147483648.0f) return 0x80000000u;
  return static_cast<uint32_t>(static_cast<int32_t>(f));
}
inline uint32_t cvt_wu_s(uint32_t a) {
  if (is_nan(a)) return 0xFFFFFFFFu;
  const float f = to_float(a);
  if (f >= 4294967296.0f) return 0xFFFFFFFFu;
  if (f <= -1.0f) return 0;
  return static_cast<uint32_t>(f);
}
inline uint32_t cvt_s_w(uint32_t a) {
  return to_bits(static_cast<float>(static_cast<int32_t>(a)));
}
inline uint32_t cvt_s_wu(uint32_t a) {
  return to_bits(static_cast<float>(a));
}

}  // namespace fp
}  // namespace rvsim
