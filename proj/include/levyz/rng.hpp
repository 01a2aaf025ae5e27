#pragma once

// =====================================================================
// Counter-based RNG (Philox4x32-10).
//
// Each (seed, stream) pair yields an independent, reproducible sequence.
// Streams never overlap: the 64-bit stream id occupies counter words 2..3
// while the 64-bit block counter occupies words 0..1.  Draws are identical
// across platforms and thread counts because no global state is involved.
// =====================================================================

#include <array>
#include <cmath>
#include <cstdint>

namespace levyz {

class Philox {
 public:
  explicit Philox(std::uint64_t seed, std::uint64_t stream = 0)
      : key0_(static_cast<std::uint32_t>(seed)),
        key1_(static_cast<std::uint32_t>(seed >> 32)),
        stream_lo_(static_cast<std::uint32_t>(stream)),
        stream_hi_(static_cast<std::uint32_t>(stream >> 32)) {}

  std::uint32_t next_u32() {
    if (buf_pos_ == 4) refill();
    return buf_[buf_pos_++];
  }

  std::uint64_t next_u64() {
    const std::uint64_t lo = next_u32();
    const std::uint64_t hi = next_u32();
    return lo | (hi << 32);
  }

  // Uniform on the open interval (0,1); never returns 0 or 1.
  double next_double() {
    const std::uint64_t x = next_u64() >> 11;
    return (static_cast<double>(x) + 0.5) * 0x1p-53;
  }

  // Standard normal via Box-Muller; the pair's second value is cached.
  double next_gaussian() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    const double u1 = next_double();
    const double u2 = next_double();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    cached_ = r * std::sin(a);
    have_cached_ = true;
    return r * std::cos(a);
  }

  // Exponential with unit mean.
  double next_exponential() { return -std::log(next_double()); }

 private:
  static constexpr std::uint32_t kMul0 = 0xD2511F53u;
  static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
  static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
  static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

  static void round(std::array<std::uint32_t, 4>& x, std::uint32_t k0,
                    std::uint32_t k1) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * x[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * x[2];
    const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
    const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
    const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
    x = {hi1 ^ x[1] ^ k0, lo1, hi0 ^ x[3] ^ k1, lo0};
  }

  void refill() {
    std::array<std::uint32_t, 4> x = {
        static_cast<std::uint32_t>(block_),
        static_cast<std::uint32_t>(block_ >> 32), stream_lo_, stream_hi_};
    std::uint32_t k0 = key0_;
    std::uint32_t k1 = key1_;
    for (int r = 0; r < 10; ++r) {
      if (r > 0) {
        k0 += kWeyl0;
        k1 += kWeyl1;
      }
      round(x, k0, k1);
    }
    buf_ = x;
    buf_pos_ = 0;
    ++block_;
  }

  std::uint32_t key0_;
  std::uint32_t key1_;
  std::uint32_t stream_lo_;
  std::uint32_t stream_hi_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buf_ = {0, 0, 0, 0};
  int buf_pos_ = 4;
  double cached_ = 0.0;
  bool have_cached_ = false;
};

}  // namespace levyz
