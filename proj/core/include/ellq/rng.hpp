#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "ellq/context.hpp"

namespace ellq {

/// Deterministic splitmix64 stream. Seeding goes through an FNV-1a hash of
/// (seed, check name) so that suite subsetting never changes a check's
/// samples and reports are bit-stable across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  static Rng for_check(std::uint64_t seed, std::string_view check_name) {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](unsigned char b) {
      h ^= b;
      h *= 1099511628211ull;
    };
    for (int i = 0; i < 8; ++i) mix(static_cast<unsigned char>(seed >> (8 * i)));
    for (char ch : check_name) mix(static_cast<unsigned char>(ch));
    return Rng(h);
  }

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Complex sample in the rectangle |Re| <= re_half, |Im| <= im_half.
  cx box(double re_half, double im_half) {
    const double re = uniform(-re_half, re_half);
    const double im = uniform(-im_half, im_half);
    return cx(re, im);
  }

 private:
  std::uint64_t state_;
};

/// Sampling rectangle for identity checks: |Re u| <= 2r and |Im u| bounded so
/// quasi-periodic growth factors stay inside double range.
inline cx sample_u(Rng& rng, const EllipticContext& ctx, double re_scale = 2.0) {
  const double im_max = std::min(1.0, std::abs((ctx.r * ctx.tau).imag()) / 4.0);
  return rng.box(re_scale * ctx.r, im_max);
}

}  // namespace ellq
