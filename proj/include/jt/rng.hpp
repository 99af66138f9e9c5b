#pragma once

// Counter-based random numbers (Philox4x32-10). A stream is a pure function
// of (key, counter): trajectory i of an ensemble draws from key = seed and
// counter = (i, block), independent of which thread runs it.

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace jt {

class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter generate(Counter ctr, Key key) {
    for (int r = 0; r < 10; ++r) {
      if (r > 0) {
        key[0] += kW0;
        key[1] += kW1;
      }
      ctr = round(ctr, key);
    }
    return ctr;
  }

 private:
  static constexpr std::uint32_t kM0 = 0xD2511F53u;
  static constexpr std::uint32_t kM1 = 0xCD9E8D57u;
  static constexpr std::uint32_t kW0 = 0x9E3779B9u;
  static constexpr std::uint32_t kW1 = 0xBB67AE85u;

  static Counter round(const Counter& c, const Key& k) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(kM0) * c[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kM1) * c[2];
    const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const auto lo0 = static_cast<std::uint32_t>(p0);
    const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const auto lo1 = static_cast<std::uint32_t>(p1);
    return {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
  }
};

/// Sequence of doubles for one (seed, stream) pair.
class CounterStream {
 public:
  CounterStream(std::uint64_t seed, std::uint64_t stream)
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
        stream_(stream) {}

  /// Uniform in (0, 1], 53-bit resolution.
  double uniform() {
    if (pos_ == 2) refill();
    const std::uint64_t bits = (static_cast<std::uint64_t>(block_[2 * pos_]) << 32) |
                               block_[2 * pos_ + 1];
    ++pos_;
    return (static_cast<double>(bits >> 11) + 1.0) * 0x1.0p-53;
  }

  /// Standard normal pair by Box-Muller.
  std::array<double, 2> normal_pair() {
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(a), r * std::sin(a)};
  }

 private:
  void refill() {
    const Philox4x32::Counter ctr{static_cast<std::uint32_t>(stream_),
                                  static_cast<std::uint32_t>(stream_ >> 32),
                                  static_cast<std::uint32_t>(counter_),
                                  static_cast<std::uint32_t>(counter_ >> 32)};
    block_ = Philox4x32::generate(ctr, key_);
    ++counter_;
    pos_ = 0;
  }

  Philox4x32::Key key_;
  std::uint64_t stream_;
  std::uint64_t counter_ = 0;
  Philox4x32::Counter block_{};
  int pos_ = 2;
};

}  // namespace jt
