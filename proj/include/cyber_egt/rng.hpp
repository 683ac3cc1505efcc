#pragma once

#include <cstdint>
#include <random>

namespace cyber_egt {

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Seed for substream `index` of `master`; independent of how indices are scheduled.
constexpr std::uint64_t substream_seed(std::uint64_t master, std::uint64_t index) noexcept {
  return splitmix64(splitmix64(master) ^ splitmix64(index + 0x632BE59BD9B4E019ull));
}

// mt19937_64 has a standard-mandated output sequence; the float conversions below are
// spelled out so draws are identical on every standard library.
class Stream {
public:
  explicit Stream(std::uint64_t seed) : engine_(seed) {}

  // [0, 1)
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  // (0, 1)
  double open_unit() { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53; }
  // (lo, hi]
  double left_open(double lo, double hi) { return lo + (hi - lo) * (1.0 - unit()); }
  // (lo, hi)
  double open(double lo, double hi) { return lo + (hi - lo) * open_unit(); }
  // {0, ..., n-1}, n >= 1; Lemire's multiply-shift with rejection.
  std::uint64_t below(std::uint64_t n) {
    std::uint64_t x = engine_();
    __uint128_t m = static_cast<__uint128_t>(x) * n;
    auto low = static_cast<std::uint64_t>(m);
    if (low < n) {
      const std::uint64_t threshold = (0 - n) % n;
      while (low < threshold) {
        x = engine_();
        m = static_cast<__uint128_t>(x) * n;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }
  bool bernoulli(double p) { return unit() < p; }

private:
  std::mt19937_64 engine_;
};

}  // namespace cyber_egt
