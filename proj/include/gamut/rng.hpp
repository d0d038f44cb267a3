#pragma once

#include <cstdint>

namespace gamut {

// xorshift64* (Vigna 2016): state ^= state >> 12; state ^= state << 25;
// state ^= state >> 27; output = state * 2685821657736338717. A zero seed is
// replaced by 0x9E3779B97F4A7C15. uniform() maps the top 53 bits to [0, 1).
class Xorshift64Star {
 public:
  explicit Xorshift64Star(std::uint64_t seed) : state_(seed ? seed : 0x9E3779B97F4A7C15ull) {}

  std::uint64_t next() {
    state_ ^= state_ >> 12;
    state_ ^= state_ << 25;
    state_ ^= state_ >> 27;
    return state_ * 2685821657736338717ull;
  }

  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::uint64_t state_;
};

}  // namespace gamut
