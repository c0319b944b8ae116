#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <limits>

namespace clustergame {

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Purpose tags keep streams for different random quantities disjoint.
enum class StreamTag : std::uint64_t {
  kSphere = 1,
  kRepresentative = 2,
  kInitialState = 3,
  kTest = 4,
  kSolver = 5,
};

// Counter-based generator: the output is a pure function of (key, counter),
// so each (agent, iteration) stream is reproducible on its own, regardless of
// the order in which streams are consumed.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(std::uint64_t key) : key_(mix64(key)) {}

  CounterRng(std::uint64_t seed, StreamTag tag,
             std::initializer_list<std::uint64_t> coordinates)
      : key_(derive(seed, tag, coordinates)) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() { return mix64(key_ ^ mix64(counter_++)); }

  // Uniform on [0, 1).
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [0, n), unbiased.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = max() - max() % n;
    std::uint64_t v;
    do {
      v = (*this)();
    } while (v >= limit);
    return v % n;
  }

  // Standard normal via Box-Muller; uses two fresh uniforms per call.
  double normal() {
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

  std::uint64_t counter() const { return counter_; }

 private:
  static std::uint64_t derive(std::uint64_t seed, StreamTag tag,
                              std::initializer_list<std::uint64_t> coordinates) {
    std::uint64_t h = mix64(seed ^ 0xD1B54A32D192ED03ULL);
    h = mix64(h ^ static_cast<std::uint64_t>(tag));
    for (auto c : coordinates) h = mix64(h ^ mix64(c + 0x632BE59BD9B4E019ULL));
    return h;
  }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace clustergame
