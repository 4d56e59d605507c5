#ifndef ALB_RNG_HPP
#define ALB_RNG_HPP

#include <cmath>
#include <cstdint>
#include <initializer_list>

namespace alb {

// Counter-based deterministic randomness. Every draw is a pure function of
// (key, counter), so simulation streams can be addressed by (trial, stream,
// round, arm) coordinates and replayed independently of execution order or
// thread count. The generator is a SplitMix64 finalizer over the counter.

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ull;

inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Named sub-streams of one trial's randomness.
enum class Stream : std::uint64_t {
  instance = 1,     // ground-truth parameters (theta*, biases, support)
  context = 2,      // per-(round, arm) context / feature draws
  noise = 3,        // per-(round[, arm]) reward noise
  explore_arm = 4,  // per-(phase, slot) random-exploration actions
  policy = 5,       // policy-private randomness (candidate sets, initial arm)
};

// Folds an ordered path of identifiers into a stream key.
inline std::uint64_t derive_key(std::uint64_t seed,
                                std::initializer_list<std::uint64_t> path) {
  std::uint64_t h = mix64(seed + kGolden);
  for (std::uint64_t p : path) h = mix64(h ^ (p + kGolden + (h << 6) + (h >> 2)));
  return h;
}

class CounterRng {
 public:
  explicit CounterRng(std::uint64_t key, std::uint64_t counter = 0)
      : key_(key), counter_(counter) {}

  std::uint64_t next_u64() { return mix64(key_ ^ mix64(counter_++ * kGolden + kGolden)); }

  // Uniform on (0, 1].
  double next_unit() {
    return static_cast<double>((next_u64() >> 11) + 1) * (1.0 / 9007199254740992.0);
  }

  // Uniform on [lo, hi).
  double next_uniform(double lo, double hi) {
    double u = static_cast<double>(next_u64() >> 11) * (1.0 / 9007199254740992.0);
    return lo + u * (hi - lo);
  }

  // Box-Muller; consumes two counters per draw.
  double next_gaussian() {
    double u1 = next_unit();
    double u2 = next_unit();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
  }

  // Uniform integer in [0, n). Modulo bias is irrelevant at bandit scales.
  std::uint64_t next_index(std::uint64_t n) { return next_u64() % n; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_;
};

}  // namespace alb

#endif  // ALB_RNG_HPP
