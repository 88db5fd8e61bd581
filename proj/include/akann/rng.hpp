#pragma once

#include <cstdint>
#include <random>

namespace akann {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Counter-based split: every consumer derives its own stream from the root
// seed and a stream index, so modules (and parallel batches) draw from
// independent, reproducible generators.
inline std::uint64_t derive_seed(std::uint64_t root, std::uint64_t stream) {
  return splitmix64(splitmix64(root) ^ splitmix64(stream + 0x517cc1b727220a95ull));
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : root_(seed), engine_(splitmix64(seed)) {}

  // Independent child stream; derivation uses the constructor seed, not the
  // evolved engine state.
  Rng stream(std::uint64_t idx) const { return Rng(derive_seed(root_, idx)); }

  std::uint64_t seed() const { return root_; }
  std::uint64_t next_u64() { return engine_(); }
  double uniform() { return unit_(engine_); }
  double normal() { return gauss_(engine_); }

  // Integer in [0, n).
  std::uint64_t below(std::uint64_t n) {
    std::uniform_int_distribution<std::uint64_t> d(0, n - 1);
    return d(engine_);
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::uint64_t root_;
  std::mt19937_64 engine_;
  std::uniform_real_distribution<double> unit_{0.0, 1.0};
  std::normal_distribution<double> gauss_{0.0, 1.0};
};

}  // namespace akann
