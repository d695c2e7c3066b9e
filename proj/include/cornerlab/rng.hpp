#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace cornerlab {

std::uint64_t splitmix64(std::uint64_t x);

// Reproducible random source: std::mt19937_64 seeded through splitmix64.
// Bounded draws use rejection sampling rather than std:: distributions, whose
// output is implementation-defined, so streams are identical across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  // Independent child stream; the same (seed, stream) pair always yields the same child.
  Rng split(std::uint64_t stream) const;

  std::uint64_t next() { return engine_(); }
  std::uint64_t below(std::uint64_t bound);
  bool bernoulli(std::uint64_t numerator, std::uint64_t denominator);

  template <class T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::swap(items[i - 1], items[below(i)]);
    }
  }

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace cornerlab
