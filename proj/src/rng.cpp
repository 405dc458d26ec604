#include "envy/rng.hpp"

#include <array>

namespace envy {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::mt19937_64 seeded_engine(std::uint64_t key) {
  std::array<std::uint32_t, 8> words{};
  std::uint64_t state = key;
  for (std::size_t i = 0; i < words.size(); i += 2) {
    state = splitmix64(state);
    words[i] = static_cast<std::uint32_t>(state);
    words[i + 1] = static_cast<std::uint32_t>(state >> 32);
  }
  std::seed_seq seq(words.begin(), words.end());
  return std::mt19937_64(seq);
}

}  // namespace

std::uint64_t derive_stream_key(std::uint64_t seed, std::uint64_t replication,
                                StreamPurpose purpose) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ replication);
  h = splitmix64(h ^ static_cast<std::uint64_t>(purpose));
  return h;
}

Rng::Rng(std::uint64_t seed) : engine_(seeded_engine(splitmix64(seed))) {}

Rng::Rng(std::uint64_t seed, std::uint64_t replication, StreamPurpose purpose)
    : engine_(seeded_engine(derive_stream_key(seed, replication, purpose))) {}

std::uint64_t Rng::below(std::uint64_t n) {
  // Lemire-style rejection keeps the result unbiased.
  const std::uint64_t threshold = (0 - n) % n;
  for (;;) {
    const std::uint64_t x = engine_();
    const unsigned __int128 m = static_cast<unsigned __int128>(x) * n;
    if (static_cast<std::uint64_t>(m) >= threshold) {
      return static_cast<std::uint64_t>(m >> 64);
    }
  }
}

double Rng::normal(double mean, double stddev) {
  std::normal_distribution<double> dist(mean, stddev);
  return dist(engine_);
}

}  // namespace envy
