#pragma once

#include <cstdint>
#include <random>

namespace envy {

/// Purpose tags that keep reward draws, arrival draws and auxiliary sampling
/// on separate streams. Changing the arrival mechanism must never perturb the
/// reward realizations of a replication.
enum class StreamPurpose : std::uint64_t {
  kRewards = 1,
  kArrivals = 2,
  kAuxiliary = 3,
};

/// Mixes (seed, replication, purpose) into a 64-bit key (splitmix64 finalizer).
std::uint64_t derive_stream_key(std::uint64_t seed, std::uint64_t replication,
                                StreamPurpose purpose);

/// Seeded random stream. Thin wrapper over std::mt19937_64 with a portable
/// unit-interval conversion so draws are identical across standard libraries.
class Rng {
 public:
  using result_type = std::mt19937_64::result_type;

  explicit Rng(std::uint64_t seed);
  Rng(std::uint64_t seed, std::uint64_t replication, StreamPurpose purpose);

  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }
  result_type operator()() { return engine_(); }

  /// Uniform draw on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform integer on [0, n). Requires n > 0.
  std::uint64_t below(std::uint64_t n);

  double normal(double mean, double stddev);

 private:
  std::mt19937_64 engine_;
};

/// The independent streams one trajectory consumes.
struct TrajectoryStreams {
  Rng rewards;
  Rng arrivals;

  TrajectoryStreams(std::uint64_t seed, std::uint64_t replication)
      : rewards(seed, replication, StreamPurpose::kRewards),
        arrivals(seed, replication, StreamPurpose::kArrivals) {}
};

}  // namespace envy
