#pragma once

#include <cstdint>
#include <random>

namespace hetsim {

/// SplitMix64 finalizer; used to decorrelate seeds before they reach the engine.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Independent streams owned by one drop.
enum class DropStream : std::uint64_t { Placement = 0, Fading = 1 };

/// Seed for one stream of one drop.
///
/// The mapping is fixed so results never depend on execution order:
///   h0 = splitmix64(master_seed)
///   h1 = splitmix64(h0 + 0x9E3779B97F4A7C15 * (drop_index + 1))
///   h2 = splitmix64(h1 ^ (0xD1B54A32D192ED03 * attempt))
///   seed = splitmix64(h2 + 0x8CB92BA72F3D8DD7 * stream)
/// `attempt` > 0 selects the sub-streams used when a drop has to be resampled.
std::uint64_t derive_drop_seed(std::uint64_t master_seed, std::uint64_t drop_index,
                               std::uint64_t attempt = 0,
                               DropStream stream = DropStream::Placement) noexcept;

/// A single random stream. Not shared between threads: each concurrent task owns one.
class RandomStream
{
public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  static RandomStream for_drop(std::uint64_t master_seed, std::uint64_t drop_index,
                               std::uint64_t attempt = 0,
                               DropStream stream = DropStream::Placement)
  {
    return RandomStream(derive_drop_seed(master_seed, drop_index, attempt, stream));
  }

  /// Uniform on [lo, hi).
  double uniform(double lo = 0.0, double hi = 1.0)
  {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }

  /// Poisson count with the given mean; a zero mean yields 0.
  std::uint64_t poisson(double mean);

  /// Unit-mean exponential.
  double exponential() { return std::exponential_distribution<double>(1.0)(engine_); }

  std::mt19937_64& engine() noexcept { return engine_; }

private:
  std::mt19937_64 engine_;
};

} // namespace hetsim
