#include "hetsim/random.hpp"

#include "hetsim/errors.hpp"

namespace hetsim {

std::uint64_t splitmix64(std::uint64_t x) noexcept
{
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_drop_seed(std::uint64_t master_seed, std::uint64_t drop_index,
                               std::uint64_t attempt, DropStream stream) noexcept
{
  const std::uint64_t h0 = splitmix64(master_seed);
  const std::uint64_t h1 = splitmix64(h0 + 0x9E3779B97F4A7C15ULL * (drop_index + 1));
  const std::uint64_t h2 = splitmix64(h1 ^ (0xD1B54A32D192ED03ULL * attempt));
  return splitmix64(h2 + 0x8CB92BA72F3D8DD7ULL * static_cast<std::uint64_t>(stream));
}

std::uint64_t RandomStream::poisson(double mean)
{
  if (!(mean >= 0.0))
    throw InvalidParameter("poisson mean must be non-negative");
  if (mean == 0.0)
    return 0;
  return std::poisson_distribution<std::uint64_t>(mean)(engine_);
}

} // namespace hetsim
