#include "ghill/random.hpp"

namespace ghill {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
}

std::uint64_t mix64(std::uint64_t x) noexcept {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ULL;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBULL;
  x ^= x >> 31;
  return x;
}

UniformStream::UniformStream(Seed seed) noexcept : key_(mix64(seed.value + kGolden)) {}

double UniformStream::next() noexcept {
  const std::uint64_t bits = mix64(key_ + (++counter_) * kGolden);
  // 53 random bits, offset by half an ulp step so 0 is never produced.
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

std::uint64_t UniformStream::next_below(std::uint64_t bound) noexcept {
  const auto r = static_cast<std::uint64_t>(next() * static_cast<double>(bound));
  return r < bound ? r : bound - 1;
}

}  // namespace ghill
