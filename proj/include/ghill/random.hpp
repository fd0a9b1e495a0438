#pragma once

#include <cstdint>

namespace ghill {

struct Seed {
  std::uint64_t value = 0;

  /// Key for replicate r: seed xor r.
  constexpr Seed replicate(std::uint64_t r) const noexcept { return Seed{value ^ r}; }

  friend constexpr bool operator==(Seed, Seed) = default;
};

/// Counter-based uniform stream. Draw i is a pure function of (seed, i),
/// so replicates never share state and can run in any order.
class UniformStream {
 public:
  explicit UniformStream(Seed seed) noexcept;

  /// Next value in the open interval (0, 1).
  double next() noexcept;

  /// Uniform integer in [0, bound), bound >= 1.
  std::uint64_t next_below(std::uint64_t bound) noexcept;

  std::uint64_t position() const noexcept { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x) noexcept;

}  // namespace ghill
