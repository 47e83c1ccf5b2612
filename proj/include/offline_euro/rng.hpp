#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>

namespace offline_euro {

/// Seedable ChaCha20-based generator. A fixed seed reproduces every draw,
/// which the scenario runner relies on for byte-identical transcripts.
class Rng {
 public:
  using Seed = std::array<std::uint8_t, 32>;

  /// Seeded from OS entropy.
  Rng();
  explicit Rng(std::uint64_t seed);
  explicit Rng(const Seed& seed) : seed_(seed) {}

  void fill(std::span<std::uint8_t> out);
  std::uint64_t next_u64();

  /// Independent child stream; depends only on this generator's seed and the
  /// label, not on how many values were drawn so far.
  Rng fork(std::string_view label) const;

 private:
  Seed seed_{};
  std::uint64_t counter_ = 0;
};

}  // namespace offline_euro
