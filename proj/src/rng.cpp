#include "offline_euro/rng.hpp"

#include <sodium.h>

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "blst.h"
#include "blst_aux.h"

namespace offline_euro {

namespace {

void ensure_sodium() {
  static const bool ok = sodium_init() >= 0;
  if (!ok) throw std::runtime_error("libsodium initialisation failed");
}

}  // namespace

Rng::Rng() {
  ensure_sodium();
  randombytes_buf(seed_.data(), seed_.size());
}

Rng::Rng(std::uint64_t seed) {
  std::uint8_t in[8];
  for (int i = 0; i < 8; ++i) in[i] = static_cast<std::uint8_t>(seed >> (56 - 8 * i));
  blst_sha256(seed_.data(), in, sizeof(in));
}

void Rng::fill(std::span<std::uint8_t> out) {
  ensure_sodium();
  std::uint8_t block[40];
  std::copy(seed_.begin(), seed_.end(), block);
  for (int i = 0; i < 8; ++i) block[32 + i] = static_cast<std::uint8_t>(counter_ >> (56 - 8 * i));
  ++counter_;
  unsigned char key[randombytes_SEEDBYTES];
  static_assert(randombytes_SEEDBYTES == 32);
  blst_sha256(key, block, sizeof(block));
  randombytes_buf_deterministic(out.data(), out.size(), key);
  sodium_memzero(key, sizeof(key));
}

std::uint64_t Rng::next_u64() {
  std::uint8_t b[8];
  fill(b);
  std::uint64_t v = 0;
  for (auto x : b) v = (v << 8) | x;
  return v;
}

Rng Rng::fork(std::string_view label) const {
  std::vector<std::uint8_t> in(seed_.begin(), seed_.end());
  static constexpr char kTag[] = "fork:";
  in.insert(in.end(), kTag, kTag + 5);
  in.insert(in.end(), label.begin(), label.end());
  Seed child;
  blst_sha256(child.data(), in.data(), in.size());
  return Rng(child);
}

}  // namespace offline_euro
