#pragma once

// Pairing-friendly group setting used by every other module.
//
// Backend: BLS12-381 through blst. G1 and G2 are distinct groups (asymmetric
// pairing); all three groups have the same 255-bit prime order r. Elements
// are immutable values; every operation returns a new element.

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>

#include "blst.h"
#include "offline_euro/bytes.hpp"
#include "offline_euro/rng.hpp"

namespace offline_euro {

/// Integer modulo the group order.
class Scalar {
 public:
  static constexpr std::size_t kEncodedSize = 32;

  Scalar();  // zero
  static Scalar from_u64(std::uint64_t v);
  static Scalar one() { return from_u64(1); }
  /// Uniform in [0, r).
  static Scalar random(Rng& rng);
  /// Uniform in [1, r).
  static Scalar random_nonzero(Rng& rng);
  /// Reduces an arbitrary-length big-endian integer modulo r.
  static Scalar reduce_be(ByteView bytes);
  /// Strict decode: exactly 32 big-endian bytes holding a value < r.
  static Scalar from_bytes(ByteView bytes);

  std::array<std::uint8_t, kEncodedSize> to_bytes() const;
  bool is_zero() const;
  /// Throws ProtocolError for zero.
  Scalar inverse() const;

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator-() const;
  bool operator==(const Scalar& o) const;

  // Little-endian canonical integer, the form blst's point multiplication takes.
  blst_scalar exponent() const;

 private:
  blst_fr v_;
};

class G1 {
 public:
  static constexpr std::size_t kEncodedSize = 48;

  G1();  // identity
  static const G1& generator();
  static G1 identity() { return G1(); }
  static G1 random(Rng& rng);
  static G1 from_bytes(ByteView bytes);

  std::array<std::uint8_t, kEncodedSize> to_bytes() const;
  bool is_identity() const;
  G1 pow(const Scalar& k) const;
  G1 inverse() const;
  G1 operator*(const G1& o) const;
  bool operator==(const G1& o) const;

  blst_p1_affine affine() const;

 private:
  blst_p1 p_;
};

class G2 {
 public:
  static constexpr std::size_t kEncodedSize = 96;

  G2();
  static const G2& generator();
  static G2 identity() { return G2(); }
  static G2 random(Rng& rng);
  static G2 from_bytes(ByteView bytes);

  std::array<std::uint8_t, kEncodedSize> to_bytes() const;
  bool is_identity() const;
  G2 pow(const Scalar& k) const;
  G2 inverse() const;
  G2 operator*(const G2& o) const;
  bool operator==(const G2& o) const;

  blst_p2_affine affine() const;

 private:
  blst_p2 p_;
};

/// Element of the order-r subgroup of Fp12*.
class GT {
 public:
  static constexpr std::size_t kEncodedSize = 576;

  GT();  // identity
  static GT identity() { return GT(); }
  static GT from_bytes(ByteView bytes);

  std::array<std::uint8_t, kEncodedSize> to_bytes() const;
  bool is_identity() const;
  GT pow(const Scalar& k) const;
  GT inverse() const;
  GT operator*(const GT& o) const;
  bool operator==(const GT& o) const;

 private:
  friend GT pair(const G1&, const G2&);
  friend GT pairing_product(std::span<const std::pair<G1, G2>>);
  explicit GT(const blst_fp12& f) : f_(f) {}
  blst_fp12 f_;
};

/// Public description of the bilinear setting (G1, G2, GT, e, g1, g2).
struct GroupParams {
  std::string id;
  std::size_t order_bits = 0;
  bool symmetric = false;
  G1 g1;
  G2 g2;
  std::size_t g1_size = 0;
  std::size_t g2_size = 0;
  std::size_t gt_size = 0;
  std::size_t scalar_size = 0;

  static const GroupParams& bls12_381();
};

GT pair(const G1& a, const G2& b);

/// Product of pairings with one shared final exponentiation.
GT pairing_product(std::span<const std::pair<G1, G2>> terms);

/// 2x2 matrix whose (i, j) entry is pair(col[i], row[j]).
using GTMatrix = std::array<std::array<GT, 2>, 2>;
GTMatrix extended_pair(const std::pair<G1, G1>& col, const std::pair<G2, G2>& row);
GTMatrix entrywise_product(const GTMatrix& a, const GTMatrix& b);

/// Cached pair(g1, g2).
const GT& base_pairing();

enum class HashDomain : std::uint8_t {
  kWithdrawMessage = 1,
  kThetaSignature = 2,
  kGtEmbed = 3,
};

std::array<std::uint8_t, 32> sha256(ByteView message);

/// SHA-256 of the message reduced mod r.
Scalar hash_to_scalar(ByteView message);
/// Domain-separated variant: hashes tag byte || tag name || message.
Scalar hash_to_scalar(HashDomain domain, ByteView message);

/// Embeds a target-group element into the exponent ring.
Scalar gt_to_scalar(const GT& t);

}  // namespace offline_euro
