#pragma once

// Schnorr signatures over G1 with generator g1, plus the three-move blind
// issuance used at withdrawal:
//
//   signer: k random, r = g1^k            --r-->
//   client: r' = r g1^-a pk^-b, c = H(r'||M), c' = c + b
//                                         <--c'--
//   signer: s' = k - c' x                 --s'-->
//   client: s = s' - a, signature (s, c)
//
// Verification recomputes r_v = g1^s pk^c and checks c == H(r_v || M). Both
// variants share that routine.

#include <optional>

#include "offline_euro/pairing.hpp"

namespace offline_euro {

struct KeyPair {
  Scalar secret;
  G1 public_key;

  static KeyPair generate(Rng& rng);
  /// Throws ProtocolError for a zero secret.
  static KeyPair from_secret(const Scalar& secret);
};

struct Signature {
  static constexpr std::size_t kEncodedSize = 2 * Scalar::kEncodedSize;

  Scalar sigma;
  Scalar c;

  /// sigma || c, each 32-byte big-endian.
  std::array<std::uint8_t, kEncodedSize> to_bytes() const;
  static Signature from_bytes(ByteView bytes);

  bool operator==(const Signature&) const = default;
};

/// H(serialize(commitment) || message) under the given domain tag.
Scalar schnorr_challenge(const G1& commitment, ByteView message, HashDomain domain);

Signature sign(ByteView message, const Scalar& secret, Rng& rng, HashDomain domain);
bool verify(ByteView message, const Signature& sig, const G1& public_key, HashDomain domain);

/// Signer side of one blind issuance. Single use: a second respond() throws.
class SignerNonce {
 public:
  static SignerNonce generate(Rng& rng);

  const G1& commitment() const { return r_; }
  const Scalar& nonce() const { return k_; }
  bool used() const { return used_; }

  /// sigma' = k - c' * secret.
  Scalar respond(const Scalar& c_prime, const Scalar& secret);

 private:
  SignerNonce(const Scalar& k, const G1& r) : k_(k), r_(r) {}
  Scalar k_;
  G1 r_;
  bool used_ = false;
};

struct BlindChallenge;

/// Client side of one blind issuance. Single use: a second unblind() throws.
class BlindSession {
 public:
  /// Draws nonzero blinding factors. Throws ProtocolError if r is the identity.
  static BlindChallenge begin(const G1& r, Bytes message, const G1& signer_pk, Rng& rng,
                              HashDomain domain);
  /// Explicit blinding factors; zero factors make the client transparent.
  static BlindChallenge begin_with_factors(const G1& r, Bytes message, const G1& signer_pk,
                                           const Scalar& alpha, const Scalar& beta,
                                           HashDomain domain);

  const Scalar& challenge() const { return c_; }
  const Bytes& message() const { return message_; }

  /// sigma = sigma' - alpha. Throws ProtocolError when the result does not
  /// verify under the signer key or the session was already consumed.
  Signature unblind(const Scalar& sigma_prime);

 private:
  BlindSession() = default;
  Scalar alpha_;
  Scalar beta_;
  Scalar c_;
  Bytes message_;
  G1 signer_pk_;
  HashDomain domain_ = HashDomain::kWithdrawMessage;
  bool used_ = false;
};

struct BlindChallenge {
  BlindSession session;
  Scalar c_prime;
};

}  // namespace offline_euro
