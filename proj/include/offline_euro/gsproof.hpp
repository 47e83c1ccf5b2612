#pragma once

// Groth-Sahai commit-and-prove instance for one pairing-product statement
// e(X, Y) = T, with X in G1 and Y in G2, as used for a single transfer.
//
// Commitments:  c1 = g1^r        d1 = g2^s
//               c2 = u^r X       d2 = v^s Y
// Proof:        theta1 = g1^-t   pi1 = d1^r g2^t
//               theta2 = X^s u^-t pi2 = d2^r v^t
//
// The t-dependent factors are supplied by the receiver (RandomizationElements),
// so the spender never learns t. s is fixed to (-t_prev)^-1 which ties each
// proof to the previous holder's randomization.

#include <optional>

#include "offline_euro/crs.hpp"

namespace offline_euro {

/// (g2^t, v^t, g1^-t, u^-t), generated by a receiver.
struct RandomizationElements {
  static constexpr std::size_t kEncodedSize = 2 * G2::kEncodedSize + 2 * G1::kEncodedSize;

  G2 g2_t;
  G2 v_t;
  G1 g1_neg_t;
  G1 u_neg_t;

  /// g2_t || v_t || g1_neg_t || u_neg_t.
  Bytes to_bytes() const;
  static RandomizationElements from_bytes(ByteView bytes);

  bool operator==(const RandomizationElements&) const = default;
};

/// The receiver's secret t together with the elements it published.
struct ReceiverSecret {
  Scalar t;
  RandomizationElements elements;
};

ReceiverSecret derive_randomization(const CommonReferenceString& crs, Rng& rng);
ReceiverSecret randomization_from_secret(const Scalar& t, const CommonReferenceString& crs);

/// Public consistency check of a randomization tuple: all four elements
/// share one exponent t (checked with three pairing-product equations).
bool randomization_consistent(const RandomizationElements& rand,
                              const CommonReferenceString& crs);

struct TransactionProof {
  static constexpr std::size_t kEncodedSize =
      4 * G1::kEncodedSize + 4 * G2::kEncodedSize + GT::kEncodedSize;

  G1 c1, c2;
  G2 d1, d2;
  G1 theta1, theta2;
  G2 pi1, pi2;
  GT target;

  /// c1, c2, d1, d2, theta1, theta2, pi1, pi2, target; each canonical.
  Bytes to_bytes() const;
  static TransactionProof from_bytes(ByteView bytes);

  bool operator==(const TransactionProof&) const = default;
};

struct ProverOutput {
  TransactionProof proof;
  /// Commitment randomness; doubles as the theta-signature key (c1 = g1^r).
  Scalar r;
};

/// Builds the proof for e(g1^x, g2^y) = target with fresh r. Throws
/// ProtocolError for a zero x.
ProverOutput prove(const Scalar& x, const Scalar& y, const Scalar& s,
                   const RandomizationElements& rand, const GT& target,
                   const CommonReferenceString& crs, Rng& rng);

/// The four elementwise pairing-product equations of the extended-map check.
bool verify_proof(const TransactionProof& proof, const CommonReferenceString& crs);

/// e(g1, g2)^sigma.
GT initial_target(const Scalar& sigma);
/// e(g1, g2)^embed(prev).
GT next_target(const GT& prev);

/// e(theta1_prev, d1_cur) == e(g1, g2): the current spender knew t_prev.
bool verify_knowledge_link(const G1& prev_theta1, const G2& cur_d1);

/// Target chaining plus the knowledge link between consecutive proofs.
bool verify_link(const TransactionProof& prev, const TransactionProof& cur);

}  // namespace offline_euro
