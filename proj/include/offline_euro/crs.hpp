#pragma once

#include "offline_euro/pairing.hpp"

namespace offline_euro {

/// Public Groth-Sahai parameters (g, u, g', u', h, v, h', v').
///
/// g = g1 and h = g2. u = g1^alpha and v = g2^beta carry the trapdoor. The
/// primed elements are random and published for format compatibility; no
/// operation in this protocol consumes them.
struct CommonReferenceString {
  G1 g, u, g_prime, u_prime;
  G2 h, v, h_prime, v_prime;

  /// params-id (u8 length + ASCII) followed by the eight element encodings
  /// in the order g, u, g', u', h, v, h', v'.
  Bytes to_bytes() const;
  static CommonReferenceString from_bytes(ByteView bytes);
  static std::size_t encoded_size();

  bool operator==(const CommonReferenceString&) const = default;
};

/// Extraction exponents; held by the TTP only.
struct Trapdoor {
  Scalar alpha;
  Scalar beta;

  Bytes to_bytes() const;
  static Trapdoor from_bytes(ByteView bytes);
};

struct CrsSetup {
  CommonReferenceString crs;
  Trapdoor trapdoor;
};

CrsSetup generate_crs(Rng& rng);

/// X = c1^(-alpha) * c2 for a commitment (g1^r, u^r * X).
G1 extract_committed_g1(const G1& c1, const G1& c2, const Scalar& alpha);

/// Y = d1^(-beta) * d2 for a commitment (g2^s, v^s * Y).
G2 extract_committed_g2(const G2& d1, const G2& d2, const Scalar& beta);

}  // namespace offline_euro
