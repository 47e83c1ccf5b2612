#include "offline_euro/schnorr.hpp"

namespace offline_euro {

KeyPair KeyPair::generate(Rng& rng) { return from_secret(Scalar::random_nonzero(rng)); }

KeyPair KeyPair::from_secret(const Scalar& secret) {
  if (secret.is_zero()) throw ProtocolError("zero private key");
  return {secret, G1::generator().pow(secret)};
}

std::array<std::uint8_t, Signature::kEncodedSize> Signature::to_bytes() const {
  std::array<std::uint8_t, kEncodedSize> out;
  auto s = sigma.to_bytes();
  auto cb = c.to_bytes();
  std::copy(s.begin(), s.end(), out.begin());
  std::copy(cb.begin(), cb.end(), out.begin() + Scalar::kEncodedSize);
  return out;
}

Signature Signature::from_bytes(ByteView bytes) {
  if (bytes.size() != kEncodedSize) throw DecodeError("signature must be 64 bytes");
  return {Scalar::from_bytes(bytes.first(Scalar::kEncodedSize)),
          Scalar::from_bytes(bytes.subspan(Scalar::kEncodedSize))};
}

Scalar schnorr_challenge(const G1& commitment, ByteView message, HashDomain domain) {
  Bytes buf;
  buf.reserve(G1::kEncodedSize + message.size());
  append(buf, commitment.to_bytes());
  append(buf, message);
  return hash_to_scalar(domain, buf);
}

Signature sign(ByteView message, const Scalar& secret, Rng& rng, HashDomain domain) {
  auto k = Scalar::random_nonzero(rng);
  auto c = schnorr_challenge(G1::generator().pow(k), message, domain);
  return {k - c * secret, c};
}

bool verify(ByteView message, const Signature& sig, const G1& public_key, HashDomain domain) {
  auto r_v = G1::generator().pow(sig.sigma) * public_key.pow(sig.c);
  return schnorr_challenge(r_v, message, domain) == sig.c;
}

SignerNonce SignerNonce::generate(Rng& rng) {
  auto k = Scalar::random_nonzero(rng);
  return SignerNonce(k, G1::generator().pow(k));
}

Scalar SignerNonce::respond(const Scalar& c_prime, const Scalar& secret) {
  if (used_) throw ProtocolError("signer nonce already used");
  used_ = true;
  return k_ - c_prime * secret;
}

BlindChallenge BlindSession::begin(const G1& r, Bytes message, const G1& signer_pk, Rng& rng,
                                   HashDomain domain) {
  auto alpha = Scalar::random_nonzero(rng);
  auto beta = Scalar::random_nonzero(rng);
  return begin_with_factors(r, std::move(message), signer_pk, alpha, beta, domain);
}

BlindChallenge BlindSession::begin_with_factors(const G1& r, Bytes message, const G1& signer_pk,
                                                const Scalar& alpha, const Scalar& beta,
                                                HashDomain domain) {
  if (r.is_identity()) throw ProtocolError("signer commitment is the identity");
  BlindSession s;
  s.alpha_ = alpha;
  s.beta_ = beta;
  s.signer_pk_ = signer_pk;
  s.domain_ = domain;
  auto r_blind = r * G1::generator().pow(-alpha) * signer_pk.pow(-beta);
  s.c_ = schnorr_challenge(r_blind, message, domain);
  s.message_ = std::move(message);
  auto c_prime = s.c_ + beta;
  return {std::move(s), c_prime};
}

Signature BlindSession::unblind(const Scalar& sigma_prime) {
  if (used_) throw ProtocolError("blind session already consumed");
  used_ = true;
  Signature sig{sigma_prime - alpha_, c_};
  if (!verify(message_, sig, signer_pk_, domain_)) {
    throw ProtocolError("signer response does not yield a valid signature");
  }
  return sig;
}

}  // namespace offline_euro
