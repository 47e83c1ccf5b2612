#include <set>

#include "doctest.h"
#include "offline_euro/schnorr.hpp"

using namespace offline_euro;

namespace {

Bytes random_message(Rng& rng, std::size_t n) {
  Bytes m(n);
  rng.fill(m);
  return m;
}

constexpr auto kDomain = HashDomain::kWithdrawMessage;

}  // namespace

TEST_CASE("keygen") {
  Rng rng(1);
  auto a = KeyPair::generate(rng);
  auto b = KeyPair::generate(rng);
  CHECK(G1::generator().pow(a.secret) == a.public_key);
  CHECK_FALSE(a.secret.is_zero());
  CHECK_FALSE(a.secret == b.secret);
  CHECK_THROWS_AS(KeyPair::from_secret(Scalar()), ProtocolError);
}

TEST_CASE("sign and verify") {
  Rng rng(2);
  auto keys = KeyPair::generate(rng);
  auto other = KeyPair::generate(rng);
  for (int i = 0; i < 100; ++i) {
    auto m = random_message(rng, 1 + i);
    auto sig = sign(m, keys.secret, rng, kDomain);
    CHECK(verify(m, sig, keys.public_key, kDomain));
    CHECK_FALSE(verify(m, sig, other.public_key, kDomain));
    CHECK_FALSE(verify(m, sig, keys.public_key, HashDomain::kThetaSignature));
    auto tampered = m;
    tampered[i % tampered.size()] ^= 0x01;
    CHECK_FALSE(verify(tampered, sig, keys.public_key, kDomain));
  }
  Bytes any = {1, 2, 3};
  CHECK_FALSE(verify(any, Signature{}, G1::identity(), kDomain));
}

TEST_CASE("signature encoding") {
  Rng rng(3);
  auto keys = KeyPair::generate(rng);
  Bytes m = {9, 9};
  auto sig = sign(m, keys.secret, rng, kDomain);
  auto bytes = sig.to_bytes();
  CHECK(bytes.size() == 64);
  CHECK(Signature::from_bytes(bytes) == sig);
  CHECK_THROWS_AS(Signature::from_bytes(ByteView(bytes).first(63)), DecodeError);
}

TEST_CASE("signer nonce") {
  Rng rng(4);
  auto n1 = SignerNonce::generate(rng);
  auto n2 = SignerNonce::generate(rng);
  CHECK(G1::generator().pow(n1.nonce()) == n1.commitment());
  CHECK_FALSE(n1.nonce().is_zero());
  CHECK_FALSE(n1.nonce() == n2.nonce());

  auto keys = KeyPair::generate(rng);
  auto k = n1.nonce();
  CHECK(n1.respond(Scalar(), keys.secret) == k);
  CHECK(n1.used());
  CHECK_THROWS_AS(n1.respond(Scalar::one(), keys.secret), ProtocolError);

  auto c_prime = Scalar::random(rng);
  auto sigma_prime = n2.respond(c_prime, keys.secret);
  CHECK(G1::generator().pow(sigma_prime) * keys.public_key.pow(c_prime) == n2.commitment());
}

TEST_CASE("blind issuance end to end") {
  Rng rng(5);
  auto bank = KeyPair::generate(rng);
  for (int i = 0; i < 100; ++i) {
    auto m = random_message(rng, 80);
    auto nonce = SignerNonce::generate(rng);
    auto [session, c_prime] = BlindSession::begin(nonce.commitment(), m, bank.public_key, rng, kDomain);
    auto sigma_prime = nonce.respond(c_prime, bank.secret);
    auto sig = session.unblind(sigma_prime);
    CHECK(verify(m, sig, bank.public_key, kDomain));
    // The signer's view (c', sigma') is unlinkable to the final (c, sigma).
    CHECK_FALSE(sig.sigma == sigma_prime);
    CHECK_FALSE(sig.c == c_prime);
    CHECK_THROWS_AS(session.unblind(sigma_prime), ProtocolError);
  }
}

TEST_CASE("blind issuance with zero blinding is transparent") {
  Rng rng(6);
  auto bank = KeyPair::generate(rng);
  Bytes m = {1, 2, 3, 4, 5};
  auto nonce = SignerNonce::generate(rng);
  auto [session, c_prime] = BlindSession::begin_with_factors(nonce.commitment(), m, bank.public_key,
                                                             Scalar(), Scalar(), kDomain);
  CHECK(c_prime == schnorr_challenge(nonce.commitment(), m, kDomain));
  CHECK(session.challenge() == c_prime);
  auto sigma_prime = nonce.respond(c_prime, bank.secret);
  auto sig = session.unblind(sigma_prime);
  CHECK(sig.sigma == sigma_prime);
  CHECK(sig.c == c_prime);
}

TEST_CASE("blind challenge minus beta is the stored challenge") {
  Rng rng(7);
  auto bank = KeyPair::generate(rng);
  auto nonce = SignerNonce::generate(rng);
  auto beta = Scalar::random_nonzero(rng);
  auto [session, c_prime] = BlindSession::begin_with_factors(
      nonce.commitment(), Bytes{7}, bank.public_key, Scalar::random_nonzero(rng), beta, kDomain);
  CHECK(c_prime - beta == session.challenge());
}

TEST_CASE("blind issuance rejects bad inputs") {
  Rng rng(8);
  auto bank = KeyPair::generate(rng);
  CHECK_THROWS_AS(BlindSession::begin(G1::identity(), Bytes{1}, bank.public_key, rng, kDomain),
                  ProtocolError);
  auto nonce = SignerNonce::generate(rng);
  auto [session, c_prime] = BlindSession::begin(nonce.commitment(), Bytes{1}, bank.public_key, rng, kDomain);
  // A response computed with the wrong key does not unblind.
  auto wrong = KeyPair::generate(rng);
  CHECK_THROWS_AS(session.unblind(nonce.respond(c_prime, wrong.secret)), ProtocolError);
}
