#include "chain_helpers.hpp"
#include "doctest.h"

using namespace offline_euro;
using namespace offline_euro::testing;

TEST_CASE("withdrawal_prepare") {
  ChainWorld w(1);
  auto req = withdrawal_prepare(w.rng);
  CHECK(G1::generator().pow(-req.t0) == req.theta1_w);
  CHECK(req.message.size() == 32 + 48);
  auto entry = withdraw(w);
  CHECK(verify(entry.euro.signed_message(), entry.euro.bank_sig, w.bank.public_key,
               HashDomain::kWithdrawMessage));
  CHECK(entry.euro.proofs.empty());
  CHECK(entry.euro.to_bytes().size() == predicted_size(0) + 4);
}

TEST_CASE("first spend uses the withdrawal t") {
  ChainWorld w(2);
  auto entry = withdraw(w);
  auto spender = KeyPair::generate(w.rng);
  auto receiver = derive_randomization(w.crs(), w.rng);
  auto bundle = spend(entry, spender, receiver.elements, w.crs(), w.rng);
  auto s = (-entry.t_secret).inverse();
  CHECK(s * (-entry.t_secret) == Scalar::one());
  CHECK(bundle.vs_commit == w.crs().v.pow(s));
  CHECK_FALSE(bundle.prev_theta_sig.has_value());
  const auto& proof = bundle.euro.proofs.back();
  CHECK(pair(spender.public_key, bundle.y_commit) == proof.target);
  CHECK(proof.target == initial_target(entry.euro.bank_sig.sigma));
  CHECK(check_transfer(bundle, receiver, w.crs(), w.bank.public_key).ok());
}

TEST_CASE("honest chains of length 1..10 are accepted at every hop") {
  ChainWorld w(3);
  auto hops = build_chain(w, 10);
  for (std::size_t i = 0; i < hops.size(); ++i) {
    CAPTURE(i);
    CHECK(hops[i].bundle.euro.proofs.size() == i + 1);
    CHECK(check_transfer(hops[i].bundle, hops[i].receiver, w.crs(), w.bank.public_key).ok());
    CHECK(pair(hops[i].spender.public_key, hops[i].bundle.y_commit) ==
          hops[i].bundle.euro.proofs.back().target);
  }
}

TEST_CASE("receive_verify rejects a bundle built for another receiver") {
  ChainWorld w(4);
  auto entry = withdraw(w);
  auto spender = KeyPair::generate(w.rng);
  auto intended = derive_randomization(w.crs(), w.rng);
  auto other = derive_randomization(w.crs(), w.rng);
  auto bundle = spend(entry, spender, other.elements, w.crs(), w.rng);
  auto check = check_transfer(bundle, intended, w.crs(), w.bank.public_key);
  CHECK(check.reason == Rejection::kForeignRandomization);
  CHECK_THROWS_AS(receive_verify(bundle, intended, w.crs(), w.bank.public_key), TransferRejected);
}

TEST_CASE("receive_verify rejects a forged previous theta-signature") {
  ChainWorld w(5);
  auto hops = build_chain(w, 2);
  auto bundle = hops[1].bundle;
  auto random_key = KeyPair::generate(w.rng);
  bundle.prev_theta_sig = sign(bundle.euro.proofs[0].theta1.to_bytes(), random_key.secret, w.rng,
                               HashDomain::kThetaSignature);
  auto check = check_transfer(bundle, hops[1].receiver, w.crs(), w.bank.public_key);
  CHECK(check.reason == Rejection::kBadPrevThetaSignature);

  bundle.prev_theta_sig.reset();
  CHECK(check_transfer(bundle, hops[1].receiver, w.crs(), w.bank.public_key).reason ==
        Rejection::kBadPrevThetaSignature);
}

TEST_CASE("receive_verify: named rejections for single faults") {
  ChainWorld w(6);
  auto hops = build_chain(w, 2);
  const auto& hop = hops[1];
  const auto& pk = w.bank.public_key;

  SUBCASE("bad bank signature") {
    auto b = hop.bundle;
    b.euro.serial[0] ^= 1;
    CHECK(check_transfer(b, hop.receiver, w.crs(), pk).reason == Rejection::kBadBankSignature);
    CHECK(check_transfer(hop.bundle, hop.receiver, w.crs(), KeyPair::generate(w.rng).public_key)
              .reason == Rejection::kBadBankSignature);
  }
  SUBCASE("bad d2") {
    auto b = hop.bundle;
    b.y_commit = b.y_commit * w.crs().h;
    CHECK(check_transfer(b, hop.receiver, w.crs(), pk).reason == Rejection::kBadD2);
  }
  SUBCASE("bad current theta signature") {
    auto b = hop.bundle;
    b.cur_theta_sig.c = b.cur_theta_sig.c + Scalar::one();
    CHECK(check_transfer(b, hop.receiver, w.crs(), pk).reason == Rejection::kBadThetaSignature);
  }
  SUBCASE("empty chain") {
    auto b = hop.bundle;
    b.euro.proofs.clear();
    CHECK(check_transfer(b, hop.receiver, w.crs(), pk).reason == Rejection::kEmptyChain);
  }
}

TEST_CASE("mutating any group element anywhere in the chain is rejected") {
  ChainWorld w(7);
  auto hops = build_chain(w, 3);
  const auto& hop = hops.back();
  for (std::size_t i = 0; i < 3; ++i) {
    for (int pos = 0; pos < 9; ++pos) {
      auto b = hop.bundle;
      auto& p = b.euro.proofs[i];
      switch (pos) {
        case 0: p.c1 = G1::random(w.rng); break;
        case 1: p.c2 = G1::random(w.rng); break;
        case 2: p.d1 = G2::random(w.rng); break;
        case 3: p.d2 = G2::random(w.rng); break;
        case 4: p.theta1 = G1::random(w.rng); break;
        case 5: p.theta2 = G1::random(w.rng); break;
        case 6: p.pi1 = G2::random(w.rng); break;
        case 7: p.pi2 = G2::random(w.rng); break;
        case 8: p.target = p.target * base_pairing(); break;
      }
      CAPTURE(i);
      CAPTURE(pos);
      CHECK_FALSE(check_transfer(b, hop.receiver, w.crs(), w.bank.public_key).ok());
    }
  }
  auto b = hop.bundle;
  b.euro.theta1_w = G1::random(w.rng);
  CHECK_FALSE(check_transfer(b, hop.receiver, w.crs(), w.bank.public_key).ok());
}

TEST_CASE("a spender who does not know t_prev cannot produce an accepted bundle") {
  ChainWorld w(8);
  auto hops = build_chain(w, 1);
  auto receiver = derive_randomization(w.crs(), w.rng);
  auto spender = KeyPair::generate(w.rng);
  SpendOptions guess;
  guess.s_override = Scalar::random_nonzero(w.rng);
  auto bundle = spend(hops[0].received, spender, receiver.elements, w.crs(), w.rng, guess);
  auto check = check_transfer(bundle, receiver, w.crs(), w.bank.public_key);
  CHECK(check.reason == Rejection::kBrokenKnowledgeLink);
  CHECK(check.index == 1);
}

TEST_CASE("a proof toward the wrong target breaks the target link") {
  ChainWorld w(9);
  auto hops = build_chain(w, 1);
  auto receiver = derive_randomization(w.crs(), w.rng);
  auto spender = KeyPair::generate(w.rng);
  SpendOptions wrong;
  wrong.exponent_override = Scalar::random(w.rng);
  auto bundle = spend(hops[0].received, spender, receiver.elements, w.crs(), w.rng, wrong);
  CHECK(verify_proof(bundle.euro.proofs.back(), w.crs()));
  auto check = check_transfer(bundle, receiver, w.crs(), w.bank.public_key);
  CHECK(check.reason == Rejection::kBrokenTargetLink);
  CHECK(check.describe() == "broken-link(target)[1]");
}

TEST_CASE("spend refuses spent entries and malformed randomization") {
  ChainWorld w(10);
  auto entry = withdraw(w);
  auto spender = KeyPair::generate(w.rng);
  auto receiver = derive_randomization(w.crs(), w.rng);
  entry.spent = true;
  try {
    spend(entry, spender, receiver.elements, w.crs(), w.rng);
    FAIL("expected rejection");
  } catch (const TransferRejected& e) {
    CHECK(e.check().reason == Rejection::kAlreadySpent);
  }
  SpendOptions respend;
  respend.allow_respend = true;
  CHECK_NOTHROW(spend(entry, spender, receiver.elements, w.crs(), w.rng, respend));

  entry.spent = false;
  auto bad = receiver.elements;
  bad.v_t = G2::random(w.rng);
  CHECK_THROWS_AS(spend(entry, spender, bad, w.crs(), w.rng), TransferRejected);
}

TEST_CASE("euro serialization and growth") {
  ChainWorld w(11);
  auto hops = build_chain(w, 50);
  auto fresh = withdraw(w);
  CHECK(DigitalEuro::from_bytes(fresh.euro.to_bytes()) == fresh.euro);
  CHECK(DigitalEuro::from_bytes(hops[0].bundle.euro.to_bytes()) == hops[0].bundle.euro);
  CHECK(DigitalEuro::from_bytes(hops[49].bundle.euro.to_bytes()) == hops[49].bundle.euro);

  std::vector<std::size_t> sizes;
  for (const auto& hop : hops) sizes.push_back(hop.bundle.euro.to_bytes().size());
  for (std::size_t n = 1; n < sizes.size(); ++n) {
    CHECK(sizes[n] - sizes[n - 1] == TransactionProof::kEncodedSize);
  }
  for (std::size_t n = 0; n < sizes.size(); ++n) {
    // Only the u32 proof count is not in the prediction.
    CHECK(sizes[n] == predicted_size(n + 1) + 4);
  }

  auto bytes = hops[2].bundle.euro.to_bytes();
  Bytes truncated(bytes.begin(), bytes.end() - 1);
  CHECK_THROWS_AS(DigitalEuro::from_bytes(truncated), DecodeError);
  Bytes inflated = bytes;
  inflated[DigitalEuro::kHeaderSize - 1] = 0xFF;  // proof count
  CHECK_THROWS_AS(DigitalEuro::from_bytes(inflated), DecodeError);
}

TEST_CASE("bundle serialization") {
  ChainWorld w(12);
  auto hops = build_chain(w, 2);
  for (const auto& hop : hops) {
    auto bytes = hop.bundle.to_bytes();
    CHECK(bytes.size() == TransferBundle::encoded_size(hop.bundle.euro.proofs.size()));
    CHECK(TransferBundle::from_bytes(bytes) == hop.bundle);
  }
}

TEST_CASE("predicted_size") {
  CHECK(predicted_size(0) == 32 + 48 + 64);
  SizeModel type_a{32, 128, 128, 128, 40};
  CHECK(type_a.per_transfer() == 1152);
  SizeModel type_f{32, 40, 80, 240, 40};
  CHECK(type_f.per_transfer() == 720);
  CHECK(SizeModel{}.per_transfer() == TransactionProof::kEncodedSize);
  CHECK(predicted_size(3, type_a) == 32 + 128 + 40 + 3 * 1152);
}

TEST_CASE("dedup key") {
  ChainWorld w(13);
  auto a = withdraw(w);
  auto b = withdraw(w);
  CHECK(a.euro.dedup_key() == a.euro.dedup_key());
  CHECK_FALSE(a.euro.dedup_key() == b.euro.dedup_key());
  auto hops = build_chain(w, 1);
  auto with_proof = hops[0].bundle.euro;
  auto without = with_proof;
  without.proofs.clear();
  CHECK(with_proof.dedup_key() == without.dedup_key());
}
