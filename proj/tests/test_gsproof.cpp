#include "doctest.h"
#include "offline_euro/gsproof.hpp"

using namespace offline_euro;

namespace {

struct Fixture {
  Rng rng{77};
  CrsSetup setup = generate_crs(rng);
  const CommonReferenceString& crs = setup.crs;
};

struct Honest {
  Scalar x, y;
  ReceiverSecret receiver;
  ProverOutput out;
};

Honest honest_proof(Fixture& f) {
  Honest h;
  h.x = Scalar::random_nonzero(f.rng);
  h.y = Scalar::random_nonzero(f.rng);
  auto s = Scalar::random_nonzero(f.rng);
  h.receiver = derive_randomization(f.crs, f.rng);
  auto target = pair(f.crs.g.pow(h.x), f.crs.h.pow(h.y));
  h.out = prove(h.x, h.y, s, h.receiver.elements, target, f.crs, f.rng);
  return h;
}

}  // namespace

TEST_CASE("derive_randomization") {
  Fixture f;
  auto a = derive_randomization(f.crs, f.rng);
  auto b = derive_randomization(f.crs, f.rng);
  const auto& e = a.elements;
  CHECK(pair(e.g1_neg_t, e.g2_t) == base_pairing().pow(-(a.t * a.t)));
  CHECK((pair(e.g1_neg_t, f.crs.h) * pair(f.crs.g, e.g2_t)).is_identity());
  CHECK(f.crs.h.pow(a.t) == e.g2_t);
  CHECK(f.crs.v.pow(a.t) == e.v_t);
  CHECK(f.crs.u.pow(-a.t) == e.u_neg_t);
  CHECK_FALSE(a.t == b.t);
  CHECK(randomization_consistent(e, f.crs));
  CHECK(RandomizationElements::from_bytes(e.to_bytes()) == e);
  CHECK(e.to_bytes().size() == RandomizationElements::kEncodedSize);
}

TEST_CASE("randomization_consistent rejects mixed exponents") {
  Fixture f;
  auto a = derive_randomization(f.crs, f.rng);
  auto b = derive_randomization(f.crs, f.rng);
  for (int pos = 0; pos < 4; ++pos) {
    auto mixed = a.elements;
    switch (pos) {
      case 0: mixed.g2_t = b.elements.g2_t; break;
      case 1: mixed.v_t = b.elements.v_t; break;
      case 2: mixed.g1_neg_t = b.elements.g1_neg_t; break;
      case 3: mixed.u_neg_t = b.elements.u_neg_t; break;
    }
    CHECK_FALSE(randomization_consistent(mixed, f.crs));
  }
}

TEST_CASE("prove: completeness, construction and extraction") {
  Fixture f;
  for (int i = 0; i < 20; ++i) {
    auto h = honest_proof(f);
    const auto& p = h.out.proof;
    CHECK(verify_proof(p, f.crs));
    CHECK(p.theta1 == h.receiver.elements.g1_neg_t);
    CHECK(p.c1 == f.crs.g.pow(h.out.r));
    auto X = extract_committed_g1(p.c1, p.c2, f.setup.trapdoor.alpha);
    auto Y = extract_committed_g2(p.d1, p.d2, f.setup.trapdoor.beta);
    CHECK(X == f.crs.g.pow(h.x));
    CHECK(Y == f.crs.h.pow(h.y));
    CHECK(pair(X, Y) == p.target);
  }
  CHECK_THROWS_AS(prove(Scalar(), Scalar::one(), Scalar::one(), derive_randomization(f.crs, f.rng).elements,
                        GT(), f.crs, f.rng),
                  ProtocolError);
}

TEST_CASE("verify_proof: every single-element corruption is rejected") {
  Fixture f;
  auto h = honest_proof(f);
  for (int pos = 0; pos < 8; ++pos) {
    auto p = h.out.proof;
    switch (pos) {
      case 0: p.c1 = G1::random(f.rng); break;
      case 1: p.c2 = G1::random(f.rng); break;
      case 2: p.d1 = G2::random(f.rng); break;
      case 3: p.d2 = G2::random(f.rng); break;
      case 4: p.theta1 = G1::random(f.rng); break;
      case 5: p.theta2 = G1::random(f.rng); break;
      case 6: p.pi1 = G2::random(f.rng); break;
      case 7: p.pi2 = G2::random(f.rng); break;
    }
    CAPTURE(pos);
    CHECK_FALSE(verify_proof(p, f.crs));
  }
  auto p = h.out.proof;
  p.target = p.target * base_pairing();
  CHECK_FALSE(verify_proof(p, f.crs));
}

TEST_CASE("proof encoding") {
  Fixture f;
  auto h = honest_proof(f);
  auto bytes = h.out.proof.to_bytes();
  CHECK(bytes.size() == TransactionProof::kEncodedSize);
  // 4|G1| + 4|G2| + |GT| with |G1| = 48, |G2| = 96, |GT| = 576.
  CHECK(bytes.size() == 1152);
  CHECK(TransactionProof::from_bytes(bytes) == h.out.proof);
  bytes.pop_back();
  CHECK_THROWS_AS(TransactionProof::from_bytes(bytes), DecodeError);
}

TEST_CASE("targets") {
  CHECK(initial_target(Scalar()).is_identity());
  CHECK(initial_target(Scalar::one()) == base_pairing());
  Rng rng(1);
  auto sigma = Scalar::random(rng);
  CHECK(initial_target(sigma) == pair(G1::generator().pow(sigma), G2::generator()));

  auto t0 = initial_target(sigma);
  CHECK(next_target(t0) == next_target(t0));
  CHECK_FALSE(next_target(t0) == t0);
  // Anyone holding the chain recomputes it from sigma alone.
  auto t1 = next_target(t0);
  auto t2 = next_target(t1);
  CHECK(t2 == base_pairing().pow(gt_to_scalar(base_pairing().pow(gt_to_scalar(t0)))));
}

TEST_CASE("verify_link") {
  Fixture f;
  // Previous proof was received with randomization t_prev.
  auto prev_receiver = derive_randomization(f.crs, f.rng);
  auto x0 = Scalar::random_nonzero(f.rng);
  auto sigma = Scalar::random(f.rng);
  auto y0 = sigma * x0.inverse();
  auto prev = prove(x0, y0, Scalar::random_nonzero(f.rng), prev_receiver.elements,
                    initial_target(sigma), f.crs, f.rng)
                  .proof;

  auto x1 = Scalar::random_nonzero(f.rng);
  auto k = gt_to_scalar(prev.target);
  auto y1 = k * x1.inverse();
  auto s = (-prev_receiver.t).inverse();
  CHECK(s * (-prev_receiver.t) == Scalar::one());
  auto cur_receiver = derive_randomization(f.crs, f.rng);
  auto cur = prove(x1, y1, s, cur_receiver.elements, next_target(prev.target), f.crs, f.rng).proof;
  CHECK(verify_proof(cur, f.crs));
  CHECK(pair(f.crs.g.pow(x1), f.crs.h.pow(y1)) == cur.target);
  CHECK(verify_link(prev, cur));

  // s chosen without knowing t_prev.
  int rejected = 0;
  for (int i = 0; i < 20; ++i) {
    auto bad = prove(x1, y1, Scalar::random_nonzero(f.rng), cur_receiver.elements,
                     next_target(prev.target), f.crs, f.rng)
                   .proof;
    if (!verify_link(prev, bad)) ++rejected;
  }
  CHECK(rejected == 20);

  auto wrong_target = cur;
  wrong_target.target = initial_target(Scalar::random(f.rng));
  CHECK_FALSE(verify_link(prev, wrong_target));

  // Re-randomising d1 breaks the knowledge link.
  auto rerand = cur;
  rerand.d1 = rerand.d1 * f.crs.h;
  CHECK_FALSE(verify_link(prev, rerand));
}
