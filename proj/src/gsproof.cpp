#include "offline_euro/gsproof.hpp"

namespace offline_euro {

Bytes RandomizationElements::to_bytes() const {
  Bytes out;
  out.reserve(kEncodedSize);
  append(out, g2_t.to_bytes());
  append(out, v_t.to_bytes());
  append(out, g1_neg_t.to_bytes());
  append(out, u_neg_t.to_bytes());
  return out;
}

RandomizationElements RandomizationElements::from_bytes(ByteView bytes) {
  ByteReader in(bytes);
  RandomizationElements r;
  r.g2_t = G2::from_bytes(in.take(G2::kEncodedSize));
  r.v_t = G2::from_bytes(in.take(G2::kEncodedSize));
  r.g1_neg_t = G1::from_bytes(in.take(G1::kEncodedSize));
  r.u_neg_t = G1::from_bytes(in.take(G1::kEncodedSize));
  in.expect_end();
  return r;
}

ReceiverSecret randomization_from_secret(const Scalar& t, const CommonReferenceString& crs) {
  return {t, {crs.h.pow(t), crs.v.pow(t), crs.g.pow(-t), crs.u.pow(-t)}};
}

ReceiverSecret derive_randomization(const CommonReferenceString& crs, Rng& rng) {
  return randomization_from_secret(Scalar::random_nonzero(rng), crs);
}

bool randomization_consistent(const RandomizationElements& rand,
                              const CommonReferenceString& crs) {
  if (rand.g2_t.is_identity() || rand.g1_neg_t.is_identity()) return false;
  // e(g1^-t, g2) e(g1, g2^t) = 1
  const std::pair<G1, G2> base[] = {{rand.g1_neg_t, crs.h}, {crs.g, rand.g2_t}};
  // e(u^-t, g2) e(u, g2^t) = 1
  const std::pair<G1, G2> u_side[] = {{rand.u_neg_t, crs.h}, {crs.u, rand.g2_t}};
  // e(g1^-t, v) e(g1, v^t) = 1
  const std::pair<G1, G2> v_side[] = {{rand.g1_neg_t, crs.v}, {crs.g, rand.v_t}};
  return pairing_product(base).is_identity() && pairing_product(u_side).is_identity() &&
         pairing_product(v_side).is_identity();
}

Bytes TransactionProof::to_bytes() const {
  Bytes out;
  out.reserve(kEncodedSize);
  append(out, c1.to_bytes());
  append(out, c2.to_bytes());
  append(out, d1.to_bytes());
  append(out, d2.to_bytes());
  append(out, theta1.to_bytes());
  append(out, theta2.to_bytes());
  append(out, pi1.to_bytes());
  append(out, pi2.to_bytes());
  append(out, target.to_bytes());
  return out;
}

TransactionProof TransactionProof::from_bytes(ByteView bytes) {
  ByteReader in(bytes);
  TransactionProof p;
  p.c1 = G1::from_bytes(in.take(G1::kEncodedSize));
  p.c2 = G1::from_bytes(in.take(G1::kEncodedSize));
  p.d1 = G2::from_bytes(in.take(G2::kEncodedSize));
  p.d2 = G2::from_bytes(in.take(G2::kEncodedSize));
  p.theta1 = G1::from_bytes(in.take(G1::kEncodedSize));
  p.theta2 = G1::from_bytes(in.take(G1::kEncodedSize));
  p.pi1 = G2::from_bytes(in.take(G2::kEncodedSize));
  p.pi2 = G2::from_bytes(in.take(G2::kEncodedSize));
  p.target = GT::from_bytes(in.take(GT::kEncodedSize));
  in.expect_end();
  return p;
}

ProverOutput prove(const Scalar& x, const Scalar& y, const Scalar& s,
                   const RandomizationElements& rand, const GT& target,
                   const CommonReferenceString& crs, Rng& rng) {
  if (x.is_zero()) throw ProtocolError("invalid spender key: zero");
  const G1 X = crs.g.pow(x);
  const G2 Y = crs.h.pow(y);
  auto r = Scalar::random_nonzero(rng);

  ProverOutput out;
  out.r = r;
  auto& p = out.proof;
  p.c1 = crs.g.pow(r);
  p.c2 = crs.u.pow(r) * X;
  p.d1 = crs.h.pow(s);
  p.d2 = crs.v.pow(s) * Y;
  p.theta1 = rand.g1_neg_t;
  p.theta2 = X.pow(s) * rand.u_neg_t;
  p.pi1 = p.d1.pow(r) * rand.g2_t;
  p.pi2 = p.d2.pow(r) * rand.v_t;
  p.target = target;
  return out;
}

bool verify_proof(const TransactionProof& p, const CommonReferenceString& crs) {
  const G1 g_inv = crs.g.inverse();
  const G1 u_inv = crs.u.inverse();
  const G1 theta1_inv = p.theta1.inverse();
  const G1 theta2_inv = p.theta2.inverse();

  // e(c1,d1) = e(g1,pi1) e(theta1,g2)
  const std::pair<G1, G2> e11[] = {{p.c1, p.d1}, {g_inv, p.pi1}, {theta1_inv, crs.h}};
  // e(c1,d2) = e(g1,pi2) e(theta1,v)
  const std::pair<G1, G2> e12[] = {{p.c1, p.d2}, {g_inv, p.pi2}, {theta1_inv, crs.v}};
  // e(c2,d1) = e(u,pi1) e(theta2,g2)
  const std::pair<G1, G2> e21[] = {{p.c2, p.d1}, {u_inv, p.pi1}, {theta2_inv, crs.h}};
  // e(c2,d2) = e(u,pi2) e(theta2,v) T
  const std::pair<G1, G2> e22[] = {{p.c2, p.d2}, {u_inv, p.pi2}, {theta2_inv, crs.v}};

  return pairing_product(e11).is_identity() && pairing_product(e12).is_identity() &&
         pairing_product(e21).is_identity() && pairing_product(e22) == p.target;
}

GT initial_target(const Scalar& sigma) { return base_pairing().pow(sigma); }

GT next_target(const GT& prev) { return base_pairing().pow(gt_to_scalar(prev)); }

bool verify_knowledge_link(const G1& prev_theta1, const G2& cur_d1) {
  return pair(prev_theta1, cur_d1) == base_pairing();
}

bool verify_link(const TransactionProof& prev, const TransactionProof& cur) {
  return cur.target == next_target(prev.target) && verify_knowledge_link(prev.theta1, cur.d1);
}

}  // namespace offline_euro
