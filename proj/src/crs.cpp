#include "offline_euro/crs.hpp"

namespace offline_euro {

namespace {

void put_id(Bytes& out) {
  const auto& id = GroupParams::bls12_381().id;
  out.push_back(static_cast<std::uint8_t>(id.size()));
  append(out, as_bytes(id));
}

void check_id(ByteReader& in) {
  auto n = in.u8();
  auto id = in.take(n);
  const auto& expected = GroupParams::bls12_381().id;
  if (std::string(id.begin(), id.end()) != expected) {
    throw DecodeError("parameter mismatch: encoding is for '" + std::string(id.begin(), id.end()) +
                      "', this build uses '" + expected + "'");
  }
}

}  // namespace

Bytes CommonReferenceString::to_bytes() const {
  Bytes out;
  out.reserve(encoded_size());
  put_id(out);
  for (const G1* e : {&g, &u, &g_prime, &u_prime}) append(out, e->to_bytes());
  for (const G2* e : {&h, &v, &h_prime, &v_prime}) append(out, e->to_bytes());
  return out;
}

CommonReferenceString CommonReferenceString::from_bytes(ByteView bytes) {
  ByteReader in(bytes);
  check_id(in);
  CommonReferenceString crs;
  for (G1* e : {&crs.g, &crs.u, &crs.g_prime, &crs.u_prime}) {
    *e = G1::from_bytes(in.take(G1::kEncodedSize));
  }
  for (G2* e : {&crs.h, &crs.v, &crs.h_prime, &crs.v_prime}) {
    *e = G2::from_bytes(in.take(G2::kEncodedSize));
  }
  in.expect_end();
  if (!(crs.g == G1::generator()) || !(crs.h == G2::generator())) {
    throw DecodeError("CRS base elements differ from the group generators");
  }
  return crs;
}

std::size_t CommonReferenceString::encoded_size() {
  return 1 + GroupParams::bls12_381().id.size() + 4 * G1::kEncodedSize + 4 * G2::kEncodedSize;
}

Bytes Trapdoor::to_bytes() const {
  Bytes out;
  append(out, alpha.to_bytes());
  append(out, beta.to_bytes());
  return out;
}

Trapdoor Trapdoor::from_bytes(ByteView bytes) {
  ByteReader in(bytes);
  Trapdoor t;
  t.alpha = Scalar::from_bytes(in.take(Scalar::kEncodedSize));
  t.beta = Scalar::from_bytes(in.take(Scalar::kEncodedSize));
  in.expect_end();
  if (t.alpha.is_zero() || t.beta.is_zero()) throw DecodeError("zero trapdoor exponent");
  return t;
}

CrsSetup generate_crs(Rng& rng) {
  CrsSetup s;
  s.trapdoor.alpha = Scalar::random_nonzero(rng);
  s.trapdoor.beta = Scalar::random_nonzero(rng);
  auto& crs = s.crs;
  crs.g = G1::generator();
  crs.h = G2::generator();
  crs.u = crs.g.pow(s.trapdoor.alpha);
  crs.v = crs.h.pow(s.trapdoor.beta);
  crs.g_prime = G1::random(rng);
  crs.u_prime = G1::random(rng);
  crs.h_prime = G2::random(rng);
  crs.v_prime = G2::random(rng);
  return s;
}

G1 extract_committed_g1(const G1& c1, const G1& c2, const Scalar& alpha) {
  return c1.pow(-alpha) * c2;
}

G2 extract_committed_g2(const G2& d1, const G2& d2, const Scalar& beta) {
  return d1.pow(-beta) * d2;
}

}  // namespace offline_euro
