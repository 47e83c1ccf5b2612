#include <set>

#include "doctest.h"
#include "offline_euro/pairing.hpp"

using namespace offline_euro;

namespace {

// Repeated multiplication: an exponentiation oracle independent of GT::pow.
GT naive_pow(const GT& base, std::uint64_t e) {
  GT acc;
  for (std::uint64_t i = 0; i < e; ++i) acc = acc * base;
  return acc;
}

}  // namespace

TEST_CASE("scalar arithmetic") {
  Rng rng(7);
  auto a = Scalar::random_nonzero(rng);
  CHECK(a * a.inverse() == Scalar::one());
  CHECK(a + (-a) == Scalar());
  CHECK(Scalar::from_u64(3) * Scalar::from_u64(5) == Scalar::from_u64(15));
  CHECK_THROWS_AS(Scalar().inverse(), ProtocolError);
  CHECK(Scalar::from_bytes(a.to_bytes()) == a);
  CHECK(Scalar::from_bytes(Scalar().to_bytes()).is_zero());

  std::array<std::uint8_t, 32> all_ones;
  all_ones.fill(0xFF);
  CHECK_THROWS_AS(Scalar::from_bytes(all_ones), DecodeError);
  CHECK_THROWS_AS(Scalar::from_bytes(ByteView(all_ones).first(31)), DecodeError);
}

TEST_CASE("GT exponentiation agrees with repeated multiplication") {
  const GT& e = base_pairing();
  for (std::uint64_t k : {0u, 1u, 2u, 15u, 16u, 17u, 255u, 256u, 300u}) {
    CHECK(e.pow(Scalar::from_u64(k)) == naive_pow(e, k));
  }
  Rng rng(11);
  auto a = Scalar::random(rng);
  auto b = Scalar::random(rng);
  CHECK(e.pow(a) * e.pow(b) == e.pow(a + b));
  CHECK(e.pow(a) * e.pow(a).inverse() == GT::identity());
}

TEST_CASE("pair: non-degeneracy and bilinearity") {
  const auto& g1 = G1::generator();
  const auto& g2 = G2::generator();
  CHECK_FALSE(pair(g1, g2).is_identity());
  CHECK(pair(g1.pow(Scalar::from_u64(2)), g2.pow(Scalar::from_u64(3))) ==
        pair(g1, g2).pow(Scalar::from_u64(6)));
  CHECK(pair(G1::identity(), g2).is_identity());
  CHECK(pair(g1, G2::identity()).is_identity());
}

TEST_CASE("pair: 100 random exponent pairs match the scalar-product oracle") {
  Rng rng(2024);
  const GT& e = base_pairing();
  for (int i = 0; i < 100; ++i) {
    auto a = Scalar::random_nonzero(rng);
    auto b = Scalar::random_nonzero(rng);
    CHECK(pair(G1::generator().pow(a), G2::generator().pow(b)) == e.pow(a * b));
  }
}

TEST_CASE("pairing_product equals the product of single pairings") {
  Rng rng(5);
  std::vector<std::pair<G1, G2>> terms;
  GT expected;
  for (int i = 0; i < 4; ++i) {
    terms.emplace_back(G1::random(rng), G2::random(rng));
    expected = expected * pair(terms.back().first, terms.back().second);
  }
  terms.emplace_back(G1::identity(), G2::random(rng));
  CHECK(pairing_product(terms) == expected);
  CHECK(pairing_product({}).is_identity());
}

TEST_CASE("extended_pair") {
  const auto& g1 = G1::generator();
  const auto& g2 = G2::generator();
  auto all = extended_pair({g1, g1}, {g2, g2});
  for (auto& row : all)
    for (auto& entry : row) CHECK(entry == base_pairing());

  Rng rng(99);
  G1 a1 = G1::random(rng), a2 = G1::random(rng), a3 = G1::random(rng), a4 = G1::random(rng);
  G2 b1 = G2::random(rng), b2 = G2::random(rng);
  auto m = extended_pair({a1, a2}, {b1, b2});
  CHECK(m[0][1] == pair(a1, b2));
  CHECK(m[1][0] == pair(a2, b1));

  // Extended map is bilinear under entrywise products.
  auto lhs = extended_pair({a1 * a3, a2 * a4}, {b1, b2});
  auto rhs = entrywise_product(m, extended_pair({a3, a4}, {b1, b2}));
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(lhs[i][j] == rhs[i][j]);
}

TEST_CASE("hash_to_scalar") {
  Bytes msg = {1, 2, 3, 4};
  CHECK(hash_to_scalar(msg) == hash_to_scalar(msg));
  Bytes flipped = msg;
  flipped[2] ^= 0x01;
  CHECK_FALSE(hash_to_scalar(msg) == hash_to_scalar(flipped));
  auto empty = hash_to_scalar(ByteView{});
  CHECK(Scalar::from_bytes(empty.to_bytes()) == empty);
  CHECK_FALSE(hash_to_scalar(HashDomain::kThetaSignature, msg) ==
              hash_to_scalar(HashDomain::kWithdrawMessage, msg));

  // SHA-256("abc") reduced mod r.
  auto abc = sha256(as_bytes("abc"));
  CHECK(to_hex(abc) == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("gt_to_scalar") {
  const GT& e = base_pairing();
  CHECK(gt_to_scalar(e) == gt_to_scalar(e));
  Rng rng(3);
  std::set<std::string> seen;
  for (int i = 0; i < 20; ++i) {
    auto t = e.pow(Scalar::random(rng));
    seen.insert(to_hex(gt_to_scalar(t).to_bytes()));
  }
  CHECK(seen.size() == 20);
  CHECK_FALSE(e.pow(gt_to_scalar(e)).is_identity());
}

TEST_CASE("element encodings are canonical, fixed width and round-trip") {
  Rng rng(42);
  const GT& e = base_pairing();
  for (int i = 0; i < 100; ++i) {
    auto a = G1::random(rng);
    auto b = G2::random(rng);
    auto t = e.pow(Scalar::random(rng));
    auto ab = a.to_bytes();
    auto bb = b.to_bytes();
    auto tb = t.to_bytes();
    static_assert(sizeof(ab) == 48 && sizeof(bb) == 96 && sizeof(tb) == 576);
    CHECK(G1::from_bytes(ab) == a);
    CHECK(G2::from_bytes(bb) == b);
    CHECK(GT::from_bytes(tb) == t);
  }
  CHECK(G1::from_bytes(G1::identity().to_bytes()).is_identity());
  CHECK(G2::from_bytes(G2::identity().to_bytes()).is_identity());
  CHECK(GT::from_bytes(GT::identity().to_bytes()).is_identity());

  auto good = G1::generator().to_bytes();
  CHECK_THROWS_AS(G1::from_bytes(ByteView(good).first(47)), DecodeError);
  Bytes bad(good.begin(), good.end());
  bad[0] &= 0x7F;  // clear the compression flag
  CHECK_THROWS_AS(G1::from_bytes(bad), DecodeError);

  Bytes garbage_gt(GT::kEncodedSize, 0x01);
  CHECK_THROWS_AS(GT::from_bytes(garbage_gt), DecodeError);
  Bytes g2_short(95, 0);
  CHECK_THROWS_AS(G2::from_bytes(g2_short), DecodeError);
}

TEST_CASE("group params") {
  const auto& p = GroupParams::bls12_381();
  CHECK(p.order_bits == 255);
  CHECK_FALSE(p.symmetric);
  CHECK(p.g1_size == 48);
  CHECK(p.g2_size == 96);
  CHECK(p.gt_size == 576);
  // g^(r-1) * g == g^r == identity.
  CHECK(p.g1.pow(-Scalar::one()) * p.g1 == G1::identity());
  CHECK(p.g2.pow(-Scalar::one()) * p.g2 == G2::identity());
}

TEST_CASE("rng determinism") {
  Rng a(1), b(1), c(2);
  CHECK(a.next_u64() == b.next_u64());
  CHECK(a.next_u64() != c.next_u64());
  Rng fa = a.fork("x"), fb = b.fork("x"), fy = a.fork("y");
  CHECK(fa.next_u64() == fb.next_u64());
  CHECK(Rng(1).fork("y").next_u64() == fy.next_u64());
}
