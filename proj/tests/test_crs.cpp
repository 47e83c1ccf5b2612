#include "doctest.h"
#include "offline_euro/crs.hpp"

using namespace offline_euro;

TEST_CASE("generate: trapdoor matches u and v") {
  Rng rng(1);
  auto [crs, td] = generate_crs(rng);
  CHECK(crs.g == G1::generator());
  CHECK(crs.h == G2::generator());
  CHECK(G1::generator().pow(td.alpha) == crs.u);
  CHECK(G2::generator().pow(td.beta) == crs.v);
  CHECK(pair(crs.u, crs.h) == base_pairing().pow(td.alpha));
  for (const G1* e : {&crs.g, &crs.u, &crs.g_prime, &crs.u_prime}) CHECK_FALSE(e->is_identity());
  for (const G2* e : {&crs.h, &crs.v, &crs.h_prime, &crs.v_prime}) CHECK_FALSE(e->is_identity());
}

TEST_CASE("generate: deterministic per seed, distinct across seeds") {
  Rng a(5), b(5), c(6);
  auto sa = generate_crs(a);
  auto sb = generate_crs(b);
  auto sc = generate_crs(c);
  CHECK(sa.crs == sb.crs);
  CHECK(sa.trapdoor.alpha == sb.trapdoor.alpha);
  CHECK_FALSE(sa.crs.u == sc.crs.u);
  CHECK_FALSE(sa.crs.v == sc.crs.v);
}

TEST_CASE("CRS and trapdoor encodings") {
  Rng rng(2);
  auto [crs, td] = generate_crs(rng);
  auto bytes = crs.to_bytes();
  CHECK(bytes.size() == CommonReferenceString::encoded_size());
  CHECK(bytes.size() == 1 + 9 + 4 * 48 + 4 * 96);
  CHECK(CommonReferenceString::from_bytes(bytes) == crs);

  auto tb = td.to_bytes();
  auto td2 = Trapdoor::from_bytes(tb);
  CHECK(td2.alpha == td.alpha);
  CHECK(td2.beta == td.beta);

  // The published CRS never carries the trapdoor exponents.
  auto alpha = td.alpha.to_bytes();
  CHECK(std::search(bytes.begin(), bytes.end(), alpha.begin(), alpha.end()) == bytes.end());

  Bytes wrong_id = bytes;
  wrong_id[1] = 'X';
  CHECK_THROWS_AS(CommonReferenceString::from_bytes(wrong_id), DecodeError);
  Bytes truncated(bytes.begin(), bytes.end() - 1);
  CHECK_THROWS_AS(CommonReferenceString::from_bytes(truncated), DecodeError);
}

TEST_CASE("extract_committed_g1") {
  Rng rng(3);
  auto [crs, td] = generate_crs(rng);
  auto X = G1::random(rng);
  // r = 0: c1 is the identity and c2 = X.
  CHECK(extract_committed_g1(G1::identity(), X, td.alpha) == X);
  for (int i = 0; i < 100; ++i) {
    auto Xi = G1::random(rng);
    auto r = Scalar::random(rng);
    CHECK(extract_committed_g1(crs.g.pow(r), crs.u.pow(r) * Xi, td.alpha) == Xi);
  }
}

TEST_CASE("extract_committed_g2") {
  Rng rng(4);
  auto [crs, td] = generate_crs(rng);
  auto Y = G2::random(rng);
  CHECK(extract_committed_g2(G2::identity(), Y, td.beta) == Y);
  for (int i = 0; i < 100; ++i) {
    auto Yi = G2::random(rng);
    auto s = Scalar::random(rng);
    CHECK(extract_committed_g2(crs.h.pow(s), crs.v.pow(s) * Yi, td.beta) == Yi);
  }
}
