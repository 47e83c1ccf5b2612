#include "offline_euro/pairing.hpp"

#include <algorithm>
#include <cstring>

#include "blst_aux.h"

namespace offline_euro {

namespace {

constexpr std::size_t kOrderBits = 255;
constexpr std::size_t kFpSize = 48;

}  // namespace

// ---------------------------------------------------------------- Scalar

Scalar::Scalar() { std::memset(&v_, 0, sizeof(v_)); }

Scalar Scalar::from_u64(std::uint64_t v) {
  const std::uint64_t limbs[4] = {v, 0, 0, 0};
  Scalar s;
  blst_fr_from_uint64(&s.v_, limbs);
  return s;
}

Scalar Scalar::random(Rng& rng) {
  // 512 bits reduced mod r: bias below 2^-256.
  std::uint8_t wide[64];
  rng.fill(wide);
  return reduce_be(wide);
}

Scalar Scalar::random_nonzero(Rng& rng) {
  for (;;) {
    Scalar s = random(rng);
    if (!s.is_zero()) return s;
  }
}

Scalar Scalar::reduce_be(ByteView bytes) {
  blst_scalar tmp;
  blst_scalar_from_be_bytes(&tmp, bytes.data(), bytes.size());
  Scalar s;
  blst_fr_from_scalar(&s.v_, &tmp);
  return s;
}

Scalar Scalar::from_bytes(ByteView bytes) {
  if (bytes.size() != kEncodedSize) {
    throw DecodeError("scalar encoding must be 32 bytes, got " + std::to_string(bytes.size()));
  }
  blst_scalar tmp;
  blst_scalar_from_bendian(&tmp, bytes.data());
  bool is_zero = std::all_of(bytes.begin(), bytes.end(), [](auto b) { return b == 0; });
  // fr_check rejects zero as well as values >= r.
  if (!is_zero && !blst_scalar_fr_check(&tmp)) throw DecodeError("scalar not reduced mod r");
  Scalar s;
  blst_fr_from_scalar(&s.v_, &tmp);
  return s;
}

std::array<std::uint8_t, Scalar::kEncodedSize> Scalar::to_bytes() const {
  blst_scalar tmp;
  blst_scalar_from_fr(&tmp, &v_);
  std::array<std::uint8_t, kEncodedSize> out;
  blst_bendian_from_scalar(out.data(), &tmp);
  return out;
}

bool Scalar::is_zero() const {
  static const Scalar kZero;
  return *this == kZero;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw ProtocolError("inverse of zero scalar");
  Scalar s;
  blst_fr_inverse(&s.v_, &v_);
  return s;
}

Scalar Scalar::operator+(const Scalar& o) const {
  Scalar s;
  blst_fr_add(&s.v_, &v_, &o.v_);
  return s;
}

Scalar Scalar::operator-(const Scalar& o) const {
  Scalar s;
  blst_fr_sub(&s.v_, &v_, &o.v_);
  return s;
}

Scalar Scalar::operator*(const Scalar& o) const {
  Scalar s;
  blst_fr_mul(&s.v_, &v_, &o.v_);
  return s;
}

Scalar Scalar::operator-() const { return Scalar() - *this; }

bool Scalar::operator==(const Scalar& o) const {
  return std::memcmp(&v_, &o.v_, sizeof(v_)) == 0;
}

blst_scalar Scalar::exponent() const {
  blst_scalar tmp;
  blst_scalar_from_fr(&tmp, &v_);
  return tmp;
}

// ---------------------------------------------------------------- G1

G1::G1() { std::memset(&p_, 0, sizeof(p_)); }

const G1& G1::generator() {
  static const G1 g = [] {
    G1 e;
    e.p_ = *blst_p1_generator();
    return e;
  }();
  return g;
}

G1 G1::random(Rng& rng) { return generator().pow(Scalar::random_nonzero(rng)); }

G1 G1::from_bytes(ByteView bytes) {
  if (bytes.size() != kEncodedSize) {
    throw DecodeError("G1 encoding must be 48 bytes, got " + std::to_string(bytes.size()));
  }
  blst_p1_affine a;
  if (blst_p1_uncompress(&a, bytes.data()) != BLST_SUCCESS) {
    throw DecodeError("invalid G1 encoding");
  }
  if (!blst_p1_affine_in_g1(&a)) throw DecodeError("G1 point outside the prime-order subgroup");
  G1 e;
  blst_p1_from_affine(&e.p_, &a);
  if (!std::equal(bytes.begin(), bytes.end(), e.to_bytes().begin())) {
    throw DecodeError("non-canonical G1 encoding");
  }
  return e;
}

std::array<std::uint8_t, G1::kEncodedSize> G1::to_bytes() const {
  std::array<std::uint8_t, kEncodedSize> out;
  blst_p1_compress(out.data(), &p_);
  return out;
}

bool G1::is_identity() const { return blst_p1_is_inf(&p_); }

G1 G1::pow(const Scalar& k) const {
  auto e = k.exponent();
  G1 r;
  blst_p1_mult(&r.p_, &p_, e.b, kOrderBits);
  return r;
}

G1 G1::inverse() const {
  G1 r = *this;
  blst_p1_cneg(&r.p_, true);
  return r;
}

G1 G1::operator*(const G1& o) const {
  G1 r;
  blst_p1_add_or_double(&r.p_, &p_, &o.p_);
  return r;
}

bool G1::operator==(const G1& o) const { return blst_p1_is_equal(&p_, &o.p_); }

blst_p1_affine G1::affine() const {
  blst_p1_affine a;
  blst_p1_to_affine(&a, &p_);
  return a;
}

// ---------------------------------------------------------------- G2

G2::G2() { std::memset(&p_, 0, sizeof(p_)); }

const G2& G2::generator() {
  static const G2 g = [] {
    G2 e;
    e.p_ = *blst_p2_generator();
    return e;
  }();
  return g;
}

G2 G2::random(Rng& rng) { return generator().pow(Scalar::random_nonzero(rng)); }

G2 G2::from_bytes(ByteView bytes) {
  if (bytes.size() != kEncodedSize) {
    throw DecodeError("G2 encoding must be 96 bytes, got " + std::to_string(bytes.size()));
  }
  blst_p2_affine a;
  if (blst_p2_uncompress(&a, bytes.data()) != BLST_SUCCESS) {
    throw DecodeError("invalid G2 encoding");
  }
  if (!blst_p2_affine_in_g2(&a)) throw DecodeError("G2 point outside the prime-order subgroup");
  G2 e;
  blst_p2_from_affine(&e.p_, &a);
  if (!std::equal(bytes.begin(), bytes.end(), e.to_bytes().begin())) {
    throw DecodeError("non-canonical G2 encoding");
  }
  return e;
}

std::array<std::uint8_t, G2::kEncodedSize> G2::to_bytes() const {
  std::array<std::uint8_t, kEncodedSize> out;
  blst_p2_compress(out.data(), &p_);
  return out;
}

bool G2::is_identity() const { return blst_p2_is_inf(&p_); }

G2 G2::pow(const Scalar& k) const {
  auto e = k.exponent();
  G2 r;
  blst_p2_mult(&r.p_, &p_, e.b, kOrderBits);
  return r;
}

G2 G2::inverse() const {
  G2 r = *this;
  blst_p2_cneg(&r.p_, true);
  return r;
}

G2 G2::operator*(const G2& o) const {
  G2 r;
  blst_p2_add_or_double(&r.p_, &p_, &o.p_);
  return r;
}

bool G2::operator==(const G2& o) const { return blst_p2_is_equal(&p_, &o.p_); }

blst_p2_affine G2::affine() const {
  blst_p2_affine a;
  blst_p2_to_affine(&a, &p_);
  return a;
}

// ---------------------------------------------------------------- GT

GT::GT() : f_(*blst_fp12_one()) {}

GT GT::from_bytes(ByteView bytes) {
  if (bytes.size() != kEncodedSize) {
    throw DecodeError("GT encoding must be 576 bytes, got " + std::to_string(bytes.size()));
  }
  blst_fp12 f;
  std::size_t off = 0;
  for (auto& c6 : f.fp6) {
    for (auto& c2 : c6.fp2) {
      for (auto& c : c2.fp) {
        blst_fp_from_bendian(&c, bytes.data() + off);
        std::uint8_t check[kFpSize];
        blst_bendian_from_fp(check, &c);
        if (std::memcmp(check, bytes.data() + off, kFpSize) != 0) {
          throw DecodeError("GT coordinate not reduced mod q");
        }
        off += kFpSize;
      }
    }
  }
  if (!blst_fp12_in_group(&f)) throw DecodeError("Fp12 element outside GT");
  return GT(f);
}

std::array<std::uint8_t, GT::kEncodedSize> GT::to_bytes() const {
  std::array<std::uint8_t, kEncodedSize> out;
  std::size_t off = 0;
  for (const auto& c6 : f_.fp6) {
    for (const auto& c2 : c6.fp2) {
      for (const auto& c : c2.fp) {
        blst_bendian_from_fp(out.data() + off, &c);
        off += kFpSize;
      }
    }
  }
  return out;
}

bool GT::is_identity() const { return blst_fp12_is_one(&f_); }

GT GT::pow(const Scalar& k) const {
  // Fixed 4-bit window, most significant nibble first.
  std::array<blst_fp12, 16> table;
  table[0] = *blst_fp12_one();
  table[1] = f_;
  for (std::size_t i = 2; i < table.size(); ++i) blst_fp12_mul(&table[i], &table[i - 1], &f_);

  const auto e = k.to_bytes();
  blst_fp12 acc = *blst_fp12_one();
  bool started = false;
  for (auto byte : e) {
    for (int shift = 4; shift >= 0; shift -= 4) {
      if (started) {
        for (int i = 0; i < 4; ++i) blst_fp12_cyclotomic_sqr(&acc, &acc);
      }
      unsigned nibble = (byte >> shift) & 0xF;
      if (nibble != 0) {
        blst_fp12_mul(&acc, &acc, &table[nibble]);
        started = true;
      }
    }
  }
  return GT(acc);
}

GT GT::inverse() const {
  // Unitary elements: inverse is conjugation.
  blst_fp12 r = f_;
  blst_fp12_conjugate(&r);
  return GT(r);
}

GT GT::operator*(const GT& o) const {
  blst_fp12 r;
  blst_fp12_mul(&r, &f_, &o.f_);
  return GT(r);
}

bool GT::operator==(const GT& o) const { return blst_fp12_is_equal(&f_, &o.f_); }

// ---------------------------------------------------------------- pairing

const GroupParams& GroupParams::bls12_381() {
  static const GroupParams p = [] {
    GroupParams gp;
    gp.id = "BLS12-381";
    gp.order_bits = kOrderBits;
    gp.symmetric = false;
    gp.g1 = G1::generator();
    gp.g2 = G2::generator();
    gp.g1_size = G1::kEncodedSize;
    gp.g2_size = G2::kEncodedSize;
    gp.gt_size = GT::kEncodedSize;
    gp.scalar_size = Scalar::kEncodedSize;
    return gp;
  }();
  return p;
}

GT pair(const G1& a, const G2& b) {
  if (a.is_identity() || b.is_identity()) return GT();
  auto pa = a.affine();
  auto pb = b.affine();
  blst_fp12 f;
  blst_miller_loop(&f, &pb, &pa);
  blst_final_exp(&f, &f);
  return GT(f);
}

GT pairing_product(std::span<const std::pair<G1, G2>> terms) {
  blst_fp12 acc = *blst_fp12_one();
  for (const auto& [a, b] : terms) {
    if (a.is_identity() || b.is_identity()) continue;
    auto pa = a.affine();
    auto pb = b.affine();
    blst_fp12 f;
    blst_miller_loop(&f, &pb, &pa);
    blst_fp12_mul(&acc, &acc, &f);
  }
  blst_final_exp(&acc, &acc);
  return GT(acc);
}

GTMatrix extended_pair(const std::pair<G1, G1>& col, const std::pair<G2, G2>& row) {
  return {{{pair(col.first, row.first), pair(col.first, row.second)},
           {pair(col.second, row.first), pair(col.second, row.second)}}};
}

GTMatrix entrywise_product(const GTMatrix& a, const GTMatrix& b) {
  GTMatrix r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r[i][j] = a[i][j] * b[i][j];
  return r;
}

const GT& base_pairing() {
  static const GT e = pair(G1::generator(), G2::generator());
  return e;
}

// ---------------------------------------------------------------- hashing

std::array<std::uint8_t, 32> sha256(ByteView message) {
  std::array<std::uint8_t, 32> out;
  blst_sha256(out.data(), message.data(), message.size());
  return out;
}

Scalar hash_to_scalar(ByteView message) {
  auto digest = sha256(message);
  return Scalar::reduce_be(digest);
}

namespace {

std::string_view domain_name(HashDomain d) {
  switch (d) {
    case HashDomain::kWithdrawMessage: return "withdraw-msg";
    case HashDomain::kThetaSignature: return "theta-sig";
    case HashDomain::kGtEmbed: return "gt-embed";
  }
  return "unknown";
}

}  // namespace

Scalar hash_to_scalar(HashDomain domain, ByteView message) {
  Bytes buf;
  auto name = domain_name(domain);
  buf.reserve(1 + name.size() + message.size());
  buf.push_back(static_cast<std::uint8_t>(domain));
  append(buf, as_bytes(name));
  append(buf, message);
  return hash_to_scalar(buf);
}

Scalar gt_to_scalar(const GT& t) {
  auto bytes = t.to_bytes();
  return hash_to_scalar(HashDomain::kGtEmbed, bytes);
}

}  // namespace offline_euro
