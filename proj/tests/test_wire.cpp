#include "chain_helpers.hpp"
#include "doctest.h"
#include "offline_euro/wire.hpp"

#include <set>

using namespace offline_euro;
using namespace offline_euro::wire;
using offline_euro::testing::ChainWorld;

namespace {

std::vector<Message> sample_messages(Rng& rng) {
  ChainWorld w(rng.next_u64());
  auto hops = offline_euro::testing::build_chain(w, 2);
  auto rand = derive_randomization(w.crs(), rng).elements;
  DepositResult ds{DepositStatus::kDoubleSpend, "", "U3", 3u, true};
  DepositResult rejected{DepositStatus::kRejected, "broken-link(target)[1]", "", std::nullopt,
                         false};
  return {
      Register{"alice", G1::random(rng)},
      ParamsReq{},
      ParamsRep{w.crs(), w.bank.public_key},
      WithdrawInit{G1::random(rng)},
      WithdrawCommit{G1::random(rng)},
      WithdrawChallenge{Scalar::random(rng)},
      WithdrawResp{Scalar::random(rng)},
      TransferInit{rand},
      TransferPayload{hops[0].bundle},
      TransferPayload{hops[1].bundle},
      DepositReq{G1::random(rng)},
      DepositInit{rand},
      DepositPayload{hops[1].bundle},
      DepositRep{ds},
      DepositRep{rejected},
      RevokeReq{hops[1].bundle.euro.proofs[0], hops[1].bundle.euro.proofs[1]},
      RevokeRep{{RevocationStatus::kIdentified, "bob"}},
      RevokeRep{{RevocationStatus::kNotDoubleSpend, ""}},
      Ack{},
      Err{ErrorCode::kRejected, "bad-d2"},
  };
}

WireErrorCode decode_error(ByteView bytes) {
  try {
    decode_bytes(bytes);
  } catch (const WireError& e) {
    return e.code();
  }
  FAIL("decode accepted malformed input");
  return WireErrorCode::kTruncated;
}

}  // namespace

TEST_CASE("every message kind roundtrips") {
  Rng rng(1);
  auto messages = sample_messages(rng);
  std::set<std::uint8_t> tags;
  for (const auto& m : messages) {
    auto bytes = encode_bytes(m);
    CAPTURE(tag_name(tag_of(m)));
    CHECK(bytes[0] == static_cast<std::uint8_t>(tag_of(m)));
    CHECK(bytes.size() == kFrameHeaderSize + encode(m).payload.size());
    CHECK(decode_bytes(bytes) == m);
    tags.insert(bytes[0]);
  }
  CHECK(tags.size() == std::variant_size_v<Message>);
}

TEST_CASE("fixed payload sizes") {
  Rng rng(2);
  CHECK(encode(ParamsReq{}).payload.empty());
  CHECK(encode(Ack{}).payload.empty());
  CHECK(encode(WithdrawInit{G1::random(rng)}).payload.size() == 48);
  CHECK(encode(WithdrawCommit{G1::random(rng)}).payload.size() == 48);
  CHECK(encode(WithdrawChallenge{Scalar::random(rng)}).payload.size() == 32);
  CHECK(encode(WithdrawResp{Scalar::random(rng)}).payload.size() == 32);
  CHECK(encode(TransferInit{}).payload.size() == 288);
  CHECK(encode(RevokeReq{}).payload.size() == 2 * 1152);
  CHECK(encode(ParamsRep{}).payload.size() == CommonReferenceString::encoded_size() + 48);
}

TEST_CASE("TRANSFER_PAYLOAD length is header + euro + 2 G2 + flag + 2 signatures") {
  ChainWorld w(3);
  auto hops = offline_euro::testing::build_chain(w, 3);
  for (const auto& hop : hops) {
    const auto& euro = hop.bundle.euro;
    auto frame = encode_bytes(TransferPayload{hop.bundle});
    CHECK(frame.size() == kFrameHeaderSize + euro.to_bytes().size() + 2 * G2::kEncodedSize + 1 +
                              2 * Signature::kEncodedSize);
  }
}

TEST_CASE("decode errors carry distinct codes") {
  Rng rng(4);
  auto reg = encode_bytes(Register{"carol", G1::random(rng)});

  SUBCASE("truncated header") { CHECK(decode_error(ByteView(reg).first(3)) == WireErrorCode::kTruncated); }
  SUBCASE("truncated payload") {
    CHECK(decode_error(ByteView(reg).first(reg.size() - 1)) == WireErrorCode::kTruncated);
  }
  SUBCASE("length field shorter than the body") {
    Frame f = encode(WithdrawInit{G1::random(rng)});
    f.payload.pop_back();
    CHECK(decode_error(f.to_bytes()) == WireErrorCode::kTruncated);
  }
  SUBCASE("trailing bytes after the frame") {
    auto b = reg;
    b.push_back(0);
    CHECK(decode_error(b) == WireErrorCode::kTrailingBytes);
  }
  SUBCASE("trailing bytes inside the payload") {
    Frame f = encode(Ack{});
    f.payload.push_back(1);
    CHECK(decode_error(f.to_bytes()) == WireErrorCode::kTrailingBytes);
  }
  SUBCASE("unknown tag") {
    for (int tag : {0x00, 0x04, 0x22, 0x50, 0xFF}) {
      Frame f{static_cast<std::uint8_t>(tag), {}};
      CHECK(decode_error(f.to_bytes()) == WireErrorCode::kUnknownTag);
    }
  }
  SUBCASE("bad element encoding") {
    Frame f = encode(WithdrawCommit{G1::random(rng)});
    f.payload[0] ^= 0x40;  // toggles the infinity flag
    CHECK(decode_error(f.to_bytes()) == WireErrorCode::kBadElement);
    Frame s = encode(WithdrawResp{Scalar::random(rng)});
    std::fill(s.payload.begin(), s.payload.end(), 0xFF);  // >= group order
    CHECK(decode_error(s.to_bytes()) == WireErrorCode::kBadElement);
  }
  SUBCASE("oversized length") {
    Bytes b{0x7E, 0xFF, 0xFF, 0xFF, 0xFF};
    CHECK(decode_error(b) == WireErrorCode::kOversized);
  }
  SUBCASE("enum fields out of range") {
    Frame f = encode(Err{ErrorCode::kProtocol, "x"});
    f.payload[0] = 0;
    CHECK(decode_error(f.to_bytes()) == WireErrorCode::kBadElement);
    Frame r = encode(RevokeRep{{RevocationStatus::kIdentified, "x"}});
    r.payload[0] = 9;
    CHECK(decode_error(r.to_bytes()) == WireErrorCode::kBadElement);
  }
}

TEST_CASE("random payload bytes never crash the decoder") {
  Rng rng(5);
  int decoded = 0;
  for (int i = 0; i < 2000; ++i) {
    Frame f;
    f.tag = static_cast<std::uint8_t>(rng.next_u64());
    f.payload.resize(rng.next_u64() % 700);
    rng.fill(f.payload);
    try {
      decode(f);
      ++decoded;
    } catch (const WireError&) {
    }
  }
  // Only the empty-bodied kinds can decode from noise.
  CHECK(decoded < 2000);
}

TEST_CASE("frame example bytes") {
  CHECK(to_hex(encode_bytes(Ack{})) == "7e00000000");
  CHECK(to_hex(encode_bytes(ParamsReq{})) == "0200000000");
  CHECK(to_hex(encode_bytes(Err{ErrorCode::kRejected, "bad-d2"})) ==
        "7f00000009" "02" "0006" "6261642d6432");
  auto pk = G1::generator();
  CHECK(to_hex(encode_bytes(Register{"ab", pk})) ==
        "0100000034" "0002" "6162" + to_hex(pk.to_bytes()));
  CHECK(to_hex(encode_bytes(RevokeRep{{RevocationStatus::kIdentified, "U2"}})) ==
        "4100000005" "00" "0002" "5532");
  DepositResult ds;
  ds.status = DepositStatus::kDoubleSpend;
  ds.used_ttp = true;
  ds.divergence = 3;
  ds.identity = "U2";
  CHECK(to_hex(encode_bytes(DepositRep{ds})) ==
        "330000000d" "01" "01" "01" "00000003" "0000" "0002" "5532");
  CHECK(to_hex(pk.to_bytes()) ==
        "97f1d3a73197d7942695638c4fa9ac0fc3688c4f9774b905a14e3a3f171bac58"
        "6c55e83ff97a1aeffb3af00adb22c6bb");
}
