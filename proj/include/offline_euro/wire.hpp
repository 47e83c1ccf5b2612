#pragma once

#include <string>
#include <variant>

#include "offline_euro/parties.hpp"

namespace offline_euro::wire {

/// One-byte message kinds. Frame grammar: tag (u8) || length (u32 BE) || payload.
enum class Tag : std::uint8_t {
  kRegister = 0x01,
  kParamsReq = 0x02,
  kParamsRep = 0x03,
  kWithdrawInit = 0x10,
  kWithdrawCommit = 0x11,
  kWithdrawChallenge = 0x12,
  kWithdrawResp = 0x13,
  kTransferInit = 0x20,
  kTransferPayload = 0x21,
  kDepositReq = 0x30,
  kDepositInit = 0x31,
  kDepositPayload = 0x32,
  kDepositRep = 0x33,
  kRevokeReq = 0x40,
  kRevokeRep = 0x41,
  kAck = 0x7E,
  kErr = 0x7F,
};

std::string_view tag_name(Tag tag);
bool is_known_tag(std::uint8_t tag);

constexpr std::size_t kFrameHeaderSize = 5;
/// Upper bound on a payload; a 50-hop bundle is about 58 KB.
constexpr std::uint32_t kMaxPayload = 64u << 20;

struct Frame {
  std::uint8_t tag = 0;
  Bytes payload;

  Bytes to_bytes() const;
  /// Exactly one frame; header length must match the payload size.
  static Frame from_bytes(ByteView bytes);

  bool operator==(const Frame&) const = default;
};

enum class WireErrorCode : std::uint8_t {
  kTruncated = 1,
  kUnknownTag = 2,
  kBadElement = 3,
  kTrailingBytes = 4,
  kOversized = 5,
};

std::string_view wire_error_name(WireErrorCode code);

class WireError : public DecodeError {
 public:
  WireError(WireErrorCode code, const std::string& detail)
      : DecodeError(std::string(wire_error_name(code)) + ": " + detail), code_(code) {}
  WireErrorCode code() const { return code_; }

 private:
  WireErrorCode code_;
};

// Message bodies. Field order is the payload order.

/// identity (u16 length + UTF-8) || pk (48)
struct Register {
  std::string identity;
  G1 pk;
  bool operator==(const Register&) const = default;
};
struct ParamsReq {
  bool operator==(const ParamsReq&) const = default;
};
/// CRS (586, carries the params id) || bank pk (48)
struct ParamsRep {
  CommonReferenceString crs;
  G1 bank_pk;
  bool operator==(const ParamsRep&) const = default;
};
/// user pk (48)
struct WithdrawInit {
  G1 user_pk;
  bool operator==(const WithdrawInit&) const = default;
};
/// r = g^k (48)
struct WithdrawCommit {
  G1 r;
  bool operator==(const WithdrawCommit&) const = default;
};
/// c' (32)
struct WithdrawChallenge {
  Scalar c_prime;
  bool operator==(const WithdrawChallenge&) const = default;
};
/// sigma' (32)
struct WithdrawResp {
  Scalar sigma_prime;
  bool operator==(const WithdrawResp&) const = default;
};
/// randomization elements (288)
struct TransferInit {
  RandomizationElements rand;
  bool operator==(const TransferInit&) const = default;
};
/// transfer bundle
struct TransferPayload {
  TransferBundle bundle;
  bool operator==(const TransferPayload&) const = default;
};
/// depositor pk (48)
struct DepositReq {
  G1 depositor_pk;
  bool operator==(const DepositReq&) const = default;
};
/// randomization elements (288)
struct DepositInit {
  RandomizationElements rand;
  bool operator==(const DepositInit&) const = default;
};
/// transfer bundle
struct DepositPayload {
  TransferBundle bundle;
  bool operator==(const DepositPayload&) const = default;
};
/// status (u8) || used_ttp (u8) || has_divergence (u8) || divergence (u32 BE) ||
/// reason (u16 string) || identity (u16 string)
struct DepositRep {
  DepositResult result;
  bool operator==(const DepositRep&) const = default;
};
/// proof_a (1152) || proof_b (1152)
struct RevokeReq {
  TransactionProof a;
  TransactionProof b;
  bool operator==(const RevokeReq&) const = default;
};
/// status (u8) || identity (u16 string)
struct RevokeRep {
  RevocationResult result;
  bool operator==(const RevokeRep&) const = default;
};
struct Ack {
  bool operator==(const Ack&) const = default;
};
/// code (u8) || detail (u16 string)
struct Err {
  ErrorCode code = ErrorCode::kProtocol;
  std::string detail;
  bool operator==(const Err&) const = default;
};

using Message = std::variant<Register, ParamsReq, ParamsRep, WithdrawInit, WithdrawCommit,
                             WithdrawChallenge, WithdrawResp, TransferInit, TransferPayload,
                             DepositReq, DepositInit, DepositPayload, DepositRep, RevokeReq,
                             RevokeRep, Ack, Err>;

Tag tag_of(const Message& m);
Frame encode(const Message& m);
/// Throws WireError with a code naming the failure.
Message decode(const Frame& frame);

inline Bytes encode_bytes(const Message& m) { return encode(m).to_bytes(); }
inline Message decode_bytes(ByteView bytes) { return decode(Frame::from_bytes(bytes)); }

}  // namespace offline_euro::wire
