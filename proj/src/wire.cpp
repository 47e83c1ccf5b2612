#include "offline_euro/wire.hpp"

namespace offline_euro::wire {

std::string_view tag_name(Tag tag) {
  switch (tag) {
    case Tag::kRegister: return "REGISTER";
    case Tag::kParamsReq: return "PARAMS_REQ";
    case Tag::kParamsRep: return "PARAMS_REP";
    case Tag::kWithdrawInit: return "WITHDRAW_INIT";
    case Tag::kWithdrawCommit: return "WITHDRAW_COMMIT";
    case Tag::kWithdrawChallenge: return "WITHDRAW_CHALLENGE";
    case Tag::kWithdrawResp: return "WITHDRAW_RESP";
    case Tag::kTransferInit: return "TRANSFER_INIT";
    case Tag::kTransferPayload: return "TRANSFER_PAYLOAD";
    case Tag::kDepositReq: return "DEPOSIT_REQ";
    case Tag::kDepositInit: return "DEPOSIT_INIT";
    case Tag::kDepositPayload: return "DEPOSIT_PAYLOAD";
    case Tag::kDepositRep: return "DEPOSIT_REP";
    case Tag::kRevokeReq: return "REVOKE_REQ";
    case Tag::kRevokeRep: return "REVOKE_REP";
    case Tag::kAck: return "ACK";
    case Tag::kErr: return "ERR";
  }
  return "UNKNOWN";
}

bool is_known_tag(std::uint8_t tag) {
  return tag_name(static_cast<Tag>(tag)) != "UNKNOWN";
}

std::string_view wire_error_name(WireErrorCode code) {
  switch (code) {
    case WireErrorCode::kTruncated: return "truncated";
    case WireErrorCode::kUnknownTag: return "unknown-tag";
    case WireErrorCode::kBadElement: return "bad-element";
    case WireErrorCode::kTrailingBytes: return "trailing-bytes";
    case WireErrorCode::kOversized: return "oversized";
  }
  return "unknown";
}

// ---------------------------------------------------------------- Frame

Bytes Frame::to_bytes() const {
  if (payload.size() > kMaxPayload) throw std::length_error("frame payload too large");
  Bytes out;
  out.reserve(kFrameHeaderSize + payload.size());
  out.push_back(tag);
  append_u32_be(out, static_cast<std::uint32_t>(payload.size()));
  append(out, payload);
  return out;
}

Frame Frame::from_bytes(ByteView bytes) {
  if (bytes.size() < kFrameHeaderSize) {
    throw WireError(WireErrorCode::kTruncated, "frame header");
  }
  ByteReader in(bytes);
  Frame f;
  f.tag = in.u8();
  auto length = in.u32_be();
  if (length > kMaxPayload) throw WireError(WireErrorCode::kOversized, std::to_string(length));
  if (in.remaining() < length) throw WireError(WireErrorCode::kTruncated, "frame payload");
  if (in.remaining() > length) throw WireError(WireErrorCode::kTrailingBytes, "after frame");
  auto p = in.take(length);
  f.payload.assign(p.begin(), p.end());
  return f;
}

// ---------------------------------------------------------------- payloads

namespace {

template <class T>
T read_element(ByteReader& in) {
  return T::from_bytes(in.take(T::kEncodedSize));
}

void write_result(Bytes& out, const DepositResult& r) {
  out.push_back(static_cast<std::uint8_t>(r.status));
  out.push_back(r.used_ttp ? 1 : 0);
  out.push_back(r.divergence ? 1 : 0);
  append_u32_be(out, r.divergence.value_or(0));
  append_string_u16(out, r.reason);
  append_string_u16(out, r.identity);
}

DepositResult read_result(ByteReader& in) {
  DepositResult r;
  auto status = in.u8();
  if (status > static_cast<std::uint8_t>(DepositStatus::kRejected)) {
    throw DecodeError("deposit status out of range");
  }
  r.status = static_cast<DepositStatus>(status);
  auto used = in.u8();
  auto has_div = in.u8();
  if (used > 1 || has_div > 1) throw DecodeError("flag out of range");
  r.used_ttp = used == 1;
  auto div = in.u32_be();
  if (has_div) {
    r.divergence = div;
  } else if (div != 0) {
    throw DecodeError("absent divergence must be zero");
  }
  r.reason = in.string_u16();
  r.identity = in.string_u16();
  return r;
}

struct Writer {
  Bytes& out;

  void operator()(const Register& m) {
    append_string_u16(out, m.identity);
    append(out, m.pk.to_bytes());
  }
  void operator()(const ParamsReq&) {}
  void operator()(const ParamsRep& m) {
    append(out, m.crs.to_bytes());
    append(out, m.bank_pk.to_bytes());
  }
  void operator()(const WithdrawInit& m) { append(out, m.user_pk.to_bytes()); }
  void operator()(const WithdrawCommit& m) { append(out, m.r.to_bytes()); }
  void operator()(const WithdrawChallenge& m) { append(out, m.c_prime.to_bytes()); }
  void operator()(const WithdrawResp& m) { append(out, m.sigma_prime.to_bytes()); }
  void operator()(const TransferInit& m) { append(out, m.rand.to_bytes()); }
  void operator()(const TransferPayload& m) { m.bundle.write(out); }
  void operator()(const DepositReq& m) { append(out, m.depositor_pk.to_bytes()); }
  void operator()(const DepositInit& m) { append(out, m.rand.to_bytes()); }
  void operator()(const DepositPayload& m) { m.bundle.write(out); }
  void operator()(const DepositRep& m) { write_result(out, m.result); }
  void operator()(const RevokeReq& m) {
    append(out, m.a.to_bytes());
    append(out, m.b.to_bytes());
  }
  void operator()(const RevokeRep& m) {
    out.push_back(static_cast<std::uint8_t>(m.result.status));
    append_string_u16(out, m.result.identity);
  }
  void operator()(const Ack&) {}
  void operator()(const Err& m) {
    out.push_back(static_cast<std::uint8_t>(m.code));
    append_string_u16(out, m.detail);
  }
};

Message read_body(Tag tag, ByteReader& in) {
  switch (tag) {
    case Tag::kRegister: {
      Register m;
      m.identity = in.string_u16();
      m.pk = read_element<G1>(in);
      return m;
    }
    case Tag::kParamsReq: return ParamsReq{};
    case Tag::kParamsRep: {
      ParamsRep m;
      m.crs = CommonReferenceString::from_bytes(in.take(CommonReferenceString::encoded_size()));
      m.bank_pk = read_element<G1>(in);
      return m;
    }
    case Tag::kWithdrawInit: return WithdrawInit{read_element<G1>(in)};
    case Tag::kWithdrawCommit: return WithdrawCommit{read_element<G1>(in)};
    case Tag::kWithdrawChallenge: return WithdrawChallenge{read_element<Scalar>(in)};
    case Tag::kWithdrawResp: return WithdrawResp{read_element<Scalar>(in)};
    case Tag::kTransferInit: return TransferInit{read_element<RandomizationElements>(in)};
    case Tag::kTransferPayload: return TransferPayload{TransferBundle::read(in)};
    case Tag::kDepositReq: return DepositReq{read_element<G1>(in)};
    case Tag::kDepositInit: return DepositInit{read_element<RandomizationElements>(in)};
    case Tag::kDepositPayload: return DepositPayload{TransferBundle::read(in)};
    case Tag::kDepositRep: return DepositRep{read_result(in)};
    case Tag::kRevokeReq: {
      RevokeReq m;
      m.a = read_element<TransactionProof>(in);
      m.b = read_element<TransactionProof>(in);
      return m;
    }
    case Tag::kRevokeRep: {
      RevokeRep m;
      auto status = in.u8();
      if (status > static_cast<std::uint8_t>(RevocationStatus::kUnknownKey)) {
        throw DecodeError("revocation status out of range");
      }
      m.result.status = static_cast<RevocationStatus>(status);
      m.result.identity = in.string_u16();
      return m;
    }
    case Tag::kAck: return Ack{};
    case Tag::kErr: {
      Err m;
      auto code = in.u8();
      if (code < 1 || code > static_cast<std::uint8_t>(ErrorCode::kSession)) {
        throw DecodeError("error code out of range");
      }
      m.code = static_cast<ErrorCode>(code);
      m.detail = in.string_u16();
      return m;
    }
  }
  throw WireError(WireErrorCode::kUnknownTag, std::to_string(static_cast<int>(tag)));
}

}  // namespace

Tag tag_of(const Message& m) {
  static constexpr Tag kTags[] = {
      Tag::kRegister,        Tag::kParamsReq,         Tag::kParamsRep,    Tag::kWithdrawInit,
      Tag::kWithdrawCommit,  Tag::kWithdrawChallenge, Tag::kWithdrawResp, Tag::kTransferInit,
      Tag::kTransferPayload, Tag::kDepositReq,        Tag::kDepositInit,  Tag::kDepositPayload,
      Tag::kDepositRep,      Tag::kRevokeReq,         Tag::kRevokeRep,    Tag::kAck,
      Tag::kErr,
  };
  static_assert(std::size(kTags) == std::variant_size_v<Message>);
  return kTags[m.index()];
}

Frame encode(const Message& m) {
  Frame f;
  f.tag = static_cast<std::uint8_t>(tag_of(m));
  std::visit(Writer{f.payload}, m);
  return f;
}

Message decode(const Frame& frame) {
  if (!is_known_tag(frame.tag)) {
    throw WireError(WireErrorCode::kUnknownTag, "0x" + to_hex(ByteView(&frame.tag, 1)));
  }
  ByteReader in(frame.payload);
  try {
    auto m = read_body(static_cast<Tag>(frame.tag), in);
    in.expect_end();
    return m;
  } catch (const WireError&) {
    throw;
  } catch (const TruncatedInput& e) {
    throw WireError(WireErrorCode::kTruncated, e.what());
  } catch (const TrailingBytes& e) {
    throw WireError(WireErrorCode::kTrailingBytes, e.what());
  } catch (const DecodeError& e) {
    throw WireError(WireErrorCode::kBadElement, e.what());
  }
}

}  // namespace offline_euro::wire
