#include "offline_euro/protocol.hpp"

namespace offline_euro::protocol {

using namespace wire;

namespace {

template <class T>
T expect(Channel& ch) {
  auto m = decode(ch.receive());
  if (auto* err = std::get_if<Err>(&m)) throw PartyError(err->code, err->detail);
  if (auto* t = std::get_if<T>(&m)) return std::move(*t);
  throw ProtocolError("unexpected " + std::string(tag_name(tag_of(m))));
}

void send_error(Channel& ch, ErrorCode code, const std::string& detail) {
  ch.send_message(Err{code, detail});
}

/// Receives the next message; decode failures are answered with ERR and
/// skipped.
std::optional<Message> next_message(Channel& ch) {
  auto frame = ch.receive();
  try {
    return decode(frame);
  } catch (const WireError& e) {
    send_error(ch, ErrorCode::kProtocol, e.what());
    return std::nullopt;
  }
}

}  // namespace

// ---------------------------------------------------------------- clients

void register_at(Channel& peer, const std::string& identity, const G1& pk) {
  peer.send_message(Register{identity, pk});
  expect<Ack>(peer);
}

ParamsRep fetch_params(Channel& bank) {
  bank.send_message(ParamsReq{});
  return expect<ParamsRep>(bank);
}

std::size_t withdraw(Channel& bank, User& user) {
  bank.send_message(WithdrawInit{user.public_key()});
  auto commit = expect<WithdrawCommit>(bank);
  auto c_prime = user.begin_withdrawal(commit.r);
  try {
    bank.send_message(WithdrawChallenge{c_prime});
    auto resp = expect<WithdrawResp>(bank);
    return user.finish_withdrawal(resp.sigma_prime);
  } catch (...) {
    user.abort_withdrawal();
    throw;
  }
}

void pay(Channel& payee, User& spender, std::size_t index, const SpendOptions& options) {
  auto init = expect<TransferInit>(payee);
  auto bundle = spender.spend(index, init.rand, options);
  payee.send_message(TransferPayload{std::move(bundle)});
  expect<Ack>(payee);
  spender.mark_spent(index);
}

DepositResult deposit(Channel& bank, User& depositor, std::size_t index,
                      const SpendOptions& options) {
  bank.send_message(DepositReq{depositor.public_key()});
  auto init = expect<DepositInit>(bank);
  auto bundle = depositor.spend(index, init.rand, options);
  bank.send_message(DepositPayload{std::move(bundle)});
  auto rep = expect<DepositRep>(bank);
  depositor.mark_spent(index);
  return rep.result;
}

RevocationResult request_revocation(Channel& ttp, const TransactionProof& a,
                                    const TransactionProof& b) {
  ttp.send_message(RevokeReq{a, b});
  return expect<RevokeRep>(ttp).result;
}

// ---------------------------------------------------------------- servers

void serve_ttp(Channel& channel, Ttp& ttp) {
  for (;;) {
    auto m = next_message(channel);
    if (!m) continue;
    if (auto* reg = std::get_if<Register>(&*m)) {
      try {
        ttp.register_party(reg->identity, reg->pk);
        channel.send_message(Ack{});
      } catch (const PartyError& e) {
        send_error(channel, e.code(), e.what());
      }
    } else if (auto* rev = std::get_if<RevokeReq>(&*m)) {
      channel.send_message(RevokeRep{ttp.revoke(rev->a, rev->b)});
    } else {
      send_error(channel, ErrorCode::kProtocol,
                 "TTP does not handle " + std::string(tag_name(tag_of(*m))));
    }
  }
}

void serve_bank(Channel& channel, Bank& bank, const RevokeFn& revoke) {
  std::optional<SignerNonce> nonce;
  std::optional<ReceiverSecret> deposit_secret;
  G1 depositor;

  for (;;) {
    auto m = next_message(channel);
    if (!m) continue;
    try {
      if (auto* reg = std::get_if<Register>(&*m)) {
        bank.register_customer(reg->identity, reg->pk);
        channel.send_message(Ack{});
      } else if (std::holds_alternative<ParamsReq>(*m)) {
        channel.send_message(ParamsRep{bank.crs(), bank.public_key()});
      } else if (auto* init = std::get_if<WithdrawInit>(&*m)) {
        nonce = bank.open_withdrawal(init->user_pk);
        channel.send_message(WithdrawCommit{nonce->commitment()});
      } else if (auto* ch = std::get_if<WithdrawChallenge>(&*m)) {
        if (!nonce) throw PartyError(ErrorCode::kSession, "no open withdrawal");
        auto sigma_prime = bank.sign_blinded(*nonce, ch->c_prime);
        nonce.reset();
        channel.send_message(WithdrawResp{sigma_prime});
      } else if (auto* req = std::get_if<DepositReq>(&*m)) {
        deposit_secret = bank.open_deposit();
        depositor = req->depositor_pk;
        channel.send_message(DepositInit{deposit_secret->elements});
      } else if (auto* pay = std::get_if<DepositPayload>(&*m)) {
        if (!deposit_secret) throw PartyError(ErrorCode::kSession, "no open deposit");
        auto secret = std::move(*deposit_secret);
        deposit_secret.reset();
        channel.send_message(DepositRep{bank.deposit(pay->bundle, secret, depositor, revoke)});
      } else {
        throw PartyError(ErrorCode::kProtocol,
                         "bank does not handle " + std::string(tag_name(tag_of(*m))));
      }
    } catch (const PartyError& e) {
      send_error(channel, e.code(), e.what());
    }
  }
}

std::optional<std::size_t> serve_payee(Channel& channel, User& payee) {
  channel.send_message(TransferInit{payee.prepare_receive()});
  for (;;) {
    auto m = next_message(channel);
    if (!m) continue;
    auto* payload = std::get_if<TransferPayload>(&*m);
    if (!payload) {
      send_error(channel, ErrorCode::kProtocol,
                 "expected TRANSFER_PAYLOAD, got " + std::string(tag_name(tag_of(*m))));
      continue;
    }
    try {
      auto index = payee.accept(payload->bundle);
      channel.send_message(Ack{});
      return index;
    } catch (const TransferRejected& e) {
      send_error(channel, ErrorCode::kRejected, e.what());
      return std::nullopt;
    }
  }
}

}  // namespace offline_euro::protocol
