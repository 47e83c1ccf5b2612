#pragma once

#include "offline_euro/transport.hpp"

// Message-level sessions binding the party state machines to a Channel.
// Client functions throw PartyError when the peer answers ERR and
// ProtocolError on an out-of-order frame. Server loops run until the peer
// closes the channel and answer malformed or unexpected frames with ERR.

namespace offline_euro::protocol {

void register_at(Channel& peer, const std::string& identity, const G1& pk);
wire::ParamsRep fetch_params(Channel& bank);

/// Three-leg blind issuance. Returns the wallet index of the new euro.
std::size_t withdraw(Channel& bank, User& user);

/// Spender side of a transfer. The entry is marked spent only once the
/// payee acknowledges; a rejection or a lost connection leaves it untouched.
void pay(Channel& payee, User& spender, std::size_t index, const SpendOptions& options = {});

/// Deposit is a transfer to the bank. The entry is marked spent once the bank
/// has answered, whatever the verdict.
DepositResult deposit(Channel& bank, User& depositor, std::size_t index,
                      const SpendOptions& options = {});

RevocationResult request_revocation(Channel& ttp, const TransactionProof& a,
                                    const TransactionProof& b);

void serve_ttp(Channel& channel, Ttp& ttp);
void serve_bank(Channel& channel, Bank& bank, const RevokeFn& revoke);
/// Receives one transfer. Returns the new wallet index, or nothing when the
/// bundle was rejected.
std::optional<std::size_t> serve_payee(Channel& channel, User& payee);

}  // namespace offline_euro::protocol
