#pragma once

// Direct (transport-free) construction of withdrawals and transfer chains
// shared by the token tests and the acceptance suite.

#include <vector>

#include "offline_euro/token.hpp"

namespace offline_euro::testing {

struct ChainWorld {
  explicit ChainWorld(std::uint64_t seed)
      : rng(seed), setup(generate_crs(rng)), bank(KeyPair::generate(rng)) {}

  const CommonReferenceString& crs() const { return setup.crs; }

  Rng rng;
  CrsSetup setup;
  KeyPair bank;
};

inline WalletEntry withdraw(ChainWorld& w) {
  auto request = withdrawal_prepare(w.rng);
  auto nonce = SignerNonce::generate(w.rng);
  auto challenge = BlindSession::begin(nonce.commitment(), request.message, w.bank.public_key,
                                       w.rng, HashDomain::kWithdrawMessage);
  auto sigma_prime = nonce.respond(challenge.c_prime, w.bank.secret);
  return withdrawn_entry(request, challenge.session.unblind(sigma_prime));
}

struct Hop {
  KeyPair spender;
  ReceiverSecret receiver;
  TransferBundle bundle;
  WalletEntry received;
};

/// Withdraw, then `transfers` honest hops between fresh users.
inline std::vector<Hop> build_chain(ChainWorld& w, std::size_t transfers) {
  std::vector<Hop> hops;
  WalletEntry holding = withdraw(w);
  for (std::size_t i = 0; i < transfers; ++i) {
    Hop hop;
    hop.spender = KeyPair::generate(w.rng);
    hop.receiver = derive_randomization(w.crs(), w.rng);
    hop.bundle = spend(holding, hop.spender, hop.receiver.elements, w.crs(), w.rng);
    hop.received = receive_verify(hop.bundle, hop.receiver, w.crs(), w.bank.public_key);
    holding = hop.received;
    hops.push_back(std::move(hop));
  }
  return hops;
}

}  // namespace offline_euro::testing
