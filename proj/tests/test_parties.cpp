#include "doctest.h"
#include "offline_euro/parties.hpp"

#include <memory>

using namespace offline_euro;

namespace {

// Direct method calls between parties, no transport.
struct World {
  explicit World(std::uint64_t seed, std::size_t users)
      : root(seed),
        ttp(generate_crs(rng_ttp)),
        bank(ttp.crs(), KeyPair::generate(rng_bank), root.fork("bank")) {
    ttp.register_party("bank", bank.public_key());
    for (std::size_t i = 0; i < users; ++i) add_user("U" + std::to_string(i));
  }

  User& add_user(const std::string& name) {
    auto rng = root.fork("user:" + name);
    auto keys = KeyPair::generate(rng);
    people.push_back(std::make_unique<User>(name, keys, std::move(rng)));
    User& u = *people.back();
    ttp.register_party(name, u.public_key());
    bank.register_customer(name, u.public_key());
    u.set_params(ttp.crs(), bank.public_key());
    return u;
  }

  User& user(std::size_t i) { return *people.at(i); }

  std::size_t withdraw(User& u) {
    auto nonce = bank.open_withdrawal(u.public_key());
    auto c_prime = u.begin_withdrawal(nonce.commitment());
    return u.finish_withdrawal(bank.sign_blinded(nonce, c_prime));
  }

  std::size_t transfer(User& from, std::size_t index, User& to, const SpendOptions& opts = {}) {
    auto rand = to.prepare_receive();
    auto bundle = from.spend(index, rand, opts);
    auto j = to.accept(bundle);
    from.mark_spent(index);
    return j;
  }

  DepositResult deposit(User& u, std::size_t index, const SpendOptions& opts = {}) {
    auto secret = bank.open_deposit();
    auto bundle = u.spend(index, secret.elements, opts);
    auto result = bank.deposit(bundle, secret, u.public_key(),
                               [&](const auto& a, const auto& b) { return ttp.revoke(a, b); });
    u.mark_spent(index);
    return result;
  }

  Rng root;
  Rng rng_ttp = root.fork("ttp");
  Rng rng_bank = root.fork("bank-keys");
  Ttp ttp;
  Bank bank;
  std::vector<std::unique_ptr<User>> people;
};

TransactionProof dummy_proof(Rng& rng, std::uint8_t marker) {
  TransactionProof p;
  p.c1 = G1::random(rng);
  p.target = base_pairing().pow(Scalar::from_u64(marker));
  return p;
}

}  // namespace

TEST_CASE("registry") {
  Rng rng(1);
  Registry reg;
  auto k = KeyPair::generate(rng);
  reg.add("alice", k.public_key);
  CHECK(reg.lookup(k.public_key) == "alice");
  CHECK_FALSE(reg.lookup(KeyPair::generate(rng).public_key).has_value());
  try {
    reg.add("mallory", k.public_key);
    FAIL("duplicate accepted");
  } catch (const PartyError& e) {
    CHECK(e.code() == ErrorCode::kAlreadyRegistered);
  }
  try {
    reg.add("nobody", G1::identity());
    FAIL("identity key accepted");
  } catch (const PartyError& e) {
    CHECK(e.code() == ErrorCode::kInvalidKey);
  }
  CHECK(reg.size() == 1);
}

TEST_CASE("find_divergence") {
  Rng rng(2);
  std::vector<TransactionProof> a, b;
  for (std::uint8_t i = 0; i < 5; ++i) a.push_back(dummy_proof(rng, i));
  b = a;
  CHECK_THROWS_AS(find_divergence(a, b), ProtocolError);
  b[0] = dummy_proof(rng, 9);
  CHECK(find_divergence(a, b) == 0);
  b = a;
  b[3] = dummy_proof(rng, 9);
  CHECK(find_divergence(a, b) == 3);
  b.resize(4);
  CHECK(find_divergence(a, b) == 3);
  b = a;
  b.pop_back();
  CHECK_THROWS_AS(find_divergence(a, b), ProtocolError);
}

TEST_CASE("withdrawal requires registration") {
  World w(3, 1);
  Rng rng(99);
  User stranger("S", KeyPair::generate(rng), rng.fork("s"));
  try {
    w.bank.open_withdrawal(stranger.public_key());
    FAIL("unregistered withdrawal");
  } catch (const PartyError& e) {
    CHECK(e.code() == ErrorCode::kUnregistered);
  }
  auto idx = w.withdraw(w.user(0));
  const auto& euro = w.user(0).wallet()[idx].euro;
  CHECK(verify(euro.signed_message(), euro.bank_sig, w.bank.public_key(),
               HashDomain::kWithdrawMessage));
  CHECK(euro.proofs.empty());
}

TEST_CASE("honest withdraw, two transfers, deposit") {
  World w(4, 3);
  auto i0 = w.withdraw(w.user(0));
  auto i1 = w.transfer(w.user(0), i0, w.user(1));
  auto i2 = w.transfer(w.user(1), i1, w.user(2));
  auto result = w.deposit(w.user(2), i2);
  CHECK(result.status == DepositStatus::kAccepted);
  CHECK(w.bank.ledger_size() == 1);
  CHECK(w.ttp.revocation_count() == 0);
  CHECK(w.user(0).wallet()[i0].spent);
}

TEST_CASE("re-spending without override is refused locally") {
  World w(5, 3);
  auto i0 = w.withdraw(w.user(0));
  w.transfer(w.user(0), i0, w.user(1));
  CHECK_THROWS_AS(w.transfer(w.user(0), i0, w.user(2)), TransferRejected);
}

TEST_CASE("same user deposits one euro twice") {
  World w(6, 2);
  auto i0 = w.withdraw(w.user(0));
  auto i1 = w.transfer(w.user(0), i0, w.user(1));
  CHECK(w.deposit(w.user(1), i1).status == DepositStatus::kAccepted);
  SpendOptions again;
  again.allow_respend = true;
  auto result = w.deposit(w.user(1), i1, again);
  CHECK(result.status == DepositStatus::kDoubleSpend);
  CHECK(result.identity == "U1");
  CHECK_FALSE(result.used_ttp);
  CHECK(w.ttp.revocation_count() == 0);
}

TEST_CASE("withdrawer deposits twice without any transfer") {
  World w(7, 1);
  auto i0 = w.withdraw(w.user(0));
  CHECK(w.deposit(w.user(0), i0).status == DepositStatus::kAccepted);
  SpendOptions again;
  again.allow_respend = true;
  auto result = w.deposit(w.user(0), i0, again);
  CHECK(result.status == DepositStatus::kDoubleSpend);
  CHECK(result.identity == "U0");
  CHECK_FALSE(result.used_ttp);
}

TEST_CASE("fork at every index of a 6-hop chain identifies the forking holder") {
  for (std::size_t fork_at = 0; fork_at < 6; ++fork_at) {
    CAPTURE(fork_at);
    World w(100 + fork_at, 7);
    User& fork_receiver = w.add_user("W");
    std::size_t idx = w.withdraw(w.user(0));
    std::size_t w_idx = 0;
    for (std::size_t hop = 0; hop < 6; ++hop) {
      auto next = w.transfer(w.user(hop), idx, w.user(hop + 1));
      if (hop == fork_at) {
        SpendOptions again;
        again.allow_respend = true;
        w_idx = w.transfer(w.user(hop), idx, fork_receiver, again);
      }
      idx = next;
    }
    CHECK(w.deposit(w.user(6), idx).status == DepositStatus::kAccepted);
    auto result = w.deposit(fork_receiver, w_idx);
    CHECK(result.status == DepositStatus::kDoubleSpend);
    CHECK(result.identity == "U" + std::to_string(fork_at));
    CHECK(result.used_ttp);
    CHECK(result.divergence == fork_at);
    CHECK(w.ttp.revocation_count() == 1);
  }
}

TEST_CASE("holder spends to a peer and deposits the same euro") {
  World w(8, 3);
  auto i0 = w.withdraw(w.user(0));
  auto i1 = w.transfer(w.user(0), i0, w.user(1));
  auto i2 = w.transfer(w.user(1), i1, w.user(2));
  CHECK(w.deposit(w.user(2), i2).status == DepositStatus::kAccepted);
  SpendOptions again;
  again.allow_respend = true;
  auto result = w.deposit(w.user(1), i1, again);
  CHECK(result.status == DepositStatus::kDoubleSpend);
  CHECK(result.identity == "U1");
  CHECK(result.divergence == 1);
}

TEST_CASE("independent euros never collide") {
  World w(9, 4);
  for (int run = 0; run < 5; ++run) {
    auto i0 = w.withdraw(w.user(0));
    auto i1 = w.transfer(w.user(0), i0, w.user(1 + run % 3));
    CHECK(w.deposit(w.user(1 + run % 3), i1).status == DepositStatus::kAccepted);
  }
  CHECK(w.bank.ledger_size() == 5);
  CHECK(w.bank.anomalies().empty());
}

TEST_CASE("deposit rejections") {
  World w(10, 2);
  auto i0 = w.withdraw(w.user(0));
  auto i1 = w.transfer(w.user(0), i0, w.user(1));
  auto revoke = [&](const auto& a, const auto& b) { return w.ttp.revoke(a, b); };

  SUBCASE("claimed depositor is not the spender") {
    auto secret = w.bank.open_deposit();
    auto bundle = w.user(1).spend(i1, secret.elements);
    auto result = w.bank.deposit(bundle, secret, w.user(0).public_key(), revoke);
    CHECK(result.status == DepositStatus::kRejected);
    CHECK(result.reason == "depositor-mismatch");
  }
  SUBCASE("bundle for other randomization") {
    auto secret = w.bank.open_deposit();
    auto other = w.bank.open_deposit();
    auto bundle = w.user(1).spend(i1, other.elements);
    auto result = w.bank.deposit(bundle, secret, w.user(1).public_key(), revoke);
    CHECK(result.status == DepositStatus::kRejected);
    CHECK(result.reason == "foreign-randomization");
  }
  SUBCASE("unregistered depositor") {
    Rng rng(5);
    auto secret = w.bank.open_deposit();
    auto bundle = w.user(1).spend(i1, secret.elements);
    auto result = w.bank.deposit(bundle, secret, KeyPair::generate(rng).public_key, revoke);
    CHECK(result.reason == "unregistered-depositor");
  }
  CHECK(w.bank.ledger_size() == 0);
}

TEST_CASE("revocation verdicts") {
  World w(11, 3);
  auto i0 = w.withdraw(w.user(0));
  auto ra = w.user(1).prepare_receive();
  auto a = w.user(0).spend(i0, ra);
  auto rb = w.user(2).prepare_receive();
  auto b = w.user(0).spend(i0, rb);
  const auto& pa = a.euro.proofs[0];
  const auto& pb = b.euro.proofs[0];
  CHECK(w.ttp.revoke(pa, pb) == RevocationResult{RevocationStatus::kIdentified, "U0"});

  // Proofs by two different honest users.
  auto j0 = w.withdraw(w.user(1));
  auto c = w.user(1).spend(j0, w.user(2).prepare_receive());
  CHECK(w.ttp.revoke(pa, c.euro.proofs[0]).status == RevocationStatus::kNotDoubleSpend);

  // Corrupted commitment.
  auto bad = pb;
  bad.c2 = bad.c2 * G1::generator();
  CHECK(w.ttp.revoke(pa, bad).status == RevocationStatus::kNotDoubleSpend);

  // Same key on both sides, but never registered.
  Rng rng(77);
  User stranger("S", KeyPair::generate(rng), rng.fork("s"));
  stranger.set_params(w.ttp.crs(), w.bank.public_key());
  w.bank.register_customer("S", stranger.public_key());
  auto s0 = w.withdraw(stranger);
  auto sa = stranger.spend(s0, w.user(1).prepare_receive());
  auto sb = stranger.spend(s0, w.user(2).prepare_receive(), SpendOptions{true, {}, {}});
  CHECK(w.ttp.revoke(sa.euro.proofs[0], sb.euro.proofs[0]).status == RevocationStatus::kUnknownKey);
}

TEST_CASE("double-spend by an unregistered spender is an anomaly, not an identity") {
  World w(12, 2);
  Rng rng(78);
  // A spender whose key is known to the bank but not to the TTP.
  User stranger("S", KeyPair::generate(rng), rng.fork("s"));
  stranger.set_params(w.ttp.crs(), w.bank.public_key());
  w.bank.register_customer("S", stranger.public_key());
  auto s0 = w.withdraw(stranger);
  auto i1 = w.transfer(stranger, s0, w.user(0));
  SpendOptions again;
  again.allow_respend = true;
  auto i2 = w.transfer(stranger, s0, w.user(1), again);
  CHECK(w.deposit(w.user(0), i1).status == DepositStatus::kAccepted);
  auto result = w.deposit(w.user(1), i2);
  CHECK(result.status == DepositStatus::kRejected);
  CHECK(result.reason.rfind("anomaly:", 0) == 0);
  CHECK(w.bank.anomalies().size() == 1);
}

TEST_CASE("user session misuse") {
  World w(13, 1);
  auto& u = w.user(0);
  CHECK_THROWS_AS(u.finish_withdrawal(Scalar::one()), PartyError);
  TransferBundle empty;
  CHECK_THROWS_AS(u.accept(empty), PartyError);
  CHECK_THROWS_AS(u.spend(5, RandomizationElements{}), PartyError);
  auto nonce = w.bank.open_withdrawal(u.public_key());
  u.begin_withdrawal(nonce.commitment());
  CHECK_THROWS_AS(u.begin_withdrawal(nonce.commitment()), PartyError);
  Rng rng(1);
  User fresh("F", KeyPair::generate(rng), rng.fork("f"));
  CHECK_THROWS_AS(fresh.prepare_receive(), PartyError);
}
