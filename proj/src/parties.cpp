#include "offline_euro/parties.hpp"

#include <algorithm>

namespace offline_euro {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kProtocol: return "protocol-error";
    case ErrorCode::kRejected: return "rejected";
    case ErrorCode::kUnregistered: return "unregistered";
    case ErrorCode::kAlreadyRegistered: return "already-registered";
    case ErrorCode::kInvalidKey: return "invalid-key";
    case ErrorCode::kSession: return "session-error";
  }
  return "unknown";
}

std::string_view revocation_status_name(RevocationStatus s) {
  switch (s) {
    case RevocationStatus::kIdentified: return "identified";
    case RevocationStatus::kNotDoubleSpend: return "not-double-spend";
    case RevocationStatus::kUnknownKey: return "unknown-key";
  }
  return "unknown";
}

std::string_view deposit_status_name(DepositStatus s) {
  switch (s) {
    case DepositStatus::kAccepted: return "accepted";
    case DepositStatus::kDoubleSpend: return "double-spend";
    case DepositStatus::kRejected: return "rejected";
  }
  return "unknown";
}

// ---------------------------------------------------------------- Registry

namespace {
Bytes key_of(const G1& pk) {
  auto b = pk.to_bytes();
  return {b.begin(), b.end()};
}
}  // namespace

void Registry::add(std::string identity, const G1& pk) {
  if (pk.is_identity()) throw PartyError(ErrorCode::kInvalidKey, "identity element as public key");
  auto [it, inserted] = entries_.emplace(key_of(pk), std::move(identity));
  if (!inserted) throw PartyError(ErrorCode::kAlreadyRegistered, it->second);
}

std::optional<std::string> Registry::lookup(const G1& pk) const {
  auto it = entries_.find(key_of(pk));
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

// ---------------------------------------------------------------- Ttp

RevocationResult Ttp::revoke(const TransactionProof& a, const TransactionProof& b) {
  ++revocations_;
  const auto& alpha = setup_.trapdoor.alpha;
  G1 xa = extract_committed_g1(a.c1, a.c2, alpha);
  G1 xb = extract_committed_g1(b.c1, b.c2, alpha);
  if (!(xa == xb)) return {RevocationStatus::kNotDoubleSpend, {}};
  auto identity = registry_.lookup(xa);
  if (!identity) return {RevocationStatus::kUnknownKey, {}};
  return {RevocationStatus::kIdentified, *identity};
}

// ---------------------------------------------------------------- Bank

std::size_t find_divergence(const std::vector<TransactionProof>& a,
                            const std::vector<TransactionProof>& b) {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].to_bytes() != b[i].to_bytes()) return i;
  }
  throw ProtocolError("proof lists do not diverge");
}

SignerNonce Bank::open_withdrawal(const G1& user_pk) {
  if (!customers_.contains(user_pk)) {
    throw PartyError(ErrorCode::kUnregistered, "withdrawal by unregistered key");
  }
  return SignerNonce::generate(rng_);
}

Scalar Bank::sign_blinded(SignerNonce& nonce, const Scalar& c_prime) const {
  return nonce.respond(c_prime, keys_.secret);
}

ReceiverSecret Bank::open_deposit() { return derive_randomization(crs_, rng_); }

std::size_t Bank::ledger_size() const {
  std::size_t n = 0;
  for (const auto& [key, entries] : ledger_) n += entries.size();
  return n;
}

DepositResult Bank::reject(std::string reason) {
  DepositResult r;
  r.status = DepositStatus::kRejected;
  r.reason = std::move(reason);
  return r;
}

DepositResult Bank::anomaly(std::string reason) {
  anomalies_.push_back(reason);
  return reject("anomaly: " + reason);
}

DepositResult Bank::deposit(const TransferBundle& bundle, const ReceiverSecret& secret,
                            const G1& depositor_pk, const RevokeFn& revoke) {
  auto depositor = customers_.lookup(depositor_pk);
  if (!depositor) return reject("unregistered-depositor");
  if (auto check = check_transfer(bundle, secret, crs_, keys_.public_key); !check) {
    return reject(check.describe());
  }
  // Y travels in the clear, so the claimed depositor key can be tested
  // against the final target: e(X, Y) = T.
  if (!(pair(depositor_pk, bundle.y_commit) == bundle.euro.proofs.back().target)) {
    return reject("depositor-mismatch");
  }

  const auto& euro = bundle.euro;
  auto& entries = ledger_[euro.dedup_key()];
  if (entries.empty()) {
    entries.push_back({euro, depositor_pk});
    return {DepositStatus::kAccepted, {}, {}, std::nullopt, false};
  }

  const LedgerEntry& prior = entries.front();
  const auto& a = prior.euro.proofs;
  const auto& b = euro.proofs;
  const bool same_prefix =
      a.size() == b.size() && std::equal(a.begin(), a.end() - 1, b.begin(), [](auto& x, auto& y) {
        return x.to_bytes() == y.to_bytes();
      });

  DepositResult result;
  result.status = DepositStatus::kDoubleSpend;
  if (same_prefix) {
    if (!(prior.depositor == depositor_pk)) {
      return anomaly("identical proof prefixes from different depositors");
    }
    result.identity = *depositor;
  } else {
    std::size_t i = 0;
    try {
      i = find_divergence(a, b);
    } catch (const ProtocolError&) {
      return anomaly("prefix-related proof lists");
    }
    auto verdict = revoke(a[i], b[i]);
    result.used_ttp = true;
    result.divergence = static_cast<std::uint32_t>(i);
    if (verdict.status != RevocationStatus::kIdentified) {
      return anomaly("revocation at index " + std::to_string(i) + " returned " +
                     std::string(revocation_status_name(verdict.status)));
    }
    result.identity = verdict.identity;
  }
  entries.push_back({euro, depositor_pk});
  return result;
}

// ---------------------------------------------------------------- User

void User::set_params(const CommonReferenceString& crs, const G1& bank_pk) {
  params_ = Params{crs, bank_pk};
}

const CommonReferenceString& User::crs() const {
  if (!params_) throw PartyError(ErrorCode::kSession, "parameters not fetched");
  return params_->crs;
}

const G1& User::bank_pk() const {
  if (!params_) throw PartyError(ErrorCode::kSession, "parameters not fetched");
  return params_->bank_pk;
}

Scalar User::begin_withdrawal(const G1& r) {
  if (pending_withdrawal_) throw PartyError(ErrorCode::kSession, "withdrawal already open");
  auto request = withdrawal_prepare(rng_);
  auto challenge = BlindSession::begin(r, request.message, bank_pk(), rng_,
                                       HashDomain::kWithdrawMessage);
  pending_withdrawal_.emplace(PendingWithdrawal{std::move(request), std::move(challenge.session)});
  return challenge.c_prime;
}

std::size_t User::finish_withdrawal(const Scalar& sigma_prime) {
  if (!pending_withdrawal_) throw PartyError(ErrorCode::kSession, "no open withdrawal");
  auto pending = std::move(*pending_withdrawal_);
  pending_withdrawal_.reset();
  auto sig = pending.session.unblind(sigma_prime);
  wallet_.push_back(withdrawn_entry(pending.request, sig));
  return wallet_.size() - 1;
}

RandomizationElements User::prepare_receive() {
  pending_receive_ = derive_randomization(crs(), rng_);
  return pending_receive_->elements;
}

std::size_t User::accept(const TransferBundle& bundle) {
  if (!pending_receive_) throw PartyError(ErrorCode::kSession, "no open receive");
  auto secret = std::move(*pending_receive_);
  pending_receive_.reset();
  wallet_.push_back(receive_verify(bundle, secret, crs(), bank_pk()));
  return wallet_.size() - 1;
}

WalletEntry& User::entry(std::size_t index) {
  if (index >= wallet_.size()) throw PartyError(ErrorCode::kSession, "no wallet entry");
  return wallet_[index];
}

TransferBundle User::spend(std::size_t index, const RandomizationElements& rand,
                           const SpendOptions& options) {
  return offline_euro::spend(entry(index), keys_, rand, crs(), rng_, options);
}

void User::mark_spent(std::size_t index) { entry(index).spent = true; }

}  // namespace offline_euro
