#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "offline_euro/token.hpp"

namespace offline_euro {

/// Error codes shared by the party state machines and the wire ERR frame.
enum class ErrorCode : std::uint8_t {
  kProtocol = 1,
  kRejected = 2,
  kUnregistered = 3,
  kAlreadyRegistered = 4,
  kInvalidKey = 5,
  kSession = 6,
};

std::string_view error_code_name(ErrorCode code);

class PartyError : public ProtocolError {
 public:
  PartyError(ErrorCode code, const std::string& detail)
      : ProtocolError(std::string(error_code_name(code)) + ": " + detail), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

/// Legal-identity registry keyed by canonical public-key bytes.
class Registry {
 public:
  /// Throws PartyError (kInvalidKey for the identity element, kAlreadyRegistered).
  void add(std::string identity, const G1& pk);
  std::optional<std::string> lookup(const G1& pk) const;
  bool contains(const G1& pk) const { return lookup(pk).has_value(); }
  std::size_t size() const { return entries_.size(); }

 private:
  std::map<Bytes, std::string> entries_;
};

enum class RevocationStatus : std::uint8_t {
  kIdentified = 0,
  kNotDoubleSpend = 1,
  kUnknownKey = 2,
};

std::string_view revocation_status_name(RevocationStatus s);

struct RevocationResult {
  RevocationStatus status = RevocationStatus::kNotDoubleSpend;
  std::string identity;

  bool operator==(const RevocationResult&) const = default;
};

/// Trusted third party: CRS owner, registry, anonymity revocation.
/// The trapdoor never leaves this object.
class Ttp {
 public:
  explicit Ttp(CrsSetup setup) : setup_(std::move(setup)) {}

  const CommonReferenceString& crs() const { return setup_.crs; }

  void register_party(std::string identity, const G1& pk) { registry_.add(std::move(identity), pk); }
  std::optional<std::string> lookup(const G1& pk) const { return registry_.lookup(pk); }

  /// Extracts the committed spender key from both proofs and names its owner
  /// when they agree.
  RevocationResult revoke(const TransactionProof& a, const TransactionProof& b);

  std::size_t revocation_count() const { return revocations_; }

 private:
  CrsSetup setup_;
  Registry registry_;
  std::size_t revocations_ = 0;
};

enum class DepositStatus : std::uint8_t {
  kAccepted = 0,
  kDoubleSpend = 1,
  kRejected = 2,
};

std::string_view deposit_status_name(DepositStatus s);

struct DepositResult {
  DepositStatus status = DepositStatus::kRejected;
  /// Rejection or anomaly text; empty when accepted.
  std::string reason;
  /// Identity named by a double-spend verdict.
  std::string identity;
  /// Divergence index when the TTP was consulted.
  std::optional<std::uint32_t> divergence;
  bool used_ttp = false;

  bool operator==(const DepositResult&) const = default;
};

/// Smallest index at which the serialized proofs differ. Throws ProtocolError
/// when one list is a prefix of the other (including identical lists).
std::size_t find_divergence(const std::vector<TransactionProof>& a,
                            const std::vector<TransactionProof>& b);

using RevokeFn =
    std::function<RevocationResult(const TransactionProof&, const TransactionProof&)>;

class Bank {
 public:
  Bank(CommonReferenceString crs, KeyPair keys, Rng rng)
      : crs_(std::move(crs)), keys_(keys), rng_(std::move(rng)) {}

  const G1& public_key() const { return keys_.public_key; }
  const CommonReferenceString& crs() const { return crs_; }

  void register_customer(std::string identity, const G1& pk) {
    customers_.add(std::move(identity), pk);
  }
  bool is_customer(const G1& pk) const { return customers_.contains(pk); }

  /// First withdrawal leg. Throws PartyError(kUnregistered).
  SignerNonce open_withdrawal(const G1& user_pk);
  /// Third withdrawal leg: sigma' for the blinded challenge.
  Scalar sign_blinded(SignerNonce& nonce, const Scalar& c_prime) const;

  /// Bank acting as receiver: fresh randomization for one deposit.
  ReceiverSecret open_deposit();

  /// Verifies the bundle, then runs double-spend detection against the ledger.
  DepositResult deposit(const TransferBundle& bundle, const ReceiverSecret& secret,
                        const G1& depositor_pk, const RevokeFn& revoke);

  std::size_t ledger_size() const;
  const std::vector<std::string>& anomalies() const { return anomalies_; }

 private:
  struct LedgerEntry {
    DigitalEuro euro;
    G1 depositor;
  };

  DepositResult reject(std::string reason);
  DepositResult anomaly(std::string reason);

  CommonReferenceString crs_;
  KeyPair keys_;
  Rng rng_;
  Registry customers_;
  std::map<std::array<std::uint8_t, 32>, std::vector<LedgerEntry>> ledger_;
  std::vector<std::string> anomalies_;
};

class User {
 public:
  User(std::string identity, KeyPair keys, Rng rng)
      : identity_(std::move(identity)), keys_(keys), rng_(std::move(rng)) {}

  const std::string& identity() const { return identity_; }
  const KeyPair& keys() const { return keys_; }
  const G1& public_key() const { return keys_.public_key; }

  void set_params(const CommonReferenceString& crs, const G1& bank_pk);
  bool has_params() const { return params_.has_value(); }
  const CommonReferenceString& crs() const;
  const G1& bank_pk() const;

  /// Second withdrawal leg: blinds SN || theta1_w against the bank's r.
  Scalar begin_withdrawal(const G1& r);
  /// Unblinds sigma' and stores the euro. Returns its wallet index.
  std::size_t finish_withdrawal(const Scalar& sigma_prime);
  void abort_withdrawal() { pending_withdrawal_.reset(); }

  /// Fresh randomization for an incoming transfer.
  RandomizationElements prepare_receive();
  /// Verifies against the pending randomization and stores the euro.
  /// Throws TransferRejected.
  std::size_t accept(const TransferBundle& bundle);

  TransferBundle spend(std::size_t index, const RandomizationElements& rand,
                       const SpendOptions& options = {});
  void mark_spent(std::size_t index);

  const std::vector<WalletEntry>& wallet() const { return wallet_; }

 private:
  struct PendingWithdrawal {
    WithdrawalRequest request;
    BlindSession session;
  };
  struct Params {
    CommonReferenceString crs;
    G1 bank_pk;
  };

  WalletEntry& entry(std::size_t index);

  std::string identity_;
  KeyPair keys_;
  Rng rng_;
  std::optional<Params> params_;
  std::optional<PendingWithdrawal> pending_withdrawal_;
  std::optional<ReceiverSecret> pending_receive_;
  std::vector<WalletEntry> wallet_;
};

}  // namespace offline_euro
