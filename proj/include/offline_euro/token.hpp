#pragma once

#include <optional>
#include <string>
#include <vector>

#include "offline_euro/gsproof.hpp"
#include "offline_euro/schnorr.hpp"

namespace offline_euro {

/// (SN, theta1, sigma, GS): a bank-signed serial number and withdrawal
/// randomizer plus one proof per transfer so far.
///
/// Wire layout: SN (32) || theta1_w (48) || sigma (32) || c (32) ||
/// count (u32 BE) || count * TransactionProof (1152 each).
struct DigitalEuro {
  static constexpr std::size_t kSerialSize = 32;
  static constexpr std::size_t kHeaderSize =
      kSerialSize + G1::kEncodedSize + Signature::kEncodedSize + 4;
  using SerialNumber = std::array<std::uint8_t, kSerialSize>;

  SerialNumber serial{};
  G1 theta1_w;
  Signature bank_sig;
  std::vector<TransactionProof> proofs;

  /// SN || serialize(theta1_w): what the bank blindly signs.
  Bytes signed_message() const;

  /// SHA-256(SN || theta1_w || sigma || c); the deposit ledger key.
  std::array<std::uint8_t, 32> dedup_key() const;

  Bytes to_bytes() const;
  void write(Bytes& out) const;
  static DigitalEuro from_bytes(ByteView bytes);
  static DigitalEuro read(ByteReader& in);

  static std::size_t encoded_size(std::size_t proof_count) {
    return kHeaderSize + proof_count * TransactionProof::kEncodedSize;
  }

  bool operator==(const DigitalEuro&) const = default;
};

/// What a spender hands the receiver in the second transfer leg.
///
/// Wire layout: euro || Y (96) || v^s (96) || has_prev (u8) ||
/// prev theta-signature (64, zero-filled when absent) || current theta-signature (64).
struct TransferBundle {
  DigitalEuro euro;
  G2 y_commit;
  G2 vs_commit;
  std::optional<Signature> prev_theta_sig;
  Signature cur_theta_sig;

  Bytes to_bytes() const;
  void write(Bytes& out) const;
  static TransferBundle from_bytes(ByteView bytes);
  static TransferBundle read(ByteReader& in);
  static std::size_t encoded_size(std::size_t proof_count);

  bool operator==(const TransferBundle&) const = default;
};

/// A euro held by a wallet, with the t this holder used when receiving it.
struct WalletEntry {
  DigitalEuro euro;
  Scalar t_secret;
  /// theta-signature received with the euro; forwarded on the next spend.
  std::optional<Signature> theta_sig_held;
  bool spent = false;
};

enum class Rejection : std::uint8_t {
  kNone = 0,
  kBadBankSignature,
  kEmptyChain,
  kBadProof,
  kBrokenTargetLink,
  kBrokenKnowledgeLink,
  kForeignRandomization,
  kBadD2,
  kBadThetaSignature,
  kBadPrevThetaSignature,
  kMalformedRandomization,
  kAlreadySpent,
};

std::string_view rejection_name(Rejection r);

/// Outcome of a chain check; `index` names the offending proof where relevant.
struct ChainCheck {
  Rejection reason = Rejection::kNone;
  std::size_t index = 0;

  bool ok() const { return reason == Rejection::kNone; }
  explicit operator bool() const { return ok(); }
  std::string describe() const;
};

class TransferRejected : public std::runtime_error {
 public:
  explicit TransferRejected(ChainCheck check)
      : std::runtime_error(check.describe()), check_(check) {}
  const ChainCheck& check() const { return check_; }

 private:
  ChainCheck check_;
};

struct WithdrawalRequest {
  DigitalEuro::SerialNumber serial{};
  Scalar t0;
  G1 theta1_w;
  /// SN || serialize(theta1_w), the message handed to blind signing.
  Bytes message;
};

/// Fresh serial number and withdrawal randomizer theta1 = g1^-t0.
WithdrawalRequest withdrawal_prepare(Rng& rng);

/// Wallet entry for a freshly issued euro with an empty proof list.
WalletEntry withdrawn_entry(const WithdrawalRequest& request, const Signature& bank_sig);

/// Knobs for adversarial experiments; the defaults are honest behaviour.
struct SpendOptions {
  /// Spend an entry already marked spent (double-spending).
  bool allow_respend = false;
  /// Use this s instead of (-t_prev)^-1.
  std::optional<Scalar> s_override;
  /// Prove toward e(g1,g2)^k for this k instead of the chained target.
  std::optional<Scalar> exponent_override;
};

/// Builds the next proof and the bundle for the receiver. Does not mark the
/// entry spent; the caller commits that once the receiver acknowledges.
/// Throws TransferRejected (kAlreadySpent, kMalformedRandomization).
TransferBundle spend(const WalletEntry& entry, const KeyPair& spender,
                     const RandomizationElements& rand, const CommonReferenceString& crs,
                     Rng& rng, const SpendOptions& options = {});

/// Checks the bank signature and every proof and link in the euro.
ChainCheck check_euro_chain(const DigitalEuro& euro, const CommonReferenceString& crs,
                            const G1& bank_pk);

/// Full receiver-side verification of a bundle against the receiver's own
/// randomization secret.
ChainCheck check_transfer(const TransferBundle& bundle, const ReceiverSecret& secret,
                          const CommonReferenceString& crs, const G1& bank_pk);

/// check_transfer, then the resulting wallet entry. Throws TransferRejected.
WalletEntry receive_verify(const TransferBundle& bundle, const ReceiverSecret& secret,
                           const CommonReferenceString& crs, const G1& bank_pk);

/// Byte sizes entering the growth prediction.
struct SizeModel {
  std::size_t serial = DigitalEuro::kSerialSize;
  std::size_t g1 = G1::kEncodedSize;
  std::size_t g2 = G2::kEncodedSize;
  std::size_t gt = GT::kEncodedSize;
  std::size_t signature = Signature::kEncodedSize;

  /// 4|G1| + 4|G2| + |GT|: one proof with its stored target.
  std::size_t per_transfer() const { return 4 * g1 + 4 * g2 + gt; }
};

/// |SN| + |G1| + |sigma| + n (4|G1| + 4|G2| + |GT|).
std::size_t predicted_size(std::size_t transfers, const SizeModel& model = {});

}  // namespace offline_euro
