#include "offline_euro/token.hpp"

#include <algorithm>

namespace offline_euro {

// ---------------------------------------------------------------- DigitalEuro

Bytes DigitalEuro::signed_message() const {
  Bytes out(serial.begin(), serial.end());
  append(out, theta1_w.to_bytes());
  return out;
}

std::array<std::uint8_t, 32> DigitalEuro::dedup_key() const {
  Bytes buf = signed_message();
  append(buf, bank_sig.to_bytes());
  return sha256(buf);
}

void DigitalEuro::write(Bytes& out) const {
  append(out, serial);
  append(out, theta1_w.to_bytes());
  append(out, bank_sig.to_bytes());
  append_u32_be(out, static_cast<std::uint32_t>(proofs.size()));
  for (const auto& p : proofs) append(out, p.to_bytes());
}

Bytes DigitalEuro::to_bytes() const {
  Bytes out;
  out.reserve(encoded_size(proofs.size()));
  write(out);
  return out;
}

DigitalEuro DigitalEuro::read(ByteReader& in) {
  DigitalEuro e;
  auto sn = in.take(kSerialSize);
  std::copy(sn.begin(), sn.end(), e.serial.begin());
  e.theta1_w = G1::from_bytes(in.take(G1::kEncodedSize));
  e.bank_sig = Signature::from_bytes(in.take(Signature::kEncodedSize));
  auto count = in.u32_be();
  if (count > in.remaining() / TransactionProof::kEncodedSize) {
    throw TruncatedInput("proof count " + std::to_string(count) + " exceeds the available bytes");
  }
  e.proofs.reserve(count);
  for (std::uint32_t i = 0; i < count; ++i) {
    e.proofs.push_back(TransactionProof::from_bytes(in.take(TransactionProof::kEncodedSize)));
  }
  return e;
}

DigitalEuro DigitalEuro::from_bytes(ByteView bytes) {
  ByteReader in(bytes);
  auto e = read(in);
  in.expect_end();
  return e;
}

// ---------------------------------------------------------------- TransferBundle

void TransferBundle::write(Bytes& out) const {
  euro.write(out);
  append(out, y_commit.to_bytes());
  append(out, vs_commit.to_bytes());
  out.push_back(prev_theta_sig ? 1 : 0);
  if (prev_theta_sig) {
    append(out, prev_theta_sig->to_bytes());
  } else {
    out.insert(out.end(), Signature::kEncodedSize, 0);
  }
  append(out, cur_theta_sig.to_bytes());
}

Bytes TransferBundle::to_bytes() const {
  Bytes out;
  out.reserve(encoded_size(euro.proofs.size()));
  write(out);
  return out;
}

TransferBundle TransferBundle::read(ByteReader& in) {
  TransferBundle b;
  b.euro = DigitalEuro::read(in);
  b.y_commit = G2::from_bytes(in.take(G2::kEncodedSize));
  b.vs_commit = G2::from_bytes(in.take(G2::kEncodedSize));
  auto has_prev = in.u8();
  if (has_prev > 1) throw DecodeError("invalid previous-signature flag");
  auto prev = in.take(Signature::kEncodedSize);
  if (has_prev) {
    b.prev_theta_sig = Signature::from_bytes(prev);
  } else if (std::any_of(prev.begin(), prev.end(), [](auto x) { return x != 0; })) {
    throw DecodeError("absent previous signature must be zero-filled");
  }
  b.cur_theta_sig = Signature::from_bytes(in.take(Signature::kEncodedSize));
  return b;
}

TransferBundle TransferBundle::from_bytes(ByteView bytes) {
  ByteReader in(bytes);
  auto b = read(in);
  in.expect_end();
  return b;
}

std::size_t TransferBundle::encoded_size(std::size_t proof_count) {
  return DigitalEuro::encoded_size(proof_count) + 2 * G2::kEncodedSize + 1 +
         2 * Signature::kEncodedSize;
}

// ---------------------------------------------------------------- rejections

std::string_view rejection_name(Rejection r) {
  switch (r) {
    case Rejection::kNone: return "ok";
    case Rejection::kBadBankSignature: return "bad-bank-sig";
    case Rejection::kEmptyChain: return "empty-chain";
    case Rejection::kBadProof: return "bad-proof";
    case Rejection::kBrokenTargetLink: return "broken-link(target)";
    case Rejection::kBrokenKnowledgeLink: return "broken-link(knowledge)";
    case Rejection::kForeignRandomization: return "foreign-randomization";
    case Rejection::kBadD2: return "bad-d2";
    case Rejection::kBadThetaSignature: return "bad-theta-sig";
    case Rejection::kBadPrevThetaSignature: return "bad-prev-theta-sig";
    case Rejection::kMalformedRandomization: return "malformed-randomization";
    case Rejection::kAlreadySpent: return "already-spent";
  }
  return "unknown";
}

std::string ChainCheck::describe() const {
  std::string s(rejection_name(reason));
  switch (reason) {
    case Rejection::kBadProof:
    case Rejection::kBrokenTargetLink:
    case Rejection::kBrokenKnowledgeLink:
      s += "[" + std::to_string(index) + "]";
      break;
    default:
      break;
  }
  return s;
}

// ---------------------------------------------------------------- withdrawal

WithdrawalRequest withdrawal_prepare(Rng& rng) {
  WithdrawalRequest req;
  rng.fill(req.serial);
  req.t0 = Scalar::random_nonzero(rng);
  req.theta1_w = G1::generator().pow(-req.t0);
  req.message.assign(req.serial.begin(), req.serial.end());
  append(req.message, req.theta1_w.to_bytes());
  return req;
}

WalletEntry withdrawn_entry(const WithdrawalRequest& request, const Signature& bank_sig) {
  WalletEntry entry;
  entry.euro.serial = request.serial;
  entry.euro.theta1_w = request.theta1_w;
  entry.euro.bank_sig = bank_sig;
  entry.t_secret = request.t0;
  return entry;
}

// ---------------------------------------------------------------- spend

TransferBundle spend(const WalletEntry& entry, const KeyPair& spender,
                     const RandomizationElements& rand, const CommonReferenceString& crs,
                     Rng& rng, const SpendOptions& options) {
  if (entry.spent && !options.allow_respend) {
    throw TransferRejected({Rejection::kAlreadySpent, 0});
  }
  if (!randomization_consistent(rand, crs)) {
    throw TransferRejected({Rejection::kMalformedRandomization, 0});
  }

  const auto& proofs = entry.euro.proofs;
  Scalar k;
  GT target;
  if (proofs.empty()) {
    k = entry.euro.bank_sig.sigma;
    target = initial_target(k);
  } else {
    k = gt_to_scalar(proofs.back().target);
    target = next_target(proofs.back().target);
  }
  if (options.exponent_override) {
    k = *options.exponent_override;
    target = base_pairing().pow(k);
  }

  const Scalar y = k * spender.secret.inverse();
  const Scalar s = options.s_override ? *options.s_override : (-entry.t_secret).inverse();
  auto out = prove(spender.secret, y, s, rand, target, crs, rng);

  TransferBundle bundle;
  bundle.euro = entry.euro;
  bundle.euro.proofs.push_back(out.proof);
  bundle.y_commit = crs.h.pow(y);
  bundle.vs_commit = crs.v.pow(s);
  bundle.prev_theta_sig = entry.theta_sig_held;
  bundle.cur_theta_sig = sign(rand.g1_neg_t.to_bytes(), out.r, rng, HashDomain::kThetaSignature);
  return bundle;
}

// ---------------------------------------------------------------- verification

ChainCheck check_euro_chain(const DigitalEuro& euro, const CommonReferenceString& crs,
                            const G1& bank_pk) {
  if (!verify(euro.signed_message(), euro.bank_sig, bank_pk, HashDomain::kWithdrawMessage)) {
    return {Rejection::kBadBankSignature, 0};
  }
  const auto& proofs = euro.proofs;
  if (proofs.empty()) return {Rejection::kEmptyChain, 0};

  for (std::size_t i = 0; i < proofs.size(); ++i) {
    if (!verify_proof(proofs[i], crs)) return {Rejection::kBadProof, i};
  }
  if (!(proofs[0].target == initial_target(euro.bank_sig.sigma))) {
    return {Rejection::kBrokenTargetLink, 0};
  }
  if (!verify_knowledge_link(euro.theta1_w, proofs[0].d1)) {
    return {Rejection::kBrokenKnowledgeLink, 0};
  }
  for (std::size_t i = 1; i < proofs.size(); ++i) {
    if (!(proofs[i].target == next_target(proofs[i - 1].target))) {
      return {Rejection::kBrokenTargetLink, i};
    }
    if (!verify_knowledge_link(proofs[i - 1].theta1, proofs[i].d1)) {
      return {Rejection::kBrokenKnowledgeLink, i};
    }
  }
  return {};
}

ChainCheck check_transfer(const TransferBundle& bundle, const ReceiverSecret& secret,
                          const CommonReferenceString& crs, const G1& bank_pk) {
  if (auto chain = check_euro_chain(bundle.euro, crs, bank_pk); !chain) return chain;

  const auto& proofs = bundle.euro.proofs;
  const auto& last = proofs.back();
  const std::size_t n = proofs.size();

  if (!(last.theta1 == crs.g.pow(-secret.t))) return {Rejection::kForeignRandomization, n - 1};
  if (!(last.d2 == bundle.vs_commit * bundle.y_commit)) return {Rejection::kBadD2, n - 1};
  // The proof randomness r is the theta-signature key; c1 = g1^r is its public key.
  if (!verify(last.theta1.to_bytes(), bundle.cur_theta_sig, last.c1,
              HashDomain::kThetaSignature)) {
    return {Rejection::kBadThetaSignature, n - 1};
  }
  if (n >= 2) {
    const auto& prev = proofs[n - 2];
    if (!bundle.prev_theta_sig ||
        !verify(prev.theta1.to_bytes(), *bundle.prev_theta_sig, prev.c1,
                HashDomain::kThetaSignature)) {
      return {Rejection::kBadPrevThetaSignature, n - 2};
    }
  }
  return {};
}

WalletEntry receive_verify(const TransferBundle& bundle, const ReceiverSecret& secret,
                           const CommonReferenceString& crs, const G1& bank_pk) {
  auto check = check_transfer(bundle, secret, crs, bank_pk);
  if (!check) throw TransferRejected(check);
  WalletEntry entry;
  entry.euro = bundle.euro;
  entry.t_secret = secret.t;
  entry.theta_sig_held = bundle.cur_theta_sig;
  return entry;
}

std::size_t predicted_size(std::size_t transfers, const SizeModel& model) {
  return model.serial + model.g1 + model.signature + transfers * model.per_transfer();
}

}  // namespace offline_euro
