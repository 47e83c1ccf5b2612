// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>

#include "chain_helpers.hpp"
#include "offline_euro/bench.hpp"
#include "offline_euro/scenario.hpp"

using namespace offline_euro;
using namespace offline_euro::testing;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (!pass) detail << "; ";
      pass = false;
      detail << what;
    }
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

int failures = 0;

void criterion(int id, const char* title, double budget_s, const std::function<void(Outcome&)>& body) {
  Outcome out;
  auto start = Clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.require(false, std::string("exception: ") + e.what());
  }
  double elapsed = seconds_since(start);
  if (budget_s > 0) {
    out.require(elapsed < budget_s, "runtime " + std::to_string(elapsed) + " s over budget");
  }
  if (!out.pass) ++failures;
  std::printf("C%d %s %s (%.2f s)%s%s\n", id, out.pass ? "PASS" : "FAIL", title, elapsed,
              out.detail.str().empty() ? "" : ": ", out.detail.str().c_str());
  std::fflush(stdout);
}

// ---------------------------------------------------------------- C1

void blind_signatures(Outcome& out) {
  Rng rng(1001);
  auto bank = KeyPair::generate(rng);
  int verified = 0;
  int transcript_differs = 0;
  for (int i = 0; i < 100; ++i) {
    auto request = withdrawal_prepare(rng);
    auto nonce = SignerNonce::generate(rng);
    auto ch = BlindSession::begin(nonce.commitment(), request.message, bank.public_key, rng,
                                  HashDomain::kWithdrawMessage);
    auto sigma_prime = nonce.respond(ch.c_prime, bank.secret);
    auto sig = ch.session.unblind(sigma_prime);
    Bytes expected_msg(request.serial.begin(), request.serial.end());
    append(expected_msg, request.theta1_w.to_bytes());
    if (verify(expected_msg, sig, bank.public_key, HashDomain::kWithdrawMessage)) ++verified;
    if (!(sig.sigma == sigma_prime) && !(sig.c == ch.c_prime)) ++transcript_differs;
  }
  out.require(verified == 100, std::to_string(verified) + "/100 signatures verify");
  out.require(transcript_differs == 100, "blinded transcript equals final signature");

  // Zero blinding factors: the client is transparent.
  auto request = withdrawal_prepare(rng);
  auto nonce = SignerNonce::generate(rng);
  auto ch = BlindSession::begin_with_factors(nonce.commitment(), request.message,
                                             bank.public_key, Scalar{}, Scalar{},
                                             HashDomain::kWithdrawMessage);
  auto sigma_prime = nonce.respond(ch.c_prime, bank.secret);
  auto sig = ch.session.unblind(sigma_prime);
  G1 r_prime = G1::generator().pow(sig.sigma) * bank.public_key.pow(sig.c);
  out.require(r_prime == nonce.commitment() && sig.c == ch.c_prime && sig.sigma == sigma_prime,
              "zero-blinding transcript differs from signer transcript");
}

// ---------------------------------------------------------------- C2

void proof_suite(Outcome& out) {
  Rng rng(2002);
  auto setup = generate_crs(rng);
  const auto& crs = setup.crs;
  int complete = 0, extracted = 0;
  int flipped[8] = {};
  for (int trial = 0; trial < 100; ++trial) {
    auto x = Scalar::random_nonzero(rng);
    auto y = Scalar::random(rng);
    auto s = Scalar::random_nonzero(rng);
    auto rand = derive_randomization(crs, rng).elements;
    G1 X = crs.g.pow(x);
    G2 Y = crs.h.pow(y);
    auto proof = prove(x, y, s, rand, pair(X, Y), crs, rng).proof;
    if (verify_proof(proof, crs)) ++complete;
    if (extract_committed_g1(proof.c1, proof.c2, setup.trapdoor.alpha) == X &&
        extract_committed_g2(proof.d1, proof.d2, setup.trapdoor.beta) == Y) {
      ++extracted;
    }
    for (int pos = 0; pos < 8; ++pos) {
      auto bad = proof;
      G1 e1 = G1::random(rng);
      G2 e2 = G2::random(rng);
      switch (pos) {
        case 0: bad.c1 = bad.c1 * e1; break;
        case 1: bad.c2 = bad.c2 * e1; break;
        case 2: bad.d1 = bad.d1 * e2; break;
        case 3: bad.d2 = bad.d2 * e2; break;
        case 4: bad.theta1 = bad.theta1 * e1; break;
        case 5: bad.theta2 = bad.theta2 * e1; break;
        case 6: bad.pi1 = bad.pi1 * e2; break;
        case 7: bad.pi2 = bad.pi2 * e2; break;
      }
      if (!verify_proof(bad, crs)) ++flipped[pos];
    }
  }
  out.require(complete == 100, std::to_string(complete) + "/100 honest proofs verify");
  out.require(extracted == 100, std::to_string(extracted) + "/100 extractions exact");
  static const char* kNames[] = {"c1", "c2", "d1", "d2", "theta1", "theta2", "pi1", "pi2"};
  for (int pos = 0; pos < 8; ++pos) {
    out.require(flipped[pos] == 100, std::string(kNames[pos]) + " corruption caught " +
                                         std::to_string(flipped[pos]) + "/100");
  }
}

// ---------------------------------------------------------------- C3

void chain_correctness(Outcome& out) {
  ChainWorld w(3003);
  auto hops = build_chain(w, 50);
  for (std::size_t n : {1u, 2u, 10u, 50u}) {
    const auto& hop = hops[n - 1];
    auto check = check_transfer(hop.bundle, hop.receiver, w.crs(), w.bank.public_key);
    out.require(check.ok() && hop.bundle.euro.proofs.size() == n,
                "honest chain n=" + std::to_string(n) + " rejected: " + check.describe());
  }

  // Spenders who do not know the previous t and guess s.
  int knowledge_caught = 0;
  int target_caught = 0;
  int tamper_caught = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto& holder = hops[trial % 10].received;
    auto spender = KeyPair::generate(w.rng);
    auto receiver = derive_randomization(w.crs(), w.rng);

    SpendOptions guess;
    guess.s_override = Scalar::random_nonzero(w.rng);
    auto b1 = spend(holder, spender, receiver.elements, w.crs(), w.rng, guess);
    if (check_transfer(b1, receiver, w.crs(), w.bank.public_key).reason ==
        Rejection::kBrokenKnowledgeLink) {
      ++knowledge_caught;
    }

    // A valid proof toward a target outside the chain.
    SpendOptions wrong;
    wrong.exponent_override = Scalar::random(w.rng);
    auto b2 = spend(holder, spender, receiver.elements, w.crs(), w.rng, wrong);
    if (check_transfer(b2, receiver, w.crs(), w.bank.public_key).reason ==
        Rejection::kBrokenTargetLink) {
      ++target_caught;
    }

    // Stored target overwritten after proving.
    auto b3 = spend(holder, spender, receiver.elements, w.crs(), w.rng);
    auto& t = b3.euro.proofs.back().target;
    t = t * base_pairing();
    if (!check_transfer(b3, receiver, w.crs(), w.bank.public_key).ok()) ++tamper_caught;
  }
  out.require(knowledge_caught >= 99,
              "random s caught by knowledge link " + std::to_string(knowledge_caught) + "/100");
  out.require(target_caught == 100,
              "wrong target caught by target link " + std::to_string(target_caught) + "/100");
  out.require(tamper_caught == 100,
              "overwritten target rejected " + std::to_string(tamper_caught) + "/100");
}

// ---------------------------------------------------------------- C4 / C5

ScenarioConfig scenario_config(std::size_t transfers, std::uint64_t seed) {
  ScenarioConfig c;
  c.transfers = transfers;
  c.seed = seed;
  c.transport = TransportKind::kInProc;
  return c;
}

void double_spend_detection(Outcome& out) {
  for (std::size_t fork_at : {0u, 1u, 3u, 5u}) {
    auto c = scenario_config(6, 4000 + fork_at);
    c.fork_at = fork_at;
    auto report = run_double_spend(c);
    const bool named = report.deposits.size() == 2 &&
                       report.deposits[1].status == DepositStatus::kDoubleSpend &&
                       report.deposits[1].identity == user_name(fork_at);
    out.require(report.ok && named, "fork at " + std::to_string(fork_at) + " not attributed to " +
                                        user_name(fork_at));
  }

  // 50 honest euros through one bank ledger.
  Deployment d(4100, TransportKind::kInProc);
  constexpr std::size_t kUsers = 6;
  for (std::size_t i = 0; i < kUsers; ++i) d.add_user(user_name(i));
  int accepted = 0, false_positive = 0;
  for (std::size_t run = 0; run < 50; ++run) {
    User* holder = &d.user(user_name(run % kUsers));
    std::size_t index = d.withdraw(*holder);
    for (std::size_t hop = 1; hop <= 3; ++hop) {
      User& next = d.user(user_name((run + hop) % kUsers));
      d.pay(*holder, index, next);
      holder = &next;
      index = next.wallet().size() - 1;
    }
    auto result = d.deposit(*holder, index);
    if (result.status == DepositStatus::kAccepted) ++accepted;
    if (result.status == DepositStatus::kDoubleSpend) ++false_positive;
  }
  out.require(accepted == 50 && false_positive == 0,
              std::to_string(accepted) + "/50 honest deposits accepted, " +
                  std::to_string(false_positive) + " false positives");
  out.require(d.bank().anomalies().empty() && d.ttp().revocation_count() == 0,
              "honest runs reached the TTP or logged anomalies");

  auto dup = run_duplicate_deposit(scenario_config(3, 4200));
  bool no_ttp = dup.revocations == 0;
  for (const auto& f : dup.frames) {
    if (f.tag == static_cast<std::uint8_t>(wire::Tag::kRevokeReq)) no_ttp = false;
  }
  out.require(dup.ok && no_ttp && dup.deposits.size() == 2 &&
                  dup.deposits[1].identity == user_name(3),
              "duplicate self-deposit not attributed without the TTP");
}

void revocation_locality(Outcome& out) {
  const std::uint64_t seed = 5005;
  const std::size_t fork_at = 2;
  auto c = scenario_config(5, seed);
  c.fork_at = fork_at;
  auto report = run_double_spend(c);
  out.require(report.ok, "double-spend scenario failed");

  std::vector<const FrameRecord*> to_ttp_requests, from_ttp_replies;
  for (const auto& f : report.frames) {
    auto tag = static_cast<wire::Tag>(f.tag);
    if (f.to == Deployment::kTtpName && tag == wire::Tag::kRevokeReq) to_ttp_requests.push_back(&f);
    if (f.from == Deployment::kTtpName && tag == wire::Tag::kRevokeRep) from_ttp_replies.push_back(&f);
    if (f.to == Deployment::kTtpName) {
      out.require(tag == wire::Tag::kRegister || tag == wire::Tag::kRevokeReq,
                  "unexpected frame to TTP: " + std::string(wire::tag_name(tag)));
    }
  }
  out.require(to_ttp_requests.size() == 1 && from_ttp_replies.size() == 1,
              "expected exactly one revocation exchange");
  if (to_ttp_requests.size() != 1 || from_ttp_replies.size() != 1) return;

  const auto& req_frame = *to_ttp_requests[0];
  out.require(req_frame.from == Deployment::kBankName, "revocation not requested by the bank");
  out.require(req_frame.payload.size() == 2 * TransactionProof::kEncodedSize,
              "REVOKE_REQ payload is " + std::to_string(req_frame.payload.size()) + " bytes");
  auto req = std::get<wire::RevokeReq>(wire::decode({req_frame.tag, req_frame.payload}));
  out.require(!(req.a == req.b), "the two proofs are identical");

  // Both proofs commit to the forking holder's key.
  Rng ttp_rng = Rng(seed).fork("ttp");
  auto setup = generate_crs(ttp_rng);
  Rng user_rng = Rng(seed).fork("user:" + user_name(fork_at));
  auto holder_pk = KeyPair::generate(user_rng).public_key;
  out.require(extract_committed_g1(req.a.c1, req.a.c2, setup.trapdoor.alpha) == holder_pk &&
                  extract_committed_g1(req.b.c1, req.b.c2, setup.trapdoor.alpha) == holder_pk,
              "revoked proofs do not both commit to the holder key");

  const auto& rep_frame = *from_ttp_replies[0];
  auto rep = std::get<wire::RevokeRep>(wire::decode({rep_frame.tag, rep_frame.payload}));
  out.require(rep.result.status == RevocationStatus::kIdentified &&
                  rep.result.identity == user_name(fork_at),
              "TTP reply does not name exactly the holder");
  out.require(rep_frame.payload.size() == 1 + 2 + user_name(fork_at).size(),
              "REVOKE_REP carries more than one identity");
}

// ---------------------------------------------------------------- C6 / C7

void growth_linearity(Outcome& out) {
  auto rows = bench_growth(50, 6006);
  out.require(rows.size() == 50, "expected 50 rows");
  const std::size_t per_entry = SizeModel{}.per_transfer();
  std::set<std::size_t> increments;
  for (std::size_t i = 1; i < rows.size(); ++i) increments.insert(rows[i].bytes - rows[i - 1].bytes);
  out.require(increments.size() == 1, "increment varies across transfers");
  if (increments.size() != 1) return;
  const std::size_t inc = *increments.begin();
  out.require(inc >= per_entry && inc - per_entry < 300,
              "increment " + std::to_string(inc) + " vs predicted entry " +
                  std::to_string(per_entry));
  std::set<std::size_t> overheads;
  for (const auto& r : rows) overheads.insert(r.bytes - predicted_size(r.index));
  out.require(overheads.size() == 1 && *overheads.begin() < 300,
              "size minus prediction is not a constant under 300 bytes");
  std::printf("   increment %zu bytes/transfer (predicted entry %zu), constant overhead %zu bytes\n",
              inc, per_entry, overheads.empty() ? 0 : *overheads.begin());
}

void verify_linearity(Outcome& out) {
  auto rows = bench_verify(50, 10, 7007);
  out.require(rows.size() == 500, "expected 500 timings");
  auto stats = per_index_stats(rows);
  std::vector<double> x, y;
  for (const auto& s : stats) {
    x.push_back(static_cast<double>(s.index));
    y.push_back(s.mean_ns);
  }
  auto fit = least_squares(x, y);
  out.require(fit.slope > 0, "non-positive slope");
  out.require(fit.r_squared >= 0.95, "R^2 " + std::to_string(fit.r_squared) + " < 0.95");
  std::printf("   mean verify: %.2f ms at n=1, %.2f ms at n=50, slope %.3f ms/transfer, R^2 %.4f\n",
              stats.front().mean_ns / 1e6, stats.back().mean_ns / 1e6, fit.slope / 1e6,
              fit.r_squared);
}

// ---------------------------------------------------------------- C8

void transport_equivalence(Outcome& out) {
  auto c = scenario_config(10, 8008);
  auto inproc = run_honest(c);
  c.transport = TransportKind::kSocket;
  auto socket = run_honest(c);
  out.require(inproc.ok && socket.ok, "honest 10-hop scenario failed");
  out.require(!inproc.frames.empty() && inproc.frames == socket.frames,
              "transcripts differ across bindings (" + std::to_string(inproc.frames.size()) +
                  " vs " + std::to_string(socket.frames.size()) + " frames)");

  auto is_service = [](const std::string& name) {
    return name == Deployment::kTtpName || name == Deployment::kBankName;
  };
  std::size_t transfers = 0;
  const auto& frames = inproc.frames;
  for (std::size_t i = 0; i < frames.size(); ++i) {
    auto tag = static_cast<wire::Tag>(frames[i].tag);
    if (tag == wire::Tag::kTransferPayload) {
      out.require(!is_service(frames[i].from) && !is_service(frames[i].to),
                  "TRANSFER_PAYLOAD touches a service");
    }
    if (tag != wire::Tag::kTransferInit) continue;
    ++transfers;
    // The whole session, INIT through the closing ACK, stays between the two users.
    const auto& payee = frames[i].from;
    const auto& spender = frames[i].to;
    bool closed = false;
    for (std::size_t j = i; j < frames.size() && !closed; ++j) {
      const auto& f = frames[j];
      out.require(!is_service(f.from) && !is_service(f.to),
                  "frame to/from a service during a transfer");
      out.require((f.from == payee && f.to == spender) || (f.from == spender && f.to == payee),
                  "third party in a transfer session");
      closed = f.tag == static_cast<std::uint8_t>(wire::Tag::kAck);
    }
    out.require(closed, "transfer session not acknowledged");
  }
  out.require(transfers == 10, std::to_string(transfers) + " transfer sessions, expected 10");
}

}  // namespace

int main() {
  criterion(1, "blind-signature completeness", 10, blind_signatures);
  criterion(2, "GS proof completeness, soundness and extraction", 60, proof_suite);
  criterion(3, "chain correctness", 120, chain_correctness);
  criterion(4, "double-spend detection", 60, double_spend_detection);
  criterion(5, "revocation locality", 0, revocation_locality);
  criterion(6, "growth linearity", 0, growth_linearity);
  criterion(7, "verification-time linearity", 600, verify_linearity);
  criterion(8, "transport equivalence", 0, transport_equivalence);
  std::printf("%s: %d criterion(s) failed\n", failures == 0 ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL",
              failures);
  return failures == 0 ? 0 : 1;
}
