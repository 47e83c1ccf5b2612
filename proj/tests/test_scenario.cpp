#include "doctest.h"
#include "offline_euro/scenario.hpp"

using namespace offline_euro;

namespace {

ScenarioConfig config(std::size_t transfers, std::uint64_t seed,
                      TransportKind kind = TransportKind::kInProc) {
  ScenarioConfig c;
  c.transfers = transfers;
  c.seed = seed;
  c.transport = kind;
  return c;
}

std::string joined(const ScenarioReport& r) {
  std::string s;
  for (const auto& l : r.lines) s += l + "\n";
  return s;
}

}  // namespace

TEST_CASE("config validation") {
  auto c = config(0, 1);
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c.transfers = 3;
  c.fork_at = 3;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c.fork_at = 2;
  CHECK_NOTHROW(c.validate());
  CHECK(parse_transport("socket") == TransportKind::kSocket);
  CHECK_THROWS_AS(parse_transport("carrier-pigeon"), std::invalid_argument);
  CHECK(ScenarioConfig{}.transfers == 50);
  CHECK(ScenarioConfig{}.repeats == 10);
}

TEST_CASE("honest scenario with one transfer") {
  for (auto kind : {TransportKind::kInProc, TransportKind::kSocket}) {
    auto report = run_honest(config(1, 3, kind));
    INFO(joined(report));
    CHECK(report.ok);
    REQUIRE(report.deposits.size() == 1);
    CHECK(report.deposits[0].status == DepositStatus::kAccepted);
    CHECK(report.revocations == 0);
  }
}

TEST_CASE("seed-fixed runs produce identical transcripts") {
  auto a = run_honest(config(3, 42));
  auto b = run_honest(config(3, 42));
  auto c = run_honest(config(3, 43));
  REQUIRE(a.ok);
  CHECK(a.frames == b.frames);
  CHECK_FALSE(a.frames == c.frames);
}

TEST_CASE("double-spend scenario names the forking holder") {
  for (std::size_t fork_at : {0u, 2u}) {
    auto c = config(3, 50 + fork_at);
    c.fork_at = fork_at;
    auto report = run_double_spend(c);
    INFO(joined(report));
    CHECK(report.ok);
    CHECK(report.expected_identity == user_name(fork_at));
    REQUIRE(report.deposits.size() == 2);
    CHECK(report.deposits[1].identity == user_name(fork_at));
    CHECK(report.deposits[1].used_ttp);
    CHECK(report.revocations == 1);
  }
  CHECK_FALSE(run_double_spend(config(3, 1)).ok);  // fork-at missing
}

TEST_CASE("duplicate deposit is attributed without the TTP") {
  auto report = run_duplicate_deposit(config(2, 60));
  INFO(joined(report));
  CHECK(report.ok);
  CHECK(report.revocations == 0);
  for (const auto& f : report.frames) {
    CHECK_FALSE(f.tag == static_cast<std::uint8_t>(wire::Tag::kRevokeReq));
  }
}

TEST_CASE("no frame carries the trapdoor") {
  auto c = config(2, 70);
  c.fork_at = 1;
  auto report = run_double_spend(c);
  REQUIRE(report.ok);
  // The deployment derives the TTP's setup from this fork of the seed.
  Rng ttp_rng = Rng(70).fork("ttp");
  auto setup = generate_crs(ttp_rng);
  auto alpha = setup.trapdoor.alpha.to_bytes();
  auto beta = setup.trapdoor.beta.to_bytes();
  for (const auto& f : report.frames) {
    CHECK(std::search(f.payload.begin(), f.payload.end(), alpha.begin(), alpha.end()) ==
          f.payload.end());
    CHECK(std::search(f.payload.begin(), f.payload.end(), beta.begin(), beta.end()) ==
          f.payload.end());
  }
}
