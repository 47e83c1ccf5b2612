#include "offline_euro/scenario.hpp"

namespace offline_euro {

std::string_view transport_name(TransportKind kind) {
  return kind == TransportKind::kInProc ? "inproc" : "socket";
}

TransportKind parse_transport(std::string_view name) {
  if (name == "inproc") return TransportKind::kInProc;
  if (name == "socket") return TransportKind::kSocket;
  throw std::invalid_argument("unknown transport: " + std::string(name));
}

void ScenarioConfig::validate() const {
  if (transfers == 0) throw std::invalid_argument("transfers must be at least 1");
  if (fork_at && *fork_at >= transfers) {
    throw std::invalid_argument("fork-at must be smaller than transfers");
  }
}

std::string user_name(std::size_t i) { return "U" + std::to_string(i); }

// ---------------------------------------------------------------- Deployment

Deployment::Deployment(std::uint64_t seed, TransportKind transport) : root_(seed) {
  if (transport == TransportKind::kInProc) {
    network_ = std::make_unique<InProcNetwork>();
  } else {
    network_ = std::make_unique<TcpNetwork>();
  }

  Rng ttp_rng = root_.fork("ttp");
  ttp_ = std::make_unique<Ttp>(generate_crs(ttp_rng));
  Rng bank_rng = root_.fork("bank");
  auto bank_keys = KeyPair::generate(bank_rng);
  bank_ = std::make_unique<Bank>(ttp_->crs(), bank_keys, std::move(bank_rng));

  network_->serve(kTtpName, [this](Channel& ch) { protocol::serve_ttp(ch, *ttp_); });
  network_->serve(kBankName, [this](Channel& ch) {
    protocol::serve_bank(ch, *bank_, [this](const auto& a, const auto& b) {
      auto ttp = network_->connect(kBankName, kTtpName);
      return protocol::request_revocation(*ttp, a, b);
    });
  });

  auto ch = network_->connect(kBankName, kTtpName);
  protocol::register_at(*ch, kBankName, bank_->public_key());
}

Deployment::Deployment(std::uint64_t seed, const RemoteServices& remote) : root_(seed) {
  auto net = std::make_unique<TcpNetwork>();
  net->add_remote(kTtpName, remote.host, remote.ttp_port);
  net->add_remote(kBankName, remote.host, remote.bank_port);
  network_ = std::move(net);
}

Deployment::~Deployment() { shutdown(); }

const Ttp& Deployment::ttp() const {
  if (!ttp_) throw std::logic_error("TTP runs in another process");
  return *ttp_;
}

const Bank& Deployment::bank() const {
  if (!bank_) throw std::logic_error("bank runs in another process");
  return *bank_;
}

void Deployment::shutdown() { network_->shutdown(); }

User& Deployment::add_user(const std::string& name) {
  Rng rng = root_.fork("user:" + name);
  auto keys = KeyPair::generate(rng);
  auto owned = std::make_unique<User>(name, keys, std::move(rng));
  User& u = *owned;
  if (!users_.emplace(name, std::move(owned)).second) {
    throw std::invalid_argument("duplicate user " + name);
  }
  {
    auto ttp = network_->connect(name, kTtpName);
    protocol::register_at(*ttp, name, u.public_key());
  }
  {
    auto bank = network_->connect(name, kBankName);
    protocol::register_at(*bank, name, u.public_key());
    auto params = protocol::fetch_params(*bank);
    u.set_params(params.crs, params.bank_pk);
  }
  network_->serve(name, [&u](Channel& ch) { protocol::serve_payee(ch, u); });
  return u;
}

User& Deployment::user(const std::string& name) {
  auto it = users_.find(name);
  if (it == users_.end()) throw std::out_of_range("no user " + name);
  return *it->second;
}

std::size_t Deployment::withdraw(User& user) {
  auto bank = network_->connect(user.identity(), kBankName);
  return protocol::withdraw(*bank, user);
}

void Deployment::pay(User& from, std::size_t index, User& to, const SpendOptions& options) {
  auto peer = network_->connect(from.identity(), to.identity());
  protocol::pay(*peer, from, index, options);
}

DepositResult Deployment::deposit(User& user, std::size_t index, const SpendOptions& options) {
  auto bank = network_->connect(user.identity(), kBankName);
  return protocol::deposit(*bank, user, index, options);
}

// ---------------------------------------------------------------- scenarios

namespace {

std::string describe(const DepositResult& r) {
  std::string s(deposit_status_name(r.status));
  if (!r.identity.empty()) s += " identity=" + r.identity;
  if (r.divergence) s += " divergence=" + std::to_string(*r.divergence);
  if (r.status == DepositStatus::kDoubleSpend) s += r.used_ttp ? " via-ttp" : " without-ttp";
  if (!r.reason.empty()) s += " reason=" + r.reason;
  return s;
}

/// Runs `body`, converting exceptions into a failed report, and collects the
/// shared diagnostics.
template <class Body>
ScenarioReport run(const ScenarioConfig& config, const std::string& name, Body body) {
  ScenarioReport report;
  try {
    config.validate();
    auto d = config.remote ? std::make_unique<Deployment>(config.seed, *config.remote)
                           : std::make_unique<Deployment>(config.seed, config.transport);
    auto transport = config.remote ? std::string("socket (remote ttp/bank)")
                                   : std::string(transport_name(config.transport));
    report.lines.push_back(name + ": seed=" + std::to_string(config.seed) +
                           " transfers=" + std::to_string(config.transfers) +
                           " transport=" + transport);
    report.ok = body(*d, report);
    d->shutdown();
    report.frames = d->network().log().snapshot();
    if (d->has_local_services()) {
      report.revocations = d->ttp().revocation_count();
      report.anomalies = d->bank().anomalies();
    }
    report.handler_errors = d->network().handler_errors();
    for (const auto& e : report.handler_errors) report.lines.push_back("handler error: " + e);
    if (!report.handler_errors.empty()) report.ok = false;
  } catch (const std::exception& e) {
    report.ok = false;
    report.lines.push_back(std::string("error: ") + e.what());
  }
  report.lines.push_back(report.ok ? "result: PASS" : "result: FAIL");
  return report;
}

/// Withdraws at U0 and walks the euro to U<transfers>; `at_hop` runs right
/// after hop i has been paid. Returns the final holder's wallet index.
template <class Hook>
std::size_t walk_chain(Deployment& d, ScenarioReport& report, std::size_t transfers, Hook at_hop) {
  std::size_t index = d.withdraw(d.user(user_name(0)));
  report.lines.push_back("withdraw U0: ok");
  for (std::size_t hop = 0; hop < transfers; ++hop) {
    User& from = d.user(user_name(hop));
    User& to = d.user(user_name(hop + 1));
    d.pay(from, index, to);
    std::size_t next = to.wallet().size() - 1;
    report.lines.push_back("transfer " + from.identity() + " -> " + to.identity() + ": ok (" +
                           std::to_string(to.wallet()[next].euro.to_bytes().size()) + " bytes)");
    at_hop(hop, from, index);
    index = next;
  }
  return index;
}

void add_users(Deployment& d, std::size_t transfers) {
  for (std::size_t i = 0; i <= transfers; ++i) d.add_user(user_name(i));
}

}  // namespace

ScenarioReport run_honest(const ScenarioConfig& config) {
  return run(config, "scenario honest", [&](Deployment& d, ScenarioReport& report) {
    add_users(d, config.transfers);
    auto index = walk_chain(d, report, config.transfers, [](auto, auto&, auto) {});
    auto& last = d.user(user_name(config.transfers));
    auto result = d.deposit(last, index);
    report.deposits.push_back(result);
    report.lines.push_back("deposit " + last.identity() + ": " + describe(result));
    return result.status == DepositStatus::kAccepted;
  });
}

ScenarioReport run_double_spend(const ScenarioConfig& config) {
  return run(config, "scenario double-spend", [&](Deployment& d, ScenarioReport& report) {
    if (!config.fork_at) throw std::invalid_argument("double-spend scenario needs fork-at");
    const std::size_t fork_at = *config.fork_at;
    add_users(d, config.transfers);
    User& side = d.add_user("W");
    report.expected_identity = user_name(fork_at);

    std::size_t side_index = 0;
    auto index = walk_chain(d, report, config.transfers, [&](std::size_t hop, User& from,
                                                             std::size_t held) {
      if (hop != fork_at) return;
      SpendOptions again;
      again.allow_respend = true;
      d.pay(from, held, side, again);
      side_index = side.wallet().size() - 1;
      report.lines.push_back("transfer " + from.identity() + " -> W: ok (second spend)");
    });

    auto& last = d.user(user_name(config.transfers));
    auto first = d.deposit(last, index);
    report.lines.push_back("deposit " + last.identity() + ": " + describe(first));
    auto second = d.deposit(side, side_index);
    report.lines.push_back("deposit W: " + describe(second));
    report.deposits = {first, second};
    return first.status == DepositStatus::kAccepted &&
           second.status == DepositStatus::kDoubleSpend &&
           second.identity == report.expected_identity;
  });
}

ScenarioReport run_duplicate_deposit(const ScenarioConfig& config) {
  return run(config, "scenario duplicate-deposit", [&](Deployment& d, ScenarioReport& report) {
    add_users(d, config.transfers);
    auto index = walk_chain(d, report, config.transfers, [](auto, auto&, auto) {});
    auto& last = d.user(user_name(config.transfers));
    report.expected_identity = last.identity();
    auto first = d.deposit(last, index);
    report.lines.push_back("deposit " + last.identity() + ": " + describe(first));
    SpendOptions again;
    again.allow_respend = true;
    auto second = d.deposit(last, index, again);
    report.lines.push_back("deposit " + last.identity() + " again: " + describe(second));
    report.deposits = {first, second};
    return first.status == DepositStatus::kAccepted &&
           second.status == DepositStatus::kDoubleSpend &&
           second.identity == report.expected_identity && !second.used_ttp &&
           (!d.has_local_services() || d.ttp().revocation_count() == 0);
  });
}

}  // namespace offline_euro
