#pragma once

#include <memory>
#include <optional>
#include <string>

#include "offline_euro/protocol.hpp"

namespace offline_euro {

enum class TransportKind { kInProc, kSocket };

std::string_view transport_name(TransportKind kind);
/// "inproc" or "socket"; throws std::invalid_argument otherwise.
TransportKind parse_transport(std::string_view name);

/// TTP and bank running in other processes, reached over loopback sockets.
struct RemoteServices {
  std::string host = "127.0.0.1";
  std::uint16_t ttp_port = 0;
  std::uint16_t bank_port = 0;
};

struct ScenarioConfig {
  std::size_t transfers = 50;
  std::size_t repeats = 10;
  std::uint64_t seed = 1;
  TransportKind transport = TransportKind::kInProc;
  std::optional<std::size_t> fork_at;
  std::string out;
  /// When set, only the users run here; transport is then always socket.
  std::optional<RemoteServices> remote;

  /// Throws std::invalid_argument when transfers is 0 or fork_at >= transfers.
  void validate() const;
};

/// TTP, bank and users wired over one transport binding. Every party draws
/// from its own fork of the root seed, so a seed fixes every transcript byte.
class Deployment {
 public:
  Deployment(std::uint64_t seed, TransportKind transport);
  /// Users only; the TTP and bank are the given remote services.
  Deployment(std::uint64_t seed, const RemoteServices& remote);
  ~Deployment();

  /// Creates a user, registers it at the TTP and the bank over the network,
  /// fetches parameters and starts its payee service under `name`.
  User& add_user(const std::string& name);
  User& user(const std::string& name);

  std::size_t withdraw(User& user);
  void pay(User& from, std::size_t index, User& to, const SpendOptions& options = {});
  DepositResult deposit(User& user, std::size_t index, const SpendOptions& options = {});

  Network& network() { return *network_; }
  bool has_local_services() const { return ttp_ != nullptr; }
  /// Only with local services.
  const Ttp& ttp() const;
  const Bank& bank() const;
  /// Stops services; the frame log stays readable.
  void shutdown();

  static constexpr const char* kTtpName = "ttp";
  static constexpr const char* kBankName = "bank";

 private:
  Rng root_;
  std::unique_ptr<Network> network_;
  std::unique_ptr<Ttp> ttp_;
  std::unique_ptr<Bank> bank_;
  std::map<std::string, std::unique_ptr<User>> users_;
};

struct ScenarioReport {
  bool ok = false;
  std::vector<std::string> lines;
  std::vector<FrameRecord> frames;
  std::vector<DepositResult> deposits;
  std::string expected_identity;
  /// Revocation calls observed at a local TTP.
  std::size_t revocations = 0;
  std::vector<std::string> anomalies;
  std::vector<std::string> handler_errors;
};

/// withdraw -> `transfers` hops across distinct users -> deposit; every step
/// must be accepted.
ScenarioReport run_honest(const ScenarioConfig& config);

/// The holder at hop fork_at (U0 is the withdrawer) pays both U(fork_at+1)
/// and a side receiver W; both branches are deposited and the second deposit
/// must name that holder.
ScenarioReport run_double_spend(const ScenarioConfig& config);

/// Honest chain whose final holder deposits the same euro twice; the verdict
/// must name the depositor without consulting the TTP.
ScenarioReport run_duplicate_deposit(const ScenarioConfig& config);

/// "Ux" naming used by the scenarios.
std::string user_name(std::size_t i);

}  // namespace offline_euro
