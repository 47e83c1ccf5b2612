// offline-euro: run parties as processes, scripted scenarios and benchmarks.

#include <csignal>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>

#include "CLI11.hpp"
#include "offline_euro/bench.hpp"
#include "offline_euro/scenario.hpp"

namespace fs = std::filesystem;
using namespace offline_euro;

namespace {

constexpr const char* kCrsFile = "crs.bin";
constexpr const char* kTrapdoorFile = "trapdoor.bin";

Bytes read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const fs::path& path, ByteView data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
}

void write_port_file(const std::string& path, std::uint16_t port) {
  if (path.empty()) return;
  auto tmp = path + ".tmp";
  std::ofstream(tmp) << port << "\n";
  fs::rename(tmp, path);
}

/// Blocks SIGINT/SIGTERM in every thread so the main thread can wait for them.
sigset_t block_termination_signals() {
  sigset_t set;
  sigemptyset(&set);
  sigaddset(&set, SIGINT);
  sigaddset(&set, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &set, nullptr);
  return set;
}

void wait_for_termination(const sigset_t& set) {
  int sig = 0;
  sigwait(&set, &sig);
}

/// Open output stream: the file at `path`, or nothing when empty.
std::unique_ptr<std::ofstream> open_out(const std::string& path) {
  if (path.empty()) return nullptr;
  auto out = std::make_unique<std::ofstream>(path, std::ios::trunc);
  if (!*out) throw std::runtime_error("cannot write " + path);
  return out;
}

void write_transcript(std::ostream& out, const std::vector<FrameRecord>& frames) {
  out << "seq,from,to,tag,bytes,sha256\n";
  for (std::size_t i = 0; i < frames.size(); ++i) {
    const auto& f = frames[i];
    out << i << ',' << f.from << ',' << f.to << ','
        << wire::tag_name(static_cast<wire::Tag>(f.tag)) << ',' << f.payload.size() << ','
        << to_hex(sha256(f.payload)) << '\n';
  }
}

int report_scenario(const ScenarioReport& report, const std::string& out) {
  for (const auto& line : report.lines) std::cout << line << "\n";
  if (auto f = open_out(out)) write_transcript(*f, report.frames);
  return report.ok ? 0 : 1;
}

// ---------------------------------------------------------------- commands

int cmd_params_init(const std::string& dir, std::uint64_t seed) {
  fs::create_directories(dir);
  Rng rng = Rng(seed).fork("ttp");
  auto setup = generate_crs(rng);
  write_file(fs::path(dir) / kCrsFile, setup.crs.to_bytes());
  write_file(fs::path(dir) / kTrapdoorFile, setup.trapdoor.to_bytes());
  fs::permissions(fs::path(dir) / kTrapdoorFile, fs::perms::owner_read | fs::perms::owner_write);
  std::cout << "wrote " << (fs::path(dir) / kCrsFile).string() << " ("
            << CommonReferenceString::encoded_size() << " bytes) and "
            << (fs::path(dir) / kTrapdoorFile).string() << " (TTP only)\n";
  return 0;
}

int cmd_ttp_serve(const std::string& dir, std::uint16_t port, const std::string& port_file) {
  auto signals = block_termination_signals();
  CrsSetup setup{CommonReferenceString::from_bytes(read_file(fs::path(dir) / kCrsFile)),
                 Trapdoor::from_bytes(read_file(fs::path(dir) / kTrapdoorFile))};
  Ttp ttp(std::move(setup));
  TcpNetwork net;
  auto bound = net.serve_on("ttp", port, [&](Channel& ch) { protocol::serve_ttp(ch, ttp); });
  write_port_file(port_file, bound);
  std::cout << "ttp listening on 127.0.0.1:" << bound << std::endl;
  wait_for_termination(signals);
  net.shutdown();
  std::cout << "ttp: " << ttp.revocation_count() << " revocation request(s)\n";
  return 0;
}

int cmd_bank_serve(const std::string& dir, std::uint16_t port, const std::string& port_file,
                   std::uint16_t ttp_port, std::uint64_t seed) {
  auto signals = block_termination_signals();
  auto crs = CommonReferenceString::from_bytes(read_file(fs::path(dir) / kCrsFile));
  Rng rng = Rng(seed).fork("bank");
  auto keys = KeyPair::generate(rng);
  Bank bank(crs, keys, std::move(rng));
  TcpNetwork net;
  net.add_remote("ttp", "127.0.0.1", ttp_port);
  {
    auto ttp = net.connect("bank", "ttp");
    protocol::register_at(*ttp, "bank", bank.public_key());
  }
  auto revoke = [&](const TransactionProof& a, const TransactionProof& b) {
    auto ttp = net.connect("bank", "ttp");
    return protocol::request_revocation(*ttp, a, b);
  };
  auto bound =
      net.serve_on("bank", port, [&](Channel& ch) { protocol::serve_bank(ch, bank, revoke); });
  write_port_file(port_file, bound);
  std::cout << "bank listening on 127.0.0.1:" << bound << std::endl;
  wait_for_termination(signals);
  net.shutdown();
  std::cout << "bank: " << bank.ledger_size() << " deposit(s), " << bank.anomalies().size()
            << " anomaly(ies)\n";
  return 0;
}

int cmd_bench_growth(const ScenarioConfig& c) {
  auto rows = bench_growth(c.transfers, c.seed);
  if (auto f = open_out(c.out)) write_growth_csv(*f, rows);
  else write_growth_csv(std::cout, rows);

  const std::size_t per_entry = SizeModel{}.per_transfer();
  bool ok = true;
  std::optional<std::size_t> increment;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    auto d = rows[i].bytes - rows[i - 1].bytes;
    if (increment && d != *increment) ok = false;
    increment = d;
  }
  const std::size_t overhead = rows.front().bytes - predicted_size(1);
  ok = ok && overhead < 300 && (!increment || *increment >= per_entry);
  std::cerr << "size after transfer 1: " << rows.front().bytes << " bytes\n";
  if (increment) {
    std::cerr << "increment per transfer: " << *increment << " bytes (predicted entry "
              << per_entry << ", framing " << (*increment - per_entry) << ")\n";
  }
  std::cerr << "constant overhead over prediction: " << overhead << " bytes\n"
            << "reference (128-byte element backend, informative): 1.248 kB per transfer\n"
            << (ok ? "growth: PASS\n" : "growth: FAIL\n");
  return ok ? 0 : 1;
}

int cmd_bench_verify(const ScenarioConfig& c) {
  auto rows = bench_verify(c.transfers, c.repeats, c.seed);
  if (auto f = open_out(c.out)) write_verify_csv(*f, rows);
  else write_verify_csv(std::cout, rows);

  auto stats = per_index_stats(rows);
  std::vector<double> x, y;
  std::cerr << "index,min_ms,max_ms,mean_ms\n" << std::fixed << std::setprecision(3);
  for (const auto& s : stats) {
    std::cerr << s.index << ',' << s.min_ns / 1e6 << ',' << s.max_ns / 1e6 << ','
              << s.mean_ns / 1e6 << '\n';
    x.push_back(static_cast<double>(s.index));
    y.push_back(s.mean_ns);
  }
  bool ok = false;
  if (x.size() >= 2) {
    auto fit = least_squares(x, y);
    ok = fit.slope > 0 && fit.r_squared >= 0.95;
    std::cerr << "slope: " << fit.slope / 1e6 << " ms per transfer, intercept "
              << fit.intercept / 1e6 << " ms, R^2 " << std::setprecision(4) << fit.r_squared
              << "\n";
  }
  std::cerr << "reference (prior prototype, informative): 165 ms for the first transfer, "
               "4545 ms at 50, +91 ms per transfer\n"
            << (ok ? "verify: PASS\n" : "verify: FAIL\n");
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Transferable offline e-cash: parties, scenarios and benchmarks"};
  app.require_subcommand(1);

  ScenarioConfig config;
  std::string transport = "inproc";
  std::size_t fork_at = 0;
  std::string params_dir = "params";
  std::uint16_t port = 0;
  std::uint16_t ttp_port = 0;
  std::uint16_t bank_port = 0;
  std::string port_file;
  bool duplicate = false;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--seed", config.seed, "Root seed")->capture_default_str();
    cmd->add_option("--out", config.out, "Output path (CSV)");
  };
  auto add_chain = [&](CLI::App* cmd) {
    cmd->add_option("--transfers", config.transfers, "Number of transfers")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
  };

  auto* params = app.add_subcommand("params", "Public parameters");
  params->require_subcommand(1);
  auto* params_init = params->add_subcommand("init", "Generate the CRS and the TTP trapdoor");
  params_init->add_option("--dir", params_dir, "Output directory")->capture_default_str();
  params_init->add_option("--seed", config.seed, "Seed")->capture_default_str();

  auto* ttp = app.add_subcommand("ttp", "Trusted third party");
  ttp->require_subcommand(1);
  auto* ttp_serve = ttp->add_subcommand("serve", "Serve registration and revocation");
  auto* bank = app.add_subcommand("bank", "Bank");
  bank->require_subcommand(1);
  auto* bank_serve = bank->add_subcommand("serve", "Serve withdrawals and deposits");
  for (auto* cmd : {ttp_serve, bank_serve}) {
    cmd->add_option("--params", params_dir, "Parameter directory")->capture_default_str();
    cmd->add_option("--port", port, "Listen port (0 picks one)")->capture_default_str();
    cmd->add_option("--port-file", port_file, "Write the bound port here");
  }
  bank_serve->add_option("--ttp-port", ttp_port, "TTP port")->required();
  bank_serve->add_option("--seed", config.seed, "Bank key seed")->capture_default_str();

  auto* user = app.add_subcommand("user", "Users against running TTP and bank processes");
  user->require_subcommand(1);
  auto* user_run = user->add_subcommand("run", "Withdraw, transfer among local users, deposit");
  add_common(user_run);
  add_chain(user_run);
  user_run->add_option("--ttp-port", ttp_port, "TTP port")->required();
  user_run->add_option("--bank-port", bank_port, "Bank port")->required();
  auto* user_fork = user_run->add_option("--fork-at", fork_at, "Double-spend at this hop");

  auto* scenario = app.add_subcommand("scenario", "Scripted scenarios");
  scenario->require_subcommand(1);
  auto* honest = scenario->add_subcommand("honest", "Honest chain, then deposit");
  auto* ds = scenario->add_subcommand("double-spend", "Fork a chain and deposit both branches");
  CLI::Option* ds_fork = nullptr;
  for (auto* cmd : {honest, ds}) {
    add_common(cmd);
    add_chain(cmd);
    cmd->add_option("--transport", transport, "inproc or socket")
        ->capture_default_str()
        ->check(CLI::IsMember({"inproc", "socket"}));
  }
  ds_fork = ds->add_option("--fork-at", fork_at, "Hop whose holder spends twice (0 = withdrawer)");
  ds->add_flag("--duplicate", duplicate, "Final holder deposits twice instead of forking");

  auto* bench = app.add_subcommand("bench", "Benchmarks");
  bench->require_subcommand(1);
  auto* growth = bench->add_subcommand("growth", "Serialized size per transfer (CSV)");
  auto* verify = bench->add_subcommand("verify", "Verification time per chain length (CSV)");
  for (auto* cmd : {growth, verify}) {
    add_common(cmd);
    add_chain(cmd);
  }
  verify->add_option("--repeats", config.repeats, "Repeats per chain length")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    config.transport = parse_transport(transport);
    if (params_init->parsed()) return cmd_params_init(params_dir, config.seed);
    if (ttp_serve->parsed()) return cmd_ttp_serve(params_dir, port, port_file);
    if (bank_serve->parsed()) {
      return cmd_bank_serve(params_dir, port, port_file, ttp_port, config.seed);
    }
    if (user_run->parsed()) {
      config.remote = RemoteServices{"127.0.0.1", ttp_port, bank_port};
      if (*user_fork) {
        config.fork_at = fork_at;
        return report_scenario(run_double_spend(config), config.out);
      }
      return report_scenario(run_honest(config), config.out);
    }
    if (honest->parsed()) return report_scenario(run_honest(config), config.out);
    if (ds->parsed()) {
      if (duplicate) return report_scenario(run_duplicate_deposit(config), config.out);
      if (!*ds_fork) throw CLI::RequiredError("--fork-at");
      config.fork_at = fork_at;
      return report_scenario(run_double_spend(config), config.out);
    }
    if (growth->parsed()) return cmd_bench_growth(config);
    if (verify->parsed()) return cmd_bench_verify(config);
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
