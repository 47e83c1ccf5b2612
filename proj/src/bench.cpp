#include "offline_euro/bench.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <stdexcept>

#include "offline_euro/token.hpp"

namespace offline_euro {

namespace {

struct BuiltHop {
  TransferBundle bundle;
  ReceiverSecret receiver;
};

struct BuiltChain {
  CrsSetup setup;
  KeyPair bank;
  std::vector<BuiltHop> hops;
};

// Withdrawal through the blind protocol, then honest hops between fresh keys.
BuiltChain build_chain(std::size_t transfers, std::uint64_t seed) {
  Rng rng(seed);
  Rng ttp_rng = rng.fork("ttp");
  Rng bank_rng = rng.fork("bank");
  BuiltChain chain{generate_crs(ttp_rng), KeyPair::generate(bank_rng), {}};
  const auto& crs = chain.setup.crs;

  auto request = withdrawal_prepare(rng);
  auto nonce = SignerNonce::generate(bank_rng);
  auto challenge = BlindSession::begin(nonce.commitment(), request.message,
                                       chain.bank.public_key, rng, HashDomain::kWithdrawMessage);
  auto sig = challenge.session.unblind(nonce.respond(challenge.c_prime, chain.bank.secret));
  WalletEntry holding = withdrawn_entry(request, sig);

  for (std::size_t i = 0; i < transfers; ++i) {
    auto spender = KeyPair::generate(rng);
    auto receiver = derive_randomization(crs, rng);
    auto bundle = spend(holding, spender, receiver.elements, crs, rng);
    holding = receive_verify(bundle, receiver, crs, chain.bank.public_key);
    chain.hops.push_back({std::move(bundle), std::move(receiver)});
  }
  return chain;
}

}  // namespace

std::vector<GrowthRow> bench_growth(std::size_t transfers, std::uint64_t seed) {
  auto chain = build_chain(transfers, seed);
  std::vector<GrowthRow> rows;
  for (std::size_t i = 0; i < chain.hops.size(); ++i) {
    rows.push_back({i + 1, chain.hops[i].bundle.euro.to_bytes().size()});
  }
  return rows;
}

std::vector<VerifyRow> bench_verify(std::size_t transfers, std::size_t repeats,
                                    std::uint64_t seed) {
  auto chain = build_chain(transfers, seed);
  const auto& crs = chain.setup.crs;
  std::vector<VerifyRow> rows;
  rows.reserve(transfers * repeats);
  for (std::size_t r = 0; r < repeats; ++r) {
    for (std::size_t i = 0; i < chain.hops.size(); ++i) {
      const auto& hop = chain.hops[i];
      auto start = std::chrono::steady_clock::now();
      auto check = check_transfer(hop.bundle, hop.receiver, crs, chain.bank.public_key);
      auto stop = std::chrono::steady_clock::now();
      if (!check) throw std::logic_error("honest chain rejected: " + check.describe());
      rows.push_back(
          {i + 1, r,
           std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start).count()});
    }
  }
  return rows;
}

LinearFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("need >= 2 points");
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0) throw std::invalid_argument("x values are all equal");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy == 0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return fit;
}

std::vector<IndexStats> per_index_stats(const std::vector<VerifyRow>& rows) {
  std::map<std::size_t, std::vector<double>> by_index;
  for (const auto& r : rows) by_index[r.index].push_back(static_cast<double>(r.nanoseconds));
  std::vector<IndexStats> out;
  for (const auto& [index, values] : by_index) {
    double sum = 0;
    for (double v : values) sum += v;
    out.push_back({index, *std::min_element(values.begin(), values.end()),
                   *std::max_element(values.begin(), values.end()),
                   sum / static_cast<double>(values.size())});
  }
  return out;
}

void write_growth_csv(std::ostream& out, const std::vector<GrowthRow>& rows) {
  out << "index,bytes\n";
  for (const auto& r : rows) out << r.index << ',' << r.bytes << '\n';
}

void write_verify_csv(std::ostream& out, const std::vector<VerifyRow>& rows) {
  out << "index,repeat,nanoseconds\n";
  for (const auto& r : rows) out << r.index << ',' << r.repeat << ',' << r.nanoseconds << '\n';
}

}  // namespace offline_euro
