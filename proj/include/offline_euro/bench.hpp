#pragma once

#include <cstdint>
#include <ostream>
#include <vector>

namespace offline_euro {

struct GrowthRow {
  std::size_t index;
  std::size_t bytes;
};

/// Serialized euro size after each of `transfers` honest transfers.
std::vector<GrowthRow> bench_growth(std::size_t transfers, std::uint64_t seed);

struct VerifyRow {
  std::size_t index;
  std::size_t repeat;
  std::int64_t nanoseconds;
};

/// Receiver-side verification time for chain lengths 1..transfers. The chain
/// is built once; each repeat re-times every length on one thread with a
/// monotonic clock around the verification call only.
std::vector<VerifyRow> bench_verify(std::size_t transfers, std::size_t repeats,
                                    std::uint64_t seed);

struct LinearFit {
  double slope = 0;
  double intercept = 0;
  double r_squared = 0;
};

/// Ordinary least squares; needs at least two distinct x values.
LinearFit least_squares(const std::vector<double>& x, const std::vector<double>& y);

struct IndexStats {
  std::size_t index;
  double min_ns;
  double max_ns;
  double mean_ns;
};

std::vector<IndexStats> per_index_stats(const std::vector<VerifyRow>& rows);

void write_growth_csv(std::ostream& out, const std::vector<GrowthRow>& rows);
void write_verify_csv(std::ostream& out, const std::vector<VerifyRow>& rows);

}  // namespace offline_euro
