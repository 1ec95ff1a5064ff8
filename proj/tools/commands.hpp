#pragma once

// Subcommand implementations behind the `tkus` executable. Each returns the
// process exit code and reports to the given streams, so they can be driven
// from tests without spawning processes.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tkus/bench.hpp"
#include "tkus/miner.hpp"

namespace tkus::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kDataError = 2, kInternal = 3 };

struct MineOptions {
  std::string db_path;
  std::string utable_path;
  std::string out_path;
  MinerConfig config;
  /// Only run threshold raising and report minutil0.
  bool sur_only = false;
};

struct OracleOptions {
  std::string db_path;
  std::string utable_path;
  std::string out_path;
  std::size_t k = 10;
  /// 0 selects the longest sequence length.
  std::size_t max_length = 0;
};

struct GenOptions {
  bench::GenSpec spec;
  std::string db_out;
  std::string utable_out;
};

struct BenchOptions {
  std::string db_path;
  std::string utable_path;
  std::vector<std::size_t> k_list;
  bool ablation = true;
};

/// Stats document path written next to a result file.
std::string stats_path_for(const std::string& out_path);

int cmd_mine(const MineOptions& opts, std::ostream& out, std::ostream& err);
int cmd_oracle(const OracleOptions& opts, std::ostream& out, std::ostream& err);
int cmd_gen(const GenOptions& opts, std::ostream& out, std::ostream& err);
int cmd_compare(const std::string& run_a_stats, const std::string& run_b_stats, std::ostream& out,
                std::ostream& err);
int cmd_bench(const BenchOptions& opts, std::ostream& out, std::ostream& err);

}  // namespace tkus::cli
