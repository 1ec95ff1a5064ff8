#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "tkus/miner.hpp"
#include "tkus/qsdb.hpp"

namespace tkus::bench {

struct GenSpec {
  std::size_t num_sequences = 1000;
  std::size_t alphabet_size = 50;
  double avg_itemsets_per_sequence = 5.0;
  double avg_items_per_itemset = 2.0;
  Quantity max_quantity = 5;
  std::uint32_t eu_min = 1;
  std::uint32_t eu_max = 10;
  std::uint64_t seed = 1;

  /// Throws std::invalid_argument naming the first bad field.
  void validate() const;
};

/// Deterministic for a fixed spec. Itemset counts are 1 + Poisson(avg - 1),
/// itemset sizes likewise (capped at the alphabet size) with items drawn
/// uniformly without replacement; quantities uniform in [1, max_quantity];
/// external utilities uniform integers in [eu_min, eu_max] for every item
/// 1..alphabet_size.
Database generate(const GenSpec& spec);

struct DatabaseProfile {
  std::size_t sequences = 0;
  std::size_t distinct_items = 0;
  double avg_itemsets_per_sequence = 0;
  double avg_items_per_itemset = 0;
  std::size_t max_sequence_length = 0;
};

DatabaseProfile profile(const Database& db);

/// One `{1 2}{3} #UTIL: 49` line per pattern.
std::string format_results(const std::vector<PatternUtility>& patterns);
std::vector<PatternUtility> parse_results(std::string_view text);

/// Flat `key=value` lines; insertion order is kept.
class StatsDocument {
 public:
  void set(const std::string& key, const std::string& value);
  const std::string* get(const std::string& key) const;
  /// Throws std::invalid_argument when missing or not a number.
  double number(const std::string& key) const;

  std::string serialize() const;
  static StatsDocument parse(std::string_view text);

 private:
  std::vector<std::pair<std::string, std::string>> fields_;
};

StatsDocument stats_document(const MinerConfig& config, const MiningStats& stats);

class DivisionByZero : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// (candidates_a - candidates_b) / candidates_a. Throws DivisionByZero when
/// candidates_a is 0.
double sssr(double candidates_a, double candidates_b);

/// SSSR of two runs from their stats documents' `candidates` fields.
double compare_runs(const StatsDocument& run_a, const StatsDocument& run_b);

/// Percentage with two decimals, e.g. "7.99%".
std::string format_percent(double ratio);

class ResultMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct BenchRow {
  std::size_t k = 0;
  std::string variant;
  MinerConfig config;
  MiningStats stats;
  /// Against the full run with the same k; 0 for the full run itself.
  double sssr_vs_full = 0;
};

/// Full TKUS plus, when `ablation` is set, the no-SUR, no-TDE and no-EUI
/// variants, for every k. Throws ResultMismatch when any variant disagrees
/// with the full run, std::invalid_argument on an empty k list.
std::vector<BenchRow> run_bench(const Database& db, const std::vector<std::size_t>& k_list,
                                bool ablation = true);

std::string format_bench_table(const std::vector<BenchRow>& rows);

}  // namespace tkus::bench
