#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "tkus/oracle.hpp"
#include "tkus/projection.hpp"
#include "tkus/qsdb.hpp"

namespace tkus {

struct MinerConfig {
  std::size_t k = 10;
  bool enable_sur = true;
  bool enable_tde = true;
  bool enable_eui = true;
  /// Longest pattern (in items) to explore; nullopt is unlimited.
  std::optional<std::size_t> max_pattern_length;
};

/// Fixed-capacity list of the best patterns seen so far, in result order
/// (utility descending, pattern ascending). minutil never decreases.
class TopKList {
 public:
  explicit TopKList(std::size_t capacity, Utility floor = 0);

  /// Inserts when utility >= minutil and the entry survives eviction of the
  /// worst element. Returns whether the pattern is in the list afterwards.
  bool update(const Pattern& pattern, Utility utility);

  Utility minutil() const { return minutil_; }
  std::size_t capacity() const { return capacity_; }
  bool full() const { return entries_.size() == capacity_; }
  const std::vector<PatternUtility>& entries() const { return entries_; }

 private:
  std::size_t capacity_;
  Utility minutil_;
  std::vector<PatternUtility> entries_;
};

struct SurResult {
  /// k-th highest utility among the seeded patterns, 0 when there are fewer than k.
  Utility minutil0 = 0;
  /// u(<{i}>) per item.
  std::map<ItemId, Utility> single_item_utilities;
  /// Number of distinct seeded patterns.
  std::size_t seeded_patterns = 0;
};

/// Exact utilities of every contained 1-sequence, 2-sequence (<{i j}> and
/// <{i},{j}>) and whole-q-sequence pattern, each distinct pattern once.
/// Patterns longer than max_length (when given) are left out.
std::vector<PatternUtility> sur_pattern_utilities(
    const Database& db, std::optional<std::size_t> max_length = std::nullopt);

SurResult sur_initialize(const Database& db, std::size_t k,
                         std::optional<std::size_t> max_length = std::nullopt);

struct MiningStats {
  /// Projected databases constructed, the 1-sequence ones included.
  std::uint64_t candidates = 0;
  Utility minutil0 = 0;
  Utility final_minutil = 0;
  double wall_time_ms = 0;
  /// Peak bytes of live projected databases; an estimate.
  std::size_t peak_memory_bytes = 0;
  std::uint64_t pruned_by_tde = 0;
  std::uint64_t pruned_by_eui = 0;
};

struct MiningResult {
  std::vector<PatternUtility> patterns;
  MiningStats stats;
};

enum class PruneReason { TDE, EUI };

/// Hooks into the search, used by tests and diagnostics. Default no-ops.
class MiningObserver {
 public:
  virtual ~MiningObserver() = default;
  /// A projected database was built. parent is null for 1-sequences.
  virtual void on_candidate(const ProjectedDatabase* /*parent*/,
                            const ProjectedDatabase& /*child*/, Utility /*rsu*/) {}
  virtual void on_expand(const ProjectedDatabase& /*node*/) {}
  /// EUI: `pattern` is the discarded extension and `bound` its RSU.
  /// TDE: `pattern` is the node whose descendants are skipped, `bound` its PEU.
  virtual void on_pruned(const Pattern& /*pattern*/, Utility /*bound*/, PruneReason /*reason*/) {}
  virtual void on_minutil(Utility /*minutil*/) {}
};

class TkusMiner {
 public:
  TkusMiner(const Database& db, MinerConfig config, MiningObserver* observer = nullptr);

  MiningResult run();

  // Lower-level entry points, mostly for tests.
  const IndexedDatabase& indexed() const { return idb_; }
  const TopKList& top_k() const { return tklist_; }
  const MiningStats& stats() const { return stats_; }
  /// Sets the working threshold (it can only go up).
  void raise_minutil(Utility value);
  /// TDE test: whether the node's descendants are worth exploring.
  bool should_expand(const ProjectedDatabase& pdb) const;
  /// Grows the subtree under pdb; the caller has already applied TDE.
  void project_and_mine(const ProjectedDatabase& pdb);

 private:
  void track_alloc(std::size_t bytes);
  void update_top_k(const ProjectedDatabase& pdb);

  const Database& db_;
  MinerConfig config_;
  MiningObserver* observer_;
  IndexedDatabase idb_;
  ExtensionScanner scanner_;
  TopKList tklist_;
  MiningStats stats_;
  std::size_t live_bytes_ = 0;
};

/// Runs the complete search. Output is in result order.
MiningResult mine(const Database& db, const MinerConfig& config,
                  MiningObserver* observer = nullptr);

}  // namespace tkus
