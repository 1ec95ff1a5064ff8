#include "tkus/miner.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

namespace tkus {

TopKList::TopKList(std::size_t capacity, Utility floor) : capacity_(capacity), minutil_(floor) {
  if (capacity == 0) throw std::invalid_argument("top-k capacity must be at least 1");
  entries_.reserve(capacity + 1);
}

bool TopKList::update(const Pattern& pattern, Utility utility) {
  if (utility < minutil_) return false;
  PatternUtility entry{pattern, utility};
  auto pos = std::upper_bound(entries_.begin(), entries_.end(), entry, ranks_before);
  const bool lands_last = pos == entries_.end();
  entries_.insert(pos, std::move(entry));
  bool kept = true;
  if (entries_.size() > capacity_) {
    entries_.pop_back();
    kept = !lands_last;
  }
  if (full()) minutil_ = std::max(minutil_, entries_.back().utility);
  return kept;
}

TkusMiner::TkusMiner(const Database& db, MinerConfig config, MiningObserver* observer)
    : db_(db),
      config_(config),
      observer_(observer),
      idb_(db),
      scanner_(idb_),
      tklist_(config.k) {}

void TkusMiner::raise_minutil(Utility value) {
  if (value <= tklist_.minutil()) return;
  // Rebuild around the new floor, keeping entries that still qualify.
  TopKList next(config_.k, value);
  for (const auto& e : tklist_.entries()) next.update(e.pattern, e.utility);
  tklist_ = std::move(next);
  if (observer_) observer_->on_minutil(tklist_.minutil());
}

bool TkusMiner::should_expand(const ProjectedDatabase& pdb) const {
  return !config_.enable_tde || pdb.peu_total >= tklist_.minutil();
}

void TkusMiner::track_alloc(std::size_t bytes) {
  live_bytes_ += bytes;
  stats_.peak_memory_bytes = std::max(stats_.peak_memory_bytes, live_bytes_);
}

void TkusMiner::update_top_k(const ProjectedDatabase& pdb) {
  if (pdb.utility < tklist_.minutil()) return;
  const Utility before = tklist_.minutil();
  tklist_.update(pdb.pattern, pdb.utility);
  if (observer_ && tklist_.minutil() != before) observer_->on_minutil(tklist_.minutil());
}

void TkusMiner::project_and_mine(const ProjectedDatabase& pdb) {
  if (observer_) observer_->on_expand(pdb);
  if (config_.max_pattern_length && pdb.pattern.length() >= *config_.max_pattern_length) return;

  const auto candidates = scanner_.scan(pdb);
  std::vector<ProjectedDatabase> seqlist;
  std::size_t held = 0;

  auto grow = [&](const std::vector<ExtensionCandidate>& items, ExtensionKind kind) {
    for (const auto& c : items) {
      if (config_.enable_eui && c.rsu < tklist_.minutil()) {
        ++stats_.pruned_by_eui;
        if (observer_) {
          observer_->on_pruned(kind == ExtensionKind::I ? pdb.pattern.i_extend(c.item)
                                                        : pdb.pattern.s_extend(c.item),
                               c.rsu, PruneReason::EUI);
        }
        continue;
      }
      auto child = extend_projection(pdb, c.item, kind, idb_);
      if (!child) continue;  // unreachable: scanned candidates always occur
      ++stats_.candidates;
      const auto bytes = footprint_bytes(*child);
      held += bytes;
      track_alloc(bytes);
      if (observer_) observer_->on_candidate(&pdb, *child, c.rsu);
      update_top_k(*child);
      seqlist.push_back(std::move(*child));
    }
  };
  grow(candidates.i_items, ExtensionKind::I);
  grow(candidates.s_items, ExtensionKind::S);

  std::sort(seqlist.begin(), seqlist.end(),
            [](const ProjectedDatabase& a, const ProjectedDatabase& b) {
              if (a.peu_total != b.peu_total) return a.peu_total > b.peu_total;
              return a.pattern < b.pattern;
            });
  for (const auto& child : seqlist) {
    if (should_expand(child)) {
      project_and_mine(child);
    } else {
      ++stats_.pruned_by_tde;
      if (observer_) observer_->on_pruned(child.pattern, child.peu_total, PruneReason::TDE);
    }
  }
  live_bytes_ -= held;
}

MiningResult TkusMiner::run() {
  const auto start = std::chrono::steady_clock::now();
  if (config_.enable_sur) {
    const auto sur = sur_initialize(db_, config_.k, config_.max_pattern_length);
    stats_.minutil0 = sur.minutil0;
    raise_minutil(sur.minutil0);
  }

  auto roots = build_initial_projections(idb_);
  for (const auto& [item, pdb] : roots) {
    ++stats_.candidates;
    track_alloc(footprint_bytes(pdb));
    if (observer_) observer_->on_candidate(nullptr, pdb, pdb.peu_total);
  }
  for (const auto& [item, pdb] : roots) update_top_k(pdb);
  for (const auto& [item, pdb] : roots) {
    if (should_expand(pdb)) {
      project_and_mine(pdb);
    } else {
      ++stats_.pruned_by_tde;
      if (observer_) observer_->on_pruned(pdb.pattern, pdb.peu_total, PruneReason::TDE);
    }
  }

  stats_.final_minutil = tklist_.minutil();
  stats_.wall_time_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return {tklist_.entries(), stats_};
}

MiningResult mine(const Database& db, const MinerConfig& config, MiningObserver* observer) {
  if (config.k == 0) throw std::invalid_argument("k must be at least 1");
  return TkusMiner(db, config, observer).run();
}

}  // namespace tkus
