#pragma once

// Projected databases and their utility chains. A projected database keeps,
// for every q-sequence containing the pattern, one element per extension
// position: (itemset id, best utility ending there, remaining utility after
// the extension item). Children are derived from these lists plus local
// scans of the indexed sequences, never from a full database rescan.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "tkus/qsdb.hpp"

namespace tkus {

/// Dense rank of an item in the ascending alphabet.
using ItemRank = std::uint32_t;

/// A q-sequence flattened itemset-major with per-q-item utilities. Views
/// into storage owned by IndexedDatabase.
struct IndexedSequence {
  SequenceId sid = 0;
  std::span<const ItemRank> ranks;
  std::span<const Utility> utilities;
  /// rest_after[f]: total utility of the q-items after flat index f.
  std::span<const Utility> rest_after;
  /// Itemset j (1-based) spans [itemset_begin[j-1], itemset_begin[j]).
  std::span<const std::uint32_t> itemset_begin;

  std::size_t itemset_count() const { return itemset_begin.size() - 1; }
  /// Flat index of the item in itemset j, or -1.
  std::ptrdiff_t find(std::size_t itemset, ItemRank rank) const;
};

/// Contiguous copy of a database for the search. Not copyable: the sequence
/// views point into its own buffers.
class IndexedDatabase {
 public:
  explicit IndexedDatabase(const Database& db);
  IndexedDatabase(const IndexedDatabase&) = delete;
  IndexedDatabase& operator=(const IndexedDatabase&) = delete;

  const std::vector<IndexedSequence>& sequences() const { return sequences_; }
  /// rank -> item id
  const std::vector<ItemId>& alphabet() const { return alphabet_; }
  std::optional<ItemRank> rank_of(ItemId item) const;
  ItemId item_of(ItemRank rank) const { return alphabet_[rank]; }

 private:
  std::vector<ItemRank> ranks_;
  std::vector<Utility> utilities_;
  std::vector<Utility> rest_after_;
  std::vector<std::uint32_t> bounds_;
  std::vector<IndexedSequence> sequences_;
  std::vector<ItemId> alphabet_;
};

struct UtilityElement {
  std::uint32_t itemset_id = 0;
  Utility utility = 0;
  Utility rest_utility = 0;

  friend bool operator==(const UtilityElement&, const UtilityElement&) = default;
};

struct UtilityList {
  SequenceId sid = 0;
  /// Index into IndexedDatabase::sequences().
  std::uint32_t seq_index = 0;
  /// PEU(t, s), the head-table value for this sequence.
  Utility peu = 0;
  /// View into the owning ProjectedDatabase's element store.
  std::span<const UtilityElement> elements;

  /// u(t, s): the best element utility.
  Utility utility() const;
};

struct ProjectedDatabase {
  Pattern pattern;
  ItemRank last_rank = 0;
  /// u(t) over the database.
  Utility utility = 0;
  Utility peu_total = 0;
  std::vector<UtilityList> lists;
  /// Elements of every list, contiguous and in list order.
  std::vector<UtilityElement> store;

  ProjectedDatabase() = default;
  ProjectedDatabase(const ProjectedDatabase& other);
  ProjectedDatabase& operator=(const ProjectedDatabase& other);
  ProjectedDatabase(ProjectedDatabase&&) noexcept = default;
  ProjectedDatabase& operator=(ProjectedDatabase&&) noexcept = default;

  const UtilityList* list_for(SequenceId sid) const;
};

enum class ExtensionKind { I, S };

/// u_rest: utility of the q-items after `item` in itemset `itemset_index`
/// (later items of that itemset, then every later itemset). Throws
/// UtilityError(ItemAbsent) when the occurrence does not exist.
Utility rest_utility(const QSequence& seq, const UtilityTable& utable, std::size_t itemset_index,
                     ItemId item);

/// Per-element PEU rule: utility + rest, or 0 when nothing follows.
inline Utility element_peu(const UtilityElement& e) {
  return e.rest_utility > 0 ? e.utility + e.rest_utility : 0;
}

/// Projected databases of every 1-sequence, from a single scan.
std::map<ItemId, ProjectedDatabase> build_initial_projections(const IndexedDatabase& idb);

/// Projected database of t (+) item or t (x) item; nullopt when no sequence
/// contains the extension. I-extension items must sort after the pattern's
/// last item.
std::optional<ProjectedDatabase> extend_projection(const ProjectedDatabase& pdb, ItemId item,
                                                   ExtensionKind kind,
                                                   const IndexedDatabase& idb);

inline Utility peu_of(const ProjectedDatabase& pdb) { return pdb.peu_total; }

/// Sum of the parent's per-sequence PEU over the sequences that contain the child.
Utility rsu_of_extension(const ProjectedDatabase& parent, const std::set<SequenceId>& child_sids);

struct ExtensionCandidate {
  ItemId item = 0;
  ItemRank rank = 0;
  Utility rsu = 0;
};

struct ExtensionCandidates {
  std::vector<ExtensionCandidate> i_items;  // ascending item
  std::vector<ExtensionCandidate> s_items;  // ascending item
};

/// One pass over a projected database collecting I- and S-extension items
/// together with their RSU values. Keeps scratch buffers between calls.
class ExtensionScanner {
 public:
  explicit ExtensionScanner(const IndexedDatabase& idb);

  ExtensionCandidates scan(const ProjectedDatabase& pdb);

 private:
  const IndexedDatabase* idb_;
  std::vector<Utility> rsu_i_;
  std::vector<Utility> rsu_s_;
  // seen_*: per-sequence dedupe stamps; listed_*: per-scan membership.
  std::vector<std::uint64_t> seen_i_;
  std::vector<std::uint64_t> seen_s_;
  std::vector<std::uint64_t> listed_i_;
  std::vector<std::uint64_t> listed_s_;
  std::vector<ItemRank> touched_i_;
  std::vector<ItemRank> touched_s_;
  std::uint64_t stamp_ = 0;
  std::uint64_t scan_ = 0;
};

/// `SID=<n> PEU=<v> | (id,util,rest) ...`, one line per utility list.
std::string dump(const ProjectedDatabase& pdb);

/// Approximate heap footprint.
std::size_t footprint_bytes(const ProjectedDatabase& pdb);

}  // namespace tkus
