#include "tkus/projection.hpp"

#include <algorithm>
#include <cassert>

#include "tkus/utility_engine.hpp"

namespace tkus {

namespace {

// Points each list at its slice of the store; starts[i] is list i's first
// element and the last list runs to the end.
void bind_views(ProjectedDatabase& pdb, const std::vector<std::uint32_t>& starts) {
  for (std::size_t i = 0; i < pdb.lists.size(); ++i) {
    const std::size_t end = i + 1 < starts.size() ? starts[i + 1] : pdb.store.size();
    pdb.lists[i].elements = {pdb.store.data() + starts[i], end - starts[i]};
  }
}

void finalize(ProjectedDatabase& pdb) {
  pdb.utility = 0;
  pdb.peu_total = 0;
  for (auto& list : pdb.lists) {
    Utility peu = 0;
    for (const auto& e : list.elements) peu = std::max(peu, element_peu(e));
    list.peu = peu;
    pdb.peu_total += peu;
    pdb.utility += list.utility();
  }
}

}  // namespace

std::ptrdiff_t IndexedSequence::find(std::size_t itemset, ItemRank rank) const {
  const auto first = ranks.begin() + itemset_begin[itemset - 1];
  const auto last = ranks.begin() + itemset_begin[itemset];
  auto it = std::lower_bound(first, last, rank);
  if (it == last || *it != rank) return -1;
  return it - ranks.begin();
}

IndexedDatabase::IndexedDatabase(const Database& db) : alphabet_(db.alphabet()) {
  std::size_t items = 0;
  std::size_t itemsets = 0;
  for (const auto& seq : db.sequences) {
    items += seq.length();
    itemsets += seq.itemsets.size() + 1;
  }
  ranks_.reserve(items);
  utilities_.reserve(items);
  rest_after_.assign(items, 0);
  bounds_.reserve(itemsets);

  struct Extent {
    std::size_t item_begin, item_end, bound_begin, bound_end;
  };
  std::vector<Extent> extents;
  extents.reserve(db.sequences.size());
  for (const auto& seq : db.sequences) {
    Extent ext{ranks_.size(), 0, bounds_.size(), 0};
    bounds_.push_back(0);
    for (const auto& set : seq.itemsets) {
      for (const auto& q : set) {
        ranks_.push_back(*rank_of(q.item));
        utilities_.push_back(static_cast<Utility>(q.quantity) * db.utable.at(q.item));
      }
      bounds_.push_back(static_cast<std::uint32_t>(ranks_.size() - ext.item_begin));
    }
    ext.item_end = ranks_.size();
    ext.bound_end = bounds_.size();
    Utility suffix = 0;
    for (std::size_t f = ext.item_end; f-- > ext.item_begin;) {
      rest_after_[f] = suffix;
      suffix += utilities_[f];
    }
    extents.push_back(ext);
  }

  sequences_.reserve(db.sequences.size());
  for (std::size_t s = 0; s < extents.size(); ++s) {
    const auto& ext = extents[s];
    const auto n = ext.item_end - ext.item_begin;
    sequences_.push_back(IndexedSequence{
        db.sequences[s].sid,
        {ranks_.data() + ext.item_begin, n},
        {utilities_.data() + ext.item_begin, n},
        {rest_after_.data() + ext.item_begin, n},
        {bounds_.data() + ext.bound_begin, ext.bound_end - ext.bound_begin}});
  }
}

std::optional<ItemRank> IndexedDatabase::rank_of(ItemId item) const {
  auto it = std::lower_bound(alphabet_.begin(), alphabet_.end(), item);
  if (it == alphabet_.end() || *it != item) return std::nullopt;
  return static_cast<ItemRank>(it - alphabet_.begin());
}

Utility UtilityList::utility() const {
  Utility best = 0;
  for (const auto& e : elements) best = std::max(best, e.utility);
  return best;
}

ProjectedDatabase::ProjectedDatabase(const ProjectedDatabase& other)
    : pattern(other.pattern),
      last_rank(other.last_rank),
      utility(other.utility),
      peu_total(other.peu_total),
      lists(other.lists),
      store(other.store) {
  for (auto& list : lists)
    list.elements = {store.data() + (list.elements.data() - other.store.data()), list.elements.size()};
}

ProjectedDatabase& ProjectedDatabase::operator=(const ProjectedDatabase& other) {
  if (this != &other) *this = ProjectedDatabase(other);
  return *this;
}

const UtilityList* ProjectedDatabase::list_for(SequenceId sid) const {
  auto it = std::lower_bound(lists.begin(), lists.end(), sid,
                             [](const UtilityList& l, SequenceId s) { return l.sid < s; });
  return (it != lists.end() && it->sid == sid) ? &*it : nullptr;
}

Utility rest_utility(const QSequence& seq, const UtilityTable& utable, std::size_t itemset_index,
                     ItemId item) {
  // Validates the occurrence.
  q_item_utility(item, itemset_index, seq, utable);
  Utility rest = 0;
  for (const auto& q : seq.itemsets[itemset_index - 1])
    if (q.item > item) rest += static_cast<Utility>(q.quantity) * utable.at(q.item);
  for (std::size_t j = itemset_index; j < seq.itemsets.size(); ++j)
    for (const auto& q : seq.itemsets[j]) rest += static_cast<Utility>(q.quantity) * utable.at(q.item);
  return rest;
}

std::map<ItemId, ProjectedDatabase> build_initial_projections(const IndexedDatabase& idb) {
  std::vector<ProjectedDatabase> by_rank(idb.alphabet().size());
  std::vector<std::vector<std::uint32_t>> starts(by_rank.size());
  for (ItemRank r = 0; r < by_rank.size(); ++r) {
    by_rank[r].pattern = Pattern::single(idb.item_of(r));
    by_rank[r].last_rank = r;
  }
  const auto& seqs = idb.sequences();
  for (std::uint32_t s = 0; s < seqs.size(); ++s) {
    const auto& seq = seqs[s];
    for (std::uint32_t j = 1; j <= seq.itemset_count(); ++j) {
      for (auto f = seq.itemset_begin[j - 1]; f < seq.itemset_begin[j]; ++f) {
        auto& pdb = by_rank[seq.ranks[f]];
        if (pdb.lists.empty() || pdb.lists.back().seq_index != s) {
          pdb.lists.push_back(UtilityList{seq.sid, s, 0, {}});
          starts[seq.ranks[f]].push_back(static_cast<std::uint32_t>(pdb.store.size()));
        }
        pdb.store.push_back({j, seq.utilities[f], seq.rest_after[f]});
      }
    }
  }
  std::map<ItemId, ProjectedDatabase> out;
  for (ItemRank r = 0; r < by_rank.size(); ++r) {
    auto& pdb = by_rank[r];
    bind_views(pdb, starts[r]);
    finalize(pdb);
    out.emplace(pdb.pattern.last_item(), std::move(pdb));
  }
  return out;
}

std::optional<ProjectedDatabase> extend_projection(const ProjectedDatabase& pdb, ItemId item,
                                                   ExtensionKind kind,
                                                   const IndexedDatabase& idb) {
  const auto rank = idb.rank_of(item);
  if (!rank) return std::nullopt;
  if (kind == ExtensionKind::I && *rank <= pdb.last_rank) return std::nullopt;

  ProjectedDatabase child;
  child.pattern = kind == ExtensionKind::I ? pdb.pattern.i_extend(item) : pdb.pattern.s_extend(item);
  child.last_rank = *rank;

  std::vector<std::uint32_t> starts;
  auto& store = child.store;
  for (const auto& list : pdb.lists) {
    const auto& seq = idb.sequences()[list.seq_index];
    const auto first = store.size();
    if (kind == ExtensionKind::I) {
      for (const auto& e : list.elements) {
        const auto f = seq.find(e.itemset_id, *rank);
        if (f < 0) continue;
        store.push_back({e.itemset_id, e.utility + seq.utilities[f], seq.rest_after[f]});
      }
    } else {
      // Best parent utility over extension positions strictly before itemset q.
      std::size_t next = 0;
      Utility best = 0;
      const std::size_t pivot = list.elements.front().itemset_id;
      for (std::size_t q = pivot + 1; q <= seq.itemset_count(); ++q) {
        while (next < list.elements.size() && list.elements[next].itemset_id < q) {
          best = std::max(best, list.elements[next].utility);
          ++next;
        }
        const auto f = seq.find(q, *rank);
        if (f < 0) continue;
        store.push_back({static_cast<std::uint32_t>(q), best + seq.utilities[f], seq.rest_after[f]});
      }
    }
    if (store.size() > first) {
      child.lists.push_back(UtilityList{list.sid, list.seq_index, 0, {}});
      starts.push_back(static_cast<std::uint32_t>(first));
    }
  }
  if (child.lists.empty()) return std::nullopt;
  bind_views(child, starts);
  finalize(child);
  return child;
}

Utility rsu_of_extension(const ProjectedDatabase& parent, const std::set<SequenceId>& child_sids) {
  Utility total = 0;
  for (const auto& list : parent.lists)
    if (child_sids.count(list.sid)) total += list.peu;
  return total;
}

ExtensionScanner::ExtensionScanner(const IndexedDatabase& idb)
    : idb_(&idb),
      rsu_i_(idb.alphabet().size(), 0),
      rsu_s_(idb.alphabet().size(), 0),
      seen_i_(idb.alphabet().size(), 0),
      seen_s_(idb.alphabet().size(), 0),
      listed_i_(idb.alphabet().size(), 0),
      listed_s_(idb.alphabet().size(), 0) {}

ExtensionCandidates ExtensionScanner::scan(const ProjectedDatabase& pdb) {
  touched_i_.clear();
  touched_s_.clear();
  const std::uint64_t scan_id = ++scan_;
  auto add = [&](ItemRank r, Utility peu, std::vector<std::uint64_t>& seen,
                 std::vector<std::uint64_t>& listed, std::vector<Utility>& rsu,
                 std::vector<ItemRank>& touched) {
    if (seen[r] == stamp_) return;
    seen[r] = stamp_;
    if (listed[r] != scan_id) {
      listed[r] = scan_id;
      rsu[r] = 0;
      touched.push_back(r);
    }
    rsu[r] += peu;
  };
  for (const auto& list : pdb.lists) {
    ++stamp_;
    const auto& seq = idb_->sequences()[list.seq_index];
    for (const auto& e : list.elements) {
      const auto f = seq.find(e.itemset_id, pdb.last_rank);
      assert(f >= 0);
      for (auto g = static_cast<std::uint32_t>(f) + 1; g < seq.itemset_begin[e.itemset_id]; ++g)
        add(seq.ranks[g], list.peu, seen_i_, listed_i_, rsu_i_, touched_i_);
    }
    const std::size_t pivot = list.elements.front().itemset_id;
    for (auto g = seq.itemset_begin[pivot]; g < seq.ranks.size(); ++g)
      add(seq.ranks[g], list.peu, seen_s_, listed_s_, rsu_s_, touched_s_);
  }
  ExtensionCandidates out;
  auto harvest = [&](const std::vector<Utility>& rsu, std::vector<ItemRank>& touched,
                     std::vector<ExtensionCandidate>& dest) {
    std::sort(touched.begin(), touched.end());
    dest.reserve(touched.size());
    for (ItemRank r : touched) dest.push_back({idb_->item_of(r), r, rsu[r]});
  };
  harvest(rsu_i_, touched_i_, out.i_items);
  harvest(rsu_s_, touched_s_, out.s_items);
  return out;
}

std::string dump(const ProjectedDatabase& pdb) {
  std::string out;
  for (const auto& list : pdb.lists) {
    out += "SID=" + std::to_string(list.sid) + " PEU=" + format_utility(list.peu) + " |";
    for (const auto& e : list.elements) {
      out += " (" + std::to_string(e.itemset_id) + ',' + format_utility(e.utility) + ',' +
             format_utility(e.rest_utility) + ')';
    }
    out += '\n';
  }
  return out;
}

std::size_t footprint_bytes(const ProjectedDatabase& pdb) {
  std::size_t bytes = sizeof(ProjectedDatabase) + pdb.lists.capacity() * sizeof(UtilityList);
  bytes += pdb.store.capacity() * sizeof(UtilityElement);
  for (const auto& set : pdb.pattern.itemsets) bytes += set.capacity() * sizeof(ItemId);
  return bytes;
}

}  // namespace tkus
