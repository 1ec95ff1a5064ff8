// Threshold raising before the search: exact utilities of all 1-sequences,
// 2-sequences and whole-q-sequence patterns, from one pass plus in-memory
// aggregation.

#include <algorithm>
#include <functional>
#include <set>
#include <unordered_map>

#include "tkus/miner.hpp"

namespace tkus {

namespace {

enum class PairKind : std::uint64_t { I = 0, S = 1 };

std::uint64_t pair_key(ItemRank a, ItemRank b, PairKind kind) {
  return (static_cast<std::uint64_t>(a) << 33) | (static_cast<std::uint64_t>(b) << 1) |
         static_cast<std::uint64_t>(kind);
}

using RankPattern = std::vector<std::vector<ItemRank>>;

// Best utility of the pattern over its embeddings in seq, or nullopt. Dynamic
// programme over (pattern itemset, sequence itemset).
std::optional<Utility> best_embedding(const RankPattern& pattern, const IndexedSequence& seq) {
  const std::size_t n = seq.itemset_count();
  if (pattern.size() > n) return std::nullopt;
  constexpr Utility kNone = -1;
  std::vector<Utility> prev(n + 1, 0);  // prefix best of the previous row, 0 for the empty prefix
  std::vector<Utility> row(n + 1, kNone);
  bool first = true;
  for (const auto& set : pattern) {
    std::fill(row.begin(), row.end(), kNone);
    for (std::size_t j = 1; j <= n; ++j) {
      const Utility before = first ? 0 : prev[j - 1];
      if (before == kNone) continue;
      Utility sum = 0;
      bool ok = true;
      for (ItemRank r : set) {
        const auto f = seq.find(j, r);
        if (f < 0) {
          ok = false;
          break;
        }
        sum += seq.utilities[f];
      }
      if (ok) row[j] = before + sum;
    }
    // prev[j] := best over itemsets <= j of this row
    Utility running = kNone;
    for (std::size_t j = 0; j <= n; ++j) {
      running = std::max(running, row[j]);
      prev[j] = running;
    }
    first = false;
  }
  if (prev[n] == kNone) return std::nullopt;
  return prev[n];
}

std::vector<std::uint32_t> intersect(const std::vector<std::uint32_t>& a,
                                     const std::vector<std::uint32_t>& b) {
  std::vector<std::uint32_t> out;
  if (a.size() * 16 < b.size()) {
    for (auto x : a)
      if (std::binary_search(b.begin(), b.end(), x)) out.push_back(x);
    return out;
  }
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

std::vector<PatternUtility> sur_pattern_utilities(const Database& db,
                                                  std::optional<std::size_t> max_length) {
  const IndexedDatabase idb(db);
  const auto& seqs = idb.sequences();
  const std::size_t alphabet = idb.alphabet().size();

  std::vector<Utility> single(alphabet, 0);
  std::vector<Utility> local_single(alphabet, 0);
  std::vector<Utility> prefix_best(alphabet, 0);
  std::vector<std::uint32_t> seen(alphabet, 0);
  std::vector<std::uint32_t> in_prefix(alphabet, 0);
  std::unordered_map<std::uint64_t, Utility> pairs;
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> pair_postings;
  std::unordered_map<std::uint64_t, Utility> local_pairs;

  auto bump = [&](std::uint64_t key, Utility value) {
    auto [it, inserted] = local_pairs.try_emplace(key, value);
    if (!inserted) it->second = std::max(it->second, value);
  };

  for (std::uint32_t s = 0; s < seqs.size(); ++s) {
    const auto& seq = seqs[s];
    const std::uint32_t stamp = s + 1;
    std::vector<ItemRank> items_here;
    std::vector<ItemRank> prefix_items;
    local_pairs.clear();
    for (std::size_t j = 1; j <= seq.itemset_count(); ++j) {
      const auto begin = seq.itemset_begin[j - 1];
      const auto end = seq.itemset_begin[j];
      for (auto a = begin; a < end; ++a) {
        const ItemRank ra = seq.ranks[a];
        const Utility ua = seq.utilities[a];
        if (seen[ra] != stamp) {
          seen[ra] = stamp;
          local_single[ra] = 0;
          items_here.push_back(ra);
        }
        local_single[ra] = std::max(local_single[ra], ua);
        for (auto b = a + 1; b < end; ++b)
          bump(pair_key(ra, seq.ranks[b], PairKind::I), ua + seq.utilities[b]);
        for (ItemRank p : prefix_items) bump(pair_key(p, ra, PairKind::S), prefix_best[p] + ua);
      }
      for (auto a = begin; a < end; ++a) {
        const ItemRank ra = seq.ranks[a];
        if (in_prefix[ra] != stamp) {
          in_prefix[ra] = stamp;
          prefix_best[ra] = 0;
          prefix_items.push_back(ra);
        }
        prefix_best[ra] = std::max(prefix_best[ra], seq.utilities[a]);
      }
    }
    for (ItemRank r : items_here) single[r] += local_single[r];
    for (const auto& [key, value] : local_pairs) {
      pairs[key] += value;
      pair_postings[key].push_back(s);
    }
  }

  const auto fits = [&](std::size_t length) { return !max_length || length <= *max_length; };

  std::vector<PatternUtility> out;
  for (ItemRank r = 0; r < alphabet; ++r) {
    if (single[r] > 0 && fits(1)) out.push_back({Pattern::single(idb.item_of(r)), single[r]});
  }
  if (fits(2)) {
    for (const auto& [key, value] : pairs) {
      const auto a = static_cast<ItemRank>(key >> 33);
      const auto b = static_cast<ItemRank>((key >> 1) & 0xFFFFFFFFu);
      const ItemId ia = idb.item_of(a);
      const ItemId ib = idb.item_of(b);
      using Sets = std::vector<std::vector<ItemId>>;
      Pattern p = (key & 1) ? Pattern(Sets{{ia}, {ib}}) : Pattern(Sets{{ia, ib}});
      out.push_back({std::move(p), value});
    }
  }

  // Whole-sequence patterns of length > 2; shorter ones are already exact above.
  std::set<RankPattern> wholes;
  for (const auto& seq : seqs) {
    if (seq.ranks.size() <= 2 || !fits(seq.ranks.size())) continue;
    RankPattern rp;
    for (std::size_t j = 1; j <= seq.itemset_count(); ++j)
      rp.emplace_back(seq.ranks.begin() + seq.itemset_begin[j - 1],
                      seq.ranks.begin() + seq.itemset_begin[j]);
    wholes.insert(std::move(rp));
  }
  // Candidate sequences: intersection of the postings of the pattern's
  // 2-sequences, rarest first, until few enough remain to check directly.
  std::vector<const std::vector<std::uint32_t>*> lists;
  for (const auto& rp : wholes) {
    lists.clear();
    auto consider = [&](std::uint64_t key) { lists.push_back(&pair_postings.at(key)); };
    for (std::size_t i = 0; i < rp.size(); ++i) {
      const auto& set = rp[i];
      for (std::size_t x = 0; x < set.size(); ++x)
        for (std::size_t y = x + 1; y < set.size(); ++y) consider(pair_key(set[x], set[y], PairKind::I));
      if (i + 1 < rp.size())
        for (ItemRank x : set)
          for (ItemRank y : rp[i + 1]) consider(pair_key(x, y, PairKind::S));
    }
    std::sort(lists.begin(), lists.end(), [](auto* x, auto* y) { return x->size() < y->size(); });
    std::vector<std::uint32_t> candidates = *lists.front();
    for (std::size_t i = 1; i < lists.size() && candidates.size() > 2; ++i)
      candidates = intersect(candidates, *lists[i]);
    Utility total = 0;
    for (auto s : candidates)
      if (auto u = best_embedding(rp, seqs[s])) total += *u;
    Pattern p;
    for (const auto& set : rp) {
      std::vector<ItemId> ids;
      for (ItemRank r : set) ids.push_back(idb.item_of(r));
      p.itemsets.push_back(std::move(ids));
    }
    out.push_back({std::move(p), total});
  }
  std::sort(out.begin(), out.end(), ranks_before);
  return out;
}

SurResult sur_initialize(const Database& db, std::size_t k, std::optional<std::size_t> max_length) {
  SurResult result;
  const auto seeded = sur_pattern_utilities(db, max_length);
  result.seeded_patterns = seeded.size();
  if (k >= 1 && seeded.size() >= k) result.minutil0 = seeded[k - 1].utility;
  for (const auto& e : seeded)
    if (e.pattern.length() == 1) result.single_item_utilities[e.pattern.last_item()] = e.utility;
  return result;
}

}  // namespace tkus
