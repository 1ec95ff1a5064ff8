#include "tkus/oracle.hpp"

#include <algorithm>
#include <cassert>

#include "tkus/utility_engine.hpp"

namespace tkus {

namespace {

bool contained_somewhere(const Pattern& p, const Database& db) {
  return std::any_of(db.sequences.begin(), db.sequences.end(),
                     [&](const QSequence& s) { return contains(s, p); });
}

// Pre-order walk with S-extensions ahead of I-extensions yields ascending
// pattern order: <{1},{..}> sorts before <{1 2}>.
void walk(const Database& db, const std::vector<ItemId>& alphabet, const Pattern& p,
          std::size_t max_length, const std::function<void(const Pattern&)>& visit) {
  visit(p);
  if (p.length() >= max_length) return;
  for (ItemId item : alphabet) {
    Pattern child = p.s_extend(item);
    if (contained_somewhere(child, db)) walk(db, alphabet, child, max_length, visit);
  }
  for (ItemId item : alphabet) {
    if (item <= p.last_item()) continue;
    Pattern child = p.i_extend(item);
    if (contained_somewhere(child, db)) walk(db, alphabet, child, max_length, visit);
  }
}

// Utility of the q-items after the pivot occurrence of the last item.
Utility rest_at(const QSequence& seq, const UtilityTable& utable, std::size_t itemset, ItemId item) {
  Utility rest = 0;
  for (std::size_t j = itemset; j <= seq.itemsets.size(); ++j)
    for (const auto& q : seq.itemsets[j - 1])
      if (j > itemset || q.item > item) rest += static_cast<Utility>(q.quantity) * utable.at(q.item);
  return rest;
}

}  // namespace

bool ranks_before(const PatternUtility& a, const PatternUtility& b) {
  if (a.utility != b.utility) return a.utility > b.utility;
  return a.pattern < b.pattern;
}

void enumerate_patterns(const Database& db, std::size_t max_length,
                        const std::function<void(const Pattern&)>& visit) {
  if (max_length == 0) return;
  const auto alphabet = db.alphabet();
  for (ItemId item : alphabet) walk(db, alphabet, Pattern::single(item), max_length, visit);
}

std::vector<Pattern> enumerate_patterns(const Database& db, std::size_t max_length) {
  std::vector<Pattern> out;
  enumerate_patterns(db, max_length, [&](const Pattern& p) { out.push_back(p); });
  return out;
}

std::vector<PatternUtility> rank_all_patterns(const Database& db, std::size_t max_length) {
  std::vector<PatternUtility> all;
  enumerate_patterns(db, max_length, [&](const Pattern& p) {
    const Utility u = pattern_utility(p, db);
    assert(u > 0);
    all.push_back({p, u});
  });
  std::sort(all.begin(), all.end(), ranks_before);
  return all;
}

OracleResult take_top(const std::vector<PatternUtility>& ranked, std::size_t k) {
  OracleResult result;
  result.k = k;
  const auto n = std::min(k, ranked.size());
  result.entries.assign(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(n));
  result.threshold = result.entries.empty() ? 0 : result.entries.back().utility;
  return result;
}

OracleResult topk_bruteforce(const Database& db, std::size_t k, std::size_t max_length) {
  if (max_length == 0) max_length = db.longest_sequence_length();
  return take_top(rank_all_patterns(db, max_length), k);
}

Utility swu(const Pattern& pattern, const Database& db) {
  Utility total = 0;
  for (const auto& seq : db.sequences)
    if (contains(seq, pattern)) total += q_sequence_utility(seq, db.utable);
  return total;
}

Utility seu(const Pattern& pattern, const Database& db) {
  Utility total = 0;
  for (const auto& seq : db.sequences) {
    const auto instances = find_instances(pattern, seq);
    if (instances.empty()) continue;
    std::size_t pivot = instances.positions.front().back();
    Utility best = 0;
    for (const auto& p : instances.positions) {
      pivot = std::min(pivot, p.back());
      best = std::max(best, utility_at_position(pattern, p, seq, db.utable));
    }
    total += best + rest_at(seq, db.utable, pivot, pattern.last_item());
  }
  return total;
}

}  // namespace tkus
