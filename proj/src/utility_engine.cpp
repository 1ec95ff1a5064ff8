#include "tkus/utility_engine.hpp"

#include <algorithm>
#include <string>

namespace tkus {

namespace {

const QItem* find_q_item(const QItemset& set, ItemId item) {
  auto it = std::lower_bound(set.begin(), set.end(), item,
                             [](const QItem& q, ItemId id) { return q.item < id; });
  return (it != set.end() && it->item == item) ? &*it : nullptr;
}

void collect_positions(const Pattern& pattern, const QSequence& seq, std::size_t depth,
                       std::size_t next_index, Position& current, std::vector<Position>& out) {
  if (depth == pattern.size()) {
    out.push_back(current);
    return;
  }
  // Leave room for the remaining pattern itemsets.
  const std::size_t remaining = pattern.size() - depth - 1;
  for (std::size_t j = next_index; j + remaining <= seq.itemsets.size(); ++j) {
    if (!itemset_contained(pattern.itemsets[depth], seq.itemsets[j - 1])) continue;
    current.push_back(j);
    collect_positions(pattern, seq, depth + 1, j + 1, current, out);
    current.pop_back();
  }
}

}  // namespace

Utility q_item_utility(ItemId item, std::size_t itemset_index, const QSequence& seq,
                       const UtilityTable& utable) {
  if (itemset_index == 0 || itemset_index > seq.itemsets.size()) {
    throw UtilityError(UtilityErrorKind::ItemAbsent,
                       "itemset index " + std::to_string(itemset_index) + " out of range");
  }
  const QItem* q = find_q_item(seq.itemsets[itemset_index - 1], item);
  if (!q) {
    throw UtilityError(UtilityErrorKind::ItemAbsent,
                       "item " + std::to_string(item) + " not in itemset " +
                           std::to_string(itemset_index));
  }
  return static_cast<Utility>(q->quantity) * utable.at(item);
}

Utility itemset_utility(std::span<const ItemId> itemset, std::size_t itemset_index,
                        const QSequence& seq, const UtilityTable& utable) {
  if (itemset_index == 0 || itemset_index > seq.itemsets.size() ||
      !itemset_contained(itemset, seq.itemsets[itemset_index - 1])) {
    throw UtilityError(UtilityErrorKind::NotContained,
                       "itemset not contained at index " + std::to_string(itemset_index));
  }
  Utility total = 0;
  for (ItemId item : itemset) total += q_item_utility(item, itemset_index, seq, utable);
  return total;
}

Utility q_sequence_utility(const QSequence& seq, const UtilityTable& utable) {
  Utility total = 0;
  for (const auto& set : seq.itemsets)
    for (const auto& q : set) total += static_cast<Utility>(q.quantity) * utable.at(q.item);
  return total;
}

Utility database_utility(const Database& db) {
  Utility total = 0;
  for (const auto& seq : db.sequences) total += q_sequence_utility(seq, db.utable);
  return total;
}

bool matches(const Pattern& pattern, const QSequence& seq) {
  if (pattern.size() != seq.itemsets.size()) return false;
  for (std::size_t k = 0; k < pattern.size(); ++k) {
    const auto& want = pattern.itemsets[k];
    const auto& have = seq.itemsets[k];
    if (want.size() != have.size()) return false;
    for (std::size_t i = 0; i < want.size(); ++i)
      if (want[i] != have[i].item) return false;
  }
  return true;
}

bool itemset_contained(std::span<const ItemId> itemset, const QItemset& qitemset) {
  for (ItemId item : itemset)
    if (!find_q_item(qitemset, item)) return false;
  return true;
}

InstanceSet find_instances(const Pattern& pattern, const QSequence& seq) {
  InstanceSet result{pattern, seq.sid, {}};
  if (pattern.empty()) return result;
  Position current;
  collect_positions(pattern, seq, 0, 1, current, result.positions);
  return result;
}

bool contains(const QSequence& seq, const Pattern& pattern) {
  // Greedy leftmost embedding is enough for existence.
  std::size_t j = 0;
  for (const auto& set : pattern.itemsets) {
    while (j < seq.itemsets.size() && !itemset_contained(set, seq.itemsets[j])) ++j;
    if (j == seq.itemsets.size()) return false;
    ++j;
  }
  return true;
}

Utility utility_at_position(const Pattern& pattern, const Position& position, const QSequence& seq,
                            const UtilityTable& utable) {
  const bool well_formed =
      position.size() == pattern.size() && !position.empty() &&
      std::adjacent_find(position.begin(), position.end(), std::greater_equal<>{}) ==
          position.end() &&
      position.front() >= 1 && position.back() <= seq.itemsets.size();
  if (!well_formed) {
    throw UtilityError(UtilityErrorKind::InvalidPosition, "malformed position");
  }
  Utility total = 0;
  for (std::size_t v = 0; v < pattern.size(); ++v) {
    if (!itemset_contained(pattern.itemsets[v], seq.itemsets[position[v] - 1])) {
      throw UtilityError(UtilityErrorKind::InvalidPosition,
                         "pattern itemset " + std::to_string(v + 1) + " not contained at " +
                             std::to_string(position[v]));
    }
    total += itemset_utility(pattern.itemsets[v], position[v], seq, utable);
  }
  return total;
}

std::optional<Utility> pattern_utility_in_sequence(const Pattern& pattern, const QSequence& seq,
                                                   const UtilityTable& utable) {
  const auto instances = find_instances(pattern, seq);
  if (instances.empty()) return std::nullopt;
  Utility best = 0;
  for (const auto& p : instances.positions)
    best = std::max(best, utility_at_position(pattern, p, seq, utable));
  return best;
}

Utility pattern_utility(const Pattern& pattern, const Database& db) {
  Utility total = 0;
  for (const auto& seq : db.sequences)
    if (auto u = pattern_utility_in_sequence(pattern, seq, db.utable)) total += *u;
  return total;
}

}  // namespace tkus
