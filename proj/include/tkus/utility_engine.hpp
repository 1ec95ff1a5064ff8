#pragma once

// Direct, definition-level utility semantics. Everything here enumerates
// instances explicitly and is the ground truth that the projection-based
// miner is checked against. Itemset indices are 1-based throughout.

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "tkus/qsdb.hpp"

namespace tkus {

enum class UtilityErrorKind { ItemAbsent, NotContained, InvalidPosition };

class UtilityError : public std::logic_error {
 public:
  UtilityError(UtilityErrorKind kind, const std::string& what)
      : std::logic_error(what), kind_(kind) {}
  UtilityErrorKind kind() const noexcept { return kind_; }

 private:
  UtilityErrorKind kind_;
};

/// All positions of a pattern in one q-sequence, lexicographically ordered.
struct InstanceSet {
  Pattern pattern;
  SequenceId sid = 0;
  std::vector<Position> positions;

  bool empty() const { return positions.empty(); }
};

/// q(i, j, s) * eu(i). Throws ItemAbsent.
Utility q_item_utility(ItemId item, std::size_t itemset_index, const QSequence& seq,
                       const UtilityTable& utable);

/// Sum of member utilities; throws NotContained unless every item is present.
Utility itemset_utility(std::span<const ItemId> itemset, std::size_t itemset_index,
                        const QSequence& seq, const UtilityTable& utable);

Utility q_sequence_utility(const QSequence& seq, const UtilityTable& utable);
Utility database_utility(const Database& db);

/// Same number of itemsets and each itemset equals the q-itemset's item set.
bool matches(const Pattern& pattern, const QSequence& seq);

/// Subset test of an ascending id list against a q-itemset.
bool itemset_contained(std::span<const ItemId> itemset, const QItemset& qitemset);

InstanceSet find_instances(const Pattern& pattern, const QSequence& seq);

bool contains(const QSequence& seq, const Pattern& pattern);

/// u(t, p, s). Throws InvalidPosition when p is not an instance of t.
Utility utility_at_position(const Pattern& pattern, const Position& position, const QSequence& seq,
                            const UtilityTable& utable);

/// u(t, s): maximum over instances, std::nullopt when s does not contain t.
std::optional<Utility> pattern_utility_in_sequence(const Pattern& pattern, const QSequence& seq,
                                                   const UtilityTable& utable);

/// u(t): sum of u(t, s) over the containing sequences.
Utility pattern_utility(const Pattern& pattern, const Database& db);

}  // namespace tkus
