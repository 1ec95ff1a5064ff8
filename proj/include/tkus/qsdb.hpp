#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tkus {

using ItemId = std::uint32_t;
using Quantity = std::uint32_t;
using SequenceId = std::uint32_t;

// Utilities are integer-valued on all bundled fixtures; a double keeps
// decimal external utilities exact enough while integer sums stay exact
// up to 2^53.
using Utility = double;

struct QItem {
  ItemId item = 0;
  Quantity quantity = 1;

  friend bool operator==(const QItem&, const QItem&) = default;
};

/// Items strictly ascending by id.
using QItemset = std::vector<QItem>;

struct QSequence {
  SequenceId sid = 0;
  std::vector<QItemset> itemsets;

  /// Total number of q-items.
  std::size_t length() const;

  friend bool operator==(const QSequence&, const QSequence&) = default;
};

class UtilityTable {
 public:
  UtilityTable() = default;

  /// Returns false when the item already has an entry.
  bool insert(ItemId item, Utility external_utility);

  bool contains(ItemId item) const { return table_.count(item) != 0; }
  Utility at(ItemId item) const;
  std::size_t size() const { return table_.size(); }
  bool empty() const { return table_.empty(); }

  const std::map<ItemId, Utility>& entries() const { return table_; }

  friend bool operator==(const UtilityTable&, const UtilityTable&) = default;

 private:
  std::map<ItemId, Utility> table_;
};

struct Database {
  std::vector<QSequence> sequences;
  UtilityTable utable;

  std::size_t size() const { return sequences.size(); }
  bool empty() const { return sequences.empty(); }

  /// Sorted distinct items occurring in some sequence.
  std::vector<ItemId> alphabet() const;

  /// Length (item count) of the longest q-sequence; 0 for an empty database.
  std::size_t longest_sequence_length() const;

  /// Sequence with the given sid, or nullptr.
  const QSequence* find(SequenceId sid) const;

  friend bool operator==(const Database&, const Database&) = default;
};

/// A sequence of itemsets without quantities. Ordering is lexicographic over
/// itemsets, each itemset compared as an ascending id list, so a proper prefix
/// sorts first: <{1},{1}> < <{1 2}>.
struct Pattern {
  std::vector<std::vector<ItemId>> itemsets;

  Pattern() = default;
  explicit Pattern(std::vector<std::vector<ItemId>> sets) : itemsets(std::move(sets)) {}

  static Pattern single(ItemId item) { return Pattern(std::vector<std::vector<ItemId>>{{item}}); }

  /// Number of items (the l in "l-sequence").
  std::size_t length() const;
  std::size_t size() const { return itemsets.size(); }
  bool empty() const { return itemsets.empty(); }
  ItemId last_item() const { return itemsets.back().back(); }

  /// Appends the item to the last itemset.
  Pattern i_extend(ItemId item) const;
  /// Appends {item} as a new trailing itemset.
  Pattern s_extend(ItemId item) const;

  /// Non-empty itemsets, each strictly ascending.
  bool is_valid() const;

  /// `{1 3}{2}` rendering used by result files.
  std::string to_string() const;

  friend auto operator<=>(const Pattern&, const Pattern&) = default;
  friend bool operator==(const Pattern&, const Pattern&) = default;
};

/// Parses the `{1 3}{2}` rendering. Throws std::invalid_argument.
Pattern parse_pattern(std::string_view text);

/// 1-based itemset indices of an instance, strictly increasing.
using Position = std::vector<std::size_t>;

enum class ParseErrorKind {
  DuplicateItem,
  NonPositiveUtility,
  MalformedLine,
  UnknownItem,
  MalformedToken,
  EmptyItemset,
  MissingTerminator,
};

std::string_view to_string(ParseErrorKind kind);

class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrorKind kind, std::size_t line, const std::string& detail);

  ParseErrorKind kind() const noexcept { return kind_; }
  /// 1-based line number of the offending line.
  std::size_t line() const noexcept { return line_; }

 private:
  ParseErrorKind kind_;
  std::size_t line_;
};

// Utility table: `<item-id> <external-utility>` per line, whitespace
// separated, `#` starts a comment line.
UtilityTable parse_utility_table(std::string_view text);
std::string serialize_utility_table(const UtilityTable& utable);

// Database: one q-sequence per line, `item:quantity` tokens, itemsets closed
// by `-1`, sequence closed by `-2`. Sids are assigned 1..n in line order;
// blank and `#` lines are skipped.
Database parse_database(std::string_view text, const UtilityTable& utable);
std::string serialize_database(const Database& db);

UtilityTable load_utility_table(const std::string& path);
Database load_database(const std::string& db_path, const std::string& utable_path);

/// Integral values without a decimal point, others with up to six decimals.
std::string format_utility(Utility value);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace tkus
