#pragma once

// Exhaustive top-k search and the classical SWU/SEU bounds. Only meant for
// small databases; every utility comes from the definition-level engine.

#include <functional>
#include <utility>
#include <vector>

#include "tkus/qsdb.hpp"

namespace tkus {

struct PatternUtility {
  Pattern pattern;
  Utility utility = 0;

  friend bool operator==(const PatternUtility&, const PatternUtility&) = default;
};

/// Result order: utility descending, then pattern ascending.
bool ranks_before(const PatternUtility& a, const PatternUtility& b);

struct OracleResult {
  std::vector<PatternUtility> entries;
  std::size_t k = 0;
  /// Utility of the last entry, 0 when empty.
  Utility threshold = 0;
};

/// Every distinct pattern of length <= max_length contained in at least one
/// sequence, exactly once, in ascending pattern order.
void enumerate_patterns(const Database& db, std::size_t max_length,
                        const std::function<void(const Pattern&)>& visit);
std::vector<Pattern> enumerate_patterns(const Database& db, std::size_t max_length);

/// All contained patterns with their utilities, in result order.
std::vector<PatternUtility> rank_all_patterns(const Database& db, std::size_t max_length);

/// Top-k by brute force. max_length 0 means the longest sequence length,
/// which makes the search complete.
OracleResult topk_bruteforce(const Database& db, std::size_t k, std::size_t max_length = 0);

/// First k entries of an already ranked list.
OracleResult take_top(const std::vector<PatternUtility>& ranked, std::size_t k);

/// Sum of u(s) over the sequences containing the pattern.
Utility swu(const Pattern& pattern, const Database& db);

/// Sum of u(t, s) + u_rest at the pivot over the sequences containing the pattern.
Utility seu(const Pattern& pattern, const Database& db);

}  // namespace tkus
