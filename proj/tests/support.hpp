#pragma once

// Shared fixtures for the test binaries: the worked-example database, a
// seeded generator of small random databases, and a second brute force that
// works per sequence from raw instances (no pattern enumeration, no
// utility-engine calls).

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <string>

#include "tkus/qsdb.hpp"

#ifndef TKUS_TEST_DATA_DIR
#error "TKUS_TEST_DATA_DIR must be defined"
#endif

namespace tkus::testing {

inline std::string data_path(const std::string& name) {
  return std::string(TKUS_TEST_DATA_DIR) + "/" + name;
}

/// Items a..f are 1..6.
inline Database example_db() {
  return load_database(data_path("example.db"), data_path("example.utable"));
}

enum Item : ItemId { a = 1, b, c, d, e, f };

inline Pattern P(std::vector<std::vector<ItemId>> sets) { return Pattern(std::move(sets)); }

struct RandomDbLimits {
  std::size_t max_sequences = 8;
  std::size_t max_itemsets = 5;
  std::size_t max_items_per_itemset = 4;
  std::size_t max_alphabet = 6;
  Quantity max_quantity = 5;
  std::uint32_t max_utility = 9;
};

/// Deterministic small database; every bound in `limits` is inclusive.
inline Database random_db(std::uint64_t seed, const RandomDbLimits& limits = {}) {
  std::mt19937_64 rng(seed);
  auto uniform = [&](std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
  };
  Database db;
  const auto alphabet = uniform(1, limits.max_alphabet);
  for (ItemId i = 1; i <= alphabet; ++i) db.utable.insert(i, double(uniform(1, limits.max_utility)));
  const auto n = uniform(1, limits.max_sequences);
  for (std::size_t s = 0; s < n; ++s) {
    QSequence seq;
    seq.sid = static_cast<SequenceId>(s + 1);
    const auto itemsets = uniform(1, limits.max_itemsets);
    for (std::size_t j = 0; j < itemsets; ++j) {
      const auto size = uniform(1, std::min(limits.max_items_per_itemset, alphabet));
      std::vector<ItemId> pool;
      for (ItemId i = 1; i <= alphabet; ++i) pool.push_back(i);
      std::shuffle(pool.begin(), pool.end(), rng);
      pool.resize(size);
      std::sort(pool.begin(), pool.end());
      QItemset set;
      for (ItemId i : pool) set.push_back({i, static_cast<Quantity>(uniform(1, limits.max_quantity))});
      seq.itemsets.push_back(std::move(set));
    }
    db.sequences.push_back(std::move(seq));
  }
  return db;
}

namespace detail {

inline void grow_instances(const QSequence& seq, const UtilityTable& ut, std::size_t j,
                           Pattern& current, Utility utility, std::map<Pattern, Utility>& best) {
  for (std::size_t next = j; next < seq.itemsets.size(); ++next) {
    const auto& set = seq.itemsets[next];
    const std::uint32_t subsets = 1u << set.size();
    for (std::uint32_t mask = 1; mask < subsets; ++mask) {
      std::vector<ItemId> chosen;
      Utility add = 0;
      for (std::size_t bit = 0; bit < set.size(); ++bit) {
        if (mask & (1u << bit)) {
          chosen.push_back(set[bit].item);
          add += double(set[bit].quantity) * ut.at(set[bit].item);
        }
      }
      current.itemsets.push_back(std::move(chosen));
      auto [it, inserted] = best.try_emplace(current, utility + add);
      if (!inserted) it->second = std::max(it->second, utility + add);
      grow_instances(seq, ut, next + 1, current, utility + add, best);
      current.itemsets.pop_back();
    }
  }
}

}  // namespace detail

/// u(t) of every contained pattern, from per-sequence instance enumeration.
inline std::map<Pattern, Utility> instance_bruteforce(const Database& db) {
  std::map<Pattern, Utility> total;
  for (const auto& seq : db.sequences) {
    std::map<Pattern, Utility> best;
    Pattern current;
    detail::grow_instances(seq, db.utable, 0, current, 0, best);
    for (const auto& [p, u] : best) total[p] += u;
  }
  return total;
}

/// t is an ancestor-or-self of p in the lexicographic sequence tree.
inline bool is_tree_prefix(const Pattern& t, const Pattern& p) {
  if (t.size() > p.size()) return false;
  for (std::size_t i = 0; i + 1 < t.size(); ++i)
    if (t.itemsets[i] != p.itemsets[i]) return false;
  const auto& last = t.itemsets.back();
  const auto& other = p.itemsets[t.size() - 1];
  return other.size() >= last.size() && std::equal(last.begin(), last.end(), other.begin());
}

}  // namespace tkus::testing
