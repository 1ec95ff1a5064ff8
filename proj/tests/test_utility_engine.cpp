#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "support.hpp"
#include "tkus/utility_engine.hpp"

using namespace tkus;
using namespace tkus::testing;

namespace {

const QSequence& S(const Database& db, std::size_t i) { return db.sequences.at(i - 1); }

UtilityErrorKind error_of(auto&& fn) {
  try {
    fn();
  } catch (const UtilityError& e) {
    return e.kind();
  }
  FAIL("expected UtilityError");
  return UtilityErrorKind::ItemAbsent;
}

}  // namespace

TEST_CASE("q-item and itemset utilities") {
  const auto db = example_db();
  const auto& ut = db.utable;
  CHECK(q_item_utility(a, 1, S(db, 1), ut) == 10);
  CHECK(q_item_utility(e, 3, S(db, 1), ut) == 9);
  CHECK(q_item_utility(f, 4, S(db, 3), ut) == 5);
  CHECK(q_item_utility(f, 1, S(db, 4), ut) == 10);
  CHECK(error_of([&] { q_item_utility(f, 1, S(db, 1), ut); }) == UtilityErrorKind::ItemAbsent);
  CHECK(error_of([&] { q_item_utility(a, 9, S(db, 1), ut); }) == UtilityErrorKind::ItemAbsent);

  const std::vector<ItemId> ac{a, c};
  const std::vector<ItemId> only_a{a};
  const std::vector<ItemId> bcde{b, c, d, e};
  CHECK(itemset_utility(ac, 2, S(db, 1), ut) == 19);
  CHECK(itemset_utility(only_a, 1, S(db, 1), ut) == 10);
  CHECK(itemset_utility(bcde, 3, S(db, 2), ut) == 28);
  CHECK(error_of([&] { itemset_utility(bcde, 1, S(db, 2), ut); }) ==
        UtilityErrorKind::NotContained);
}

TEST_CASE("q-sequence utilities") {
  const auto db = example_db();
  CHECK(q_sequence_utility(S(db, 1), db.utable) == 48);
  CHECK(q_sequence_utility(S(db, 2), db.utable) == 68);
  CHECK(q_sequence_utility(S(db, 4), db.utable) == 30);
  // The worked example quotes 42 for S3 and 188 for D; the tables give 47 and 193.
  CHECK(q_sequence_utility(S(db, 3), db.utable) == 47);
  CHECK(database_utility(db) == 193);
}

TEST_CASE("match") {
  const auto db = example_db();
  CHECK(matches(P({{a, c}, {a, b, c}, {e}}), S(db, 1)));
  CHECK_FALSE(matches(P({{a}}), S(db, 1)));
  CHECK_FALSE(matches(P({{a, c}, {a, b}, {e}}), S(db, 1)));
}

TEST_CASE("instances") {
  const auto db = example_db();
  const auto ab = find_instances(P({{a}, {b}}), S(db, 2));
  CHECK(ab.sid == 2);
  CHECK(ab.positions == std::vector<Position>{{1, 3}, {1, 4}, {2, 3}, {2, 4}});
  CHECK(find_instances(P({{a}, {e}}), S(db, 2)).positions ==
        std::vector<Position>{{1, 2}, {1, 3}, {2, 3}});
  CHECK(find_instances(P({{f}, {f}}), S(db, 1)).empty());
  CHECK(find_instances(P({{b, c}}), S(db, 1)).positions == std::vector<Position>{{2}});
}

TEST_CASE("utility at a position") {
  const auto db = example_db();
  const auto& ut = db.utable;
  CHECK(utility_at_position(P({{a}, {b, c}}), {1, 2}, S(db, 1), ut) == 18);
  CHECK(utility_at_position(P({{a}, {b}}), {1, 3}, S(db, 2), ut) == 35);
  CHECK(utility_at_position(P({{a}, {b}}), {1, 4}, S(db, 2), ut) == 19);
  CHECK(utility_at_position(P({{a}, {b}}), {2, 3}, S(db, 2), ut) == 25);
  CHECK(utility_at_position(P({{a}, {b}}), {2, 4}, S(db, 2), ut) == 9);
  CHECK(error_of([&] { utility_at_position(P({{a}, {b}}), {3, 4}, S(db, 2), ut); }) ==
        UtilityErrorKind::InvalidPosition);
  CHECK(error_of([&] { utility_at_position(P({{a}, {b}}), {2, 2}, S(db, 2), ut); }) ==
        UtilityErrorKind::InvalidPosition);
  CHECK(error_of([&] { utility_at_position(P({{a}, {b}}), {1}, S(db, 2), ut); }) ==
        UtilityErrorKind::InvalidPosition);
}

TEST_CASE("pattern utility in a sequence and in the database") {
  const auto db = example_db();
  const auto& ut = db.utable;
  CHECK(pattern_utility_in_sequence(P({{a}, {b}}), S(db, 2), ut) == 35);
  CHECK(pattern_utility_in_sequence(P({{a}, {b}}), S(db, 1), ut) == 14);
  CHECK_FALSE(pattern_utility_in_sequence(P({{a}, {b}}), S(db, 4), ut).has_value());
  CHECK(pattern_utility_in_sequence(P({{a}, {e}}), S(db, 3), ut) == 8);

  CHECK(pattern_utility(P({{a}, {b}}), db) == 49);
  CHECK(pattern_utility(P({{a}}), db) == 50);
  CHECK(pattern_utility(P({{a}, {a}}), db) == 75);
  CHECK(pattern_utility(P({{b}}), db) == 36);
  CHECK(pattern_utility(P({{c}}), db) == 10);
  CHECK(pattern_utility(P({{c}, {d}}), db) == 9);
  CHECK(pattern_utility(P({{a, d}}), db) == 39);
  CHECK(pattern_utility(P({{f}, {a, d}, {d}, {a}}), db) == 30);
  CHECK(pattern_utility(P({{a}, {e}}), db) == 56);
  CHECK(pattern_utility(P({{a, d}, {a, e}, {b, c, d, e}, {b, d}}), db) == 68);
  CHECK(pattern_utility(P({{a, f}}), db) == 0);
}

TEST_CASE("definition properties on random databases") {
  for (std::uint64_t seed = 100; seed < 160; ++seed) {
    const auto db = random_db(seed);
    const auto independent = instance_bruteforce(db);
    for (const auto& [pattern, expected] : independent) {
      REQUIRE(pattern_utility(pattern, db) == expected);
      Utility summed = 0;
      for (const auto& seq : db.sequences) {
        const auto inst = find_instances(pattern, seq);
        const auto u = pattern_utility_in_sequence(pattern, seq, db.utable);
        CHECK(inst.empty() == !u.has_value());
        CHECK(contains(seq, pattern) == !inst.empty());
        if (u) {
          Utility best = 0;
          for (const auto& p : inst.positions)
            best = std::max(best, utility_at_position(pattern, p, seq, db.utable));
          CHECK(*u == best);
          summed += *u;
          CHECK(std::is_sorted(inst.positions.begin(), inst.positions.end()));
          // Prefixes stay contained.
          Pattern prefix = pattern;
          while (prefix.length() > 1) {
            if (prefix.itemsets.back().size() > 1)
              prefix.itemsets.back().pop_back();
            else
              prefix.itemsets.pop_back();
            CHECK_FALSE(find_instances(prefix, seq).empty());
          }
        }
      }
      CHECK(summed == expected);
    }
  }
}
