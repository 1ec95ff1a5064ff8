#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>

#include "support.hpp"
#include "tkus/miner.hpp"
#include "tkus/oracle.hpp"
#include "tkus/utility_engine.hpp"

using namespace tkus;
using namespace tkus::testing;

namespace {

struct Recorder : MiningObserver {
  std::vector<Pattern> constructed;
  std::vector<Pattern> expanded;
  std::vector<std::pair<Pattern, Utility>> eui;
  std::vector<std::pair<Pattern, Utility>> tde;
  std::vector<Utility> minutils;

  void on_candidate(const ProjectedDatabase*, const ProjectedDatabase& child, Utility) override {
    constructed.push_back(child.pattern);
  }
  void on_expand(const ProjectedDatabase& node) override { expanded.push_back(node.pattern); }
  void on_pruned(const Pattern& p, Utility bound, PruneReason reason) override {
    (reason == PruneReason::EUI ? eui : tde).emplace_back(p, bound);
  }
  void on_minutil(Utility m) override { minutils.push_back(m); }
};

const ProjectedDatabase& root(const TkusMiner& miner, ItemId item,
                              std::map<ItemId, ProjectedDatabase>& store) {
  store = build_initial_projections(miner.indexed());
  return store.at(item);
}

MinerConfig config_for(std::size_t k) {
  MinerConfig c;
  c.k = k;
  return c;
}

}  // namespace

TEST_CASE("top-k list") {
  CHECK_THROWS_AS(TopKList(0), std::invalid_argument);

  TopKList two(2);
  CHECK(two.update(P({{a}}), 10));
  CHECK(two.minutil() == 0);
  CHECK_FALSE(two.full());

  TopKList list(2);
  list.update(P({{a}}), 10);
  list.update(P({{b}}), 8);
  CHECK(list.minutil() == 8);
  CHECK(list.update(P({{c}}), 9));
  CHECK(list.entries() == std::vector<PatternUtility>{{P({{a}}), 10}, {P({{c}}), 9}});
  CHECK(list.minutil() == 9);

  // Equal utility with a smaller pattern displaces the tie; a larger one does not.
  CHECK(list.update(P({{b}}), 9));
  CHECK(list.entries().back().pattern == P({{b}}));
  CHECK_FALSE(list.update(P({{d}}), 9));
  CHECK_FALSE(list.update(P({{a}}), 3));
  CHECK(list.minutil() == 9);

  TopKList floored(3, 50);
  CHECK_FALSE(floored.update(P({{a}}), 49));
  CHECK(floored.update(P({{a}}), 50));
  CHECK(floored.minutil() == 50);
}

TEST_CASE("SUR on the worked example") {
  const auto db = example_db();
  CHECK(sur_initialize(db, 4).minutil0 == 50);
  CHECK(sur_initialize(db, 1).minutil0 == 75);
  const auto sur = sur_initialize(db, 1);
  CHECK(sur.single_item_utilities.at(a) == 50);
  CHECK(sur.single_item_utilities.at(f) == 15);
  CHECK(sur_initialize(db, 1'000'000).minutil0 == 0);
  CHECK(sur_initialize(Database{}, 1).minutil0 == 0);
}

TEST_CASE("SUR seeds are exact utilities of the right shapes") {
  for (std::uint64_t seed = 600; seed < 660; ++seed) {
    const auto db = random_db(seed);
    const auto seeded = sur_pattern_utilities(db);
    std::set<Pattern> expected;
    for (const auto& p : enumerate_patterns(db, 2)) expected.insert(p);
    for (const auto& seq : db.sequences) {
      Pattern whole;
      for (const auto& set : seq.itemsets) {
        whole.itemsets.emplace_back();
        for (const auto& q : set) whole.itemsets.back().push_back(q.item);
      }
      expected.insert(whole);
    }
    REQUIRE(seeded.size() == expected.size());
    for (const auto& [p, u] : seeded) {
      CHECK(expected.count(p));
      CHECK(u == pattern_utility(p, db));
    }
    const auto sur = sur_initialize(db, 5);
    CHECK(sur.seeded_patterns == seeded.size());
    // The floor never exceeds the true k-th utility.
    const auto truth = topk_bruteforce(db, 5);
    if (truth.entries.size() == 5) CHECK(sur.minutil0 <= truth.threshold);

    const auto capped = sur_pattern_utilities(db, 2);
    for (const auto& [p, u] : capped) CHECK(p.length() <= 2);
  }
}

TEST_CASE("mining the worked example") {
  const auto db = example_db();
  for (std::size_t k : {1u, 4u, 10u, 30u}) {
    const auto got = mine(db, config_for(k));
    CHECK(got.patterns == topk_bruteforce(db, k).entries);
    CHECK(got.stats.candidates >= got.patterns.size());
    CHECK(got.stats.final_minutil >= got.stats.minutil0);
  }
  const auto top1 = mine(db, config_for(1));
  REQUIRE(top1.patterns.size() == 1);
  CHECK(top1.patterns[0].utility >= 75);
  CHECK(mine(db, config_for(4)).stats.minutil0 == 50);

  CHECK_THROWS_AS(mine(db, config_for(0)), std::invalid_argument);

  Database tiny;
  tiny.utable.insert(a, 5);
  tiny.sequences.push_back(QSequence{1, {{{a, 1}}}});
  const auto only = mine(tiny, config_for(5));
  CHECK(only.patterns == std::vector<PatternUtility>{{P({{a}}), 5}});
  CHECK(only.stats.final_minutil == 0);
}

TEST_CASE("TDE stops at a node whose PEU is below minutil") {
  const auto db = example_db();
  Recorder rec;
  TkusMiner miner(db, config_for(4), &rec);
  std::map<ItemId, ProjectedDatabase> store;
  const auto ae = extend_projection(root(miner, a, store), e, ExtensionKind::S, miner.indexed());
  REQUIRE(ae);
  miner.raise_minutil(80);
  CHECK(miner.top_k().minutil() == 80);
  CHECK_FALSE(miner.should_expand(*ae));
  miner.raise_minutil(70);
  CHECK(miner.top_k().minutil() == 80);
  CHECK(rec.minutils == std::vector<Utility>{80});
}

TEST_CASE("EUI discards extensions without building them") {
  const auto db = example_db();
  const Pattern aef = P({{a}, {e}, {f}});

  SUBCASE("minutil 65 discards every child") {
    Recorder rec;
    TkusMiner miner(db, config_for(4), &rec);
    std::map<ItemId, ProjectedDatabase> store;
    const auto ae = extend_projection(root(miner, a, store), e, ExtensionKind::S, miner.indexed());
    miner.raise_minutil(65);
    REQUIRE(miner.should_expand(*ae));
    miner.project_and_mine(*ae);
    CHECK(rec.constructed.empty());
    CHECK(miner.stats().candidates == 0);
    CHECK(miner.stats().pruned_by_eui == 5);
    auto hit = std::find_if(rec.eui.begin(), rec.eui.end(),
                            [&](const auto& x) { return x.first == aef; });
    REQUIRE(hit != rec.eui.end());
    CHECK(hit->second == 13);
  }

  SUBCASE("minutil 60 keeps the RSU-61 children") {
    Recorder rec;
    TkusMiner miner(db, config_for(4), &rec);
    std::map<ItemId, ProjectedDatabase> store;
    const auto ae = extend_projection(root(miner, a, store), e, ExtensionKind::S, miner.indexed());
    miner.raise_minutil(60);
    miner.project_and_mine(*ae);
    REQUIRE(rec.eui.size() == 1);
    CHECK(rec.eui[0] == std::pair<Pattern, Utility>{aef, 13});
    CHECK(std::find(rec.constructed.begin(), rec.constructed.end(), aef) == rec.constructed.end());
    CHECK(std::find(rec.constructed.begin(), rec.constructed.end(), P({{a}, {e}, {b}})) !=
          rec.constructed.end());
  }
}

TEST_CASE("a node without extensions adds no candidates") {
  const auto db = example_db();
  TkusMiner miner(db, config_for(4));
  std::map<ItemId, ProjectedDatabase> store;
  // <{a},{e}> in S1 ends in the last itemset; S1 alone is the whole world here.
  auto ae = extend_projection(root(miner, a, store), e, ExtensionKind::S, miner.indexed());
  ae->lists.resize(1);
  miner.project_and_mine(*ae);
  CHECK(miner.stats().candidates == 0);
}

TEST_CASE("mining properties on random databases") {
  for (std::uint64_t seed = 700; seed < 740; ++seed) {
    const auto db = random_db(seed);
    const auto ranked = rank_all_patterns(db, db.longest_sequence_length());
    std::map<Pattern, Utility> utility_of;
    for (const auto& x : ranked) utility_of.emplace(x.pattern, x.utility);
    for (std::size_t k : {1u, 3u, 5u, 10u}) {
      const auto oracle = take_top(ranked, k);
      Recorder rec;
      const auto full = mine(db, config_for(k), &rec);
      REQUIRE(full.patterns == oracle.entries);

      // minutil starts at the SUR floor and never decreases.
      CHECK(std::is_sorted(rec.minutils.begin(), rec.minutils.end()));
      if (!rec.minutils.empty()) CHECK(rec.minutils.front() >= full.stats.minutil0);
      CHECK(full.stats.final_minutil >= full.stats.minutil0);

      // Everything pruned lies below the final threshold, as do its
      // descendants (a contiguous run in pattern order).
      auto best_below = [&](const Pattern& p, bool include_self) {
        Utility best = 0;
        for (auto it = utility_of.lower_bound(p);
             it != utility_of.end() && is_tree_prefix(p, it->first); ++it)
          if (include_self || it->first != p) best = std::max(best, it->second);
        return best;
      };
      for (const auto& [p, bound] : rec.eui) {
        CHECK(bound < full.stats.final_minutil);
        CHECK(best_below(p, true) < full.stats.final_minutil);
      }
      for (const auto& [p, bound] : rec.tde) CHECK(best_below(p, false) < full.stats.final_minutil);
      CHECK(full.stats.pruned_by_eui == rec.eui.size());
      CHECK(full.stats.pruned_by_tde == rec.tde.size());
      CHECK(full.stats.candidates == rec.constructed.size());
      for (const auto& p : rec.constructed) CHECK(utility_of.count(p) == 1);

      for (int variant = 0; variant < 3; ++variant) {
        auto cfg = config_for(k);
        (variant == 0 ? cfg.enable_sur : variant == 1 ? cfg.enable_tde : cfg.enable_eui) = false;
        const auto other = mine(db, cfg);
        CHECK(other.patterns == full.patterns);
        CHECK(full.stats.candidates <= other.stats.candidates);
      }
    }
  }
}

TEST_CASE("length cap matches the capped oracle") {
  for (std::uint64_t seed = 800; seed < 830; ++seed) {
    const auto db = random_db(seed);
    for (std::size_t cap : {1u, 2u, 3u}) {
      auto cfg = config_for(5);
      cfg.max_pattern_length = cap;
      CHECK(mine(db, cfg).patterns == topk_bruteforce(db, 5, cap).entries);
    }
  }
}

TEST_CASE("output is deterministic") {
  const auto db = random_db(9001, RandomDbLimits{20, 6, 4, 8, 5, 9});
  const auto first = mine(db, config_for(10));
  const auto second = mine(db, config_for(10));
  CHECK(first.patterns == second.patterns);
  CHECK(first.stats.candidates == second.stats.candidates);
}
