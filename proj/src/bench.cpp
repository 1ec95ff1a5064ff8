#include "tkus/bench.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <random>
#include <set>
#include <sstream>

namespace tkus::bench {

void GenSpec::validate() const {
  if (alphabet_size == 0) throw std::invalid_argument("alphabet_size must be positive");
  if (!(avg_itemsets_per_sequence >= 1.0))
    throw std::invalid_argument("avg_itemsets_per_sequence must be at least 1");
  if (!(avg_items_per_itemset >= 1.0))
    throw std::invalid_argument("avg_items_per_itemset must be at least 1");
  if (max_quantity == 0) throw std::invalid_argument("max_quantity must be positive");
  if (eu_min == 0) throw std::invalid_argument("eu_min must be positive");
  if (eu_min > eu_max) throw std::invalid_argument("eu_min must not exceed eu_max");
}

Database generate(const GenSpec& spec) {
  spec.validate();
  std::mt19937_64 rng(spec.seed);
  Database db;
  std::uniform_int_distribution<std::uint32_t> eu(spec.eu_min, spec.eu_max);
  for (ItemId item = 1; item <= spec.alphabet_size; ++item) db.utable.insert(item, eu(rng));

  auto one_plus_poisson = [&](double avg) -> std::size_t {
    if (avg <= 1.0) return 1;
    std::poisson_distribution<std::size_t> extra(avg - 1.0);
    return 1 + extra(rng);
  };
  std::uniform_int_distribution<ItemId> pick(1, static_cast<ItemId>(spec.alphabet_size));
  std::uniform_int_distribution<Quantity> qty(1, spec.max_quantity);

  db.sequences.reserve(spec.num_sequences);
  for (std::size_t s = 0; s < spec.num_sequences; ++s) {
    QSequence seq;
    seq.sid = static_cast<SequenceId>(s + 1);
    const auto itemsets = one_plus_poisson(spec.avg_itemsets_per_sequence);
    for (std::size_t j = 0; j < itemsets; ++j) {
      const auto size = std::min(one_plus_poisson(spec.avg_items_per_itemset), spec.alphabet_size);
      std::set<ItemId> items;
      while (items.size() < size) items.insert(pick(rng));
      QItemset set;
      for (ItemId item : items) set.push_back({item, qty(rng)});
      seq.itemsets.push_back(std::move(set));
    }
    db.sequences.push_back(std::move(seq));
  }
  return db;
}

DatabaseProfile profile(const Database& db) {
  DatabaseProfile p;
  p.sequences = db.size();
  p.distinct_items = db.alphabet().size();
  std::size_t itemsets = 0;
  std::size_t items = 0;
  for (const auto& seq : db.sequences) {
    itemsets += seq.itemsets.size();
    items += seq.length();
    p.max_sequence_length = std::max(p.max_sequence_length, seq.length());
  }
  if (p.sequences) p.avg_itemsets_per_sequence = double(itemsets) / double(p.sequences);
  if (itemsets) p.avg_items_per_itemset = double(items) / double(itemsets);
  return p;
}

std::string format_results(const std::vector<PatternUtility>& patterns) {
  std::string out;
  for (const auto& e : patterns) {
    out += e.pattern.to_string();
    out += " #UTIL: ";
    out += format_utility(e.utility);
    out += '\n';
  }
  return out;
}

std::vector<PatternUtility> parse_results(std::string_view text) {
  std::vector<PatternUtility> out;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto marker = line.find(" #UTIL: ");
    if (marker == std::string::npos) throw std::invalid_argument("result line lacks #UTIL: " + line);
    out.push_back({parse_pattern(line.substr(0, marker)), std::stod(line.substr(marker + 8))});
  }
  return out;
}

void StatsDocument::set(const std::string& key, const std::string& value) {
  for (auto& [k, v] : fields_) {
    if (k == key) {
      v = value;
      return;
    }
  }
  fields_.emplace_back(key, value);
}

const std::string* StatsDocument::get(const std::string& key) const {
  for (const auto& [k, v] : fields_)
    if (k == key) return &v;
  return nullptr;
}

double StatsDocument::number(const std::string& key) const {
  const auto* v = get(key);
  if (!v) throw std::invalid_argument("stats document has no '" + key + "'");
  double value = 0;
  auto [ptr, ec] = std::from_chars(v->data(), v->data() + v->size(), value);
  if (ec != std::errc{} || ptr != v->data() + v->size())
    throw std::invalid_argument("stats field '" + key + "' is not a number: " + *v);
  return value;
}

std::string StatsDocument::serialize() const {
  std::string out;
  for (const auto& [k, v] : fields_) out += k + '=' + v + '\n';
  return out;
}

StatsDocument StatsDocument::parse(std::string_view text) {
  StatsDocument doc;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("stats line lacks '=': " + line);
    doc.set(line.substr(0, eq), line.substr(eq + 1));
  }
  return doc;
}

StatsDocument stats_document(const MinerConfig& config, const MiningStats& stats) {
  StatsDocument doc;
  auto flag = [](bool b) { return std::string(b ? "true" : "false"); };
  doc.set("k", std::to_string(config.k));
  doc.set("sur", flag(config.enable_sur));
  doc.set("tde", flag(config.enable_tde));
  doc.set("eui", flag(config.enable_eui));
  doc.set("max_len", config.max_pattern_length ? std::to_string(*config.max_pattern_length) : "0");
  doc.set("candidates", std::to_string(stats.candidates));
  doc.set("minutil0", format_utility(stats.minutil0));
  doc.set("final_minutil", format_utility(stats.final_minutil));
  char ms[32];
  std::snprintf(ms, sizeof ms, "%.3f", stats.wall_time_ms);
  doc.set("wall_time_ms", ms);
  doc.set("peak_memory_bytes", std::to_string(stats.peak_memory_bytes));
  doc.set("pruned_by_tde", std::to_string(stats.pruned_by_tde));
  doc.set("pruned_by_eui", std::to_string(stats.pruned_by_eui));
  return doc;
}

double sssr(double candidates_a, double candidates_b) {
  if (candidates_a == 0) throw DivisionByZero("SSSR undefined: first run has zero candidates");
  return (candidates_a - candidates_b) / candidates_a;
}

double compare_runs(const StatsDocument& run_a, const StatsDocument& run_b) {
  return sssr(run_a.number("candidates"), run_b.number("candidates"));
}

std::string format_percent(double ratio) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f%%", ratio * 100.0);
  return buf;
}

std::vector<BenchRow> run_bench(const Database& db, const std::vector<std::size_t>& k_list,
                                bool ablation) {
  if (k_list.empty()) throw std::invalid_argument("k list is empty");
  std::vector<BenchRow> rows;
  for (std::size_t k : k_list) {
    if (k == 0) throw std::invalid_argument("k must be at least 1");
    MinerConfig full;
    full.k = k;
    std::vector<std::pair<std::string, MinerConfig>> variants{{"full", full}};
    if (ablation) {
      MinerConfig no_sur = full, no_tde = full, no_eui = full;
      no_sur.enable_sur = false;
      no_tde.enable_tde = false;
      no_eui.enable_eui = false;
      variants.emplace_back("no-sur", no_sur);
      variants.emplace_back("no-tde", no_tde);
      variants.emplace_back("no-eui", no_eui);
    }
    std::vector<PatternUtility> reference;
    std::uint64_t full_candidates = 0;
    for (const auto& [name, config] : variants) {
      auto result = mine(db, config);
      BenchRow row{k, name, config, result.stats, 0};
      if (name == "full") {
        reference = result.patterns;
        full_candidates = result.stats.candidates;
      } else {
        if (result.patterns != reference) {
          throw ResultMismatch("variant " + name + " disagrees with full TKUS at k=" +
                               std::to_string(k));
        }
        row.sssr_vs_full = sssr(double(result.stats.candidates), double(full_candidates));
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::string format_bench_table(const std::vector<BenchRow>& rows) {
  std::string out;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%6s  %-7s  %12s  %12s  %14s  %14s  %9s\n", "k", "variant",
                "candidates", "time_ms", "peak_mem_bytes", "final_minutil", "sssr");
  out += buf;
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%6zu  %-7s  %12llu  %12.3f  %14zu  %14s  %9s\n", r.k,
                  r.variant.c_str(), static_cast<unsigned long long>(r.stats.candidates),
                  r.stats.wall_time_ms, r.stats.peak_memory_bytes,
                  format_utility(r.stats.final_minutil).c_str(),
                  r.variant == "full" ? "-" : format_percent(r.sssr_vs_full).c_str());
    out += buf;
  }
  return out;
}

}  // namespace tkus::bench
