#include "commands.hpp"

#include <chrono>
#include <cstdio>
#include <ostream>

#include "tkus/oracle.hpp"

namespace tkus::cli {

namespace {

// Maps the library's exception types onto exit codes.
template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const bench::ResultMismatch& e) {
    err << "error: " << e.what() << '\n';
    return kInternal;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  } catch (const bench::DivisionByZero& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::logic_error& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  }
}

void require_k(std::size_t k) {
  if (k == 0) throw std::invalid_argument("--k must be at least 1");
}

void print_report(std::ostream& out, const bench::StatsDocument& doc, const std::string& result) {
  if (!result.empty()) out << "result=" << result << '\n';
  out << doc.serialize();
}

}  // namespace

std::string stats_path_for(const std::string& out_path) { return out_path + ".stats"; }

int cmd_mine(const MineOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    require_k(opts.config.k);
    if (!opts.sur_only && opts.out_path.empty()) throw std::invalid_argument("--out is required");
    const auto db = load_database(opts.db_path, opts.utable_path);

    if (opts.sur_only) {
      const auto start = std::chrono::steady_clock::now();
      const auto sur = sur_initialize(db, opts.config.k, opts.config.max_pattern_length);
      const double ms =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      bench::StatsDocument doc;
      doc.set("k", std::to_string(opts.config.k));
      doc.set("minutil0", format_utility(sur.minutil0));
      doc.set("seeded_patterns", std::to_string(sur.seeded_patterns));
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.3f", ms);
      doc.set("wall_time_ms", buf);
      print_report(out, doc, "");
      return int(kOk);
    }

    const auto result = mine(db, opts.config);
    write_file(opts.out_path, bench::format_results(result.patterns));
    const auto doc = bench::stats_document(opts.config, result.stats);
    write_file(stats_path_for(opts.out_path), doc.serialize());
    print_report(out, doc, opts.out_path);
    return int(kOk);
  });
}

int cmd_oracle(const OracleOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    require_k(opts.k);
    if (opts.out_path.empty()) throw std::invalid_argument("--out is required");
    const auto db = load_database(opts.db_path, opts.utable_path);
    const auto start = std::chrono::steady_clock::now();
    const auto result = topk_bruteforce(db, opts.k, opts.max_length);
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    write_file(opts.out_path, bench::format_results(result.entries));

    bench::StatsDocument doc;
    doc.set("k", std::to_string(opts.k));
    doc.set("max_len", std::to_string(opts.max_length ? opts.max_length
                                                      : db.longest_sequence_length()));
    doc.set("patterns", std::to_string(result.entries.size()));
    doc.set("final_minutil", format_utility(result.threshold));
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", ms);
    doc.set("wall_time_ms", buf);
    write_file(stats_path_for(opts.out_path), doc.serialize());
    print_report(out, doc, opts.out_path);
    return int(kOk);
  });
}

int cmd_gen(const GenOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (opts.db_out.empty() || opts.utable_out.empty())
      throw std::invalid_argument("--db and --utable output paths are required");
    const auto db = bench::generate(opts.spec);
    write_file(opts.db_out, serialize_database(db));
    write_file(opts.utable_out, serialize_utility_table(db.utable));
    const auto p = bench::profile(db);
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "sequences=%zu\ndistinct_items=%zu\navg_itemsets_per_sequence=%.4f\n"
                  "avg_items_per_itemset=%.4f\nmax_sequence_length=%zu\n",
                  p.sequences, p.distinct_items, p.avg_itemsets_per_sequence,
                  p.avg_items_per_itemset, p.max_sequence_length);
    out << buf;
    return int(kOk);
  });
}

int cmd_compare(const std::string& run_a_stats, const std::string& run_b_stats, std::ostream& out,
                std::ostream& err) {
  return guarded(err, [&] {
    const auto a = bench::StatsDocument::parse(read_file(run_a_stats));
    const auto b = bench::StatsDocument::parse(read_file(run_b_stats));
    out << bench::format_percent(bench::compare_runs(a, b)) << '\n';
    return int(kOk);
  });
}

int cmd_bench(const BenchOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (opts.k_list.empty()) throw std::invalid_argument("--k needs at least one value");
    for (auto k : opts.k_list) require_k(k);
    const auto db = load_database(opts.db_path, opts.utable_path);
    const auto rows = bench::run_bench(db, opts.k_list, opts.ablation);
    out << bench::format_bench_table(rows);
    return int(kOk);
  });
}

}  // namespace tkus::cli
