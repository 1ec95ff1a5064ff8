#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"

using namespace tkus;

namespace {

void add_toggles(CLI::App& cmd, MinerConfig& config, std::size_t& max_len) {
  cmd.add_option("--k", config.k, "Number of patterns to return")->required();
  cmd.add_flag("--no-sur", [&](std::int64_t) { config.enable_sur = false; },
               "Disable threshold raising");
  cmd.add_flag("--no-tde", [&](std::int64_t) { config.enable_tde = false; },
               "Disable subtree pruning by PEU");
  cmd.add_flag("--no-eui", [&](std::int64_t) { config.enable_eui = false; },
               "Disable extension pruning by RSU");
  cmd.add_option("--max-len", max_len, "Longest pattern to explore, 0 for unlimited");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Top-k high-utility sequential pattern mining"};
  app.require_subcommand(1);

  cli::MineOptions mine_opts;
  std::size_t mine_max_len = 0;
  auto* mine_cmd = app.add_subcommand("mine", "Mine the top-k patterns");
  mine_cmd->add_option("--db", mine_opts.db_path, "Sequence database")->required();
  mine_cmd->add_option("--utable", mine_opts.utable_path, "External utility table")->required();
  mine_cmd->add_option("--out", mine_opts.out_path, "Result file; stats go to <out>.stats");
  add_toggles(*mine_cmd, mine_opts.config, mine_max_len);
  mine_cmd->add_flag("--sur-only", mine_opts.sur_only, "Report the initial threshold and stop");

  cli::OracleOptions oracle_opts;
  auto* oracle_cmd = app.add_subcommand("oracle", "Exhaustive top-k for small databases");
  oracle_cmd->add_option("--db", oracle_opts.db_path, "Sequence database")->required();
  oracle_cmd->add_option("--utable", oracle_opts.utable_path, "External utility table")->required();
  oracle_cmd->add_option("--out", oracle_opts.out_path, "Result file")->required();
  oracle_cmd->add_option("--k", oracle_opts.k, "Number of patterns to return")->required();
  oracle_cmd->add_option("--max-len", oracle_opts.max_length,
                         "Longest pattern to enumerate, 0 for the longest sequence");

  cli::GenOptions gen_opts;
  auto& spec = gen_opts.spec;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a synthetic database");
  gen_cmd->add_option("--db", gen_opts.db_out, "Output database file")->required();
  gen_cmd->add_option("--utable", gen_opts.utable_out, "Output utility table")->required();
  gen_cmd->add_option("--sequences", spec.num_sequences, "Number of sequences")
      ->capture_default_str();
  gen_cmd->add_option("--alphabet", spec.alphabet_size, "Distinct items")->capture_default_str();
  gen_cmd->add_option("--avg-itemsets", spec.avg_itemsets_per_sequence,
                      "Mean itemsets per sequence")
      ->capture_default_str();
  gen_cmd->add_option("--avg-items", spec.avg_items_per_itemset, "Mean items per itemset")
      ->capture_default_str();
  gen_cmd->add_option("--max-quantity", spec.max_quantity, "Largest internal quantity")
      ->capture_default_str();
  gen_cmd->add_option("--eu-min", spec.eu_min, "Smallest external utility")->capture_default_str();
  gen_cmd->add_option("--eu-max", spec.eu_max, "Largest external utility")->capture_default_str();
  gen_cmd->add_option("--seed", spec.seed, "Random seed")->capture_default_str();

  std::string stats_a, stats_b;
  auto* compare_cmd = app.add_subcommand("compare", "SSSR of run B against run A");
  compare_cmd->add_option("run_a", stats_a, "Stats document of the baseline run")->required();
  compare_cmd->add_option("run_b", stats_b, "Stats document of the compared run")->required();

  cli::BenchOptions bench_opts;
  bool no_ablation = false;
  auto* bench_cmd = app.add_subcommand("bench", "Full run and pruning ablations per k");
  bench_cmd->add_option("--db", bench_opts.db_path, "Sequence database")->required();
  bench_cmd->add_option("--utable", bench_opts.utable_path, "External utility table")->required();
  bench_cmd->add_option("--k", bench_opts.k_list, "Comma-separated k values")
      ->delimiter(',')
      ->required();
  bench_cmd->add_flag("--no-ablation", no_ablation, "Only run the full configuration");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::kUsage;
  }

  if (*mine_cmd) {
    if (mine_max_len) mine_opts.config.max_pattern_length = mine_max_len;
    return cli::cmd_mine(mine_opts, std::cout, std::cerr);
  }
  if (*oracle_cmd) return cli::cmd_oracle(oracle_opts, std::cout, std::cerr);
  if (*gen_cmd) return cli::cmd_gen(gen_opts, std::cout, std::cerr);
  if (*compare_cmd) return cli::cmd_compare(stats_a, stats_b, std::cout, std::cerr);
  bench_opts.ablation = !no_ablation;
  return cli::cmd_bench(bench_opts, std::cout, std::cerr);
}
