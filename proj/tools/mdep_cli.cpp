// mdep: permutation tests of mutual dependence on CSV data.
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "mdep/commands.hpp"
#include "mdep/io.hpp"

namespace {

using nlohmann::json;

std::uint64_t default_budget() {
  if (const char* env = std::getenv("MDEP_BUDGET")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw mdep::Error(mdep::Errc::InvalidArgument, std::string("MDEP_BUDGET is not an integer: ") + env);
    }
  }
  return mdep::CostGuard{}.max_elementary_terms;
}

void add_common(CLI::App* cmd, mdep::RunConfig& cfg, std::optional<std::uint64_t>& budget, bool with_measure) {
  cmd->add_option("--input,-i", cfg.input, "CSV file of numeric columns")->required();
  cmd->add_option("--blocks", cfg.blocks, "block widths \"p1,p2,...\" or \"cols=1-5;6-10\" (default: one per column)");
  if (with_measure) cmd->add_option("--measure,-m", cfg.measure, "statistic, e.g. DCOV_SQ, Q_STAR, S_SYM, hl_tau");
  cmd->add_option("--B", cfg.B, "permutation replicates (default 200 + 5000/n)")->check(CLI::PositiveNumber);
  cmd->add_option("--alpha", cfg.alpha, "significance level echoed in the output")->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--seed", cfg.seed, "seed of the permutation stream");
  cmd->add_option("--budget", budget, "largest term count for complete V-statistics (env MDEP_BUDGET)");
  cmd->add_option("--threads", cfg.threads, "worker threads for permutation replicates");
  cmd->add_flag("--header,!--no-header", cfg.header, "first line holds column names (default: detect)");
}

void check_json_format(const std::string& format) {
  if (format != "json") throw mdep::Error(mdep::Errc::UnsupportedFormat, "this subcommand writes json only");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Permutation tests of mutual dependence between blocks of variables"};
  app.require_subcommand(1);

  mdep::RunConfig run;
  std::optional<std::uint64_t> budget;
  std::string format = "json";

  auto* test = app.add_subcommand("test", "mutual-dependence permutation test");
  add_common(test, run, budget, true);
  test->add_option("--format", format, "json")->check(CLI::IsMember({"json", "csv", "markdown"}));

  auto* pairwise = app.add_subcommand("pairwise", "distance covariance on every block pair, Bonferroni-adjusted");
  add_common(pairwise, run, budget, false);
  pairwise->add_option("--format", format, "json")->check(CLI::IsMember({"json", "csv", "markdown"}));

  mdep::SimulateConfig sim;
  std::optional<std::string> config_path;
  std::string example = "EX1";
  std::string hypothesis = "NULL";
  std::optional<std::string> output;
  std::string sim_format = "csv";
  auto* simulate = app.add_subcommand("simulate", "empirical size/power of permutation tests");
  simulate->add_option("--config", config_path, "JSON file with the settings below (flags override)");
  simulate->add_option("--example", example, "EX1..EX5 or TRIPLET");
  simulate->add_option("--hypothesis", hypothesis, "NULL or ALT");
  simulate->add_option("--n", sim.sizes, "sample sizes")->delimiter(',');
  simulate->add_option("--d", sim.d, "number of blocks");
  simulate->add_option("--q", sim.block_dim, "columns per block");
  simulate->add_option("--rho", sim.rho, "off-diagonal correlation under ALT");
  simulate->add_option("--reps", sim.reps, "repetitions per cell")->check(CLI::PositiveNumber);
  simulate->add_option("--measure,-m", sim.measures, "statistics to compare")->delimiter(',');
  simulate->add_option("--B", sim.B, "permutation replicates (default 200 + 5000/n)")->check(CLI::PositiveNumber);
  simulate->add_option("--alpha", sim.alpha, "rejection level");
  simulate->add_option("--seed", sim.seed, "master seed");
  simulate->add_option("--budget", budget, "largest term count for complete V-statistics (env MDEP_BUDGET)");
  simulate->add_option("--threads", sim.threads, "worker threads across repetitions");
  simulate->add_option("--format", sim_format, "report format")->check(CLI::IsMember({"json", "csv", "markdown"}));
  simulate->add_option("--output,-o", output, "report file (default stdout; the summary then goes to stderr)");

  std::optional<std::string> ff_input;
  auto* demo = app.add_subcommand("demo-ff", "tests on the bundled annual Fama/French factors, 1964-2015");
  demo->add_option("--input,-i", ff_input, "annual-factors file (default: bundled fixture)");
  demo->add_option("--B", run.B, "permutation replicates (default 200 + 5000/n)")->check(CLI::PositiveNumber);
  demo->add_option("--seed", run.seed, "seed of the permutation stream");
  demo->add_option("--budget", budget, "largest term count for complete V-statistics (env MDEP_BUDGET)");
  demo->add_option("--format", format, "json")->check(CLI::IsMember({"json", "csv", "markdown"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cout << json{{"error", "UsageError"}, {"message", e.what()}, {"exit_code", 2}}.dump(2) << '\n';
    return 2;
  }

  try {
    const std::uint64_t limit = budget.value_or(default_budget());
    if (test->parsed()) {
      check_json_format(format);
      run.guard.max_elementary_terms = limit;
      std::cout << mdep::cmd_test(run).dump(2) << '\n';
    } else if (pairwise->parsed()) {
      check_json_format(format);
      run.guard.max_elementary_terms = limit;
      std::cout << mdep::cmd_pairwise(run).dump(2) << '\n';
    } else if (simulate->parsed()) {
      mdep::SimulateConfig cfg = sim;
      if (config_path) {
        json j;
        try {
          j = json::parse(mdep::read_text_file(*config_path));
        } catch (const json::parse_error& e) {
          throw mdep::Error(mdep::Errc::InvalidArgument, std::string("config: ") + e.what());
        }
        cfg = mdep::parse_simulate_config(j);
        // Explicit flags win over the file.
        if (simulate->count("--n")) cfg.sizes = sim.sizes;
        if (simulate->count("--d")) cfg.d = sim.d;
        if (simulate->count("--q")) cfg.block_dim = sim.block_dim;
        if (simulate->count("--rho")) cfg.rho = sim.rho;
        if (simulate->count("--reps")) cfg.reps = sim.reps;
        if (simulate->count("--measure")) cfg.measures = sim.measures;
        if (simulate->count("--B")) cfg.B = sim.B;
        if (simulate->count("--alpha")) cfg.alpha = sim.alpha;
        if (simulate->count("--seed")) cfg.seed = sim.seed;
        if (simulate->count("--threads")) cfg.threads = sim.threads;
        if (!j.contains("budget") || budget) cfg.guard.max_elementary_terms = limit;
      } else {
        cfg.guard.max_elementary_terms = limit;
      }
      if (!config_path || simulate->count("--example")) {
        const auto e = mdep::parse_example(example);
        if (!e) throw mdep::Error(mdep::Errc::InvalidArgument, "unknown example '" + example + "'");
        cfg.example = *e;
      }
      if (!config_path || simulate->count("--hypothesis")) {
        const auto h = mdep::parse_hypothesis(hypothesis);
        if (!h) throw mdep::Error(mdep::Errc::InvalidArgument, "unknown hypothesis '" + hypothesis + "'");
        cfg.hypothesis = *h;
      }
      const auto result = mdep::cmd_simulate(cfg);
      const std::string report = mdep::emit_report(result.report, sim_format);
      if (output) {
        std::ofstream out(*output, std::ios::binary);
        if (!out) throw mdep::Error(mdep::Errc::FileNotFound, "cannot write " + *output);
        out << report;
        json summary = result.summary;
        summary["output"] = *output;
        std::cout << summary.dump(2) << '\n';
      } else {
        std::cout << report;
        std::cerr << result.summary.dump(2) << '\n';
      }
    } else if (demo->parsed()) {
      check_json_format(format);
      const mdep::CostGuard guard{limit};
      const auto path = ff_input ? std::filesystem::path(*ff_input) : mdep::default_ff_path();
      std::cout << mdep::cmd_demo_ff(path, run.B, run.seed, guard).dump(2) << '\n';
    }
  } catch (const mdep::Error& e) {
    std::cout << mdep::error_json(e).dump(2) << '\n';
    return mdep::exit_code(e.code());
  } catch (const std::exception& e) {
    std::cout << json{{"error", "Internal"}, {"message", e.what()}, {"exit_code", 1}}.dump(2) << '\n';
    return 1;
  }
  return 0;
}
