#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "causet/cli.hpp"

int main(int argc, char** argv) {
  using namespace causet::cli;

  CLI::App app{"Causal-set toolkit: sprinkle, grow, validate and analyze causets"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  SprinkleOptions sprinkle;
  auto* sp = app.add_subcommand("sprinkle", "Poisson-sprinkle a Minkowski region given as JSON");
  sp->add_option("region", sprinkle.region_path, "Region JSON file")->required();
  sp->add_option("--density", sprinkle.density, "Sprinkling density (elements per unit volume)");
  sp->add_option("--seed", sprinkle.seed, "64-bit RNG seed");
  sp->add_option("--out", sprinkle.out, "Output causet JSON")->required();

  GrowOptions grow;
  std::uint64_t grow_seed = 0;
  std::string grow_log;
  auto* gr = app.add_subcommand("grow", "Grow a causet from a substratum of emitters and absorbers");
  gr->add_option("config", grow.config_path, "Growth config JSON file")->required();
  auto* seed_opt = gr->add_option("--seed", grow_seed, "64-bit RNG seed (overrides the config)");
  gr->add_option("--out", grow.out, "Output causet JSON")->required();
  auto* log_opt = gr->add_option("--log", grow_log, "Transaction log (JSON lines)");

  std::string validate_path;
  auto* va = app.add_subcommand("validate", "Check the causal-set axioms of a causet JSON file");
  va->add_option("causet", validate_path, "Causet JSON file")->required();

  AnalyzeOptions analyze;
  std::string dot_path;
  auto* an = app.add_subcommand("analyze", "Print causet statistics and optionally a Hasse-diagram DOT file");
  an->add_option("causet", analyze.path, "Causet JSON file")->required();
  auto* dot_opt = an->add_option("--dot", dot_path, "Write the Hasse diagram as DOT");
  an->add_flag("--stats", analyze.stats, "Print statistics as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitBadInput;
  }

  if (sp->parsed()) return cmd_sprinkle(sprinkle, std::cout, std::cerr);
  if (gr->parsed()) {
    if (seed_opt->count() > 0) grow.seed = grow_seed;
    if (log_opt->count() > 0) grow.log = grow_log;
    return cmd_grow(grow, std::cout, std::cerr);
  }
  if (va->parsed()) return cmd_validate(validate_path, std::cout, std::cerr);
  if (dot_opt->count() > 0) analyze.dot = dot_path;
  return cmd_analyze(analyze, std::cout, std::cerr);
}
