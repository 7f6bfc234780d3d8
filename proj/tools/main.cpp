#include <iostream>
#include <vector>

#include <CLI11.hpp>

#include "commands.hpp"

int main(int argc, char** argv) {
  using namespace twoiso::cli;

  RunConfig config;
  std::string format = "text";
  std::optional<int> dim;
  std::vector<double> alpha;

  CLI::App app{"Decide whether rank-one perturbations of 2-isometries are 2-isometries"};
  app.require_subcommand(1);
  app.fallthrough();
  app.option_defaults()->always_capture_default();

  app.add_option("--tol-defect", config.tol.defect, "Threshold for 2-isometry verdicts");
  app.add_option("--tol-rank", config.tol.rank, "Threshold for branch detection");
  app.add_option("-N,--dim", dim, "Truncation degree, or dimension for c2-rankone");
  app.add_option("--seed", config.seed, "Random seed");
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_flag("--allow-non-2iso-base", config.allow_non_2iso_base,
               "Analyze even if the base operator is not a 2-isometry");

  auto* reproduce = app.add_subcommand("reproduce", "Run a built-in example");
  reproduce->add_option("name", config.target,
                        "c2-example | dirichlet-pper | dirichlet-n0 | bidisc | all")
      ->required();
  reproduce->add_option("--alpha", alpha, "alpha as 're im' for dirichlet-n0")->expected(2);

  auto* analyze = app.add_subcommand("analyze", "Analyze an operator + (u, v) JSON document");
  analyze->add_option("input", config.target, "Input JSON path")->required();

  auto* search = app.add_subcommand("search", "Scan parameters for 2-isometric perturbations");
  search->add_option("space", config.target, "dirichlet-alpha | c2-rankone")->required();
  search->add_option("--power", config.power, "Monomial power n for alpha z^n");
  search->add_option("--re-min", config.re_min);
  search->add_option("--re-max", config.re_max);
  search->add_option("--im-min", config.im_min);
  search->add_option("--im-max", config.im_max);
  search->add_option("--step", config.step, "Grid step");
  search->add_option("--trials", config.trials, "Random (T, v) draws for c2-rankone");

  auto* defect = app.add_subcommand("defect", "Evaluate ||x||^2 - 2||Tx||^2 + ||T^2x||^2");
  defect->add_option("input", config.target, "JSON with \"operator\" and \"x\"")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInputError;
  }

  config.command = app.get_subcommands().front()->get_name();
  config.dim = dim;
  config.format = format == "json" ? OutputFormat::Json : OutputFormat::Text;
  if (alpha.size() == 2) config.alpha = {alpha[0], alpha[1]};
  return run(config, std::cout, std::cerr);
}
