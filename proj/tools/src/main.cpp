/* Copyright 2026 The resqnn Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

// Command-line front end. Exit codes: 0 success, 1 verification failure,
// 2 usage error, 3 numeric invariant violation.

#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "experiments.hpp"
#include "resqnn/qmath.hpp"

namespace {

using resqnn::tools::RunConfig;

// Shared options every subcommand that trains networks understands.
void add_run_options(CLI::App* cmd, RunConfig* cfg, std::string* eta_text) {
  cmd->add_option("--spec", cfg->spec, "network spec, e.g. \"2,3~,2\"");
  cmd->add_option("--pairs", cfg->pairs, "training pairs")->check(CLI::PositiveNumber);
  cmd->add_option("--rounds", cfg->rounds, "training rounds")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--eta", *eta_text, "learning rate, decimal or fraction like 1/1.8");
  cmd->add_option("--eps", cfg->eps, "step size")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", cfg->seed, "master seed");
  cmd->add_option("--out", cfg->out, "output path prefix for CSV/SVG files");
  cmd->add_flag("!--no-svg", cfg->svg, "skip the SVG next to each CSV");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"residual quantum network trainer"};
  app.require_subcommand(1);
  // Fallthrough lets --config appear after the subcommand name; the file
  // itself keeps subcommand options under an INI section, e.g. [train].
  app.fallthrough();
  app.set_config("--config", "",
                 "INI file with options under a [subcommand] section; "
                 "explicit flags win over file values");

  RunConfig cfg;
  std::string eta_text;

  CLI::App* train = app.add_subcommand("train", "train one network and dump its cost curve");
  add_run_options(train, &cfg, &eta_text);
  train->add_option("--noisy", cfg.noisy, "training pairs replaced by noise")
      ->check(CLI::NonNegativeNumber);
  train->add_option("--eval", cfg.eval, "evaluation set")
      ->check(CLI::IsMember({"originals", "heldout"}));
  train->add_option("--p", cfg.p, "mixing probability; switches the network to pmix mode")
      ->check(CLI::Range(0.0, 1.0));

  int stride = 3;
  int seeds = 5;
  CLI::App* sweep = app.add_subcommand(
      "noise-sweep", "train residual and plain variants across noise levels");
  add_run_options(sweep, &cfg, &eta_text);
  sweep->add_option("--stride", stride, "noise level increment")->check(CLI::PositiveNumber);
  sweep->add_option("--seeds", seeds, "replicates per noise level")
      ->check(CLI::PositiveNumber);

  std::vector<double> p_values = {0.3, 0.6, 0.9, 1.0};
  CLI::App* psweep = app.add_subcommand(
      "p-sweep", "train one spec across mixing probabilities (p = 0 baseline included)");
  add_run_options(psweep, &cfg, &eta_text);
  psweep->add_option("--p-values", p_values, "mixing probabilities to sweep")
      ->check(CLI::Range(0.0, 1.0));
  psweep->add_option("--seeds", seeds, "replicates per p")->check(CLI::PositiveNumber);

  double delta = 1e-4;
  CLI::App* gradcheck = app.add_subcommand(
      "gradcheck", "compare update matrices against independent oracles");
  add_run_options(gradcheck, &cfg, &eta_text);
  gradcheck->add_option("--delta", delta, "finite-difference step")
      ->check(CLI::PositiveNumber);

  std::string figure;
  CLI::App* repro = app.add_subcommand("repro", "rerun a canned experiment by name");
  add_run_options(repro, &cfg, &eta_text);
  std::string figure_help = "one of:";
  for (const std::string& name : resqnn::tools::repro_names()) figure_help += " " + name;
  repro->add_option("figure", figure, figure_help)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (!eta_text.empty()) cfg.eta = resqnn::tools::parse_eta(eta_text);
    if (train->parsed()) return resqnn::tools::cmd_train(cfg);
    if (sweep->parsed()) return resqnn::tools::cmd_noise_sweep(cfg, stride, seeds);
    if (psweep->parsed()) return resqnn::tools::cmd_p_sweep(cfg, p_values, seeds);
    if (gradcheck->parsed()) {
      // Oracle comparisons are expensive; a small set is plenty to cross-check.
      if (gradcheck->get_option("--pairs")->count() == 0) cfg.pairs = 2;
      return resqnn::tools::cmd_gradcheck(cfg, delta);
    }
    if (repro->parsed()) return resqnn::tools::cmd_repro(figure, cfg);
  } catch (const resqnn::NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
