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

// Experiment harness behind the command-line tool. Kept CLI-free so the test
// suite can drive the same code paths the binary runs.
//
// Seed schedule: a sweep replicate r uses master seed base + r; within one
// run the master seed fans out through the rng stream tags (target unitary,
// training inputs, per-level corruption, perceptron init, held-out inputs).
// The n = 0 column of a noise sweep therefore reproduces a plain training
// run with the same master seed exactly.

#ifndef RESQNN_TOOLS_EXPERIMENTS_HPP_
#define RESQNN_TOOLS_EXPERIMENTS_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "resqnn/datagen.hpp"
#include "resqnn/network.hpp"
#include "resqnn/training.hpp"

namespace resqnn {
namespace tools {

struct RunConfig {
  std::string spec;            // network spec string
  int pairs = 10;              // N
  int rounds = 250;
  double eta = 1.0 / 1.8;
  double eps = 0.1;
  std::uint64_t seed = 1;      // master seed (replicate r of a sweep uses seed + r)
  int noisy = 0;               // pairs replaced by noise before training
  double p = -1.0;             // >= 0 switches the spec to pmix mode at this p
  std::string out;             // output path prefix; empty writes no files
  std::string eval = "originals";  // originals | heldout
  bool svg = true;             // emit an SVG next to each CSV
};

// "a/b" fractions (the learning rates are quoted that way) or plain decimals.
double parse_eta(const std::string& text);

// Parses cfg.spec and applies the optional pmix override.
NetworkSpec spec_for_run(const RunConfig& cfg);

struct SingleRun {
  CostTrace trace;
  double final_cost = 0.0;  // last trace entry (cost on the training set)
  double eval_cost = 0.0;   // cost on the configured evaluation set
};

// Dataset assembly plus train() plus evaluation, all from one master seed.
SingleRun run_single_training(const NetworkSpec& spec, const RunConfig& cfg,
                              std::uint64_t master_seed);

struct NoiseSweepResult {
  std::vector<int> n_values;
  std::vector<double> cost_res;    // seed-averaged eval cost, residual spec
  std::vector<double> cost_plain;  // same, residual-stripped spec
  std::vector<double> variance;    // cost_res - cost_plain
};

// For n = 0, stride, ... N: corrupt n pairs, train both the residual spec
// and its stripped counterpart on the identical corrupted set, evaluate on
// the good pairs, average over `seeds` replicates.
NoiseSweepResult noise_sweep(const RunConfig& cfg, int stride, int seeds);

struct PSweepRow {
  double p = 0.0;
  double final_cost = 0.0;
  // Seed-averaged first round with cost >= 0.95; a run that never gets
  // there counts as rounds + 1 (sentinel kept numeric so averages stay
  // monotone in convergence speed).
  double rounds_to_095 = 0.0;
};

// Rows: the p = 0 baseline first, then each requested p.
std::vector<PSweepRow> p_sweep(const RunConfig& cfg, const std::vector<double>& p_values,
                               int seeds);

// Figure presets, pinned from the source experiments' captions and exposed
// so tests can run exactly what cmd_repro runs.
struct ConvergencePreset {
  std::string name;
  std::vector<std::string> specs;  // every curve of the figure
  int pairs = 0;
  int rounds = 0;
  double eta = 0.0;
};
struct NoisePreset {
  std::string name;
  std::string spec;
  int pairs = 0;
  int rounds = 0;
  double eta = 0.0;
  int stride = 0;
};
struct PmixPreset {
  std::string name;
  std::vector<std::string> specs;
  std::vector<double> p_values;
  int pairs = 0;
  int rounds = 0;
  double eta = 0.0;
};
const ConvergencePreset* find_convergence_preset(const std::string& name);
const NoisePreset* find_noise_preset(const std::string& name);
const PmixPreset* find_pmix_preset(const std::string& name);

// Command entry points; return process exit codes (0 ok, 1 verification
// failure, 2 usage, 3 numeric violation). Exceptions map to 2/3 in main.
int cmd_train(const RunConfig& cfg);
int cmd_noise_sweep(const RunConfig& cfg, int stride, int seeds);
int cmd_p_sweep(const RunConfig& cfg, const std::vector<double>& p_values, int seeds);
int cmd_gradcheck(const RunConfig& cfg, double delta);
int cmd_repro(const std::string& figure, const RunConfig& overrides);

// The figure preset names cmd_repro accepts.
std::vector<std::string> repro_names();

}  // namespace tools
}  // namespace resqnn

#endif  // RESQNN_TOOLS_EXPERIMENTS_HPP_
