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

#ifndef RESQNN_NETWORK_HPP_
#define RESQNN_NETWORK_HPP_

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "resqnn/qmath.hpp"
#include "resqnn/rng.hpp"

namespace resqnn {

// The network is a chain of "stages": stage k (1-based, k = 1..L+1) is the
// boundary where the state enters layer k; stage L+2 is the terminal (the
// network output). Applying layer k moves a state of width m_{k-1} qubits to
// width m_k. A residual edge (t, s) additionally feeds the state that entered
// stage s into stage t: zero-padded with trailing qubits for t <= L+1, or
// reduced by a partial trace over trailing qubits for the output-residual
// target t = L+2.
struct ResidualEdge {
  int target = 0;  // stage receiving the additive copy, 2..L+2
  int source = 0;  // stage the copy is taken from, 1..L+1

  friend bool operator==(const ResidualEdge&, const ResidualEdge&) = default;
};

enum class Mode {
  kStandard,  // branches added as-is; output trace = path count
  kPMix,      // convex combination: p * bypass + (1-p) * layer output
};

struct NetworkSpec {
  std::vector<int> widths;  // qubit counts m_0..m_{L+1}
  std::vector<ResidualEdge> residual_edges;
  Mode mode = Mode::kStandard;
  double p = 0.0;  // pmix parameter, meaningful only in kPMix mode

  int hidden_layers() const { return static_cast<int>(widths.size()) - 2; }
  int layer_count() const { return static_cast<int>(widths.size()) - 1; }
  // Width (qubits) of the state entering stage k, k = 1..L+2.
  int stage_width(int stage) const { return widths.at(stage - 1); }

  // Edge whose additive copy lands at stage t, if any.
  std::optional<ResidualEdge> edge_into(int target) const;
  // Edge leaving stage s (s is then "residual-equipped"), if any.
  std::optional<ResidualEdge> edge_from(int source) const;

  // Weight of the applied-layer branch at stage k: (1-p) when stage k is
  // residual-equipped in pmix mode, otherwise 1.
  double apply_weight(int stage) const;
  // Weight of the bypass branch of an edge leaving `stage`: p in pmix mode,
  // otherwise 1.
  double jump_weight(int stage) const;

  // Same widths, no residual edges, standard mode (the plain-QNN baseline
  // used by noise sweeps).
  NetworkSpec stripped() const;

  // Throws std::invalid_argument on any structural violation.
  void validate() const;
};

// Grammar: comma-separated width tokens, each optionally suffixed
//   ~  residual wrapping this layer l: edge (l+1, l); on the output layer
//      the edge targets the terminal (output residual).
//   ^  layer skipped as a residual source: shifts the source of the next
//      `~` edge back past this layer. Hats must immediately precede the
//      wrapped layer.
// followed by an optional ';p=<real>' selecting pmix mode.
// Examples: "2,3~,2" -> edges [(2,1)]; "2,3^,3~,2" -> [(3,1)];
// "1,2~,1~" -> [(2,1),(3,2)] with (3,2) the output residual.
NetworkSpec parse_spec(const std::string& text);

// Per-layer perceptron unitaries. layers[l-1][j-1] is U_j^l, acting on the
// m_{l-1} input qubits (leading) plus output qubit j (trailing); dimension
// 2^{m_{l-1}+1}. Layer application order is U^l = U_{m_l}^l ... U_1^l
// (j = 1 applied first).
struct PerceptronSet {
  std::vector<std::vector<CMatrix>> layers;

  static PerceptronSet random_init(const NetworkSpec& spec, Rng& rng);
  const CMatrix& unit(int l, int j) const { return layers.at(l - 1).at(j - 1); }
};

// One end-to-end route through the residual DAG.
struct Path {
  std::vector<int> applied;  // layers applied, ascending
  struct Hop {
    ResidualEdge edge;
    // Zero-padding width in qubits added when traversing the edge; negative
    // for the output-residual trace-down (qubits removed).
    int pad_qubits = 0;
  };
  std::vector<Hop> hops;  // residual edges traversed, in traversal order
  double weight = 1.0;    // pmix branch weight; 1 in standard mode
};

struct PathDag {
  std::vector<Path> paths;
  int path_count() const { return static_cast<int>(paths.size()); }
};

// All stage-1-to-terminal routes, in apply-first depth-first order (the
// all-layers path comes first).
PathDag enumerate_paths(const NetworkSpec& spec);

// Branch weight of a route given by its applied-layer list, walking the
// stage choices up to (but not including) `up_to_stage`. 1 in standard mode.
double path_weight(const std::vector<int>& applied, const NetworkSpec& spec,
                   int up_to_stage);

// tr_{l-1}( U^l (rho_in ⊗ |0...0><0...0|) U^{l dagger} ): the dissipative
// layer map. Widths are inferred from the perceptron dimensions.
CMatrix layer_channel(const CMatrix& rho_in, int l, const PerceptronSet& perceptrons);

// One branch of the propagation front. `state` is the (trace-1) operator
// entering `stage`, already padded to the stage width.
struct BranchState {
  int stage = 0;
  CMatrix state;
  std::vector<int> applied;  // layers applied so far
};

// Weighted sum of the branches arriving at one stage (all entries must share
// the same stage index): pads narrower bypass states with trailing zero
// qubits (or trace-reduces wider ones for the output-residual stage L+2),
// then adds them, each branch weighted by its pmix path weight (1 in
// standard mode).
CMatrix residual_combine(const std::vector<BranchState>& branches, const NetworkSpec& spec);

// Branch-wise propagation of |phi_in><phi_in| through all stages. Returns
// the combined final operator and the log of every branch state (stages
// ascending, arrival order within a stage). trace(rho_out) = path count in
// standard mode, 1 in pmix mode.
std::pair<CMatrix, std::vector<BranchState>> feedforward(
    const PureState& phi_in, const NetworkSpec& spec, const PerceptronSet& perceptrons);

// Same propagation from an arbitrary Hermitian operator (feedforward is
// linear in this argument; exposed for linearity checks).
std::pair<CMatrix, std::vector<BranchState>> feedforward_density(
    const CMatrix& rho_in, const NetworkSpec& spec, const PerceptronSet& perceptrons);

// Trailing-qubit helpers shared by the propagation and gradient code.
CMatrix pad_trailing(const CMatrix& rho, int pad_qubits);
CMatrix trace_down_trailing(const CMatrix& rho, int drop_qubits);

}  // namespace resqnn

#endif  // RESQNN_NETWORK_HPP_
