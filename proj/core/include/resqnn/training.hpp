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

#ifndef RESQNN_TRAINING_HPP_
#define RESQNN_TRAINING_HPP_

#include <cstdint>
#include <utility>
#include <vector>

#include "resqnn/network.hpp"
#include "resqnn/qmath.hpp"

namespace resqnn {

// One supervised example: an input state and the state the hidden target
// unitary maps it to. Both unit norm.
struct TrainingPair {
  PureState input;   // on m_0 qubits
  PureState target;  // on m_{L+1} qubits
};

struct HyperParams {
  double eta = 1.0;    // learning rate (inverse of the Lagrange multiplier)
  double eps = 0.1;    // update step size
  int rounds = 0;      // training iterations
  std::uint64_t seed = 0;  // master seed; perceptron init derives from it
};

// Per-round cost series. Entry 0 is the initial cost; wall_ms is cumulative
// wall-clock time since training started (informational, not reproducible).
struct CostTracePoint {
  int round = 0;
  double cost = 0.0;
  double wall_ms = 0.0;
};
using CostTrace = std::vector<CostTracePoint>;

// All parameter matrices, indexed [l-1][j-1].
using KSet = std::vector<std::vector<CMatrix>>;

// Training objective. Standard mode divides the summed-branch fidelity by
// the path count (the trace of the output state), so a perfectly trained
// network scores 1; pmix mode needs no normalization (trace stays 1).
double cost(const std::vector<TrainingPair>& set, const NetworkSpec& spec,
            const PerceptronSet& perceptrons);

// Mean over pairs of <target| rho_out |target> with NO path-count
// normalization: path_count * cost in standard mode, equal to cost in pmix
// mode. This is the quantity whose parameter derivatives the K matrices
// encode; the finite-difference oracle differentiates it directly.
double mean_output_fidelity(const std::vector<TrainingPair>& set, const NetworkSpec& spec,
                            const PerceptronSet& perceptrons);

// Parameter matrix K_j^l: i * eta * (2^{m_{l-1}}/N) * sum over pairs and
// over residual paths containing layer l of tr_rest[A_{P,j}, B_{P,j}],
// where A carries the path's forward state through U_j^l and B pulls the
// target projector back through the remaining units. Hermitian by
// construction; computed by layer-wise forward/backward contraction and
// pinned against the unrolled and finite-difference oracles in the tests.
CMatrix k_matrix(const NetworkSpec& spec, const PerceptronSet& perceptrons,
                 const std::vector<TrainingPair>& set, int l, int j, double eta);

// Every K_j^l from one shared forward/backward sweep.
KSet k_matrix_all(const NetworkSpec& spec, const PerceptronSet& perceptrons,
                  const std::vector<TrainingPair>& set, double eta);

// One training iteration: computes all K from the pre-update parameters,
// then applies U_j^l <- expm_i_herm(K_j^l, eps) * U_j^l simultaneously.
PerceptronSet update_step(const NetworkSpec& spec, const PerceptronSet& perceptrons,
                          const std::vector<TrainingPair>& set, const HyperParams& hp);

// Full training loop: Haar-random init from hp.seed, hp.rounds update steps,
// cost recorded before each step and once after the last (trace length
// rounds + 1). Deterministic given (spec, set, hp) up to the wall_ms field.
std::pair<PerceptronSet, CostTrace> train(const NetworkSpec& spec,
                                          const std::vector<TrainingPair>& set,
                                          const HyperParams& hp);

// cost() on an evaluation set (held-out pairs, or the pre-corruption
// originals of a noisy training set).
double evaluate(const std::vector<TrainingPair>& set, const NetworkSpec& spec,
                const PerceptronSet& perceptrons);

// Derivative of cost along the update direction encoded by k_all (the flow
// U_j^l(s) with dU/ds = i K_j^l U_j^l). Nonnegative whenever k_all comes
// from k_matrix at the same parameters: the update is gradient ascent.
double dcost_ds_analytic(const NetworkSpec& spec, const PerceptronSet& perceptrons,
                         const std::vector<TrainingPair>& set, const KSet& k_all);

// Test oracles. Dense reference implementations that share no contraction
// code with k_matrix; slow, meant for small configurations only.

// Finite-difference reconstruction of K_j^l: central differences of
// mean_output_fidelity under U_j^l -> exp(i theta G) U_j^l for every Pauli
// product G on m_{l-1}+1 qubits, assembled as (eta/2) * sum_G g_G * G.
// Requires delta in (0, 1e-2]; agreement with k_matrix is O(delta^2).
CMatrix k_matrix_fd_oracle(const NetworkSpec& spec, const PerceptronSet& perceptrons,
                           const std::vector<TrainingPair>& set, int l, int j,
                           double delta, double eta);

// Contribution of one residual path (given by its applied-layer list) to
// K_j^l, built literally in the path's fully unrolled space: the input
// register plus every padding and fresh register stay explicit, the
// embedded perceptrons are multiplied out, and both orders of the
// commutator are traced down to U_j^l's qubits. Includes the path's pmix
// weight and the i * eta * 2^{m_{l-1}}/N prefactor.
CMatrix k_matrix_single_path(const NetworkSpec& spec, const PerceptronSet& perceptrons,
                             const std::vector<TrainingPair>& set,
                             const std::vector<int>& applied, int l, int j, double eta);

// The hand-derived commutator term lists, as applied-layer sets, for the
// shapes with published per-layer expansions: plain chains (any depth), one
// hidden layer with edge (2,1), and two hidden layers with edges
// (2,1),(3,2). Throws std::invalid_argument for other shapes. Note the
// two-hidden-layer list for l = 3 omits the {2,3} branch that path
// enumeration produces; see oracle_terms_complete.
std::vector<std::vector<int>> oracle_term_paths(const NetworkSpec& spec, int l);

// True when oracle_term_paths(spec, l) covers exactly the enumerated paths
// through layer l, i.e. when k_matrix_unrolled_oracle is an exact reference
// for k_matrix. The finite-difference oracle arbitrates the layers where
// this is false.
bool oracle_terms_complete(const NetworkSpec& spec, int l);

// Sum of k_matrix_single_path over oracle_term_paths(spec, l).
CMatrix k_matrix_unrolled_oracle(const NetworkSpec& spec, const PerceptronSet& perceptrons,
                                 const std::vector<TrainingPair>& set, int l, int j,
                                 double eta);

}  // namespace resqnn

#endif  // RESQNN_TRAINING_HPP_
