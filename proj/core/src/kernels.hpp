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

// Internal structured kernels for the layer channel and its gradient.
//
// A perceptron gate U_j^l touches k = m_{l-1}+1 of the n = m_{l-1}+m_l qubits
// of the layer space, so everything here works with per-gate index tables
// (gather 2^k-element segments, apply the small matrix, scatter back) instead
// of forming 2^n x 2^n embedded operators. The channel itself is driven by
// the isometry F = U^l (Id ⊗ |0...0>):
//   forward   C(rho)    = tr_in(F rho F†)
//   backward  C†(sigma) = F† (Id ⊗ sigma) F
// and the gradient contractions by per-eigenvector chains through the gate
// list. Correctness of every routine is pinned against dense embed/matmul
// oracles in the test suite.

#ifndef RESQNN_SRC_KERNELS_HPP_
#define RESQNN_SRC_KERNELS_HPP_

#include <vector>

#include "resqnn/network.hpp"
#include "resqnn/qmath.hpp"

namespace resqnn {
namespace internal {

// Index table for one gate: global basis indices arranged as
// idx[group * 2^k + t], where t runs over the gate-local configurations
// (gate qubit 0 = most significant local bit) and `group` over the
// configurations of the untouched qubits.
struct GateTable {
  int k = 0;  // gate qubit count
  Eigen::Index seg = 0;     // 2^k
  Eigen::Index groups = 0;  // 2^{n-k}
  std::vector<Eigen::Index> idx;
};

GateTable make_gate_table(int total_qubits, const std::vector<int>& targets);

// In-place x := embed(u) * x using the table.
void apply_gate_vec(PureState& x, const CMatrix& u, const GateTable& t);

// All cached per-layer machinery for one parameter snapshot.
class LayerOps {
 public:
  LayerOps(int l, const PerceptronSet& perceptrons);

  int m_in() const { return m_in_; }
  int m_out() const { return m_out_; }

  // tr_in( U (rho ⊗ |0..0><0..0|) U† ); rho on m_in qubits.
  CMatrix forward(const CMatrix& rho) const;

  // Adjoint channel: <0..0| U† (Id ⊗ sigma) U |0..0>; sigma on m_out qubits.
  CMatrix backward(const CMatrix& sigma) const;

  // Adds this layer's gradient contractions for one training pair into
  // p_accum[j-1] (gate-local operators on m_in+1 qubits):
  //   p_accum[j] += scale * tr_rest( A_j B_j )
  // with A_j = U_{<=j}(rho_in ⊗ |0..0><0..0|)U_{<=j}† and
  // B_j = U_{>j}† (Id ⊗ sigma_next) U_{>j}. rho_in is eigendecomposed and
  // the chains run per eigenvector, which keeps the cost at
  // O(rank * m_out * 2^k * 2^n) instead of dense-conjugation cost.
  void accumulate_k_products(const CMatrix& rho_in, const CMatrix& sigma_next,
                             double scale, std::vector<CMatrix>& p_accum) const;

 private:
  // y := (Id_{m_in} ⊗ op) y, op on the trailing m_out qubits.
  void apply_trailing_op(PureState& y, const CMatrix& op) const;

  int m_in_ = 0;
  int m_out_ = 0;
  Eigen::Index dim_ = 0;    // 2^{m_in + m_out}
  Eigen::Index d_in_ = 0;   // 2^{m_in}
  Eigen::Index d_out_ = 0;  // 2^{m_out}
  std::vector<CMatrix> gates_;      // U_1^l .. U_{m_out}^l
  std::vector<CMatrix> adj_gates_;  // matching adjoints
  std::vector<GateTable> tables_;   // one per gate
  CMatrix isometry_;                // dim x d_in, columns U|a, 0...0>
};

}  // namespace internal
}  // namespace resqnn

#endif  // RESQNN_SRC_KERNELS_HPP_
