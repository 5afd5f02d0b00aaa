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

#include "kernels.hpp"

#include <stdexcept>
#include <string>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace resqnn {
namespace internal {

GateTable make_gate_table(int total_qubits, const std::vector<int>& targets) {
  const int n = total_qubits;
  const int k = static_cast<int>(targets.size());
  if (k < 1 || k > n) {
    throw std::invalid_argument("make_gate_table: bad target count");
  }
  std::vector<int> rest;
  {
    std::vector<bool> used(n, false);
    for (int q : targets) {
      if (q < 0 || q >= n || used[q]) {
        throw std::invalid_argument("make_gate_table: bad target qubit");
      }
      used[q] = true;
    }
    for (int q = 0; q < n; ++q) {
      if (!used[q]) rest.push_back(q);
    }
  }

  GateTable table;
  table.k = k;
  table.seg = Eigen::Index{1} << k;
  table.groups = Eigen::Index{1} << (n - k);
  table.idx.resize(table.seg * table.groups);

  // Qubit 0 is the most significant index bit, both globally and within the
  // gate-local segment.
  for (Eigen::Index g = 0; g < table.groups; ++g) {
    Eigen::Index base = 0;
    for (int i = 0; i < n - k; ++i) {
      const Eigen::Index bit = (g >> (n - k - 1 - i)) & 1;
      base |= bit << (n - 1 - rest[i]);
    }
    for (Eigen::Index t = 0; t < table.seg; ++t) {
      Eigen::Index global = base;
      for (int i = 0; i < k; ++i) {
        const Eigen::Index bit = (t >> (k - 1 - i)) & 1;
        global |= bit << (n - 1 - targets[i]);
      }
      table.idx[g * table.seg + t] = global;
    }
  }
  return table;
}

void apply_gate_vec(PureState& x, const CMatrix& u, const GateTable& t) {
  if (u.rows() != t.seg || u.cols() != t.seg) {
    throw std::invalid_argument("apply_gate_vec: gate dimension mismatch");
  }
  thread_local Eigen::VectorXcd in_seg;
  thread_local Eigen::VectorXcd out_seg;
  if (in_seg.size() < t.seg) {
    in_seg.resize(t.seg);
    out_seg.resize(t.seg);
  }
  for (Eigen::Index g = 0; g < t.groups; ++g) {
    const Eigen::Index* ids = t.idx.data() + g * t.seg;
    for (Eigen::Index i = 0; i < t.seg; ++i) in_seg(i) = x(ids[i]);
    out_seg.head(t.seg).noalias() = u * in_seg.head(t.seg);
    for (Eigen::Index i = 0; i < t.seg; ++i) x(ids[i]) = out_seg(i);
  }
}

LayerOps::LayerOps(int l, const PerceptronSet& perceptrons) {
  const auto& gates = perceptrons.layers.at(l - 1);
  if (gates.empty()) {
    throw std::invalid_argument("LayerOps: layer has no perceptrons");
  }
  m_out_ = static_cast<int>(gates.size());
  m_in_ = qubit_count(gates[0].rows()) - 1;
  if (m_in_ < 1) {
    throw std::invalid_argument("LayerOps: perceptron must touch an input qubit");
  }
  const int n = m_in_ + m_out_;
  dim_ = Eigen::Index{1} << n;
  d_in_ = Eigen::Index{1} << m_in_;
  d_out_ = Eigen::Index{1} << m_out_;

  gates_ = gates;
  adj_gates_.reserve(m_out_);
  tables_.reserve(m_out_);
  for (int jj = 0; jj < m_out_; ++jj) {
    if (gates_[jj].rows() != 2 * d_in_ || gates_[jj].cols() != 2 * d_in_) {
      throw std::invalid_argument("LayerOps: inconsistent perceptron dimensions");
    }
    adj_gates_.push_back(gates_[jj].adjoint());
    std::vector<int> targets;
    targets.reserve(m_in_ + 1);
    for (int q = 0; q < m_in_; ++q) targets.push_back(q);
    targets.push_back(m_in_ + jj);
    tables_.push_back(make_gate_table(n, targets));
  }

  // Columns of F = U^l (Id ⊗ |0..0>): push each input basis state (with the
  // fresh register zeroed) through the gate sequence.
  isometry_.setZero(dim_, d_in_);
  PureState x(dim_);
  for (Eigen::Index a = 0; a < d_in_; ++a) {
    x.setZero();
    x(a << m_out_) = Complex(1.0, 0.0);
    for (int jj = 0; jj < m_out_; ++jj) {
      apply_gate_vec(x, gates_[jj], tables_[jj]);
    }
    isometry_.col(a) = x;
  }
}

CMatrix LayerOps::forward(const CMatrix& rho) const {
  if (rho.rows() != d_in_ || rho.cols() != d_in_) {
    throw std::invalid_argument("LayerOps::forward: state width mismatch");
  }
  CMatrix g(dim_, d_in_);
  g.noalias() = isometry_ * rho;
  CMatrix out = CMatrix::Zero(d_out_, d_out_);
  for (Eigen::Index a = 0; a < d_in_; ++a) {
    out.noalias() +=
        g.middleRows(a * d_out_, d_out_) * isometry_.middleRows(a * d_out_, d_out_).adjoint();
  }
  return out;
}

CMatrix LayerOps::backward(const CMatrix& sigma) const {
  if (sigma.rows() != d_out_ || sigma.cols() != d_out_) {
    throw std::invalid_argument("LayerOps::backward: operator width mismatch");
  }
  CMatrix h(dim_, d_in_);
  for (Eigen::Index a = 0; a < d_in_; ++a) {
    h.middleRows(a * d_out_, d_out_).noalias() = sigma * isometry_.middleRows(a * d_out_, d_out_);
  }
  CMatrix out(d_in_, d_in_);
  out.noalias() = isometry_.adjoint() * h;
  return out;
}

void LayerOps::apply_trailing_op(PureState& y, const CMatrix& op) const {
  thread_local Eigen::VectorXcd tmp;
  if (tmp.size() < d_out_) tmp.resize(d_out_);
  for (Eigen::Index a = 0; a < d_in_; ++a) {
    tmp.head(d_out_).noalias() = op * y.segment(a * d_out_, d_out_);
    y.segment(a * d_out_, d_out_) = tmp.head(d_out_);
  }
}

void LayerOps::accumulate_k_products(const CMatrix& rho_in, const CMatrix& sigma_next,
                                     double scale, std::vector<CMatrix>& p_accum) const {
  if (rho_in.rows() != d_in_ || sigma_next.rows() != d_out_) {
    throw std::invalid_argument("accumulate_k_products: operator width mismatch");
  }
  if (p_accum.size() != static_cast<size_t>(m_out_)) {
    throw std::invalid_argument("accumulate_k_products: accumulator count mismatch");
  }

  // rho_in is Hermitian up to roundoff; symmetrize before decomposing so the
  // eigenbasis stays orthonormal.
  const CMatrix rho_s = 0.5 * (rho_in + rho_in.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(rho_s);
  if (es.info() != Eigen::Success) {
    throw NumericError("accumulate_k_products: eigendecomposition failed");
  }
  const Eigen::VectorXd evals = es.eigenvalues();
  double max_abs = 0.0;
  for (Eigen::Index i = 0; i < evals.size(); ++i) {
    max_abs = std::max(max_abs, std::abs(evals(i)));
  }
  if (max_abs == 0.0) return;
  const double cutoff = 1e-13 * max_abs;

  const Eigen::Index seg = Eigen::Index{1} << (m_in_ + 1);
  PureState w(dim_);
  PureState y(dim_);
  std::vector<PureState> w_after(m_out_, PureState(dim_));
  Eigen::VectorXcd w_seg(seg);
  Eigen::VectorXcd y_seg(seg);

  for (Eigen::Index alpha = 0; alpha < evals.size(); ++alpha) {
    const double lambda = evals(alpha);
    if (std::abs(lambda) <= cutoff) continue;

    // w chain upward: w_after[jj] = U_{j<=jj+1} (v ⊗ |0..0>).
    w.setZero();
    for (Eigen::Index i = 0; i < d_in_; ++i) {
      w(i << m_out_) = es.eigenvectors()(i, alpha);
    }
    for (int jj = 0; jj < m_out_; ++jj) {
      apply_gate_vec(w, gates_[jj], tables_[jj]);
      w_after[jj] = w;
    }

    // y chain downward from t = (Id ⊗ sigma_next) U (v ⊗ |0..0>): before the
    // pairing at gate jj, y = U_{>jj+1}† t, so tr_rest(A_j B_j) contracts to
    // gate-local outer products of w_after[jj] against y.
    y = w;
    apply_trailing_op(y, sigma_next);
    const double coeff = scale * lambda;
    for (int jj = m_out_ - 1; jj >= 0; --jj) {
      const GateTable& t = tables_[jj];
      const PureState& wj = w_after[jj];
      for (Eigen::Index g = 0; g < t.groups; ++g) {
        const Eigen::Index* ids = t.idx.data() + g * t.seg;
        for (Eigen::Index i = 0; i < t.seg; ++i) {
          w_seg(i) = wj(ids[i]);
          y_seg(i) = y(ids[i]);
        }
        p_accum[jj].noalias() += coeff * (w_seg * y_seg.adjoint());
      }
      if (jj > 0) {
        apply_gate_vec(y, adj_gates_[jj], tables_[jj]);
      }
    }
  }
}

}  // namespace internal
}  // namespace resqnn
