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

#include "resqnn/training.hpp"

#include <chrono>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "kernels.hpp"
#include "resqnn/rng.hpp"

namespace resqnn {

namespace {

void check_set(const NetworkSpec& spec, const std::vector<TrainingPair>& set) {
  spec.validate();
  if (set.empty()) {
    throw std::invalid_argument("training set is empty");
  }
  const Eigen::Index d_in = Eigen::Index{1} << spec.widths.front();
  const Eigen::Index d_out = Eigen::Index{1} << spec.widths.back();
  for (const TrainingPair& pair : set) {
    if (pair.input.size() != d_in || pair.target.size() != d_out) {
      throw std::invalid_argument("training pair width does not match the network");
    }
  }
}

std::vector<internal::LayerOps> make_ops(const NetworkSpec& spec,
                                         const PerceptronSet& perceptrons) {
  if (static_cast<int>(perceptrons.layers.size()) != spec.layer_count()) {
    throw std::invalid_argument("perceptron layer count does not match spec");
  }
  std::vector<internal::LayerOps> ops;
  ops.reserve(spec.layer_count());
  for (int l = 1; l <= spec.layer_count(); ++l) {
    ops.emplace_back(l, perceptrons);
    if (ops.back().m_in() != spec.stage_width(l) ||
        ops.back().m_out() != spec.stage_width(l + 1)) {
      throw std::invalid_argument("perceptron widths do not match spec");
    }
  }
  return ops;
}

// Adjoint of pad_trailing: <0_pad| m |0_pad> on the surviving qubits.
CMatrix unpad_trailing(const CMatrix& m, int pad_qubits) {
  if (pad_qubits == 0) return m;
  const Eigen::Index block = Eigen::Index{1} << pad_qubits;
  const Eigen::Index d = m.rows() / block;
  CMatrix out(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      out(i, j) = m(i * block, j * block);
    }
  }
  return out;
}

// Weighted branch sums entering each stage, for one input operator.
struct ForwardStates {
  std::vector<CMatrix> entering;  // index k = 1..L+1 (0 unused)
  CMatrix output;                 // combined terminal state
};

ForwardStates run_forward(const NetworkSpec& spec, const std::vector<internal::LayerOps>& ops,
                          const CMatrix& rho_in) {
  const int terminal = spec.hidden_layers() + 2;
  ForwardStates f;
  f.entering.assign(terminal, CMatrix());
  f.entering[1] = rho_in;
  for (int k = 1; k < terminal; ++k) {
    CMatrix next = spec.apply_weight(k) * ops[k - 1].forward(f.entering[k]);
    const int stage = k + 1;
    if (const auto edge = spec.edge_into(stage)) {
      const CMatrix& src = f.entering[edge->source];
      CMatrix moved =
          stage < terminal
              ? pad_trailing(src, spec.stage_width(stage) - spec.stage_width(edge->source))
              : trace_down_trailing(src,
                                    spec.stage_width(edge->source) - spec.stage_width(terminal));
      next += spec.jump_weight(edge->source) * moved;
    }
    if (stage < terminal) {
      f.entering[stage] = std::move(next);
    } else {
      f.output = std::move(next);
    }
  }
  return f;
}

// sigma[k] (k = 2..L+2) pulls the target projector back to the entrance of
// stage k: the fidelity picked up downstream of any operator X entering
// stage k is tr(X sigma[k]).
std::vector<CMatrix> run_backward(const NetworkSpec& spec,
                                  const std::vector<internal::LayerOps>& ops,
                                  const PureState& target) {
  const int terminal = spec.hidden_layers() + 2;
  std::vector<CMatrix> sigma(terminal + 1);
  sigma[terminal] = target * target.adjoint();
  for (int k = terminal - 1; k >= 2; --k) {
    CMatrix s = spec.apply_weight(k) * ops[k - 1].backward(sigma[k + 1]);
    if (const auto edge = spec.edge_from(k)) {
      const int t = edge->target;
      if (t < terminal) {
        s += spec.jump_weight(k) *
             unpad_trailing(sigma[t], spec.stage_width(t) - spec.stage_width(k));
      } else {
        const Eigen::Index pad = Eigen::Index{1}
                                 << (spec.stage_width(k) - spec.stage_width(terminal));
        s += spec.jump_weight(k) * kron(sigma[terminal], CMatrix::Identity(pad, pad));
      }
    }
    sigma[k] = std::move(s);
  }
  return sigma;
}

double normalization(const NetworkSpec& spec) {
  if (spec.mode == Mode::kPMix) return 1.0;
  return static_cast<double>(enumerate_paths(spec).path_count());
}

// One pass over the training set: fidelity sum, and (when products is
// non-null) the per-unit gradient contractions, all from the same forward
// states. only_layer restricts the contraction work to one layer (0 = all).
double sweep(const NetworkSpec& spec, const std::vector<internal::LayerOps>& ops,
             const std::vector<TrainingPair>& set,
             std::vector<std::vector<CMatrix>>* products, int only_layer) {
  double fid_sum = 0.0;
  for (const TrainingPair& pair : set) {
    const CMatrix rho = pair.input * pair.input.adjoint();
    const ForwardStates f = run_forward(spec, ops, rho);
    fid_sum += fidelity_pure(pair.target, f.output);
    if (products == nullptr) continue;
    const std::vector<CMatrix> sigma = run_backward(spec, ops, pair.target);
    for (int l = 1; l <= spec.layer_count(); ++l) {
      if (only_layer != 0 && l != only_layer) continue;
      ops[l - 1].accumulate_k_products(f.entering[l], sigma[l + 1], 1.0, (*products)[l - 1]);
    }
  }
  return fid_sum;
}

std::vector<std::vector<CMatrix>> zero_products(const NetworkSpec& spec) {
  std::vector<std::vector<CMatrix>> products(spec.layer_count());
  for (int l = 1; l <= spec.layer_count(); ++l) {
    const Eigen::Index dim = Eigen::Index{1} << (spec.stage_width(l) + 1);
    products[l - 1].assign(spec.stage_width(l + 1), CMatrix::Zero(dim, dim));
  }
  return products;
}

// K_j^l = i * eta * (2^{m_{l-1}}/N) * w_apply(l) * (P - P†). The antisymmetric
// combination makes Hermiticity exact in floating point.
KSet assemble_k(const NetworkSpec& spec, const std::vector<std::vector<CMatrix>>& products,
                double eta, size_t n_pairs) {
  KSet k(products.size());
  for (int l = 1; l <= spec.layer_count(); ++l) {
    const double coeff = eta * static_cast<double>(Eigen::Index{1} << spec.stage_width(l)) /
                         static_cast<double>(n_pairs) * spec.apply_weight(l);
    k[l - 1].reserve(products[l - 1].size());
    for (const CMatrix& p : products[l - 1]) {
      k[l - 1].push_back(Complex(0.0, coeff) * (p - p.adjoint()));
    }
  }
  return k;
}

double checked_cost(double fid_mean, double norm) {
  const double c = fid_mean / norm;
  if (!(c >= -1e-10 && c <= 1.0 + 1e-10)) {
    throw NumericError("cost escaped [0, 1]: " + std::to_string(c));
  }
  return c;
}

void check_hp(const HyperParams& hp) {
  if (!(hp.eta > 0.0) || !(hp.eps > 0.0) || hp.rounds < 0) {
    throw std::invalid_argument("hyperparameters: need eta > 0, eps > 0, rounds >= 0");
  }
}

}  // namespace

double cost(const std::vector<TrainingPair>& set, const NetworkSpec& spec,
            const PerceptronSet& perceptrons) {
  check_set(spec, set);
  const std::vector<internal::LayerOps> ops = make_ops(spec, perceptrons);
  const double fid_sum = sweep(spec, ops, set, nullptr, 0);
  return checked_cost(fid_sum / static_cast<double>(set.size()), normalization(spec));
}

double mean_output_fidelity(const std::vector<TrainingPair>& set, const NetworkSpec& spec,
                            const PerceptronSet& perceptrons) {
  check_set(spec, set);
  const std::vector<internal::LayerOps> ops = make_ops(spec, perceptrons);
  return sweep(spec, ops, set, nullptr, 0) / static_cast<double>(set.size());
}

double evaluate(const std::vector<TrainingPair>& set, const NetworkSpec& spec,
                const PerceptronSet& perceptrons) {
  return cost(set, spec, perceptrons);
}

KSet k_matrix_all(const NetworkSpec& spec, const PerceptronSet& perceptrons,
                  const std::vector<TrainingPair>& set, double eta) {
  check_set(spec, set);
  const std::vector<internal::LayerOps> ops = make_ops(spec, perceptrons);
  std::vector<std::vector<CMatrix>> products = zero_products(spec);
  sweep(spec, ops, set, &products, 0);
  return assemble_k(spec, products, eta, set.size());
}

CMatrix k_matrix(const NetworkSpec& spec, const PerceptronSet& perceptrons,
                 const std::vector<TrainingPair>& set, int l, int j, double eta) {
  check_set(spec, set);
  if (l < 1 || l > spec.layer_count() || j < 1 || j > spec.stage_width(l + 1)) {
    throw std::invalid_argument("k_matrix: unit index out of range");
  }
  const std::vector<internal::LayerOps> ops = make_ops(spec, perceptrons);
  std::vector<std::vector<CMatrix>> products = zero_products(spec);
  sweep(spec, ops, set, &products, l);
  return assemble_k(spec, products, eta, set.size())[l - 1][j - 1];
}

PerceptronSet update_step(const NetworkSpec& spec, const PerceptronSet& perceptrons,
                          const std::vector<TrainingPair>& set, const HyperParams& hp) {
  check_hp(hp);
  const KSet k = k_matrix_all(spec, perceptrons, set, hp.eta);
  PerceptronSet next = perceptrons;
  for (size_t l = 0; l < k.size(); ++l) {
    for (size_t j = 0; j < k[l].size(); ++j) {
      next.layers[l][j] = expm_i_herm(k[l][j], hp.eps) * next.layers[l][j];
    }
  }
  return next;
}

std::pair<PerceptronSet, CostTrace> train(const NetworkSpec& spec,
                                          const std::vector<TrainingPair>& set,
                                          const HyperParams& hp) {
  check_hp(hp);
  check_set(spec, set);
  const double norm = normalization(spec);
  const double n = static_cast<double>(set.size());

  Rng init_rng(Rng::derive(hp.seed, seed_tags::kInit));
  PerceptronSet params = PerceptronSet::random_init(spec, init_rng);

  CostTrace trace;
  trace.reserve(hp.rounds + 1);
  const auto t0 = std::chrono::steady_clock::now();
  const auto elapsed_ms = [&t0]() {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
  };

  for (int round = 0; round < hp.rounds; ++round) {
    const std::vector<internal::LayerOps> ops = make_ops(spec, params);
    std::vector<std::vector<CMatrix>> products = zero_products(spec);
    const double fid_sum = sweep(spec, ops, set, &products, 0);
    trace.push_back(CostTracePoint{round, checked_cost(fid_sum / n, norm), elapsed_ms()});
    const KSet k = assemble_k(spec, products, hp.eta, set.size());
    for (size_t l = 0; l < k.size(); ++l) {
      for (size_t j = 0; j < k[l].size(); ++j) {
        params.layers[l][j] = expm_i_herm(k[l][j], hp.eps) * params.layers[l][j];
      }
    }
  }
  {
    const std::vector<internal::LayerOps> ops = make_ops(spec, params);
    const double fid_sum = sweep(spec, ops, set, nullptr, 0);
    trace.push_back(CostTracePoint{hp.rounds, checked_cost(fid_sum / n, norm), elapsed_ms()});
  }
  return {std::move(params), std::move(trace)};
}

double dcost_ds_analytic(const NetworkSpec& spec, const PerceptronSet& perceptrons,
                         const std::vector<TrainingPair>& set, const KSet& k_all) {
  check_set(spec, set);
  if (static_cast<int>(k_all.size()) != spec.layer_count()) {
    throw std::invalid_argument("dcost_ds_analytic: k_all layer count mismatch");
  }
  const KSet d = k_matrix_all(spec, perceptrons, set, 1.0);
  const double norm = normalization(spec);
  double total = 0.0;
  for (int l = 1; l <= spec.layer_count(); ++l) {
    if (k_all[l - 1].size() != d[l - 1].size()) {
      throw std::invalid_argument("dcost_ds_analytic: k_all unit count mismatch");
    }
    const double denom =
        static_cast<double>(Eigen::Index{1} << spec.stage_width(l)) * norm;
    for (size_t j = 0; j < d[l - 1].size(); ++j) {
      if (k_all[l - 1][j].rows() != d[l - 1][j].rows()) {
        throw std::invalid_argument("dcost_ds_analytic: k_all dimension mismatch");
      }
      total += (d[l - 1][j] * k_all[l - 1][j]).trace().real() / denom;
    }
  }
  return total;
}

}  // namespace resqnn
