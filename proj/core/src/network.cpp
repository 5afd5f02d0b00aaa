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

#include "resqnn/network.hpp"

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>

#include "kernels.hpp"

namespace resqnn {

namespace {

std::string trim(const std::string& s) {
  size_t b = 0;
  size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  size_t start = 0;
  while (true) {
    const size_t pos = s.find(sep, start);
    if (pos == std::string::npos) {
      parts.push_back(s.substr(start));
      return parts;
    }
    parts.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

int parse_width(const std::string& token) {
  if (token.empty()) {
    throw std::invalid_argument("network spec: empty width token");
  }
  long value = 0;
  for (char c : token) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw std::invalid_argument("network spec: bad width token '" + token + "'");
    }
    value = value * 10 + (c - '0');
    if (value > 1 << 20) {
      throw std::invalid_argument("network spec: width out of range");
    }
  }
  if (value < 1) {
    throw std::invalid_argument("network spec: layer widths must be >= 1");
  }
  return static_cast<int>(value);
}

}  // namespace

std::optional<ResidualEdge> NetworkSpec::edge_into(int target) const {
  for (const ResidualEdge& e : residual_edges) {
    if (e.target == target) return e;
  }
  return std::nullopt;
}

std::optional<ResidualEdge> NetworkSpec::edge_from(int source) const {
  for (const ResidualEdge& e : residual_edges) {
    if (e.source == source) return e;
  }
  return std::nullopt;
}

double NetworkSpec::apply_weight(int stage) const {
  if (mode == Mode::kPMix && edge_from(stage).has_value()) return 1.0 - p;
  return 1.0;
}

double NetworkSpec::jump_weight(int stage) const {
  if (!edge_from(stage).has_value()) {
    throw std::invalid_argument("jump_weight: stage has no residual edge");
  }
  return mode == Mode::kPMix ? p : 1.0;
}

NetworkSpec NetworkSpec::stripped() const {
  NetworkSpec plain;
  plain.widths = widths;
  return plain;
}

void NetworkSpec::validate() const {
  if (widths.size() < 2) {
    throw std::invalid_argument("network spec: need at least input and output widths");
  }
  for (int w : widths) {
    if (w < 1) throw std::invalid_argument("network spec: layer widths must be >= 1");
  }
  if (mode == Mode::kPMix && !(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("network spec: p must lie in [0, 1]");
  }
  const int terminal = hidden_layers() + 2;
  std::set<int> targets;
  std::set<int> sources;
  for (const ResidualEdge& e : residual_edges) {
    if (e.target < 2 || e.target > terminal || e.source < 1 || e.source >= e.target) {
      throw std::invalid_argument("network spec: residual edge out of range");
    }
    if (!targets.insert(e.target).second) {
      throw std::invalid_argument("network spec: two residual edges share a target stage");
    }
    if (!sources.insert(e.source).second) {
      throw std::invalid_argument("network spec: two residual edges share a source stage");
    }
    if (e.target < terminal) {
      if (stage_width(e.source) > stage_width(e.target)) {
        throw std::invalid_argument(
            "network spec: residual source is wider than its target stage");
      }
    } else {
      if (stage_width(e.source) < stage_width(terminal)) {
        throw std::invalid_argument(
            "network spec: output residual source is narrower than the output");
      }
    }
  }
}

NetworkSpec parse_spec(const std::string& text) {
  const std::vector<std::string> clauses = split(text, ';');
  NetworkSpec spec;
  if (clauses.size() > 2) {
    throw std::invalid_argument("network spec: too many ';' clauses");
  }
  if (clauses.size() == 2) {
    const std::string opt = trim(clauses[1]);
    if (opt.rfind("p=", 0) != 0) {
      throw std::invalid_argument("network spec: unknown option clause '" + opt + "'");
    }
    const std::string value = trim(opt.substr(2));
    size_t used = 0;
    double p = 0.0;
    try {
      p = std::stod(value, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("network spec: bad p value '" + value + "'");
    }
    if (used != value.size()) {
      throw std::invalid_argument("network spec: bad p value '" + value + "'");
    }
    spec.mode = Mode::kPMix;
    spec.p = p;
  }

  const std::vector<std::string> tokens = split(clauses[0], ',');
  if (tokens.size() < 2) {
    throw std::invalid_argument("network spec: need at least two width tokens");
  }
  std::vector<bool> tilde(tokens.size(), false);
  std::vector<bool> hat(tokens.size(), false);
  for (size_t i = 0; i < tokens.size(); ++i) {
    std::string tok = trim(tokens[i]);
    if (!tok.empty() && (tok.back() == '~' || tok.back() == '^')) {
      (tok.back() == '~' ? tilde : hat)[i] = true;
      tok = trim(tok.substr(0, tok.size() - 1));
    }
    spec.widths.push_back(parse_width(tok));
  }
  if (tilde[0] || hat[0]) {
    throw std::invalid_argument("network spec: the input layer cannot carry ~ or ^");
  }

  // A '~' on layer l requests the edge (l+1, l); each immediately preceding
  // '^' shifts the source one layer further back. On the last token the edge
  // targets the terminal stage instead (output residual).
  const int last = static_cast<int>(tokens.size()) - 1;
  int pending_hats = 0;
  for (int l = 1; l <= last; ++l) {
    if (hat[l]) {
      ++pending_hats;
      continue;
    }
    if (tilde[l]) {
      const int source = l - pending_hats;
      if (source < 1) {
        throw std::invalid_argument("network spec: residual source shifted before the input");
      }
      spec.residual_edges.push_back(ResidualEdge{l + 1, source});
      pending_hats = 0;
      continue;
    }
    if (pending_hats > 0) {
      throw std::invalid_argument("network spec: '^' must immediately precede a '~' layer");
    }
  }
  if (pending_hats > 0) {
    throw std::invalid_argument("network spec: dangling '^' with no following '~'");
  }

  spec.validate();
  return spec;
}

PerceptronSet PerceptronSet::random_init(const NetworkSpec& spec, Rng& rng) {
  spec.validate();
  PerceptronSet set;
  set.layers.resize(spec.layer_count());
  for (int l = 1; l <= spec.layer_count(); ++l) {
    const Eigen::Index dim = Eigen::Index{1} << (spec.stage_width(l) + 1);
    const int m_out = spec.stage_width(l + 1);
    set.layers[l - 1].reserve(m_out);
    for (int j = 0; j < m_out; ++j) {
      set.layers[l - 1].push_back(random_unitary(dim, rng));
    }
  }
  return set;
}

namespace {

void walk_paths(const NetworkSpec& spec, int stage, std::vector<int>& applied,
                std::vector<Path::Hop>& hops, PathDag& dag) {
  const int terminal = spec.hidden_layers() + 2;
  if (stage == terminal) {
    Path path;
    path.applied = applied;
    path.hops = hops;
    path.weight = path_weight(applied, spec, terminal);
    dag.paths.push_back(std::move(path));
    return;
  }
  applied.push_back(stage);
  walk_paths(spec, stage + 1, applied, hops, dag);
  applied.pop_back();
  if (const auto edge = spec.edge_from(stage)) {
    const int pad = edge->target < terminal
                        ? spec.stage_width(edge->target) - spec.stage_width(stage)
                        : spec.stage_width(terminal) - spec.stage_width(stage);
    hops.push_back(Path::Hop{*edge, pad});
    walk_paths(spec, edge->target, applied, hops, dag);
    hops.pop_back();
  }
}

}  // namespace

PathDag enumerate_paths(const NetworkSpec& spec) {
  spec.validate();
  PathDag dag;
  std::vector<int> applied;
  std::vector<Path::Hop> hops;
  walk_paths(spec, 1, applied, hops, dag);
  return dag;
}

double path_weight(const std::vector<int>& applied, const NetworkSpec& spec,
                   int up_to_stage) {
  const int terminal = spec.hidden_layers() + 2;
  double weight = 1.0;
  int stage = 1;
  while (stage < up_to_stage) {
    if (stage > terminal) break;
    if (std::find(applied.begin(), applied.end(), stage) != applied.end()) {
      weight *= spec.apply_weight(stage);
      stage += 1;
      continue;
    }
    const auto edge = spec.edge_from(stage);
    if (!edge.has_value()) {
      throw std::invalid_argument("path_weight: applied-layer list never leaves a stage");
    }
    weight *= spec.jump_weight(stage);
    stage = edge->target;
  }
  if (stage != up_to_stage) {
    throw std::invalid_argument("path_weight: route does not pass through the stage");
  }
  return weight;
}

CMatrix layer_channel(const CMatrix& rho_in, int l, const PerceptronSet& perceptrons) {
  if (l < 1 || l > static_cast<int>(perceptrons.layers.size())) {
    throw std::invalid_argument("layer_channel: layer index out of range");
  }
  internal::LayerOps ops(l, perceptrons);
  return ops.forward(rho_in);
}

CMatrix pad_trailing(const CMatrix& rho, int pad_qubits) {
  if (pad_qubits < 0) {
    throw std::invalid_argument("pad_trailing: negative pad width");
  }
  if (rho.rows() != rho.cols()) {
    throw std::invalid_argument("pad_trailing: operator must be square");
  }
  if (pad_qubits == 0) return rho;
  const Eigen::Index d = rho.rows();
  const Eigen::Index block = Eigen::Index{1} << pad_qubits;
  CMatrix out = CMatrix::Zero(d * block, d * block);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      out(i * block, j * block) = rho(i, j);
    }
  }
  return out;
}

CMatrix trace_down_trailing(const CMatrix& rho, int drop_qubits) {
  if (drop_qubits < 0) {
    throw std::invalid_argument("trace_down_trailing: negative drop width");
  }
  if (rho.rows() != rho.cols()) {
    throw std::invalid_argument("trace_down_trailing: operator must be square");
  }
  if (drop_qubits == 0) return rho;
  const Eigen::Index block = Eigen::Index{1} << drop_qubits;
  if (rho.rows() % block != 0) {
    throw std::invalid_argument("trace_down_trailing: operator too small");
  }
  const Eigen::Index d = rho.rows() / block;
  CMatrix out = CMatrix::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      Complex acc(0.0, 0.0);
      for (Eigen::Index b = 0; b < block; ++b) {
        acc += rho(i * block + b, j * block + b);
      }
      out(i, j) = acc;
    }
  }
  return out;
}

CMatrix residual_combine(const std::vector<BranchState>& branches, const NetworkSpec& spec) {
  if (branches.empty()) {
    throw std::invalid_argument("residual_combine: no branches");
  }
  const int terminal = spec.hidden_layers() + 2;
  const int stage = branches.front().stage;
  if (stage < 1 || stage > terminal) {
    throw std::invalid_argument("residual_combine: stage out of range");
  }
  const int width = spec.stage_width(stage);
  const Eigen::Index dim = Eigen::Index{1} << width;
  CMatrix out = CMatrix::Zero(dim, dim);
  for (const BranchState& branch : branches) {
    if (branch.stage != stage) {
      throw std::invalid_argument("residual_combine: branches at different stages");
    }
    const int branch_width = qubit_count(branch.state.rows());
    const double weight = path_weight(branch.applied, spec, stage);
    if (branch_width == width) {
      out += weight * branch.state;
    } else if (branch_width < width && stage < terminal) {
      out += weight * pad_trailing(branch.state, width - branch_width);
    } else if (branch_width > width && stage == terminal) {
      out += weight * trace_down_trailing(branch.state, branch_width - width);
    } else {
      throw std::invalid_argument("residual_combine: branch width does not fit the stage");
    }
  }
  return out;
}

std::pair<CMatrix, std::vector<BranchState>> feedforward_density(
    const CMatrix& rho_in, const NetworkSpec& spec, const PerceptronSet& perceptrons) {
  spec.validate();
  const int terminal = spec.hidden_layers() + 2;
  if (static_cast<int>(perceptrons.layers.size()) != spec.layer_count()) {
    throw std::invalid_argument("feedforward: perceptron layer count does not match spec");
  }
  if (rho_in.rows() != (Eigen::Index{1} << spec.stage_width(1)) ||
      rho_in.cols() != rho_in.rows()) {
    throw std::invalid_argument("feedforward: input width does not match spec");
  }

  std::vector<std::vector<BranchState>> arrivals(terminal + 1);
  arrivals[1].push_back(BranchState{1, rho_in, {}});
  for (int k = 1; k < terminal; ++k) {
    internal::LayerOps ops(k, perceptrons);
    if (ops.m_in() != spec.stage_width(k) || ops.m_out() != spec.stage_width(k + 1)) {
      throw std::invalid_argument("feedforward: perceptron widths do not match spec");
    }
    for (const BranchState& branch : arrivals[k]) {
      std::vector<int> applied = branch.applied;
      applied.push_back(k);
      arrivals[k + 1].push_back(BranchState{k + 1, ops.forward(branch.state), std::move(applied)});
    }
    if (const auto edge = spec.edge_from(k)) {
      const int t = edge->target;
      for (const BranchState& branch : arrivals[k]) {
        CMatrix moved =
            t < terminal
                ? pad_trailing(branch.state, spec.stage_width(t) - spec.stage_width(k))
                : trace_down_trailing(branch.state, spec.stage_width(k) - spec.stage_width(terminal));
        arrivals[t].push_back(BranchState{t, std::move(moved), branch.applied});
      }
    }
  }

  CMatrix combined = residual_combine(arrivals[terminal], spec);
  std::vector<BranchState> log;
  for (int stage = 1; stage <= terminal; ++stage) {
    for (BranchState& branch : arrivals[stage]) {
      log.push_back(std::move(branch));
    }
  }
  return {std::move(combined), std::move(log)};
}

std::pair<CMatrix, std::vector<BranchState>> feedforward(
    const PureState& phi_in, const NetworkSpec& spec, const PerceptronSet& perceptrons) {
  const CMatrix rho = phi_in * phi_in.adjoint();
  return feedforward_density(rho, spec, perceptrons);
}

}  // namespace resqnn
