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

#include "resqnn/datagen.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace resqnn {

namespace {

void check_descriptor(const DataSetDescriptor& desc) {
  if (desc.n_in < 1 || desc.n_out < 1) {
    throw std::invalid_argument("dataset descriptor: qubit counts must be >= 1");
  }
  if (desc.n_pairs < 1) {
    throw std::invalid_argument("dataset descriptor: need at least one pair");
  }
  if (desc.n_noisy < 0 || desc.n_noisy > desc.n_pairs) {
    throw std::invalid_argument("dataset descriptor: n_noisy must lie in [0, n_pairs]");
  }
  if (desc.n_in != desc.n_out) {
    throw std::invalid_argument("dataset descriptor: clean generation needs n_in == n_out");
  }
}

std::vector<TrainingPair> clean_pairs_from_streams(const DataSetDescriptor& desc,
                                                   std::uint64_t pair_tag) {
  Rng target_rng(Rng::derive(desc.seed, seed_tags::kTarget));
  const CMatrix v = make_target_unitary(desc.n_in, target_rng);
  Rng pair_rng(Rng::derive(desc.seed, pair_tag));
  return make_clean_pairs(v, desc.n_pairs, pair_rng);
}

}  // namespace

CMatrix make_target_unitary(int n_qubits, Rng& rng) {
  if (n_qubits < 1) {
    throw std::invalid_argument("make_target_unitary: need at least one qubit");
  }
  return random_unitary(Eigen::Index{1} << n_qubits, rng);
}

std::vector<TrainingPair> make_clean_pairs(const CMatrix& v, int n_pairs, Rng& rng) {
  if (n_pairs < 0) {
    throw std::invalid_argument("make_clean_pairs: negative pair count");
  }
  const int n_qubits = qubit_count(v.rows());
  if (v.cols() != v.rows() || unitarity_error(v) > 1e-8) {
    throw std::invalid_argument("make_clean_pairs: v is not unitary");
  }
  std::vector<TrainingPair> set;
  set.reserve(n_pairs);
  for (int i = 0; i < n_pairs; ++i) {
    PureState in = random_pure_state(n_qubits, rng);
    PureState out = v * in;
    set.push_back(TrainingPair{std::move(in), std::move(out)});
  }
  return set;
}

std::vector<TrainingPair> make_noisy_pairs(int n_in, int n_out, int n_pairs, Rng& rng) {
  if (n_in < 1 || n_out < 1 || n_pairs < 0) {
    throw std::invalid_argument("make_noisy_pairs: bad dimensions");
  }
  std::vector<TrainingPair> set;
  set.reserve(n_pairs);
  for (int i = 0; i < n_pairs; ++i) {
    PureState in = random_pure_state(n_in, rng);
    PureState out = random_pure_state(n_out, rng);
    set.push_back(TrainingPair{std::move(in), std::move(out)});
  }
  return set;
}

std::vector<TrainingPair> corrupt(const std::vector<TrainingPair>& set, int n, Rng& rng) {
  if (n < 0 || n > static_cast<int>(set.size())) {
    throw std::invalid_argument("corrupt: replacement count exceeds the set");
  }
  std::vector<TrainingPair> out = set;
  if (n == 0) return out;

  // Uniform size-n index subset via a partial Fisher-Yates shuffle.
  std::vector<int> indices(set.size());
  std::iota(indices.begin(), indices.end(), 0);
  for (int i = 0; i < n; ++i) {
    const std::uint64_t pick =
        static_cast<std::uint64_t>(i) + rng.uniform_below(indices.size() - i);
    std::swap(indices[i], indices[pick]);
  }
  std::sort(indices.begin(), indices.begin() + n);

  for (int i = 0; i < n; ++i) {
    TrainingPair& pair = out[indices[i]];
    const int n_in = qubit_count(pair.input.size());
    const int n_out = qubit_count(pair.target.size());
    pair.input = random_pure_state(n_in, rng);
    pair.target = random_pure_state(n_out, rng);
  }
  return out;
}

std::vector<TrainingPair> make_dataset(const DataSetDescriptor& desc) {
  check_descriptor(desc);
  std::vector<TrainingPair> set = clean_pairs_from_streams(desc, seed_tags::kPairs);
  if (desc.n_noisy == 0) return set;
  Rng noise_rng(Rng::derive(Rng::derive(desc.seed, seed_tags::kNoise),
                            static_cast<std::uint64_t>(desc.n_noisy)));
  return corrupt(set, desc.n_noisy, noise_rng);
}

std::vector<TrainingPair> make_good_pairs(const DataSetDescriptor& desc) {
  check_descriptor(desc);
  return clean_pairs_from_streams(desc, seed_tags::kPairs);
}

std::vector<TrainingPair> make_heldout_pairs(const DataSetDescriptor& desc, int n_pairs) {
  check_descriptor(desc);
  Rng target_rng(Rng::derive(desc.seed, seed_tags::kTarget));
  const CMatrix v = make_target_unitary(desc.n_in, target_rng);
  Rng eval_rng(Rng::derive(desc.seed, seed_tags::kEval));
  return make_clean_pairs(v, n_pairs, eval_rng);
}

}  // namespace resqnn
