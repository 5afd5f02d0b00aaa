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

#ifndef RESQNN_DATAGEN_HPP_
#define RESQNN_DATAGEN_HPP_

#include <cstdint>
#include <vector>

#include "resqnn/qmath.hpp"
#include "resqnn/rng.hpp"
#include "resqnn/training.hpp"

namespace resqnn {

// Everything needed to regenerate one training set deterministically. The
// master seed fans out through the seed_tags streams, so the target unitary,
// the clean inputs, and each corruption pattern are independent of each
// other: changing n_noisy never changes which clean pairs were drawn.
struct DataSetDescriptor {
  int n_in = 0;     // input qubit count (clean generation needs n_in == n_out)
  int n_out = 0;    // output qubit count
  int n_pairs = 0;  // N
  int n_noisy = 0;  // pairs replaced with noise, 0..n_pairs
  std::uint64_t seed = 0;  // master seed
};

// The hidden unitary the network is trained to imitate.
CMatrix make_target_unitary(int n_qubits, Rng& rng);

// Pairs (|phi>, v|phi>) with Haar-random inputs.
std::vector<TrainingPair> make_clean_pairs(const CMatrix& v, int n_pairs, Rng& rng);

// Pairs whose input and target are independent random states (no transform
// relation at all). Draw order per pair: input first, then target.
std::vector<TrainingPair> make_noisy_pairs(int n_in, int n_out, int n_pairs, Rng& rng);

// Replaces a uniformly random size-n subset of the pairs with fresh noisy
// pairs, keeping list order and all other entries bitwise intact. The subset
// comes from a partial Fisher-Yates shuffle; replacements are then drawn in
// ascending index order.
std::vector<TrainingPair> corrupt(const std::vector<TrainingPair>& set, int n, Rng& rng);

// Full descriptor expansion: target unitary from the kTarget stream, clean
// pairs from kPairs, then corrupt(n_noisy) with the kNoise stream re-derived
// per noise level. Requires n_in == n_out.
std::vector<TrainingPair> make_dataset(const DataSetDescriptor& desc);

// The pre-corruption clean pairs of the same descriptor (the "good pairs"
// a noisy run is evaluated against).
std::vector<TrainingPair> make_good_pairs(const DataSetDescriptor& desc);

// Held-out evaluation pairs: same target unitary, fresh inputs from the
// kEval stream.
std::vector<TrainingPair> make_heldout_pairs(const DataSetDescriptor& desc, int n_pairs);

}  // namespace resqnn

#endif  // RESQNN_DATAGEN_HPP_
