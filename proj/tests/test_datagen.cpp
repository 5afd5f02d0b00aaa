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

#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "resqnn/qmath.hpp"
#include "resqnn/rng.hpp"

namespace {

using resqnn::CMatrix;
using resqnn::DataSetDescriptor;
using resqnn::PureState;
using resqnn::Rng;
using resqnn::TrainingPair;

bool same_pair(const TrainingPair& a, const TrainingPair& b) {
  return a.input.size() == b.input.size() && a.target.size() == b.target.size() &&
         (a.input - b.input).cwiseAbs().maxCoeff() == 0.0 &&
         (a.target - b.target).cwiseAbs().maxCoeff() == 0.0;
}

}  // namespace

TEST_CASE("make_target_unitary is unitary and seed-stable") {
  Rng rng_a(5);
  Rng rng_b(5);
  const CMatrix v1 = resqnn::make_target_unitary(3, rng_a);
  const CMatrix v2 = resqnn::make_target_unitary(3, rng_b);
  REQUIRE(v1.rows() == 8);
  CHECK(resqnn::unitarity_error(v1) < 1e-12);
  CHECK((v1 - v2).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("make_clean_pairs applies the target unitary to unit inputs") {
  Rng rng(7);
  const CMatrix v = resqnn::make_target_unitary(2, rng);
  const std::vector<TrainingPair> pairs = resqnn::make_clean_pairs(v, 6, rng);
  REQUIRE(pairs.size() == 6);
  for (const TrainingPair& pair : pairs) {
    CHECK(std::abs(pair.input.norm() - 1.0) < 1e-12);
    CHECK(std::abs(pair.target.norm() - 1.0) < 1e-12);
    CHECK((pair.target - v * pair.input).cwiseAbs().maxCoeff() < 1e-12);
  }
  CHECK_THROWS_AS(resqnn::make_clean_pairs(2.0 * v, 2, rng), std::invalid_argument);
}

TEST_CASE("make_noisy_pairs draws unrelated unit states") {
  Rng rng(11);
  const std::vector<TrainingPair> pairs = resqnn::make_noisy_pairs(2, 1, 4, rng);
  REQUIRE(pairs.size() == 4);
  for (const TrainingPair& pair : pairs) {
    CHECK(pair.input.size() == 4);
    CHECK(pair.target.size() == 2);
    CHECK(std::abs(pair.input.norm() - 1.0) < 1e-12);
    CHECK(std::abs(pair.target.norm() - 1.0) < 1e-12);
  }

  // Mean squared overlap of two independent random n-qubit states is 1/2^n.
  Rng stat_rng(13);
  const int draws = 400;
  double mean = 0.0;
  for (int i = 0; i < draws; ++i) {
    const auto sample = resqnn::make_noisy_pairs(2, 2, 1, stat_rng);
    mean += std::norm(sample[0].input.dot(sample[0].target));
  }
  mean /= draws;
  CHECK(std::abs(mean - 0.25) < 0.05);
}

TEST_CASE("corrupt replaces exactly the requested number of pairs") {
  Rng rng(17);
  const CMatrix v = resqnn::make_target_unitary(2, rng);
  const std::vector<TrainingPair> clean = resqnn::make_clean_pairs(v, 30, rng);

  Rng noise_rng(19);
  const std::vector<TrainingPair> untouched = resqnn::corrupt(clean, 0, noise_rng);
  REQUIRE(untouched.size() == clean.size());
  for (size_t i = 0; i < clean.size(); ++i) {
    CHECK(same_pair(untouched[i], clean[i]));
  }

  Rng noise_rng2(19);
  const std::vector<TrainingPair> partial = resqnn::corrupt(clean, 5, noise_rng2);
  int changed = 0;
  for (size_t i = 0; i < clean.size(); ++i) {
    if (!same_pair(partial[i], clean[i])) ++changed;
  }
  CHECK(changed == 5);
  // Replaced entries are noise, not transformed inputs.
  for (size_t i = 0; i < clean.size(); ++i) {
    if (!same_pair(partial[i], clean[i])) {
      CHECK((partial[i].target - v * partial[i].input).cwiseAbs().maxCoeff() > 1e-3);
    }
  }

  Rng noise_rng3(19);
  const std::vector<TrainingPair> all = resqnn::corrupt(clean, 30, noise_rng3);
  int survivors = 0;
  for (size_t i = 0; i < clean.size(); ++i) {
    if (same_pair(all[i], clean[i])) ++survivors;
  }
  CHECK(survivors == 0);

  CHECK_THROWS_AS(resqnn::corrupt(clean, 31, noise_rng3), std::invalid_argument);
  CHECK_THROWS_AS(resqnn::corrupt(clean, -1, noise_rng3), std::invalid_argument);
}

TEST_CASE("make_dataset is deterministic and leaves clean pairs untouched") {
  DataSetDescriptor desc;
  desc.n_in = 2;
  desc.n_out = 2;
  desc.n_pairs = 10;
  desc.n_noisy = 4;
  desc.seed = 99;

  const std::vector<TrainingPair> a = resqnn::make_dataset(desc);
  const std::vector<TrainingPair> b = resqnn::make_dataset(desc);
  REQUIRE(a.size() == 10);
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(same_pair(a[i], b[i]));
  }

  // The pre-corruption set is recoverable and matches at unreplaced slots.
  const std::vector<TrainingPair> good = resqnn::make_good_pairs(desc);
  REQUIRE(good.size() == 10);
  int kept = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    if (same_pair(a[i], good[i])) ++kept;
  }
  CHECK(kept == 6);

  // Changing only the noise level must not change the clean pairs: the
  // corruption stream is derived per level, not shared.
  DataSetDescriptor other = desc;
  other.n_noisy = 7;
  const std::vector<TrainingPair> good_other = resqnn::make_good_pairs(other);
  for (size_t i = 0; i < good.size(); ++i) {
    CHECK(same_pair(good[i], good_other[i]));
  }

  // A clean descriptor reproduces the good pairs exactly.
  DataSetDescriptor clean = desc;
  clean.n_noisy = 0;
  const std::vector<TrainingPair> clean_set = resqnn::make_dataset(clean);
  for (size_t i = 0; i < clean_set.size(); ++i) {
    CHECK(same_pair(clean_set[i], good[i]));
  }
}

TEST_CASE("make_heldout_pairs shares the target unitary but not the inputs") {
  DataSetDescriptor desc;
  desc.n_in = 2;
  desc.n_out = 2;
  desc.n_pairs = 6;
  desc.seed = 123;

  const std::vector<TrainingPair> held = resqnn::make_heldout_pairs(desc, 4);
  REQUIRE(held.size() == 4);

  // Same unknown unitary as the training pairs of this descriptor.
  Rng target_rng(Rng::derive(desc.seed, resqnn::seed_tags::kTarget));
  const CMatrix v = resqnn::make_target_unitary(2, target_rng);
  for (const TrainingPair& pair : held) {
    CHECK((pair.target - v * pair.input).cwiseAbs().maxCoeff() < 1e-12);
  }

  // Inputs differ from every training input.
  const std::vector<TrainingPair> train_set = resqnn::make_good_pairs(desc);
  for (const TrainingPair& h : held) {
    for (const TrainingPair& t : train_set) {
      CHECK((h.input - t.input).cwiseAbs().maxCoeff() > 1e-6);
    }
  }
}

TEST_CASE("descriptor validation rejects mismatched widths") {
  DataSetDescriptor desc;
  desc.n_in = 2;
  desc.n_out = 1;
  desc.n_pairs = 2;
  CHECK_THROWS_AS(resqnn::make_dataset(desc), std::invalid_argument);
  desc.n_out = 2;
  desc.n_pairs = 0;
  CHECK_THROWS_AS(resqnn::make_dataset(desc), std::invalid_argument);
}
