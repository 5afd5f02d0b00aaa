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

#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "resqnn/datagen.hpp"
#include "resqnn/network.hpp"
#include "resqnn/qmath.hpp"
#include "resqnn/rng.hpp"

namespace {

using resqnn::CMatrix;
using resqnn::Complex;
using resqnn::HyperParams;
using resqnn::KSet;
using resqnn::NetworkSpec;
using resqnn::PerceptronSet;
using resqnn::PureState;
using resqnn::Rng;
using resqnn::TrainingPair;

double max_abs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

std::vector<TrainingPair> random_pairs(int n_in, int n_out, int n, Rng& rng) {
  return resqnn::make_noisy_pairs(n_in, n_out, n, rng);
}

}  // namespace

TEST_CASE("k_matrix agrees with the finite-difference oracle") {
  Rng rng(101);
  const double eta = 1.0;
  for (const char* text : {"2,3,2", "1,2~,1"}) {
    const NetworkSpec spec = resqnn::parse_spec(text);
    const PerceptronSet params = PerceptronSet::random_init(spec, rng);
    const std::vector<TrainingPair> set =
        random_pairs(spec.widths.front(), spec.widths.back(), 2, rng);
    for (int l = 1; l <= spec.layer_count(); ++l) {
      for (int j = 1; j <= spec.stage_width(l + 1); ++j) {
        const CMatrix k = resqnn::k_matrix(spec, params, set, l, j, eta);
        const CMatrix fd = resqnn::k_matrix_fd_oracle(spec, params, set, l, j, 1e-4, eta);
        CAPTURE(text);
        CAPTURE(l);
        CAPTURE(j);
        CHECK(max_abs(k - fd) < 1e-6);
      }
    }
  }
}

TEST_CASE("k_matrix agrees with the unrolled oracle where terms are complete") {
  Rng rng(103);
  const double eta = 0.7;
  for (const char* text : {"1,2~,1", "2,3~,2"}) {
    const NetworkSpec spec = resqnn::parse_spec(text);
    const PerceptronSet params = PerceptronSet::random_init(spec, rng);
    const std::vector<TrainingPair> set =
        random_pairs(spec.widths.front(), spec.widths.back(), 2, rng);
    for (int l = 1; l <= spec.layer_count(); ++l) {
      REQUIRE(resqnn::oracle_terms_complete(spec, l));
      for (int j = 1; j <= spec.stage_width(l + 1); ++j) {
        const CMatrix k = resqnn::k_matrix(spec, params, set, l, j, eta);
        const CMatrix un = resqnn::k_matrix_unrolled_oracle(spec, params, set, l, j, eta);
        CAPTURE(text);
        CAPTURE(l);
        CAPTURE(j);
        CHECK(max_abs(k - un) < 1e-10);
      }
    }
  }
}

TEST_CASE("published term list for the deep residual network misses one branch") {
  const NetworkSpec spec = resqnn::parse_spec("2,3~,3~,2");
  CHECK(resqnn::oracle_terms_complete(spec, 1));
  CHECK(resqnn::oracle_terms_complete(spec, 2));
  CHECK_FALSE(resqnn::oracle_terms_complete(spec, 3));

  const auto terms = resqnn::oracle_term_paths(spec, 3);
  REQUIRE(terms.size() == 3);
  CHECK(terms[0] == std::vector<int>{1, 2, 3});
  CHECK(terms[1] == std::vector<int>{3});
  CHECK(terms[2] == std::vector<int>{1, 3});

  // The gradient decomposes exactly over branches, so the gap between the
  // recursive k_matrix and the listed terms is precisely the absent branch.
  Rng rng(107);
  const PerceptronSet params = PerceptronSet::random_init(spec, rng);
  const std::vector<TrainingPair> set = random_pairs(2, 2, 1, rng);
  const double eta = 1.0;
  const CMatrix k = resqnn::k_matrix(spec, params, set, 3, 1, eta);
  const CMatrix listed = resqnn::k_matrix_unrolled_oracle(spec, params, set, 3, 1, eta);
  const CMatrix missing =
      resqnn::k_matrix_single_path(spec, params, set, {2, 3}, 3, 1, eta);
  CHECK(max_abs(k - (listed + missing)) < 1e-10);
  CHECK(max_abs(k - listed) > 1e-6);  // the gap is real, not rounding
}

TEST_CASE("oracle_term_paths covers plain chains and rejects unknown shapes") {
  const NetworkSpec plain = resqnn::parse_spec("2,3,3,2");
  for (int l = 1; l <= 3; ++l) {
    const auto terms = resqnn::oracle_term_paths(plain, l);
    REQUIRE(terms.size() == 1);
    CHECK(terms[0] == std::vector<int>{1, 2, 3});
    CHECK(resqnn::oracle_terms_complete(plain, l));
  }
  const NetworkSpec out_res = resqnn::parse_spec("1,2~,1~");
  CHECK_THROWS_AS(resqnn::oracle_term_paths(out_res, 1), std::invalid_argument);
}

TEST_CASE("k_matrix is Hermitian and linear in the learning rate") {
  Rng rng(109);
  const NetworkSpec spec = resqnn::parse_spec("2,3~,2");
  const PerceptronSet params = PerceptronSet::random_init(spec, rng);
  const std::vector<TrainingPair> set = random_pairs(2, 2, 3, rng);

  const CMatrix k1 = resqnn::k_matrix(spec, params, set, 1, 2, 1.0);
  const CMatrix k2 = resqnn::k_matrix(spec, params, set, 1, 2, 2.0);
  CHECK(max_abs(k1 - k1.adjoint()) < 1e-12);
  CHECK(max_abs(k2 - 2.0 * k1) < 1e-12);

  // The batched variant reproduces the single-layer entry point.
  const KSet all = resqnn::k_matrix_all(spec, params, set, 1.0);
  REQUIRE(all.size() == 2);
  REQUIRE(all[0].size() == 3);
  REQUIRE(all[1].size() == 2);
  CHECK(max_abs(all[0][1] - k1) < 1e-14);
}

TEST_CASE("cost and mean_output_fidelity differ by the path count") {
  Rng rng(113);
  const NetworkSpec spec = resqnn::parse_spec("2,3~,2");
  const PerceptronSet params = PerceptronSet::random_init(spec, rng);
  const std::vector<TrainingPair> set = random_pairs(2, 2, 4, rng);

  const double c = resqnn::cost(set, spec, params);
  const double f = resqnn::mean_output_fidelity(set, spec, params);
  CHECK(f == doctest::Approx(2.0 * c).epsilon(1e-12));
  CHECK(c >= 0.0);
  CHECK(c <= 1.0 + 1e-10);
  CHECK(resqnn::evaluate(set, spec, params) == c);

  // In pmix mode the output is a unit-trace state, so no normalization.
  const NetworkSpec mix = resqnn::parse_spec("2,3~,2;p=0.4");
  const double cm = resqnn::cost(set, mix, params);
  const double fm = resqnn::mean_output_fidelity(set, mix, params);
  CHECK(cm == doctest::Approx(fm).epsilon(1e-12));
}

TEST_CASE("cost reproduces a hand-computed single-layer example") {
  // One layer, one qubit, identity perceptron: the channel discards the
  // input and emits |0><0|, so the cost is the mean overlap of the targets
  // with |0>.
  NetworkSpec spec;
  spec.widths = {1, 1};
  PerceptronSet params;
  params.layers.push_back({CMatrix::Identity(4, 4)});

  Rng rng(127);
  const std::vector<TrainingPair> set = random_pairs(1, 1, 5, rng);
  double want = 0.0;
  for (const TrainingPair& pair : set) {
    want += std::norm(pair.target(0));
  }
  want /= set.size();
  CHECK(resqnn::cost(set, spec, params) == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("dcost_ds_analytic is nonnegative and matches a secant") {
  Rng rng(131);
  for (const char* text : {"2,3~,2", "1,2~,1~", "2,3~,2;p=0.5"}) {
    const NetworkSpec spec = resqnn::parse_spec(text);
    const PerceptronSet params = PerceptronSet::random_init(spec, rng);
    const std::vector<TrainingPair> set =
        random_pairs(spec.widths.front(), spec.widths.back(), 2, rng);
    const KSet k_all = resqnn::k_matrix_all(spec, params, set, 1.0);
    CAPTURE(text);
    CHECK(resqnn::dcost_ds_analytic(spec, params, set, k_all) >= 0.0);
  }

  const NetworkSpec spec = resqnn::parse_spec("1,2~,1");
  const PerceptronSet params = PerceptronSet::random_init(spec, rng);
  const std::vector<TrainingPair> set = random_pairs(1, 1, 3, rng);
  HyperParams hp;
  hp.eta = 1.0;
  hp.eps = 1e-3;
  const KSet k_all = resqnn::k_matrix_all(spec, params, set, hp.eta);
  const double analytic = resqnn::dcost_ds_analytic(spec, params, set, k_all);
  const double before = resqnn::cost(set, spec, params);
  const PerceptronSet stepped = resqnn::update_step(spec, params, set, hp);
  const double secant = (resqnn::cost(set, spec, stepped) - before) / hp.eps;
  REQUIRE(analytic > 0.0);
  CHECK(std::abs(secant - analytic) / analytic < 0.1);
}

TEST_CASE("update_step keeps perceptrons unitary and raises the cost") {
  Rng rng(137);
  const NetworkSpec spec = resqnn::parse_spec("2,3~,2");
  const PerceptronSet params = PerceptronSet::random_init(spec, rng);
  const std::vector<TrainingPair> set = random_pairs(2, 2, 4, rng);
  HyperParams hp;
  hp.eta = 1.0 / 1.8;
  hp.eps = 0.05;
  const PerceptronSet stepped = resqnn::update_step(spec, params, set, hp);
  for (const auto& layer : stepped.layers) {
    for (const CMatrix& u : layer) {
      CHECK(resqnn::unitarity_error(u) < 1e-12);
    }
  }
  CHECK(resqnn::cost(set, spec, stepped) > resqnn::cost(set, spec, params));
}

TEST_CASE("train is deterministic and logs one point per round plus the result") {
  const NetworkSpec spec = resqnn::parse_spec("1,2~,1");
  Rng rng(139);
  const std::vector<TrainingPair> set = random_pairs(1, 1, 4, rng);
  HyperParams hp;
  hp.eta = 1.0 / 1.8;
  hp.eps = 0.1;
  hp.rounds = 10;
  hp.seed = 42;

  const auto [params_a, trace_a] = resqnn::train(spec, set, hp);
  const auto [params_b, trace_b] = resqnn::train(spec, set, hp);
  REQUIRE(trace_a.size() == 11);
  CHECK(trace_a.front().round == 0);
  CHECK(trace_a.back().round == 10);
  for (size_t i = 0; i < trace_a.size(); ++i) {
    CHECK(trace_a[i].cost == trace_b[i].cost);  // bitwise reproducible
  }
  CHECK(max_abs(params_a.unit(2, 1) - params_b.unit(2, 1)) == 0.0);
  // Ten rounds of ascent on a tiny problem visibly improve the cost.
  CHECK(trace_a.back().cost > trace_a.front().cost);

  HyperParams zero = hp;
  zero.rounds = 0;
  const auto [params_c, trace_c] = resqnn::train(spec, set, zero);
  REQUIRE(trace_c.size() == 1);
  CHECK(trace_c[0].round == 0);
  CHECK(trace_c[0].cost == trace_a[0].cost);  // same init, no updates yet
}

TEST_CASE("pmix at p = 0 reproduces the residual-stripped network bitwise") {
  const NetworkSpec mix = resqnn::parse_spec("2,3~,2;p=0");
  const NetworkSpec plain = resqnn::parse_spec("2,3,2");
  Rng rng(149);
  const std::vector<TrainingPair> set = random_pairs(2, 2, 3, rng);
  HyperParams hp;
  hp.eta = 0.5;
  hp.eps = 0.1;
  hp.rounds = 5;
  hp.seed = 7;
  const auto [params_mix, trace_mix] = resqnn::train(mix, set, hp);
  const auto [params_plain, trace_plain] = resqnn::train(plain, set, hp);
  REQUIRE(trace_mix.size() == trace_plain.size());
  for (size_t i = 0; i < trace_mix.size(); ++i) {
    CHECK(trace_mix[i].cost == trace_plain[i].cost);
  }
  CHECK(max_abs(params_mix.unit(1, 1) - params_plain.unit(1, 1)) == 0.0);
}

TEST_CASE("pmix at p = 1 freezes the bypassed layer") {
  Rng rng(151);
  const NetworkSpec spec = resqnn::parse_spec("1,2~,1;p=1");
  const PerceptronSet params = PerceptronSet::random_init(spec, rng);
  const std::vector<TrainingPair> set = random_pairs(1, 1, 3, rng);
  // The applied branch of layer 1 carries weight 1 - p = 0, so its update
  // generator vanishes identically.
  CHECK(max_abs(resqnn::k_matrix(spec, params, set, 1, 1, 1.0)) == 0.0);
  CHECK(max_abs(resqnn::k_matrix(spec, params, set, 1, 2, 1.0)) == 0.0);
  CHECK(max_abs(resqnn::k_matrix(spec, params, set, 2, 1, 1.0)) > 0.0);
}

TEST_CASE("training interfaces reject invalid arguments") {
  Rng rng(157);
  const NetworkSpec spec = resqnn::parse_spec("1,2~,1");
  const PerceptronSet params = PerceptronSet::random_init(spec, rng);
  const std::vector<TrainingPair> set = random_pairs(1, 1, 2, rng);

  CHECK_THROWS_AS(resqnn::cost({}, spec, params), std::invalid_argument);
  CHECK_THROWS_AS(resqnn::k_matrix(spec, params, set, 0, 1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(resqnn::k_matrix(spec, params, set, 3, 1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(resqnn::k_matrix(spec, params, set, 1, 3, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(resqnn::k_matrix_fd_oracle(spec, params, set, 1, 1, 0.0, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(resqnn::k_matrix_fd_oracle(spec, params, set, 1, 1, 0.5, 1.0),
                  std::invalid_argument);

  HyperParams bad;
  bad.rounds = -1;
  CHECK_THROWS_AS(resqnn::train(spec, set, bad), std::invalid_argument);
  bad.rounds = 1;
  bad.eps = 0.0;
  CHECK_THROWS_AS(resqnn::train(spec, set, bad), std::invalid_argument);

  // A target that is not a unit vector drives the fidelity out of range.
  NetworkSpec tiny;
  tiny.widths = {1, 1};
  PerceptronSet identity;
  identity.layers.push_back({CMatrix::Identity(4, 4)});
  std::vector<TrainingPair> sure;
  PureState zero_state = PureState::Zero(2);
  zero_state(0) = 1.0;
  sure.push_back(TrainingPair{zero_state, 2.0 * zero_state});
  CHECK_THROWS_AS(resqnn::cost(sure, tiny, identity), resqnn::NumericError);
}
