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

#include "resqnn/qmath.hpp"

#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "resqnn/rng.hpp"

namespace {

using resqnn::CMatrix;
using resqnn::Complex;
using resqnn::PureState;
using resqnn::Rng;

const Complex kI(0.0, 1.0);

CMatrix random_hermitian(Eigen::Index dim, Rng& rng) {
  CMatrix a(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      a(i, j) = Complex(rng.gaussian(), rng.gaussian());
    }
  }
  return 0.5 * (a + a.adjoint().eval());
}

double max_abs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("qubit_count inverts powers of two and rejects the rest") {
  CHECK(resqnn::qubit_count(1) == 0);
  CHECK(resqnn::qubit_count(2) == 1);
  CHECK(resqnn::qubit_count(8) == 3);
  CHECK(resqnn::qubit_count(1024) == 10);
  CHECK_THROWS_AS(resqnn::qubit_count(0), std::invalid_argument);
  CHECK_THROWS_AS(resqnn::qubit_count(3), std::invalid_argument);
  CHECK_THROWS_AS(resqnn::qubit_count(12), std::invalid_argument);
}

TEST_CASE("kron matches the block definition entry by entry") {
  Rng rng(7);
  CMatrix a(2, 3), b(3, 2);
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    a(i) = Complex(rng.gaussian(), rng.gaussian());
  }
  for (Eigen::Index i = 0; i < b.size(); ++i) {
    b(i) = Complex(rng.gaussian(), rng.gaussian());
  }
  const CMatrix k = resqnn::kron(a, b);
  REQUIRE(k.rows() == 6);
  REQUIRE(k.cols() == 6);
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      for (Eigen::Index r = 0; r < b.rows(); ++r) {
        for (Eigen::Index c = 0; c < b.cols(); ++c) {
          CHECK(k(i * b.rows() + r, j * b.cols() + c) == a(i, j) * b(r, c));
        }
      }
    }
  }

  PureState u(2), v(2);
  u << Complex(1, 0), Complex(0, 2);
  v << Complex(3, 0), Complex(0, -1);
  const PureState w = resqnn::kron_vec(u, v);
  REQUIRE(w.size() == 4);
  CHECK(w(0) == u(0) * v(0));
  CHECK(w(1) == u(0) * v(1));
  CHECK(w(2) == u(1) * v(0));
  CHECK(w(3) == u(1) * v(1));
}

TEST_CASE("partial_trace reduces Kronecker factors and preserves trace") {
  Rng rng(11);
  const CMatrix a = random_hermitian(2, rng);
  const CMatrix b = random_hermitian(4, rng);
  const CMatrix ab = resqnn::kron(a, b);

  // Keep qubit 0 (the a factor): result = a * tr(b).
  const CMatrix keep_a = resqnn::partial_trace(ab, {0});
  CHECK(max_abs(keep_a - a * b.trace()) < 1e-12);

  // Keep qubits 1,2 (the b factor).
  const CMatrix keep_b = resqnn::partial_trace(ab, {1, 2});
  CHECK(max_abs(keep_b - b * a.trace()) < 1e-12);

  // Keep order is respected: {1, 0} on a (2 qubit) product swaps factors.
  const CMatrix c = random_hermitian(2, rng);
  const CMatrix ac = resqnn::kron(a, c);
  const CMatrix swapped = resqnn::partial_trace(ac, {1, 0});
  CHECK(max_abs(swapped - resqnn::kron(c, a)) < 1e-12);

  // Trace is preserved whatever is kept.
  const CMatrix m = random_hermitian(8, rng);
  CHECK(std::abs((resqnn::partial_trace(m, {0, 2}).trace() - m.trace())) < 1e-12);
  CHECK(std::abs((resqnn::partial_trace(m, {1}).trace() - m.trace())) < 1e-12);
}

TEST_CASE("embed places operators on the requested qubits") {
  Rng rng(13);
  const CMatrix id2 = CMatrix::Identity(2, 2);
  const CMatrix u = resqnn::random_unitary(2, rng);

  CHECK(max_abs(resqnn::embed(u, 2, {0}) - resqnn::kron(u, id2)) < 1e-14);
  CHECK(max_abs(resqnn::embed(u, 2, {1}) - resqnn::kron(id2, u)) < 1e-14);
  CHECK(max_abs(resqnn::embed(u, 3, {1}) - resqnn::kron(id2, resqnn::kron(u, id2))) <
        1e-14);

  // Reversed target order must equal conjugation by the explicit swap.
  CMatrix swap = CMatrix::Zero(4, 4);
  swap(0, 0) = 1;
  swap(1, 2) = 1;
  swap(2, 1) = 1;
  swap(3, 3) = 1;
  const CMatrix v = resqnn::random_unitary(4, rng);
  const CMatrix direct = resqnn::embed(v, 2, {1, 0});
  const CMatrix via_swap = swap * resqnn::embed(v, 2, {0, 1}) * swap;
  CHECK(max_abs(direct - via_swap) < 1e-13);

  // Non-adjacent targets on three qubits, checked against a permutation-free
  // construction: embed on {0, 2} must commute with an operator on qubit 1.
  const CMatrix w = resqnn::embed(v, 3, {0, 2});
  const CMatrix mid = resqnn::embed(u, 3, {1});
  CHECK(max_abs(w * mid - mid * w) < 1e-13);
  CHECK(resqnn::unitarity_error(w) < 1e-13);
}

TEST_CASE("expm_i_herm is unitary and matches the diagonal case") {
  Rng rng(17);
  const double eps = 0.37;

  CMatrix z(2, 2);
  z << 1, 0, 0, -1;
  const CMatrix ez = resqnn::expm_i_herm(z, eps);
  CHECK(std::abs(ez(0, 0) - std::exp(kI * eps)) < 1e-14);
  CHECK(std::abs(ez(1, 1) - std::exp(-kI * eps)) < 1e-14);
  CHECK(std::abs(ez(0, 1)) < 1e-14);

  const CMatrix k = random_hermitian(8, rng);
  const CMatrix u = resqnn::expm_i_herm(k, eps);
  CHECK(resqnn::unitarity_error(u) < 1e-12);

  // First-order expansion: e^{i d k} = 1 + i d k + O(d^2).
  const double d = 1e-6;
  const CMatrix lin = resqnn::expm_i_herm(k, d) - CMatrix::Identity(8, 8) - kI * d * k;
  CHECK(max_abs(lin) < 1e-10);

  CMatrix not_herm = CMatrix::Zero(2, 2);
  not_herm(0, 1) = 1.0;
  CHECK_THROWS_AS(resqnn::expm_i_herm(not_herm, eps), resqnn::NumericError);
}

TEST_CASE("random states are normalized and reproducible") {
  Rng rng_a(23);
  Rng rng_b(23);
  const PureState s1 = resqnn::random_pure_state(3, rng_a);
  const PureState s2 = resqnn::random_pure_state(3, rng_b);
  CHECK(std::abs(s1.norm() - 1.0) < 1e-12);
  CHECK(max_abs(s1 - s2) == 0.0);
  const PureState s3 = resqnn::random_pure_state(3, rng_a);
  CHECK(max_abs(s1 - s3) > 1e-3);  // the stream moved on
}

TEST_CASE("random_unitary is unitary and has uniform second moments") {
  Rng rng(29);
  const CMatrix u = resqnn::random_unitary(8, rng);
  CHECK(resqnn::unitarity_error(u) < 1e-12);

  // For a Haar draw on dimension d, E|u_ij|^2 = 1/d for every entry. The
  // plain-QR construction without the phase fix would skew the first row.
  const int draws = 300;
  const Eigen::Index dim = 4;
  double m00 = 0.0, m30 = 0.0;
  for (int i = 0; i < draws; ++i) {
    const CMatrix v = resqnn::random_unitary(dim, rng);
    m00 += std::norm(v(0, 0));
    m30 += std::norm(v(3, 0));
  }
  m00 /= draws;
  m30 /= draws;
  CHECK(std::abs(m00 - 0.25) < 0.05);
  CHECK(std::abs(m30 - 0.25) < 0.05);
}

TEST_CASE("fidelity_pure is the overlap with the projector") {
  Rng rng(31);
  const PureState phi = resqnn::random_pure_state(2, rng);
  const PureState psi = resqnn::random_pure_state(2, rng);
  const CMatrix rho = psi * psi.adjoint();
  const double f = resqnn::fidelity_pure(phi, rho);
  CHECK(f == doctest::Approx(std::norm((phi.adjoint() * psi)(0, 0))).epsilon(1e-12));
  CHECK(f >= 0.0);
  CHECK(f <= 1.0 + 1e-12);
  CHECK(resqnn::fidelity_pure(phi, phi * phi.adjoint()) == doctest::Approx(1.0));
}

TEST_CASE("pauli_products spans operator space orthogonally") {
  const std::vector<CMatrix> one = resqnn::pauli_products(1);
  REQUIRE(one.size() == 4);
  CHECK(max_abs(one[0] - CMatrix::Identity(2, 2)) == 0.0);
  CMatrix x(2, 2), y(2, 2), z(2, 2);
  x << 0, 1, 1, 0;
  y << 0, -kI, kI, 0;
  z << 1, 0, 0, -1;
  CHECK(max_abs(one[1] - x) == 0.0);
  CHECK(max_abs(one[2] - y) == 0.0);
  CHECK(max_abs(one[3] - z) == 0.0);

  const std::vector<CMatrix> two = resqnn::pauli_products(2);
  REQUIRE(two.size() == 16);
  // Index order: qubit 0 is the most significant base-4 digit.
  CHECK(max_abs(two[1 * 4 + 2] - resqnn::kron(x, y)) == 0.0);
  for (size_t i = 0; i < two.size(); ++i) {
    for (size_t j = 0; j < two.size(); ++j) {
      const Complex t = (two[i] * two[j]).trace();
      CHECK(std::abs(t - (i == j ? Complex(4, 0) : Complex(0, 0))) < 1e-14);
    }
  }

  // Completeness: sum_G tr(G M) G = 2^k M for any M.
  Rng rng(37);
  CMatrix m(4, 4);
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    m(i) = Complex(rng.gaussian(), rng.gaussian());
  }
  CMatrix rebuilt = CMatrix::Zero(4, 4);
  for (const CMatrix& g : two) rebuilt += (g * m).trace() * g;
  CHECK(max_abs(rebuilt - 4.0 * m) < 1e-12);
}

TEST_CASE("unitarity_error flags non-unitary operators") {
  CHECK(resqnn::unitarity_error(CMatrix::Identity(4, 4)) == 0.0);
  CHECK(resqnn::unitarity_error(2.0 * CMatrix::Identity(2, 2)) ==
        doctest::Approx(3.0).epsilon(1e-12));
}
