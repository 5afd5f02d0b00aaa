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

#ifndef RESQNN_QMATH_HPP_
#define RESQNN_QMATH_HPP_

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "resqnn/rng.hpp"

namespace resqnn {

// Dense complex carriers for states, density operators and unitaries.
//
// Qubit index convention (fixed across the whole library): qubit 0 is the
// leftmost Kronecker factor, i.e. the MOST significant bit of a row/column
// index. For an n-qubit space, basis index b assigns to qubit q the bit
// (b >> (n - 1 - q)) & 1.
using CMatrix = Eigen::MatrixXcd;
using PureState = Eigen::VectorXcd;
using Complex = std::complex<double>;

// Thrown when a numeric invariant is violated (non-Hermitian input where
// Hermitian is required, cost out of bounds, ...). The CLI maps this to its
// "numeric violation" exit code, distinct from usage errors
// (std::invalid_argument).
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

// Number of qubits for a 2^n-dimensional operator/state; throws
// std::invalid_argument if the dimension is not a power of two.
int qubit_count(Eigen::Index dim);

// Kronecker product; result[(i*p+r),(j*q+c)] = a(i,j)*b(r,c).
CMatrix kron(const CMatrix& a, const CMatrix& b);
PureState kron_vec(const PureState& a, const PureState& b);

// Reduced operator on the kept qubits (kept order preserved: result qubit i
// is input qubit keep[i]); all other qubits are traced out.
CMatrix partial_trace(const CMatrix& m, const std::vector<int>& keep);

// n-qubit operator acting as u on `targets` (in the given order, target 0 =
// most significant local qubit) and as identity elsewhere.
CMatrix embed(const CMatrix& u, int total_qubits, const std::vector<int>& targets);

// e^{i*eps*k} for Hermitian k via eigendecomposition; exactly unitary up to
// rounding. Throws NumericError if k deviates from Hermitian beyond 1e-10.
CMatrix expm_i_herm(const CMatrix& k, double eps);

// Haar-ish random state: each amplitude gets independent standard-normal
// real and imaginary parts, then the vector is normalized.
PureState random_pure_state(int n_qubits, Rng& rng);

// Haar-random unitary: QR of a complex Gaussian matrix with the R-diagonal
// phase correction (plain QR is not Haar).
CMatrix random_unitary(Eigen::Index dim, Rng& rng);

// <phi|rho|phi>. Verifies the imaginary part is <= 1e-10 and discards it.
double fidelity_pure(const PureState& phi, const CMatrix& rho);

// All 4^k k-fold Kronecker products of {I, X, Y, Z}, ordered by base-4
// digits of the list index with qubit 0 as the most significant digit
// (k=1 -> [I, X, Y, Z]). tr(G_i G_j) = 2^k delta_ij.
std::vector<CMatrix> pauli_products(int k);

// Max-abs deviation from the identity of u*u^dagger; unitarity diagnostic.
double unitarity_error(const CMatrix& u);

}  // namespace resqnn

#endif  // RESQNN_QMATH_HPP_
