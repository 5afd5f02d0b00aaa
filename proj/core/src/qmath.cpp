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

#include <algorithm>
#include <cmath>

namespace resqnn {

int qubit_count(Eigen::Index dim) {
  if (dim < 1 || (dim & (dim - 1)) != 0) {
    throw std::invalid_argument("dimension " + std::to_string(dim) +
                                " is not a power of two");
  }
  int n = 0;
  while ((Eigen::Index{1} << n) < dim) ++n;
  return n;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

PureState kron_vec(const PureState& a, const PureState& b) {
  PureState out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a(i) * b;
  }
  return out;
}

CMatrix partial_trace(const CMatrix& m, const std::vector<int>& keep) {
  if (m.rows() != m.cols()) throw std::invalid_argument("partial_trace: non-square input");
  const int n = qubit_count(m.rows());
  std::vector<bool> kept(n, false);
  for (int q : keep) {
    if (q < 0 || q >= n) throw std::invalid_argument("partial_trace: qubit index out of range");
    if (kept[q]) throw std::invalid_argument("partial_trace: duplicate kept qubit");
    kept[q] = true;
  }
  std::vector<int> rest;
  for (int q = 0; q < n; ++q) {
    if (!kept[q]) rest.push_back(q);
  }
  const int k = static_cast<int>(keep.size());
  const int r = n - k;
  const Eigen::Index dk = Eigen::Index{1} << k;
  const Eigen::Index dr = Eigen::Index{1} << r;

  // Scatter a local index (bit i of the local value belongs to local qubit i,
  // qubit 0 most significant) into the global index.
  auto scatter = [n](Eigen::Index local, const std::vector<int>& qubits) {
    Eigen::Index g = 0;
    const int sz = static_cast<int>(qubits.size());
    for (int i = 0; i < sz; ++i) {
      const Eigen::Index bit = (local >> (sz - 1 - i)) & 1;
      g |= bit << (n - 1 - qubits[i]);
    }
    return g;
  };

  std::vector<Eigen::Index> keep_base(dk), rest_base(dr);
  for (Eigen::Index p = 0; p < dk; ++p) keep_base[p] = scatter(p, keep);
  for (Eigen::Index t = 0; t < dr; ++t) rest_base[t] = scatter(t, rest);

  CMatrix out = CMatrix::Zero(dk, dk);
  for (Eigen::Index p = 0; p < dk; ++p) {
    for (Eigen::Index q = 0; q < dk; ++q) {
      Complex acc = 0.0;
      for (Eigen::Index t = 0; t < dr; ++t) {
        acc += m(keep_base[p] | rest_base[t], keep_base[q] | rest_base[t]);
      }
      out(p, q) = acc;
    }
  }
  return out;
}

CMatrix embed(const CMatrix& u, int total_qubits, const std::vector<int>& targets) {
  if (u.rows() != u.cols()) throw std::invalid_argument("embed: non-square operator");
  const int k = qubit_count(u.rows());
  if (static_cast<int>(targets.size()) != k) {
    throw std::invalid_argument("embed: target count does not match operator size");
  }
  std::vector<bool> seen(total_qubits, false);
  for (int q : targets) {
    if (q < 0 || q >= total_qubits) throw std::invalid_argument("embed: target out of range");
    if (seen[q]) throw std::invalid_argument("embed: duplicate target");
    seen[q] = true;
  }
  std::vector<int> rest;
  for (int q = 0; q < total_qubits; ++q) {
    if (!seen[q]) rest.push_back(q);
  }
  const int r = total_qubits - k;
  const Eigen::Index dk = Eigen::Index{1} << k;
  const Eigen::Index dr = Eigen::Index{1} << r;
  const Eigen::Index dn = Eigen::Index{1} << total_qubits;

  auto scatter = [total_qubits](Eigen::Index local, const std::vector<int>& qubits) {
    Eigen::Index g = 0;
    const int sz = static_cast<int>(qubits.size());
    for (int i = 0; i < sz; ++i) {
      const Eigen::Index bit = (local >> (sz - 1 - i)) & 1;
      g |= bit << (total_qubits - 1 - qubits[i]);
    }
    return g;
  };

  CMatrix out = CMatrix::Zero(dn, dn);
  for (Eigen::Index t = 0; t < dr; ++t) {
    const Eigen::Index base = scatter(t, rest);
    for (Eigen::Index a = 0; a < dk; ++a) {
      const Eigen::Index row = base | scatter(a, targets);
      for (Eigen::Index b = 0; b < dk; ++b) {
        out(row, base | scatter(b, targets)) = u(a, b);
      }
    }
  }
  return out;
}

CMatrix expm_i_herm(const CMatrix& k, double eps) {
  const double herm_err = (k - k.adjoint()).cwiseAbs().maxCoeff();
  if (herm_err > 1e-10) {
    throw NumericError("expm_i_herm: input deviates from Hermitian by " +
                       std::to_string(herm_err));
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(k);
  if (es.info() != Eigen::Success) {
    throw NumericError("expm_i_herm: eigendecomposition failed");
  }
  const Eigen::VectorXd& d = es.eigenvalues();
  Eigen::VectorXcd phases(d.size());
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    phases(i) = std::polar(1.0, eps * d(i));
  }
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

PureState random_pure_state(int n_qubits, Rng& rng) {
  if (n_qubits < 1) throw std::invalid_argument("random_pure_state: need at least 1 qubit");
  const Eigen::Index dim = Eigen::Index{1} << n_qubits;
  PureState v(dim);
  double norm2 = 0.0;
  do {
    for (Eigen::Index i = 0; i < dim; ++i) {
      const double re = rng.gaussian();
      const double im = rng.gaussian();
      v(i) = Complex(re, im);
    }
    norm2 = v.squaredNorm();
  } while (std::sqrt(norm2) < 1e-8);
  return v / std::sqrt(norm2);
}

CMatrix random_unitary(Eigen::Index dim, Rng& rng) {
  qubit_count(dim);  // validates power-of-two dimension
  CMatrix g(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    for (Eigen::Index i = 0; i < dim; ++i) {
      g(i, j) = Complex(rng.gaussian(), rng.gaussian());
    }
  }
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ() * CMatrix::Identity(dim, dim);
  // Multiply column i by the phase of R_ii so the result is Haar distributed.
  const CMatrix& qr_mat = qr.matrixQR();
  for (Eigen::Index i = 0; i < dim; ++i) {
    const Complex r = qr_mat(i, i);
    const double mag = std::abs(r);
    q.col(i) *= (mag > 0.0) ? r / mag : Complex(1.0, 0.0);
  }
  return q;
}

double fidelity_pure(const PureState& phi, const CMatrix& rho) {
  if (phi.size() != rho.rows() || rho.rows() != rho.cols()) {
    throw std::invalid_argument("fidelity_pure: dimension mismatch");
  }
  const Complex val = phi.dot(rho * phi);  // Eigen dot conjugates the left arg
  if (std::abs(val.imag()) > 1e-10) {
    throw NumericError("fidelity_pure: imaginary part " + std::to_string(val.imag()));
  }
  return val.real();
}

std::vector<CMatrix> pauli_products(int k) {
  if (k < 1) throw std::invalid_argument("pauli_products: need k >= 1");
  std::vector<CMatrix> single(4, CMatrix(2, 2));
  single[0] << 1, 0, 0, 1;
  single[1] << 0, 1, 1, 0;
  single[2] << 0, Complex(0, -1), Complex(0, 1), 0;
  single[3] << 1, 0, 0, -1;

  std::vector<CMatrix> out;
  out.reserve(std::size_t{1} << (2 * k));
  const std::size_t count = std::size_t{1} << (2 * k);
  for (std::size_t idx = 0; idx < count; ++idx) {
    // Base-4 digits of idx, most significant digit = qubit 0.
    CMatrix g = single[(idx >> (2 * (k - 1))) & 3];
    for (int q = 1; q < k; ++q) {
      g = kron(g, single[(idx >> (2 * (k - 1 - q))) & 3]);
    }
    out.push_back(std::move(g));
  }
  return out;
}

double unitarity_error(const CMatrix& u) {
  return (u * u.adjoint() - CMatrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
}

}  // namespace resqnn
