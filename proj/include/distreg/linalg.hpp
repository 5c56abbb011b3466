// Copyright 2026 The distreg Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace distreg {

// Eigenvalues at or below this fraction of the largest one are treated as
// zero by the pseudo-inverse.
inline constexpr double kTruncationThreshold = 1e-12;

// Dense symmetric matrix storing only the lower triangle, so the two
// triangles can never disagree.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(std::size_t order);

  static SymMatrix identity(std::size_t order);
  static SymMatrix diagonal(std::span<const double> values);
  // Throws InputError unless rows is square and exactly symmetric.
  static SymMatrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t order() const { return order_; }

  double operator()(std::size_t i, std::size_t j) const {
    return data_[index(i, j)];
  }
  double& at(std::size_t i, std::size_t j) { return data_[index(i, j)]; }

  std::vector<double> multiply(std::span<const double> v) const;
  double frobenius_norm() const;
  std::vector<std::vector<double>> to_rows() const;

  SymMatrix& operator*=(double factor);

  friend bool operator==(const SymMatrix&, const SymMatrix&) = default;

 private:
  static std::size_t index(std::size_t i, std::size_t j) {
    return i >= j ? i * (i + 1) / 2 + j : j * (j + 1) / 2 + i;
  }

  std::size_t order_ = 0;
  std::vector<double> data_;
};

struct EigenPair {
  double value = 0.0;
  std::vector<double> vector;
};

// Standard symmetric eigenproblem by cyclic Jacobi rotations. Pairs are
// ascending by value with orthonormal vectors. Throws NumericalError if the
// off-diagonal norm does not drop below 1e-14 of the matrix norm within the
// sweep budget.
std::vector<EigenPair> symmetric_eigen(const SymMatrix& a);

// Factorization of a symmetric positive semi-definite matrix G that realizes
// every application of G^{-1}. When the smallest eigenvalue exceeds
// kTruncationThreshold * lambda_max a Cholesky factor L is kept; otherwise
// the spectral pseudo-inverse over the retained eigenvalues is used and the
// factor reports itself as degenerate.
//
// Either way there is a whitening map W (n x rank) with W^T G W = I and
// G^+ = W W^T. For the Cholesky case W = L^{-T}.
class GramFactor {
 public:
  explicit GramFactor(const SymMatrix& g);

  std::size_t order() const { return order_; }
  std::size_t rank() const { return rank_; }
  bool degenerate() const { return degenerate_; }
  double min_eigenvalue() const { return min_eigenvalue_; }
  double max_eigenvalue() const { return max_eigenvalue_; }
  // lambda_max / lambda_min of G, infinite when lambda_min <= 0.
  double condition_number() const;

  // W^T m, length rank().
  std::vector<double> whiten(std::span<const double> m) const;
  // W v, length order().
  std::vector<double> unwhiten(std::span<const double> v) const;
  // G^+ b.
  std::vector<double> solve(std::span<const double> b) const;
  // W^T A W, order rank().
  SymMatrix whitened(const SymMatrix& a) const;

 private:
  std::size_t order_ = 0;
  std::size_t rank_ = 0;
  bool degenerate_ = false;
  double min_eigenvalue_ = 0.0;
  double max_eigenvalue_ = 0.0;
  std::vector<double> cholesky_;  // order x order lower triangle, row-major
  std::vector<double> whitening_; // order x rank, row-major; degenerate only
};

struct SolveResult {
  std::vector<double> solution;
  bool degenerate = false;
};

// Solves A z = b for symmetric positive definite A by Cholesky. If A is not
// positive definite within kTruncationThreshold the spectral pseudo-inverse
// is used instead and the result is flagged degenerate.
SolveResult spd_solve(const SymMatrix& a, std::span<const double> b);

// Generalized problem A psi = y B psi with B positive definite, reduced to a
// standard symmetric problem through the factor of B. Pairs are ascending in
// value; vectors satisfy psi_i^T B psi_j = delta_ij and have their first
// significant component positive. Throws NumericalError if B is not
// positive definite within kTruncationThreshold.
std::vector<EigenPair> gen_eig_sym(const SymMatrix& a, const SymMatrix& b);

// Same problem restricted to the subspace retained by an existing factor of
// B; returns factor.rank() pairs.
std::vector<EigenPair> gen_eig_sym(const SymMatrix& a, const GramFactor& b);

}  // namespace distreg
