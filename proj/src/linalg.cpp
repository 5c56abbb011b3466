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

#include "distreg/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "distreg/errors.hpp"

namespace distreg {

namespace {

constexpr int kMaxJacobiSweeps = 100;
constexpr double kJacobiTolerance = 1e-14;

void check_order(std::size_t expected, std::size_t actual) {
  if (expected != actual) {
    throw InputError("dimension mismatch: expected " +
                     std::to_string(expected) + ", got " +
                     std::to_string(actual));
  }
}

// Cholesky of a packed symmetric matrix into a dense lower triangle.
// Returns false on a non-positive pivot.
bool cholesky(const SymMatrix& a, std::vector<double>& l) {
  const std::size_t n = a.order();
  l.assign(n * n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double diag = a(j, j);
    for (std::size_t k = 0; k < j; ++k) diag -= l[j * n + k] * l[j * n + k];
    if (!(diag > 0.0)) return false;
    const double ljj = std::sqrt(diag);
    l[j * n + j] = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l[i * n + k] * l[j * n + k];
      l[i * n + j] = s / ljj;
    }
  }
  return true;
}

void make_first_component_positive(std::vector<double>& v) {
  double scale = 0.0;
  for (double x : v) scale = std::max(scale, std::abs(x));
  for (double x : v) {
    if (std::abs(x) > 1e-12 * scale) {
      if (x < 0.0) {
        for (double& y : v) y = -y;
      }
      return;
    }
  }
}

}  // namespace

SymMatrix::SymMatrix(std::size_t order)
    : order_(order), data_(order * (order + 1) / 2, 0.0) {}

SymMatrix SymMatrix::identity(std::size_t order) {
  SymMatrix m(order);
  for (std::size_t i = 0; i < order; ++i) m.at(i, i) = 1.0;
  return m;
}

SymMatrix SymMatrix::diagonal(std::span<const double> values) {
  SymMatrix m(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m.at(i, i) = values[i];
  return m;
}

SymMatrix SymMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  const std::size_t n = rows.size();
  SymMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    check_order(n, rows[i].size());
    for (std::size_t j = 0; j <= i; ++j) {
      if (rows[i][j] != rows[j][i]) {
        throw InputError("matrix is not symmetric at (" + std::to_string(i) +
                         ", " + std::to_string(j) + ")");
      }
      m.at(i, j) = rows[i][j];
    }
  }
  return m;
}

std::vector<double> SymMatrix::multiply(std::span<const double> v) const {
  check_order(order_, v.size());
  std::vector<double> out(order_, 0.0);
  for (std::size_t i = 0; i < order_; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < order_; ++j) s += (*this)(i, j) * v[j];
    out[i] = s;
  }
  return out;
}

double SymMatrix::frobenius_norm() const {
  double s = 0.0;
  for (std::size_t i = 0; i < order_; ++i) {
    for (std::size_t j = 0; j < order_; ++j) {
      s += (*this)(i, j) * (*this)(i, j);
    }
  }
  return std::sqrt(s);
}

std::vector<std::vector<double>> SymMatrix::to_rows() const {
  std::vector<std::vector<double>> rows(order_, std::vector<double>(order_));
  for (std::size_t i = 0; i < order_; ++i) {
    for (std::size_t j = 0; j < order_; ++j) rows[i][j] = (*this)(i, j);
  }
  return rows;
}

SymMatrix& SymMatrix::operator*=(double factor) {
  for (double& x : data_) x *= factor;
  return *this;
}

std::vector<EigenPair> symmetric_eigen(const SymMatrix& m) {
  const std::size_t n = m.order();
  std::vector<double> a(n * n);
  std::vector<double> v(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    v[i * n + i] = 1.0;
    for (std::size_t j = 0; j < n; ++j) a[i * n + j] = m(i, j);
  }
  const double norm = m.frobenius_norm();

  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) s += 2.0 * a[p * n + q] * a[p * n + q];
    }
    return std::sqrt(s);
  };

  bool converged = false;
  for (int sweep = 0; sweep < kMaxJacobiSweeps; ++sweep) {
    if (off_norm() <= kJacobiTolerance * norm) {
      converged = true;
      break;
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a[p * n + q];
        if (apq == 0.0) continue;
        const double theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
        double t;
        if (std::abs(theta) > 1e150) {
          t = 0.5 / theta;
        } else {
          t = (theta >= 0.0 ? 1.0 : -1.0) /
              (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k * n + p];
          const double akq = a[k * n + q];
          a[k * n + p] = c * akp - s * akq;
          a[k * n + q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p * n + k];
          const double aqk = a[q * n + k];
          a[p * n + k] = c * apk - s * aqk;
          a[q * n + k] = s * apk + c * aqk;
        }
        a[p * n + q] = 0.0;
        a[q * n + p] = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v[k * n + p];
          const double vkq = v[k * n + q];
          v[k * n + p] = c * vkp - s * vkq;
          v[k * n + q] = s * vkp + c * vkq;
        }
      }
    }
  }
  if (!converged) {
    std::ostringstream msg;
    msg << "Jacobi iteration did not converge in " << kMaxJacobiSweeps
        << " sweeps; residual off-diagonal norm " << off_norm()
        << " vs matrix norm " << norm;
    throw NumericalError(msg.str());
  }

  std::vector<EigenPair> pairs(n);
  for (std::size_t i = 0; i < n; ++i) {
    pairs[i].value = a[i * n + i];
    pairs[i].vector.resize(n);
    for (std::size_t k = 0; k < n; ++k) pairs[i].vector[k] = v[k * n + i];
  }
  std::stable_sort(pairs.begin(), pairs.end(),
                   [](const EigenPair& x, const EigenPair& y) {
                     return x.value < y.value;
                   });
  return pairs;
}

GramFactor::GramFactor(const SymMatrix& g) : order_(g.order()) {
  if (order_ == 0) {
    throw InputError("cannot factor an empty matrix");
  }
  const std::vector<EigenPair> spectrum = symmetric_eigen(g);
  min_eigenvalue_ = spectrum.front().value;
  max_eigenvalue_ = spectrum.back().value;
  const double cutoff = kTruncationThreshold * max_eigenvalue_;

  if (max_eigenvalue_ > 0.0 && min_eigenvalue_ > cutoff &&
      cholesky(g, cholesky_)) {
    rank_ = order_;
    degenerate_ = false;
    return;
  }

  cholesky_.clear();
  degenerate_ = true;
  std::vector<const EigenPair*> kept;
  if (max_eigenvalue_ > 0.0) {
    for (const EigenPair& p : spectrum) {
      if (p.value > cutoff) kept.push_back(&p);
    }
  }
  rank_ = kept.size();
  whitening_.assign(order_ * rank_, 0.0);
  for (std::size_t c = 0; c < rank_; ++c) {
    const double inv_sqrt = 1.0 / std::sqrt(kept[c]->value);
    for (std::size_t r = 0; r < order_; ++r) {
      whitening_[r * rank_ + c] = kept[c]->vector[r] * inv_sqrt;
    }
  }
}

double GramFactor::condition_number() const {
  if (!(min_eigenvalue_ > 0.0)) return std::numeric_limits<double>::infinity();
  return max_eigenvalue_ / min_eigenvalue_;
}

std::vector<double> GramFactor::whiten(std::span<const double> m) const {
  check_order(order_, m.size());
  const std::size_t n = order_;
  if (!degenerate_) {
    // Forward substitution: L z = m.
    std::vector<double> z(n);
    for (std::size_t i = 0; i < n; ++i) {
      double s = m[i];
      for (std::size_t k = 0; k < i; ++k) s -= cholesky_[i * n + k] * z[k];
      z[i] = s / cholesky_[i * n + i];
    }
    return z;
  }
  std::vector<double> z(rank_, 0.0);
  for (std::size_t c = 0; c < rank_; ++c) {
    double s = 0.0;
    for (std::size_t r = 0; r < n; ++r) s += whitening_[r * rank_ + c] * m[r];
    z[c] = s;
  }
  return z;
}

std::vector<double> GramFactor::unwhiten(std::span<const double> v) const {
  check_order(rank_, v.size());
  const std::size_t n = order_;
  if (!degenerate_) {
    // Back substitution: L^T x = v.
    std::vector<double> x(n);
    for (std::size_t ii = n; ii-- > 0;) {
      double s = v[ii];
      for (std::size_t k = ii + 1; k < n; ++k) s -= cholesky_[k * n + ii] * x[k];
      x[ii] = s / cholesky_[ii * n + ii];
    }
    return x;
  }
  std::vector<double> x(n, 0.0);
  for (std::size_t r = 0; r < n; ++r) {
    double s = 0.0;
    for (std::size_t c = 0; c < rank_; ++c) s += whitening_[r * rank_ + c] * v[c];
    x[r] = s;
  }
  return x;
}

std::vector<double> GramFactor::solve(std::span<const double> b) const {
  return unwhiten(whiten(b));
}

SymMatrix GramFactor::whitened(const SymMatrix& a) const {
  check_order(order_, a.order());
  // Column j of W^T A W is W^T A (W e_j).
  std::vector<std::vector<double>> columns(rank_);
  std::vector<double> unit(rank_, 0.0);
  for (std::size_t j = 0; j < rank_; ++j) {
    unit[j] = 1.0;
    columns[j] = whiten(a.multiply(unwhiten(unit)));
    unit[j] = 0.0;
  }
  SymMatrix out(rank_);
  for (std::size_t i = 0; i < rank_; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      out.at(i, j) = 0.5 * (columns[j][i] + columns[i][j]);
    }
  }
  return out;
}

SolveResult spd_solve(const SymMatrix& a, std::span<const double> b) {
  check_order(a.order(), b.size());
  const GramFactor factor(a);
  return {factor.solve(b), factor.degenerate()};
}

std::vector<EigenPair> gen_eig_sym(const SymMatrix& a, const GramFactor& b) {
  check_order(b.order(), a.order());
  std::vector<EigenPair> pairs = symmetric_eigen(b.whitened(a));
  for (EigenPair& p : pairs) {
    p.vector = b.unwhiten(p.vector);
    make_first_component_positive(p.vector);
  }
  return pairs;
}

std::vector<EigenPair> gen_eig_sym(const SymMatrix& a, const SymMatrix& b) {
  check_order(a.order(), b.order());
  const GramFactor factor(b);
  if (factor.degenerate()) {
    std::ostringstream msg;
    msg << "right-hand matrix is not positive definite: smallest eigenvalue "
        << factor.min_eigenvalue() << " vs largest "
        << factor.max_eigenvalue();
    throw NumericalError(msg.str());
  }
  return gen_eig_sym(a, factor);
}

}  // namespace distreg
