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
#include <vector>

#include "distreg/moments.hpp"
#include "distreg/regression.hpp"

namespace distreg {

// Solution of yG psi = y G psi over the retained span of G. The outcomes are
// the possible y values and do not depend on x; each psi is G-orthonormal.
class SpectralModel {
 public:
  const std::vector<double>& outcomes() const { return outcomes_; }
  const std::vector<std::vector<double>>& eigenvectors() const {
    return eigenvectors_;
  }
  // Number of retained modes; less than degree_count() when G was truncated.
  std::size_t effective_size() const { return outcomes_.size(); }
  std::size_t degree_count() const { return basis_.degree_count(); }
  bool truncated() const { return effective_size() < degree_count(); }
  const BasisSpec& basis() const { return basis_; }
  Normalization mode() const { return mode_; }
  double gram_scale() const { return gram_scale_; }

 private:
  friend SpectralModel spectral_decompose(const TrainedModel& model);

  SpectralModel(BasisSpec basis, Normalization mode, double gram_scale)
      : basis_(std::move(basis)), mode_(mode), gram_scale_(gram_scale) {}

  BasisSpec basis_;
  Normalization mode_;
  double gram_scale_;  // lambda_max(G), sets the zero-weight tolerance
  std::vector<double> outcomes_;
  std::vector<std::vector<double>> eigenvectors_;
};

SpectralModel spectral_decompose(const TrainedModel& model);

// m1^T G^{-1} m2, symmetric in its arguments.
double project(const TrainedModel& model, const MomentVector& m1,
               const MomentVector& m2);

struct OutcomeDistribution {
  std::vector<double> outcomes;
  std::vector<double> probabilities;
  // sum_r m_r psi_r for every mode, before squaring.
  std::vector<double> signed_projections;
  // Sum of the squared projections; equals m^T G^{-1} m.
  double total_weight = 0.0;
};

// Probabilities of every outcome for the state m. Throws SpanError when m is
// orthogonal to all retained modes.
OutcomeDistribution outcome_distribution(const SpectralModel& spectral,
                                         const MomentVector& m);

}  // namespace distreg
