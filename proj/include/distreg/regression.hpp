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
#include <string_view>
#include <vector>

#include "distreg/compensated_sum.hpp"
#include "distreg/linalg.hpp"
#include "distreg/moments.hpp"
#include "distreg/poly_basis.hpp"

namespace distreg {

// Sufficient statistics of a fitted dataset:
//   G_qr  = sum_l <Q_q>_l <Q_r>_l
//   yG_qr = sum_l y_l <Q_q>_l <Q_r>_l
//   Y_q   = sum_l y_l <Q_q>_l
// Immutable once built. The factorization of G and the whitened forms of yG
// and Y are computed in the constructor, so concurrent predictions need no
// locking.
class TrainedModel {
 public:
  // Throws InputError on inconsistent dimensions, a non-positive mean bag
  // size or an empty label range.
  TrainedModel(BasisSpec basis, Normalization mode, SymMatrix gram,
               SymMatrix label_gram, std::vector<double> label_moments,
               double mean_bag_size, Interval label_range);

  const BasisSpec& basis() const { return basis_; }
  Normalization mode() const { return mode_; }
  const SymMatrix& gram() const { return gram_; }
  const SymMatrix& label_gram() const { return label_gram_; }
  const std::vector<double>& label_moments() const { return label_moments_; }
  double mean_bag_size() const { return mean_bag_size_; }
  const Interval& label_range() const { return label_range_; }

  // True when G had to be truncated to its dominant eigenspace.
  bool degenerate() const { return factor_.degenerate(); }
  const GramFactor& gram_factor() const { return factor_; }
  // W^T yG W and W^T Y for the whitening map W of G.
  const SymMatrix& whitened_label_gram() const { return whitened_label_gram_; }
  const std::vector<double>& whitened_label_moments() const {
    return whitened_label_moments_;
  }

  // Point state at x using the mean bag size as the reference size.
  MomentVector point_state(double x) const;

  // Throws InputError unless m was built with this model's basis and mode.
  void check_compatible(const MomentVector& m) const;

 private:
  BasisSpec basis_;
  Normalization mode_;
  SymMatrix gram_;
  SymMatrix label_gram_;
  std::vector<double> label_moments_;
  double mean_bag_size_;
  Interval label_range_;
  GramFactor factor_;
  SymMatrix whitened_label_gram_;
  std::vector<double> whitened_label_moments_;
};

// Running sums of G, yG and Y. Partial accumulators over disjoint sets of
// bags can be merged in any grouping.
class StatsAccumulator {
 public:
  StatsAccumulator(BasisSpec basis, Normalization mode);

  void add_bag(const Bag& bag);
  // m must come from this accumulator's basis and mode.
  void add(const MomentVector& m, double label, std::size_t bag_size);
  void merge(const StatsAccumulator& other);

  std::size_t bag_count() const { return bag_count_; }

  // Throws InputError if no bags were added.
  TrainedModel finish() const;

 private:
  BasisSpec basis_;
  Normalization mode_;
  std::vector<CompensatedSum> gram_;
  std::vector<CompensatedSum> label_gram_;
  std::vector<CompensatedSum> label_moments_;
  std::size_t bag_count_ = 0;
  std::size_t observation_count_ = 0;
  Interval label_range_;
};

// Basis whose domain is the observed range of the dataset's observations.
// A dataset where every observation is the same value gets the domain
// [x - 1, x + 1].
BasisSpec default_basis(const BagDataset& dataset, BasisFamily family,
                        std::size_t degree_count);

TrainedModel fit(const BagDataset& dataset, const BasisSpec& basis,
                 Normalization mode);

enum class Estimator { ls, rn };

std::string_view to_string(Estimator estimator);
Estimator parse_estimator(std::string_view name);

struct Prediction {
  double value = 0.0;
  // RN only: the ratio before it is clipped to the training label range.
  // The two differ only by rounding error.
  double unclipped = 0.0;
  // G was truncated; the value went through the pseudo-inverse.
  bool degenerate = false;
};

// m^T G^{-1} Y.
Prediction predict_ls(const TrainedModel& model, const MomentVector& m);

// (m^T G^{-1} yG G^{-1} m) / (m^T G^{-1} m). Throws SpanError when m has no
// component in the retained span of G.
Prediction predict_rn(const TrainedModel& model, const MomentVector& m);

// Either estimator for moments of an arbitrary x-distribution.
Prediction predict_from_distribution(const TrainedModel& model,
                                     const MomentVector& m,
                                     Estimator estimator);

// Weights at or below this are indistinguishable from zero for m:
// kSpanTolerance * |m|^2 / lambda_max(G).
inline constexpr double kSpanTolerance = 1e-18;
double negligible_weight(const TrainedModel& model, std::span<const double> m);

}  // namespace distreg
