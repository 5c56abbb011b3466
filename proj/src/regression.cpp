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

#include "distreg/regression.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "distreg/errors.hpp"

namespace distreg {

namespace {

std::size_t packed_size(std::size_t n) { return n * (n + 1) / 2; }

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

TrainedModel::TrainedModel(BasisSpec basis, Normalization mode,
                           SymMatrix gram, SymMatrix label_gram,
                           std::vector<double> label_moments,
                           double mean_bag_size, Interval label_range)
    : basis_(std::move(basis)),
      mode_(mode),
      gram_(std::move(gram)),
      label_gram_(std::move(label_gram)),
      label_moments_(std::move(label_moments)),
      mean_bag_size_(mean_bag_size),
      label_range_(label_range),
      factor_([this] {
        const std::size_t n = basis_.degree_count();
        if (gram_.order() != n || label_gram_.order() != n ||
            label_moments_.size() != n) {
          throw InputError("model statistics do not match basis degree count " +
                           std::to_string(n));
        }
        return GramFactor(gram_);
      }()) {
  if (!std::isfinite(mean_bag_size_) || mean_bag_size_ <= 0.0) {
    throw InputError("model mean bag size must be positive");
  }
  if (!std::isfinite(label_range_.lo) || !std::isfinite(label_range_.hi) ||
      label_range_.lo > label_range_.hi) {
    throw InputError("model label range is empty or not finite");
  }
  whitened_label_gram_ = factor_.whitened(label_gram_);
  whitened_label_moments_ = factor_.whiten(label_moments_);
}

MomentVector TrainedModel::point_state(double x) const {
  return point_state_moments(x, mean_bag_size_, basis_, mode_);
}

void TrainedModel::check_compatible(const MomentVector& m) const {
  if (!(m.basis == basis_)) {
    throw InputError("moment vector basis does not match the model basis");
  }
  if (m.mode != mode_) {
    throw InputError("moment vector normalization does not match the model");
  }
  if (m.values.size() != basis_.degree_count()) {
    throw InputError("moment vector length does not match the model");
  }
}

StatsAccumulator::StatsAccumulator(BasisSpec basis, Normalization mode)
    : basis_(std::move(basis)),
      mode_(mode),
      gram_(packed_size(basis_.degree_count())),
      label_gram_(packed_size(basis_.degree_count())),
      label_moments_(basis_.degree_count()),
      label_range_{std::numeric_limits<double>::infinity(),
                   -std::numeric_limits<double>::infinity()} {}

void StatsAccumulator::add_bag(const Bag& bag) {
  add(bag_moments(bag, basis_, mode_), bag.label, bag.observations.size());
}

void StatsAccumulator::add(const MomentVector& m, double label,
                           std::size_t bag_size) {
  if (!(m.basis == basis_) || m.mode != mode_) {
    throw InputError("moment vector does not match accumulator basis");
  }
  if (!std::isfinite(label)) {
    throw InputError("bag label is not finite");
  }
  if (bag_size == 0) {
    throw InputError("bag size must be positive");
  }
  const std::size_t n = basis_.degree_count();
  const std::vector<double>& q = m.values;
  for (std::size_t i = 0; i < n; ++i) {
    const double yq = label * q[i];
    label_moments_[i] += yq;
    for (std::size_t j = 0; j <= i; ++j) {
      const std::size_t idx = i * (i + 1) / 2 + j;
      gram_[idx] += q[i] * q[j];
      label_gram_[idx] += yq * q[j];
    }
  }
  ++bag_count_;
  observation_count_ += bag_size;
  label_range_.lo = std::min(label_range_.lo, label);
  label_range_.hi = std::max(label_range_.hi, label);
}

void StatsAccumulator::merge(const StatsAccumulator& other) {
  if (!(other.basis_ == basis_) || other.mode_ != mode_) {
    throw InputError("cannot merge accumulators with different bases");
  }
  for (std::size_t i = 0; i < gram_.size(); ++i) {
    gram_[i] += other.gram_[i];
    label_gram_[i] += other.label_gram_[i];
  }
  for (std::size_t i = 0; i < label_moments_.size(); ++i) {
    label_moments_[i] += other.label_moments_[i];
  }
  bag_count_ += other.bag_count_;
  observation_count_ += other.observation_count_;
  label_range_.lo = std::min(label_range_.lo, other.label_range_.lo);
  label_range_.hi = std::max(label_range_.hi, other.label_range_.hi);
}

TrainedModel StatsAccumulator::finish() const {
  if (bag_count_ == 0) {
    throw InputError("cannot fit a model without bags");
  }
  const std::size_t n = basis_.degree_count();
  SymMatrix gram(n);
  SymMatrix label_gram(n);
  std::vector<double> label_moments(n);
  for (std::size_t i = 0; i < n; ++i) {
    label_moments[i] = label_moments_[i].value();
    for (std::size_t j = 0; j <= i; ++j) {
      const std::size_t idx = i * (i + 1) / 2 + j;
      gram.at(i, j) = gram_[idx].value();
      label_gram.at(i, j) = label_gram_[idx].value();
    }
  }
  const double mean_bag_size = static_cast<double>(observation_count_) /
                               static_cast<double>(bag_count_);
  return TrainedModel(basis_, mode_, std::move(gram), std::move(label_gram),
                      std::move(label_moments), mean_bag_size, label_range_);
}

BasisSpec default_basis(const BagDataset& dataset, BasisFamily family,
                        std::size_t degree_count) {
  dataset.validate();
  Interval domain = dataset.observation_range();
  if (!(domain.lo < domain.hi)) {
    domain = {domain.lo - 1.0, domain.hi + 1.0};
  }
  return BasisSpec(family, degree_count, domain);
}

TrainedModel fit(const BagDataset& dataset, const BasisSpec& basis,
                 Normalization mode) {
  dataset.validate();
  StatsAccumulator acc(basis, mode);
  for (const Bag& bag : dataset.bags) acc.add_bag(bag);
  return acc.finish();
}

std::string_view to_string(Estimator estimator) {
  return estimator == Estimator::ls ? "ls" : "rn";
}

Estimator parse_estimator(std::string_view name) {
  if (name == "ls") return Estimator::ls;
  if (name == "rn") return Estimator::rn;
  throw InputError("unknown estimator '" + std::string(name) + "'");
}

double negligible_weight(const TrainedModel& model,
                         std::span<const double> m) {
  const double lambda_max = model.gram_factor().max_eigenvalue();
  if (!(lambda_max > 0.0)) return std::numeric_limits<double>::infinity();
  return kSpanTolerance * dot(m, m) / lambda_max;
}

Prediction predict_ls(const TrainedModel& model, const MomentVector& m) {
  model.check_compatible(m);
  const std::vector<double> z = model.gram_factor().whiten(m.values);
  const double value = dot(z, model.whitened_label_moments());
  return {value, value, model.degenerate()};
}

Prediction predict_rn(const TrainedModel& model, const MomentVector& m) {
  model.check_compatible(m);
  const std::vector<double> z = model.gram_factor().whiten(m.values);
  const double denominator = dot(z, z);
  if (!(denominator > negligible_weight(model, m.values))) {
    throw SpanError("state outside model span");
  }
  const std::vector<double> cz = model.whitened_label_gram().multiply(z);
  const double ratio = dot(z, cz) / denominator;
  // The ratio is a convex combination of training labels, so anything
  // outside the label range is rounding error.
  const Interval& range = model.label_range();
  return {std::clamp(ratio, range.lo, range.hi), ratio, model.degenerate()};
}

Prediction predict_from_distribution(const TrainedModel& model,
                                     const MomentVector& m,
                                     Estimator estimator) {
  return estimator == Estimator::ls ? predict_ls(model, m)
                                    : predict_rn(model, m);
}

}  // namespace distreg
