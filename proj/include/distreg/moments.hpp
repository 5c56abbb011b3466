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

#include "distreg/poly_basis.hpp"

namespace distreg {

// raw_sum keeps <Q_k> = sum_j Q_k(x_j); size_normalized divides by the bag
// size so bags of different sizes are comparable.
enum class Normalization { raw_sum, size_normalized };

std::string_view to_string(Normalization mode);
Normalization parse_normalization(std::string_view name);

// One labeled bag of scalar observations.
struct Bag {
  std::vector<double> observations;
  double label = 0.0;

  // Throws InputError if empty or if anything is non-finite.
  void validate() const;
};

struct BagDataset {
  std::vector<Bag> bags;

  // Throws InputError if there are no bags or any bag is invalid.
  void validate() const;
  double mean_bag_size() const;
  // Smallest interval holding every observation.
  Interval observation_range() const;
  Interval label_range() const;
};

// Basis moments of some x-distribution: a bag, a point state, or any sample.
struct MomentVector {
  std::vector<double> values;
  BasisSpec basis;
  Normalization mode;
};

// Moments of an arbitrary finite sample. Observations are accumulated in
// sorted order with compensated summation, so the result does not depend on
// the order they are given in.
MomentVector sample_moments(std::span<const double> observations,
                            const BasisSpec& spec, Normalization mode);

MomentVector bag_moments(const Bag& bag, const BasisSpec& spec,
                         Normalization mode);

// Moments of a distribution concentrated at x: reference_size * Q_k(x) under
// raw_sum, Q_k(x) under size_normalized.
MomentVector point_state_moments(double x, double reference_size,
                                 const BasisSpec& spec, Normalization mode);

}  // namespace distreg
