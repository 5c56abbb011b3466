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

#include "distreg/moments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "distreg/compensated_sum.hpp"
#include "distreg/errors.hpp"

namespace distreg {

std::string_view to_string(Normalization mode) {
  switch (mode) {
    case Normalization::raw_sum:
      return "raw_sum";
    case Normalization::size_normalized:
      return "size_normalized";
  }
  return "unknown";
}

Normalization parse_normalization(std::string_view name) {
  if (name == "raw_sum") return Normalization::raw_sum;
  if (name == "size_normalized") return Normalization::size_normalized;
  throw InputError("unknown normalization mode '" + std::string(name) + "'");
}

void Bag::validate() const {
  if (observations.empty()) {
    throw InputError("bag has no observations");
  }
  if (!std::isfinite(label)) {
    throw InputError("bag label is not finite");
  }
  for (double x : observations) {
    if (!std::isfinite(x)) {
      throw InputError("bag observation is not finite");
    }
  }
}

void BagDataset::validate() const {
  if (bags.empty()) {
    throw InputError("dataset has no bags");
  }
  for (std::size_t l = 0; l < bags.size(); ++l) {
    try {
      bags[l].validate();
    } catch (const InputError& e) {
      throw InputError("bag " + std::to_string(l) + ": " + e.what());
    }
  }
}

double BagDataset::mean_bag_size() const {
  if (bags.empty()) return 0.0;
  std::size_t total = 0;
  for (const Bag& bag : bags) total += bag.observations.size();
  return static_cast<double>(total) / static_cast<double>(bags.size());
}

Interval BagDataset::observation_range() const {
  Interval range{std::numeric_limits<double>::infinity(),
                 -std::numeric_limits<double>::infinity()};
  for (const Bag& bag : bags) {
    for (double x : bag.observations) {
      range.lo = std::min(range.lo, x);
      range.hi = std::max(range.hi, x);
    }
  }
  return range;
}

Interval BagDataset::label_range() const {
  Interval range{std::numeric_limits<double>::infinity(),
                 -std::numeric_limits<double>::infinity()};
  for (const Bag& bag : bags) {
    range.lo = std::min(range.lo, bag.label);
    range.hi = std::max(range.hi, bag.label);
  }
  return range;
}

MomentVector sample_moments(std::span<const double> observations,
                            const BasisSpec& spec, Normalization mode) {
  if (observations.empty()) {
    throw InputError("cannot take moments of an empty sample");
  }
  std::vector<double> sorted(observations.begin(), observations.end());
  std::sort(sorted.begin(), sorted.end());

  const std::size_t n = spec.degree_count();
  std::vector<CompensatedSum> sums(n);
  std::vector<double> q(n);
  for (double x : sorted) {
    evaluate_basis(spec, x, q);
    for (std::size_t k = 0; k < n; ++k) sums[k] += q[k];
  }

  MomentVector result{std::vector<double>(n), spec, mode};
  const double scale = mode == Normalization::size_normalized
                           ? static_cast<double>(sorted.size())
                           : 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    result.values[k] = sums[k].value() / scale;
  }
  return result;
}

MomentVector bag_moments(const Bag& bag, const BasisSpec& spec,
                         Normalization mode) {
  bag.validate();
  return sample_moments(bag.observations, spec, mode);
}

MomentVector point_state_moments(double x, double reference_size,
                                 const BasisSpec& spec, Normalization mode) {
  if (!std::isfinite(reference_size) || reference_size <= 0.0) {
    throw InputError("point state reference size must be positive");
  }
  MomentVector result{evaluate_basis(spec, x), spec, mode};
  if (mode == Normalization::raw_sum) {
    for (double& v : result.values) v *= reference_size;
  }
  return result;
}

}  // namespace distreg
