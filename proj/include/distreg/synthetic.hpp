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
#include <cstdint>
#include <string_view>

#include "distreg/moments.hpp"
#include "distreg/poly_basis.hpp"

namespace distreg {

enum class Target { linear, runge, step };

std::string_view to_string(Target target);
Target parse_target(std::string_view name);

// linear: x; runge: 1 / (1 + 25 x^2); step: 0 for x <= 0, 1 otherwise.
double target_function(Target target, double x);

struct ExperimentConfig {
  Target target = Target::linear;
  std::size_t bag_size = 1000;    // N
  std::size_t bag_count = 10000;  // M
  double noise_half_width = 0.1;  // R
  std::uint64_t seed = 0;
  Interval x_support{-1.0, 1.0};

  // Throws InputError on N == 0, M == 0, negative or non-finite R, or an
  // empty support.
  void validate() const;
};

// For each bag: a center x uniform on the support, label f(x), then N
// observations x + R * eps with eps uniform on [-1, 1].
//
// Random numbers come from a single std::mt19937_64 stream seeded with
// config.seed, drawn in the order center, eps_1, ..., eps_N for bag 1, then
// bag 2, and so on. Each draw is converted to [0, 1) as (word >> 11) * 2^-53,
// so datasets are reproducible bit for bit on any platform.
BagDataset generate(const ExperimentConfig& config);

}  // namespace distreg
