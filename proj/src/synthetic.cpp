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

#include "distreg/synthetic.hpp"

#include <cmath>
#include <random>
#include <string>

#include "distreg/errors.hpp"

namespace distreg {

namespace {

double unit_draw(std::mt19937_64& engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

}  // namespace

std::string_view to_string(Target target) {
  switch (target) {
    case Target::linear:
      return "linear";
    case Target::runge:
      return "runge";
    case Target::step:
      return "step";
  }
  return "unknown";
}

Target parse_target(std::string_view name) {
  if (name == "linear") return Target::linear;
  if (name == "runge") return Target::runge;
  if (name == "step") return Target::step;
  throw InputError("unknown target '" + std::string(name) + "'");
}

double target_function(Target target, double x) {
  switch (target) {
    case Target::linear:
      return x;
    case Target::runge:
      return 1.0 / (1.0 + 25.0 * x * x);
    case Target::step:
      return x <= 0.0 ? 0.0 : 1.0;
  }
  return x;
}

void ExperimentConfig::validate() const {
  if (bag_size == 0) throw InputError("bag size N must be at least 1");
  if (bag_count == 0) throw InputError("bag count M must be at least 1");
  if (!std::isfinite(noise_half_width) || noise_half_width < 0.0) {
    throw InputError("noise half-width R must be a nonnegative number");
  }
  if (!std::isfinite(x_support.lo) || !std::isfinite(x_support.hi) ||
      !(x_support.lo < x_support.hi)) {
    throw InputError("x support must be a finite interval with lo < hi");
  }
}

BagDataset generate(const ExperimentConfig& config) {
  config.validate();
  std::mt19937_64 engine(config.seed);
  const double width = config.x_support.hi - config.x_support.lo;

  BagDataset dataset;
  dataset.bags.reserve(config.bag_count);
  for (std::size_t l = 0; l < config.bag_count; ++l) {
    Bag bag;
    const double center = config.x_support.lo + width * unit_draw(engine);
    bag.label = target_function(config.target, center);
    bag.observations.reserve(config.bag_size);
    for (std::size_t j = 0; j < config.bag_size; ++j) {
      const double eps = 2.0 * unit_draw(engine) - 1.0;
      bag.observations.push_back(center + config.noise_half_width * eps);
    }
    dataset.bags.push_back(std::move(bag));
  }
  return dataset;
}

}  // namespace distreg
