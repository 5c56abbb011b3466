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

namespace distreg {

enum class BasisFamily { chebyshev, legendre, monomial };

std::string_view to_string(BasisFamily family);
// Throws InputError for unknown names.
BasisFamily parse_basis_family(std::string_view name);

// Closed interval [lo, hi].
struct Interval {
  double lo = -1.0;
  double hi = 1.0;

  bool contains(double x) const { return lo <= x && x <= hi; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

// Polynomial family, number of basis functions d_x and the interval that is
// mapped affinely onto [-1, 1] before the recurrence runs. The monomial
// family exists as a low-degree reference and loses accuracy quickly beyond
// about ten terms.
class BasisSpec {
 public:
  // Throws InputError if degree_count == 0 or the domain is empty,
  // reversed or non-finite.
  BasisSpec(BasisFamily family, std::size_t degree_count,
            Interval domain = {});

  BasisFamily family() const { return family_; }
  std::size_t degree_count() const { return degree_count_; }
  const Interval& domain() const { return domain_; }

  // t = (2x - a - b) / (b - a).
  double to_unit(double x) const;

  friend bool operator==(const BasisSpec&, const BasisSpec&) = default;

 private:
  BasisFamily family_;
  std::size_t degree_count_;
  Interval domain_;
};

// [Q_0(x), ..., Q_{d_x-1}(x)]. x may lie outside the domain; the polynomials
// are simply extrapolated. Throws InputError for non-finite x.
std::vector<double> evaluate_basis(const BasisSpec& spec, double x);

// Allocation-free variant; out.size() must equal spec.degree_count().
void evaluate_basis(const BasisSpec& spec, double x, std::span<double> out);

}  // namespace distreg
