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

#include "distreg/poly_basis.hpp"

#include <cmath>
#include <string>

#include "distreg/errors.hpp"

namespace distreg {

std::string_view to_string(BasisFamily family) {
  switch (family) {
    case BasisFamily::chebyshev:
      return "chebyshev";
    case BasisFamily::legendre:
      return "legendre";
    case BasisFamily::monomial:
      return "monomial";
  }
  return "unknown";
}

BasisFamily parse_basis_family(std::string_view name) {
  if (name == "chebyshev") return BasisFamily::chebyshev;
  if (name == "legendre") return BasisFamily::legendre;
  if (name == "monomial") return BasisFamily::monomial;
  throw InputError("unknown basis family '" + std::string(name) + "'");
}

BasisSpec::BasisSpec(BasisFamily family, std::size_t degree_count,
                     Interval domain)
    : family_(family), degree_count_(degree_count), domain_(domain) {
  if (degree_count_ == 0) {
    throw InputError("basis degree count must be at least 1");
  }
  if (!std::isfinite(domain_.lo) || !std::isfinite(domain_.hi) ||
      !(domain_.lo < domain_.hi)) {
    throw InputError("basis domain must be a finite interval with lo < hi");
  }
}

double BasisSpec::to_unit(double x) const {
  const double center = 0.5 * (domain_.lo + domain_.hi);
  const double half_width = 0.5 * (domain_.hi - domain_.lo);
  return (x - center) / half_width;
}

void evaluate_basis(const BasisSpec& spec, double x, std::span<double> out) {
  if (!std::isfinite(x)) {
    throw InputError("basis evaluation point must be finite");
  }
  const std::size_t n = spec.degree_count();
  if (out.size() != n) {
    throw InputError("output span size does not match basis degree count");
  }
  const double t = spec.to_unit(x);
  out[0] = 1.0;
  if (n == 1) return;
  out[1] = t;
  switch (spec.family()) {
    case BasisFamily::chebyshev:
      for (std::size_t k = 1; k + 1 < n; ++k) {
        out[k + 1] = 2.0 * t * out[k] - out[k - 1];
      }
      break;
    case BasisFamily::legendre:
      // (k+1) P_{k+1} = (2k+1) t P_k - k P_{k-1}
      for (std::size_t k = 1; k + 1 < n; ++k) {
        const double kd = static_cast<double>(k);
        out[k + 1] = ((2.0 * kd + 1.0) * t * out[k] - kd * out[k - 1]) /
                     (kd + 1.0);
      }
      break;
    case BasisFamily::monomial:
      for (std::size_t k = 1; k + 1 < n; ++k) {
        out[k + 1] = t * out[k];
      }
      break;
  }
}

std::vector<double> evaluate_basis(const BasisSpec& spec, double x) {
  std::vector<double> out(spec.degree_count());
  evaluate_basis(spec, x, out);
  return out;
}

}  // namespace distreg
