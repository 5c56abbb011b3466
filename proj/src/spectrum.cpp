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

#include "distreg/spectrum.hpp"

#include <algorithm>

#include "distreg/errors.hpp"

namespace distreg {

SpectralModel spectral_decompose(const TrainedModel& model) {
  SpectralModel spectral(model.basis(), model.mode(),
                         model.gram_factor().max_eigenvalue());
  std::vector<EigenPair> pairs =
      gen_eig_sym(model.label_gram(), model.gram_factor());
  // Outcomes are Rayleigh quotients of yG against G and so lie in the label
  // range; clipping removes rounding excursions only.
  const Interval& range = model.label_range();
  for (EigenPair& p : pairs) {
    spectral.outcomes_.push_back(std::clamp(p.value, range.lo, range.hi));
    spectral.eigenvectors_.push_back(std::move(p.vector));
  }
  return spectral;
}

double project(const TrainedModel& model, const MomentVector& m1,
               const MomentVector& m2) {
  model.check_compatible(m1);
  model.check_compatible(m2);
  const std::vector<double> z1 = model.gram_factor().whiten(m1.values);
  const std::vector<double> z2 = model.gram_factor().whiten(m2.values);
  double s = 0.0;
  for (std::size_t i = 0; i < z1.size(); ++i) s += z1[i] * z2[i];
  return s;
}

OutcomeDistribution outcome_distribution(const SpectralModel& spectral,
                                         const MomentVector& m) {
  if (!(m.basis == spectral.basis()) || m.mode != spectral.mode()) {
    throw InputError("moment vector does not match the spectral model basis");
  }
  const std::size_t d = spectral.effective_size();
  OutcomeDistribution out;
  out.outcomes = spectral.outcomes();
  out.signed_projections.resize(d);
  out.probabilities.resize(d);

  double norm2 = 0.0;
  for (double v : m.values) norm2 += v * v;
  for (std::size_t i = 0; i < d; ++i) {
    const std::vector<double>& psi = spectral.eigenvectors()[i];
    double s = 0.0;
    for (std::size_t r = 0; r < psi.size(); ++r) s += m.values[r] * psi[r];
    out.signed_projections[i] = s;
    out.total_weight += s * s;
  }
  const double floor = spectral.gram_scale() > 0.0
                           ? kSpanTolerance * norm2 / spectral.gram_scale()
                           : 0.0;
  if (d == 0 || !(out.total_weight > floor)) {
    throw SpanError("state outside model span");
  }
  for (std::size_t i = 0; i < d; ++i) {
    const double s = out.signed_projections[i];
    out.probabilities[i] = s * s / out.total_weight;
  }
  return out;
}

}  // namespace distreg
