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

// Acceptance checks for the library and command line. Prints one PASS/FAIL
// line per criterion and exits nonzero when any criterion fails. Tolerances
// and runtime limits are fixed here.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "distreg/errors.hpp"
#include "distreg/io_formats.hpp"
#include "distreg/linalg.hpp"
#include "distreg/regression.hpp"
#include "distreg/spectrum.hpp"
#include "distreg/synthetic.hpp"
#include "oracle.hpp"
#include "test_support.hpp"

using namespace distreg;

namespace {

constexpr double kOracleTol = 1e-10;
constexpr double kRangeTol = 1e-9;
constexpr double kConstantTol = 1e-12;
constexpr double kRmseLimit = 0.05;
constexpr double kSpectrumTol = 1e-8;
constexpr double kArgmaxShare = 0.85;
constexpr double kModeTol = 1e-10;
constexpr double kScaleTol = 1e-13;
constexpr double kRoundTripTol = 1e-15;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

std::string fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, a, b, c);
  return buf;
}

std::uint64_t bits(double v) {
  std::uint64_t u;
  std::memcpy(&u, &v, sizeof u);
  return u;
}

std::vector<double> grid(double lo, double hi, std::size_t count) {
  std::vector<double> xs(count);
  for (std::size_t i = 0; i < count; ++i) {
    xs[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
  }
  return xs;
}

ExperimentConfig desk_experiment(Target target) {
  ExperimentConfig cfg;
  cfg.target = target;
  cfg.bag_size = 100;
  cfg.bag_count = 2000;
  cfg.noise_half_width = 0.1;
  cfg.seed = 42;
  return cfg;
}

TrainedModel desk_model(Target target) {
  const BagDataset ds = generate(desk_experiment(target));
  return fit(ds, default_basis(ds, BasisFamily::chebyshev, 10),
             Normalization::size_normalized);
}

// Root mean square of estimator minus f on the grid.
double rmse(const TrainedModel& model, Target target, Estimator estimator,
            const std::vector<double>& xs) {
  double sum = 0.0;
  for (double x : xs) {
    const MomentVector m = model.point_state(x);
    const double a = estimator == Estimator::ls ? predict_ls(model, m).value
                                                : predict_rn(model, m).value;
    const double e = a - target_function(target, x);
    sum += e * e;
  }
  return std::sqrt(sum / static_cast<double>(xs.size()));
}

// 1. Small instances against a double loop and Gauss-Jordan inversion.
Outcome oracle_equivalence() {
  Outcome out;
  std::mt19937_64 rng(1001);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const int d = 1 + trial % 3;
    test_support::DatasetShape shape;
    shape.min_bags = static_cast<std::size_t>(d);
    shape.max_bags = 6;
    shape.max_size = 4;
    const BagDataset ds = test_support::random_dataset(rng, shape);
    const BasisSpec basis = default_basis(ds, BasisFamily::chebyshev, d);
    const bool normalized = trial % 2 == 0;
    const TrainedModel model =
        fit(ds, basis, normalized ? Normalization::size_normalized : Normalization::raw_sum);
    const auto stats = oracle::accumulate(
        test_support::oracle_moments(ds, d, basis.domain().lo, basis.domain().hi, normalized),
        test_support::labels_of(ds));

    double gscale = 0.0, yscale = 0.0;
    for (int q = 0; q < d; ++q) {
      for (int r = 0; r < d; ++r) {
        gscale = std::max(gscale, std::abs(stats.gram[q][r]));
        yscale = std::max(yscale, std::abs(stats.label_gram[q][r]));
      }
    }
    for (int q = 0; q < d; ++q) {
      out.require(oracle::close(model.label_moments()[q], stats.label_moments[q],
                                kOracleTol, yscale),
                  "Y mismatch");
      for (int r = 0; r < d; ++r) {
        out.require(oracle::close(model.gram()(q, r), stats.gram[q][r], kOracleTol, gscale),
                    "G mismatch");
        out.require(oracle::close(model.label_gram()(q, r), stats.label_gram[q][r],
                                  kOracleTol, yscale),
                    "yG mismatch");
      }
    }
    for (int s = 0; s < 10; ++s) {
      oracle::Vector m(d);
      for (double& v : m) v = u(rng);
      const MomentVector mv{m, basis, model.mode()};
      const double ls = oracle::least_squares(stats, m);
      const double rn = oracle::radon_nikodym(stats, m);
      const double got_ls = predict_ls(model, mv).value;
      const double got_rn = predict_rn(model, mv).unclipped;
      worst = std::max({worst, std::abs(got_ls - ls) / std::max(std::abs(ls), 1.0),
                        std::abs(got_rn - rn) / std::max(std::abs(rn), 1.0)});
      out.require(oracle::close(got_ls, ls, kOracleTol, 1.0), "LS mismatch");
      out.require(oracle::close(got_rn, rn, kOracleTol, 1.0), "RN mismatch");
    }
  }
  if (out.pass) out.detail = fmt("50 datasets, worst relative error %.2e", worst);
  return out;
}

// 2. RN never leaves the label range, even far outside the data.
Outcome rn_range_bound() {
  Outcome out;
  std::mt19937_64 rng(2002);
  std::uniform_real_distribution<double> far(-10.0, 10.0);
  std::normal_distribution<double> g;
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    test_support::DatasetShape shape;
    shape.min_bags = 20;
    shape.max_bags = 200;
    shape.max_size = 20;
    const BagDataset ds = test_support::random_dataset(rng, shape);
    const TrainedModel model =
        fit(ds, default_basis(ds, BasisFamily::chebyshev, 2 + trial % 8),
            trial % 2 ? Normalization::raw_sum : Normalization::size_normalized);
    const Interval range = model.label_range();
    const double tol = kRangeTol * std::max(std::abs(range.lo), std::abs(range.hi));
    for (int s = 0; s < 1000; ++s) {
      MomentVector m = model.point_state(far(rng));
      if (s % 2) {
        for (double& v : m.values) v = g(rng);
      }
      const Prediction p = predict_rn(model, m);
      worst = std::max({worst, range.lo - p.unclipped, p.unclipped - range.hi});
      out.require(p.value >= range.lo && p.value <= range.hi, "clipped RN out of range");
      out.require(p.unclipped >= range.lo - tol && p.unclipped <= range.hi + tol,
                  fmt("raw RN ratio %.17g outside [%g, %g]", p.unclipped, range.lo,
                      range.hi));
    }
  }
  if (out.pass) out.detail = fmt("20000 states, largest excursion %.2e", std::max(worst, 0.0));
  return out;
}

// 3. Singleton bags against the plain value-to-value fit.
Outcome singleton_reduction() {
  Outcome out;
  std::mt19937_64 rng(3003);
  for (int trial = 0; trial < 20; ++trial) {
    test_support::DatasetShape shape;
    shape.min_bags = 10;
    shape.max_bags = 40;
    shape.min_size = shape.max_size = 1;
    const BagDataset ds = test_support::random_dataset(rng, shape);
    const int d = 1 + trial % 5;
    const BasisSpec basis = default_basis(ds, BasisFamily::chebyshev, d);
    std::vector<oracle::Vector> q;
    oracle::Vector y;
    for (const Bag& b : ds.bags) {
      q.push_back(oracle::chebyshev_basis(b.observations[0], d, basis.domain().lo,
                                          basis.domain().hi));
      y.push_back(b.label);
    }
    const auto stats = oracle::accumulate(q, y);
    for (Normalization mode : {Normalization::raw_sum, Normalization::size_normalized}) {
      const TrainedModel model = fit(ds, basis, mode);
      for (double x : grid(basis.domain().lo, basis.domain().hi, 9)) {
        const auto qx = oracle::chebyshev_basis(x, d, basis.domain().lo, basis.domain().hi);
        const MomentVector m = model.point_state(x);
        out.require(oracle::close(predict_ls(model, m).value,
                                  oracle::least_squares(stats, qx), kOracleTol, 1.0),
                    "LS differs from value-to-value fit");
        out.require(oracle::close(predict_rn(model, m).unclipped,
                                  oracle::radon_nikodym(stats, qx), kOracleTol, 1.0),
                    "RN differs from value-to-value fit");
      }
    }
  }
  if (out.pass) out.detail = "20 datasets, both modes";
  return out;
}

// 4. Constant labels.
Outcome constant_collapse() {
  Outcome out;
  std::mt19937_64 rng(4004);
  std::uniform_real_distribution<double> x(-3.0, 3.0);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 10; ++trial) {
    test_support::DatasetShape shape;
    shape.min_bags = 10;
    shape.max_bags = 50;
    shape.max_size = 10;
    BagDataset ds = test_support::random_dataset(rng, shape);
    const double c = -1.75 + 0.5 * trial;
    for (Bag& b : ds.bags) b.label = c;
    const TrainedModel model = fit(ds, default_basis(ds, BasisFamily::legendre, 1 + trial),
                                   Normalization::size_normalized);
    for (int s = 0; s < 200; ++s) {
      MomentVector m = model.point_state(x(rng));
      if (s % 2) {
        for (double& v : m.values) v = g(rng);
      }
      out.require(std::abs(predict_rn(model, m).unclipped - c) <= kConstantTol,
                  fmt("RN differs from %g", c));
    }
    const SpectralModel spectral = spectral_decompose(model);
    for (double y : spectral.outcomes()) {
      out.require(std::abs(y - c) <= kConstantTol, fmt("outcome %.17g differs from %g", y, c));
    }
  }
  if (out.pass) out.detail = "10 datasets, 2000 states";
  return out;
}

// 5. Linear target.
Outcome linear_experiment() {
  Outcome out;
  const TrainedModel model = desk_model(Target::linear);
  const auto xs = grid(-0.9, 0.9, 181);
  const double ls = rmse(model, Target::linear, Estimator::ls, xs);
  const double rn = rmse(model, Target::linear, Estimator::rn, xs);
  out.require(ls < kRmseLimit && rn < kRmseLimit, "");
  out.detail = fmt("RMSE LS %.4f, RN %.4f (limit %.2f)", ls, rn, kRmseLimit);
  return out;
}

// 6. Runge and step targets.
Outcome runge_and_step() {
  Outcome out;
  const auto wide = grid(-1.1, 1.1, 221);
  for (Target target : {Target::runge, Target::step}) {
    const TrainedModel model = desk_model(target);
    const double lo = target == Target::runge ? 1.0 / 26.0 : 0.0;
    const double hi = 1.0;
    for (double x : wide) {
      const double a = predict_rn(model, model.point_state(x)).unclipped;
      out.require(a >= lo - kRangeTol && a <= hi + kRangeTol,
                  std::string(to_string(target)) + fmt(" RN %.17g at x=%g", a, x));
    }
    if (target == Target::step) {
      const auto xs = grid(-0.9, 0.9, 181);
      const double ls = rmse(model, target, Estimator::ls, xs);
      const double rn = rmse(model, target, Estimator::rn, xs);
      out.require(rn <= ls, "");
      if (out.pass || out.detail.empty()) {
        out.detail = fmt("range held on both; step RMSE RN %.4f vs LS %.4f", rn, ls);
      }
    }
  }
  return out;
}

// 7. Spectrum identities on every model fitted here.
Outcome spectrum_identities() {
  Outcome out;
  std::vector<TrainedModel> models;
  for (Target t : {Target::linear, Target::runge, Target::step}) models.push_back(desk_model(t));
  std::mt19937_64 rng(7007);
  for (int trial = 0; trial < 10; ++trial) {
    test_support::DatasetShape shape;
    shape.min_bags = 30;
    shape.max_bags = 100;
    shape.max_size = 10;
    const BagDataset ds = test_support::random_dataset(rng, shape);
    models.push_back(fit(ds, default_basis(ds, BasisFamily::chebyshev, 2 + trial % 6),
                         trial % 2 ? Normalization::raw_sum : Normalization::size_normalized));
  }
  std::uniform_real_distribution<double> x(-1.5, 1.5);
  std::normal_distribution<double> g;
  for (const TrainedModel& model : models) {
    const SpectralModel spectral = spectral_decompose(model);
    const auto& psi = spectral.eigenvectors();
    for (std::size_t i = 0; i < psi.size(); ++i) {
      const auto gpsi = model.gram().multiply(psi[i]);
      for (std::size_t j = 0; j < psi.size(); ++j) {
        out.require(std::abs(oracle::dot(psi[j], gpsi) - (i == j ? 1.0 : 0.0)) <= kSpectrumTol,
                    "(a) psi^T G psi != I");
      }
    }
    const Interval range = model.label_range();
    const double rtol = kRangeTol * std::max(std::abs(range.lo), std::abs(range.hi));
    for (const EigenPair& p : gen_eig_sym(model.label_gram(), model.gram_factor())) {
      out.require(p.value >= range.lo - rtol && p.value <= range.hi + rtol,
                  fmt("(d) outcome %.17g outside [%g, %g]", p.value, range.lo, range.hi));
    }
    const oracle::Matrix g_inv = oracle::invert(model.gram().to_rows());
    for (int s = 0; s < 100; ++s) {
      MomentVector m = model.point_state(x(rng));
      if (s % 2) {
        for (double& v : m.values) v = g(rng);
      }
      const OutcomeDistribution dist = outcome_distribution(spectral, m);
      const double quad = oracle::dot(m.values, oracle::mat_vec(g_inv, m.values));
      out.require(oracle::close(dist.total_weight, quad, kSpectrumTol), "(b) sum w != m^T G^-1 m");
      double mean = 0.0;
      for (std::size_t i = 0; i < dist.outcomes.size(); ++i) {
        mean += dist.probabilities[i] * dist.outcomes[i];
      }
      out.require(oracle::close(mean, predict_rn(model, m).value, kSpectrumTol),
                  "(c) sum P y != RN");
    }
  }
  if (out.pass) out.detail = fmt("%g models, 100 states each", static_cast<double>(models.size()));
  return out;
}

// 8. Most probable outcome is the one nearest f(x).
Outcome probability_map() {
  Outcome out;
  const TrainedModel model = desk_model(Target::linear);
  const SpectralModel spectral = spectral_decompose(model);
  const auto xs = grid(-1.0, 1.0, 201);
  std::size_t hits = 0;
  for (double x : xs) {
    const auto dist = outcome_distribution(spectral, model.point_state(x));
    const auto best = std::max_element(dist.probabilities.begin(), dist.probabilities.end()) -
                      dist.probabilities.begin();
    std::size_t nearest = 0;
    for (std::size_t k = 1; k < dist.outcomes.size(); ++k) {
      if (std::abs(dist.outcomes[k] - x) < std::abs(dist.outcomes[nearest] - x)) nearest = k;
    }
    hits += static_cast<std::size_t>(best) == nearest;
  }
  const double share = static_cast<double>(hits) / static_cast<double>(xs.size());
  out.require(share >= kArgmaxShare, "");
  out.detail = fmt("argmax matches nearest outcome on %.1f%% of points (need %.0f%%)",
                   100.0 * share, 100.0 * kArgmaxShare);
  return out;
}

// 9. Mode equivalence for equal bag sizes and scale invariance of P.
Outcome invariances() {
  Outcome out;
  std::mt19937_64 rng(9009);
  std::uniform_real_distribution<double> x(-1.2, 1.2);
  double worst_general = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    test_support::DatasetShape shape;
    shape.min_bags = shape.max_bags = 60;
    shape.min_size = shape.max_size = 1 + trial;
    const BagDataset ds = test_support::random_dataset(rng, shape);
    const BasisSpec basis = default_basis(ds, BasisFamily::chebyshev, 2 + trial % 7);
    const TrainedModel raw = fit(ds, basis, Normalization::raw_sum);
    const TrainedModel norm = fit(ds, basis, Normalization::size_normalized);
    const SpectralModel spectral = spectral_decompose(norm);
    for (int s = 0; s < 50; ++s) {
      const double xs = x(rng);
      const MomentVector mr = raw.point_state(xs);
      const MomentVector mn = norm.point_state(xs);
      out.require(oracle::close(predict_ls(raw, mr).value, predict_ls(norm, mn).value,
                                kModeTol, 1.0),
                  "LS differs between modes");
      out.require(oracle::close(predict_rn(raw, mr).value, predict_rn(norm, mn).value,
                                kModeTol, 1.0),
                  "RN differs between modes");

      const auto p = outcome_distribution(spectral, mn).probabilities;
      // Sign changes and powers of two scale every intermediate exactly.
      for (double c : {-1.0, 2.0, 0.5, -4.0, 1024.0, -0x1p-20}) {
        MomentVector scaled = mn;
        for (double& v : scaled.values) v *= c;
        const auto q = outcome_distribution(spectral, scaled).probabilities;
        for (std::size_t i = 0; i < p.size(); ++i) {
          out.require(bits(p[i]) == bits(q[i]), fmt("P not bit-identical under c = %g", c));
        }
      }
      // Other factors round each scaled entry once.
      for (double c : {3.7, -0.3, 1e5}) {
        MomentVector scaled = mn;
        for (double& v : scaled.values) v *= c;
        const auto q = outcome_distribution(spectral, scaled).probabilities;
        for (std::size_t i = 0; i < p.size(); ++i) {
          worst_general = std::max(worst_general, std::abs(p[i] - q[i]));
          out.require(std::abs(p[i] - q[i]) <= kScaleTol, fmt("P changed under c = %g", c));
        }
      }
    }
  }
  if (out.pass) {
    out.detail = fmt("modes agree; P exact for c = +-2^k, within %.1e otherwise", worst_general);
  }
  return out;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int cli(std::vector<std::string> args) {
  args.insert(args.begin(), "distreg");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  // Keep the report readable: command diagnostics are not part of it.
  std::ostringstream sink;
  std::streambuf* saved = std::cerr.rdbuf(sink.rdbuf());
  const int rc = cli::run(static_cast<int>(argv.size()), argv.data());
  std::cerr.rdbuf(saved);
  return rc;
}

// 10. Persistence and reproducible command-line output.
Outcome persistence() {
  Outcome out;
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "distreg_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);

  const TrainedModel model = desk_model(Target::runge);
  save_model(model, dir / "model.txt");
  const TrainedModel back = load_model(dir / "model.txt");
  for (double x : grid(-1.1, 1.1, 221)) {
    const double a = predict_rn(model, model.point_state(x)).value;
    const double b = predict_rn(back, back.point_state(x)).value;
    const double c = predict_ls(model, model.point_state(x)).value;
    const double d = predict_ls(back, back.point_state(x)).value;
    out.require(std::abs(a - b) <= kRoundTripTol * std::abs(a) &&
                    std::abs(c - d) <= kRoundTripTol * std::max(std::abs(c), 1e-300),
                "model reload changed predictions");
  }

  ExperimentConfig cfg = desk_experiment(Target::step);
  cfg.bag_count = 300;
  const BagDataset ds = generate(cfg);
  save_dataset(ds, dir / "data.jsonl");
  const BagDataset ds_back = load_dataset(dir / "data.jsonl");
  const BasisSpec basis = default_basis(ds, BasisFamily::chebyshev, 8);
  const TrainedModel f1 = fit(ds, basis, Normalization::raw_sum);
  const TrainedModel f2 = fit(ds_back, basis, Normalization::raw_sum);
  for (std::size_t i = 0; i < 8; ++i) {
    out.require(bits(f1.label_moments()[i]) == bits(f2.label_moments()[i]), "Y changed");
    for (std::size_t j = 0; j <= i; ++j) {
      out.require(bits(f1.gram()(i, j)) == bits(f2.gram()(i, j)), "G changed");
      out.require(bits(f1.label_gram()(i, j)) == bits(f2.label_gram()(i, j)), "yG changed");
    }
  }

  std::vector<std::string> outputs;
  for (const char* run : {"a", "b"}) {
    const std::string p = (dir / run).string();
    int rc = cli({"gen", "--target", "runge", "--N", "50", "--M", "400", "--seed", "5",
                  "--out", p + ".jsonl"});
    rc |= cli({"fit", "--in", p + ".jsonl", "--dx", "7", "--out", p + ".model"});
    rc |= cli({"predict", "--model", p + ".model", "--out", p + ".pred.csv"});
    rc |= cli({"spectrum", "--model", p + ".model", "--outcomes", p + ".y.csv",
               "--probabilities", p + ".p.csv"});
    rc |= cli({"eval", "--model", p + ".model", "--data", p + ".jsonl", "--out",
               p + ".eval.csv"});
    out.require(rc == 0, "command failed");
    std::string all;
    for (const char* ext : {".jsonl", ".model", ".pred.csv", ".y.csv", ".p.csv", ".eval.csv"}) {
      all += slurp(p + ext) + '\x1e';
    }
    outputs.push_back(all);
  }
  out.require(outputs[0] == outputs[1], "CLI outputs differ between runs");
  fs::remove_all(dir);
  if (out.pass) out.detail = "model, dataset and five CLI commands reproduce exactly";
  return out;
}

struct Criterion {
  int id;
  const char* name;
  double time_limit;  // seconds, 0 for none
  std::function<Outcome()> check;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "oracle equivalence on small instances", 1.0, oracle_equivalence},
      {2, "RN stays within the label range", 5.0, rn_range_bound},
      {3, "singleton bags reduce to value-to-value", 1.0, singleton_reduction},
      {4, "constant labels collapse", 0.0, constant_collapse},
      {5, "linear experiment RMSE", 10.0, linear_experiment},
      {6, "runge and step experiments", 20.0, runge_and_step},
      {7, "spectrum identities", 0.0, spectrum_identities},
      {8, "probability map argmax", 10.0, probability_map},
      {9, "mode and scale invariances", 0.0, invariances},
      {10, "round-trip persistence", 0.0, persistence},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome result;
    try {
      result = c.check();
    } catch (const std::exception& e) {
      result.pass = false;
      result.detail = std::string("exception: ") + e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_limit > 0.0 && seconds >= c.time_limit) {
      result.pass = false;
      result.detail += fmt(" [over time limit %.0f s]", c.time_limit);
    }
    failures += !result.pass;
    std::printf("%s criterion %d: %s: %s (%.3f s)\n", result.pass ? "PASS" : "FAIL", c.id,
                c.name, result.detail.c_str(), seconds);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
