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

#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "distreg/errors.hpp"
#include "distreg/io_formats.hpp"
#include "distreg/moments.hpp"
#include "distreg/regression.hpp"
#include "distreg/spectrum.hpp"
#include "distreg/synthetic.hpp"

namespace distreg::cli {

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

// Usage problems detected after flag parsing (bad combinations, bad values
// that CLI11 validators cannot express).
class UsageError : public Error {
 public:
  using Error::Error;
};

std::ofstream open_csv(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot open '" + path + "' for writing");
  return out;
}

void add_grid_options(CLI::App& cmd, GridSpec& grid) {
  cmd.add_option("--lo", grid.lo, "Grid start")->capture_default_str();
  cmd.add_option("--hi", grid.hi, "Grid end")->capture_default_str();
  cmd.add_option("--count", grid.count, "Number of grid points (>= 2)")
      ->capture_default_str();
}

std::vector<double> grid_points(const GridSpec& grid) {
  try {
    return grid.points();
  } catch (const InputError& e) {
    throw UsageError(e.what());
  }
}

void report_extrapolation(const TrainedModel& model,
                          const std::vector<double>& xs) {
  const Interval& domain = model.basis().domain();
  std::size_t outside = 0;
  for (double x : xs) {
    if (!domain.contains(x)) ++outside;
  }
  if (outside > 0) {
    std::cerr << "note: " << outside << " of " << xs.size()
              << " grid points lie outside the basis domain ["
              << format_double(domain.lo) << ", " << format_double(domain.hi)
              << "] and are extrapolated\n";
  }
  if (model.degenerate()) {
    std::cerr << "note: model Gram matrix is degenerate; rank "
              << model.gram_factor().rank() << " of "
              << model.basis().degree_count() << " retained\n";
  }
}

// --- gen ---

struct GenOptions {
  std::string target;
  std::size_t bag_size = 1000;
  std::size_t bag_count = 10000;
  double noise = 0.1;
  std::uint64_t seed = 0;
  double x_lo = -1.0;
  double x_hi = 1.0;
  std::optional<std::size_t> dx;
  std::string basis = "chebyshev";
  std::string out;
};

void cmd_gen(const GenOptions& opt) {
  ExperimentConfig config;
  config.target = parse_target(opt.target);
  config.bag_size = opt.bag_size;
  config.bag_count = opt.bag_count;
  config.noise_half_width = opt.noise;
  config.seed = opt.seed;
  config.x_support = {opt.x_lo, opt.x_hi};
  try {
    config.validate();
  } catch (const InputError& e) {
    throw UsageError(e.what());
  }

  nlohmann::json meta = nlohmann::json::object();
  meta["generator"] = {{"target", std::string(to_string(config.target))},
                       {"N", config.bag_size},
                       {"M", config.bag_count},
                       {"R", config.noise_half_width},
                       {"seed", config.seed},
                       {"x_support", {config.x_support.lo, config.x_support.hi}},
                       {"rng", "mt19937_64"}};
  if (opt.dx) {
    meta["basis"] = {{"family", std::string(to_string(parse_basis_family(opt.basis)))},
                     {"degree_count", *opt.dx}};
  }
  save_dataset(generate(config), opt.out, meta);
  std::cerr << "wrote " << config.bag_count << " bags to " << opt.out << '\n';
}

// --- fit ---

struct FitOptions {
  std::string in;
  std::size_t dx = 0;
  std::string basis = "chebyshev";
  std::string mode = "size_normalized";
  std::optional<double> domain_lo;
  std::optional<double> domain_hi;
  std::string out;
};

void cmd_fit(const FitOptions& opt) {
  const BagDataset dataset = load_dataset(opt.in);
  const BasisFamily family = parse_basis_family(opt.basis);
  const Normalization mode = parse_normalization(opt.mode);

  std::optional<BasisSpec> basis;
  if (opt.domain_lo || opt.domain_hi) {
    if (!opt.domain_lo || !opt.domain_hi) {
      throw UsageError("--domain-lo and --domain-hi must be given together");
    }
    try {
      basis.emplace(family, opt.dx, Interval{*opt.domain_lo, *opt.domain_hi});
    } catch (const InputError& e) {
      throw UsageError(e.what());
    }
  } else {
    basis.emplace(default_basis(dataset, family, opt.dx));
  }

  const TrainedModel model = fit(dataset, *basis, mode);
  save_model(model, opt.out);

  const GramFactor& factor = model.gram_factor();
  std::cerr << "bags: " << dataset.bags.size() << '\n'
            << "mean_bag_size: " << format_double(model.mean_bag_size()) << '\n'
            << "domain: [" << format_double(basis->domain().lo) << ", "
            << format_double(basis->domain().hi) << "]\n"
            << "degeneracy_flag: " << (model.degenerate() ? 1 : 0) << '\n'
            << "rank: " << factor.rank() << " of " << basis->degree_count() << '\n'
            << "gram_eigenvalue_range: [" << format_double(factor.min_eigenvalue())
            << ", " << format_double(factor.max_eigenvalue()) << "]\n"
            << "condition_number: " << format_double(factor.condition_number())
            << '\n';
}

// --- predict ---

struct PredictOptions {
  std::string model;
  GridSpec grid;
  std::string out;
};

void cmd_predict(const PredictOptions& opt) {
  const std::vector<double> xs = grid_points(opt.grid);
  const TrainedModel model = load_model(opt.model);
  report_extrapolation(model, xs);

  std::ofstream csv = open_csv(opt.out);
  csv << "x,a_ls,a_rn\n";
  std::size_t failures = 0;
  for (double x : xs) {
    const MomentVector m = model.point_state(x);
    std::string ls = format_double(predict_ls(model, m).value);
    std::string rn;
    try {
      rn = format_double(predict_rn(model, m).value);
    } catch (const SpanError&) {
      ++failures;
    }
    csv << format_double(x) << ',' << ls << ',' << rn << '\n';
  }
  if (failures > 0) {
    std::cerr << "warning: " << failures
              << " grid points are outside the model span; a_rn left empty\n";
  }
  if (!csv) throw InputError("failed writing '" + opt.out + "'");
}

// --- spectrum ---

struct SpectrumOptions {
  std::string model;
  GridSpec grid;
  std::string outcomes;
  std::string probabilities;
  std::string projections;
};

void cmd_spectrum(const SpectrumOptions& opt) {
  const std::vector<double> xs = grid_points(opt.grid);
  const TrainedModel model = load_model(opt.model);
  report_extrapolation(model, xs);
  const SpectralModel spectral = spectral_decompose(model);
  const std::size_t d = spectral.effective_size();
  if (spectral.truncated()) {
    std::cerr << "note: " << d << " of " << spectral.degree_count()
              << " outcomes retained after truncation\n";
  }

  std::ofstream outcomes = open_csv(opt.outcomes);
  outcomes << "i,y_i\n";
  for (std::size_t i = 0; i < d; ++i) {
    outcomes << i << ',' << format_double(spectral.outcomes()[i]) << '\n';
  }

  std::ofstream probs = open_csv(opt.probabilities);
  std::optional<std::ofstream> signs;
  if (!opt.projections.empty()) signs.emplace(open_csv(opt.projections));

  probs << 'x';
  for (std::size_t i = 0; i < d; ++i) probs << ",P_" << i;
  probs << '\n';
  if (signs) {
    *signs << 'x';
    for (std::size_t i = 0; i < d; ++i) *signs << ",s_" << i;
    *signs << '\n';
  }

  std::size_t failures = 0;
  for (double x : xs) {
    probs << format_double(x);
    if (signs) *signs << format_double(x);
    try {
      const OutcomeDistribution dist =
          outcome_distribution(spectral, model.point_state(x));
      for (double p : dist.probabilities) probs << ',' << format_double(p);
      if (signs) {
        for (double s : dist.signed_projections) *signs << ',' << format_double(s);
      }
    } catch (const SpanError&) {
      ++failures;
      for (std::size_t i = 0; i < d; ++i) probs << ',';
      if (signs) {
        for (std::size_t i = 0; i < d; ++i) *signs << ',';
      }
    }
    probs << '\n';
    if (signs) *signs << '\n';
  }
  if (failures > 0) {
    std::cerr << "warning: " << failures
              << " grid points are outside the model span; probabilities left empty\n";
  }
}

// --- eval ---

struct EvalOptions {
  std::string model;
  std::string data;
  std::string estimator = "rn";
  std::string out;
};

void check_dataset_basis(const nlohmann::json& meta, const TrainedModel& model) {
  const auto basis = meta.find("basis");
  if (basis == meta.end()) return;
  const BasisSpec& spec = model.basis();
  if (basis->contains("degree_count") &&
      (*basis)["degree_count"].get<std::size_t>() != spec.degree_count()) {
    throw InputError("dataset basis degree_count " +
                     (*basis)["degree_count"].dump() +
                     " does not match model degree_count " +
                     std::to_string(spec.degree_count()));
  }
  if (basis->contains("family") &&
      (*basis)["family"].get<std::string>() != to_string(spec.family())) {
    throw InputError("dataset basis family " + (*basis)["family"].dump() +
                     " does not match model family " +
                     std::string(to_string(spec.family())));
  }
}

void cmd_eval(const EvalOptions& opt) {
  const Estimator estimator = parse_estimator(opt.estimator);
  const TrainedModel model = load_model(opt.model);
  const DatasetFile file = load_dataset_file(opt.data);
  check_dataset_basis(file.meta, model);

  double sum_sq = 0.0;
  double max_abs = 0.0;
  std::size_t evaluated = 0;
  std::size_t failed = 0;
  for (const Bag& bag : file.dataset.bags) {
    const MomentVector m = bag_moments(bag, model.basis(), model.mode());
    try {
      const double err =
          predict_from_distribution(model, m, estimator).value - bag.label;
      sum_sq += err * err;
      max_abs = std::max(max_abs, std::abs(err));
      ++evaluated;
    } catch (const SpanError&) {
      ++failed;
    }
  }
  if (evaluated == 0) {
    throw InputError("no bag could be evaluated against the model");
  }
  const double rmse = std::sqrt(sum_sq / static_cast<double>(evaluated));

  std::ofstream report = open_csv(opt.out);
  report << "metric,value\n"
         << "estimator," << to_string(estimator) << '\n'
         << "bags," << file.dataset.bags.size() << '\n'
         << "evaluated," << evaluated << '\n'
         << "failed," << failed << '\n'
         << "rmse," << format_double(rmse) << '\n'
         << "max_abs_error," << format_double(max_abs) << '\n';
  std::cerr << "estimator: " << to_string(estimator) << '\n'
            << "rmse: " << format_double(rmse) << '\n'
            << "max_abs_error: " << format_double(max_abs) << '\n';
  if (failed > 0) {
    std::cerr << "warning: " << failed << " bags outside the model span\n";
  }
}

}  // namespace

std::vector<double> GridSpec::points() const {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    throw InputError("grid requires finite lo < hi");
  }
  if (count < 2) throw InputError("grid requires at least 2 points");
  std::vector<double> xs(count);
  const double step = (hi - lo) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) {
    xs[i] = lo + step * static_cast<double>(i);
  }
  xs.back() = hi;
  return xs;
}

int run(int argc, const char* const* argv) {
  CLI::App app{"Distribution regression from bag moments"};
  app.name("distreg");
  app.require_subcommand(1);
  const CLI::IsMember families({"chebyshev", "legendre", "monomial"});

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a synthetic bag dataset");
  gen_cmd->add_option("--target", gen.target, "linear | runge | step")
      ->required()
      ->check(CLI::IsMember({"linear", "runge", "step"}));
  gen_cmd->add_option("--N", gen.bag_size, "Observations per bag")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  gen_cmd->add_option("--M", gen.bag_count, "Number of bags")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  gen_cmd->add_option("--R", gen.noise, "Noise half-width")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  gen_cmd->add_option("--seed", gen.seed, "RNG seed")->capture_default_str();
  gen_cmd->add_option("--x-lo", gen.x_lo, "Bag center support start")
      ->capture_default_str();
  gen_cmd->add_option("--x-hi", gen.x_hi, "Bag center support end")
      ->capture_default_str();
  gen_cmd->add_option("--dx", gen.dx, "Record an intended basis size in the header")
      ->check(CLI::PositiveNumber);
  gen_cmd->add_option("--basis", gen.basis, "Basis family recorded with --dx")
      ->check(families)
      ->capture_default_str();
  gen_cmd->add_option("--out", gen.out, "Output dataset file")->required();

  FitOptions fitopt;
  auto* fit_cmd = app.add_subcommand("fit", "Fit a model from a dataset file");
  fit_cmd->add_option("--in", fitopt.in, "Input dataset file")->required();
  fit_cmd->add_option("--dx", fitopt.dx, "Number of basis functions")
      ->required()
      ->check(CLI::PositiveNumber);
  fit_cmd->add_option("--basis", fitopt.basis, "chebyshev | legendre | monomial")
      ->check(families)
      ->capture_default_str();
  fit_cmd->add_option("--mode", fitopt.mode, "size_normalized | raw_sum")
      ->check(CLI::IsMember({"size_normalized", "raw_sum"}))
      ->capture_default_str();
  fit_cmd->add_option("--domain-lo", fitopt.domain_lo,
                      "Basis domain start (default: smallest observation)");
  fit_cmd->add_option("--domain-hi", fitopt.domain_hi,
                      "Basis domain end (default: largest observation)");
  fit_cmd->add_option("--out", fitopt.out, "Output model file")->required();

  PredictOptions pred;
  auto* pred_cmd = app.add_subcommand("predict", "Evaluate both estimators on a grid");
  pred_cmd->add_option("--model", pred.model, "Model file")->required();
  add_grid_options(*pred_cmd, pred.grid);
  pred_cmd->add_option("--out", pred.out, "Output CSV (x,a_ls,a_rn)")->required();

  SpectrumOptions spec;
  auto* spec_cmd =
      app.add_subcommand("spectrum", "Outcomes and their probabilities on a grid");
  spec_cmd->add_option("--model", spec.model, "Model file")->required();
  add_grid_options(*spec_cmd, spec.grid);
  spec_cmd->add_option("--outcomes", spec.outcomes, "Output CSV (i,y_i)")->required();
  spec_cmd->add_option("--probabilities", spec.probabilities,
                       "Output CSV (x,P_0,...)")
      ->required();
  spec_cmd->add_option("--projections", spec.projections,
                       "Optional CSV of signed projections (x,s_0,...)");

  EvalOptions evalopt;
  auto* eval_cmd =
      app.add_subcommand("eval", "Score bag-level predictions against labels");
  eval_cmd->add_option("--model", evalopt.model, "Model file")->required();
  eval_cmd->add_option("--data", evalopt.data, "Dataset file")->required();
  eval_cmd->add_option("--estimator", evalopt.estimator, "rn | ls")
      ->check(CLI::IsMember({"rn", "ls"}))
      ->capture_default_str();
  eval_cmd->add_option("--out", evalopt.out, "Output report CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, std::cerr, std::cerr);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (gen_cmd->parsed()) cmd_gen(gen);
    if (fit_cmd->parsed()) cmd_fit(fitopt);
    if (pred_cmd->parsed()) cmd_predict(pred);
    if (spec_cmd->parsed()) cmd_spectrum(spec);
    if (eval_cmd->parsed()) cmd_eval(evalopt);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return 0;
}

}  // namespace distreg::cli
