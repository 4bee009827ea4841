// Copyright 2026 The roipca Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "roipca/cli.h"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "roipca/data.h"
#include "roipca/error.h"
#include "roipca/experiment.h"

namespace roipca {
namespace {

namespace fs = std::filesystem;

// Raised for conditions that map to kExitUsage.
class UsageError : public Error {
 public:
  using Error::Error;
};

std::string Fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

void PrintSummary(const ExperimentResult& r, const std::string& title,
                  std::ostream& out) {
  out << title << "\n";
  out << "  algorithm            final_error   iter_time_s   macs/ingest\n";
  for (const AlgorithmSummary& s : Summarize(r)) {
    char line[160];
    std::snprintf(line, sizeof(line), "  %-20s %-13s %-13s %s\n",
                  s.algorithm.c_str(), Fmt(s.median_final_error).c_str(),
                  Fmt(s.median_iter_time).c_str(),
                  s.mean_macs > 0.0 ? Fmt(s.mean_macs).c_str() : "-");
    out << line;
  }
}

void MakeDir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw UsageError("cannot create " + dir.string());
}

void RequireFile(const std::string& path) {
  if (!fs::is_regular_file(path)) throw UsageError("no such file: " + path);
}

struct RunArgs {
  std::string spec;
  std::string out = "results";
  std::string prefix = "run";
  std::optional<std::uint64_t> seed;
};

int Run(const RunArgs& a, std::ostream& out) {
  RequireFile(a.spec);
  ExperimentSpec spec;
  try {
    spec = LoadSpecConfig(a.spec);
  } catch (const ParseError& e) {
    throw UsageError(a.spec + ": " + e.what());
  }
  if (a.seed) spec.seed = *a.seed;
  if (spec.data.kind == GeneratorKind::kCsv) RequireFile(spec.data.path);
  MakeDir(a.out);
  const ExperimentResult r = RunExperiment(spec);
  EmitResults(r, a.out, a.prefix, a.prefix);
  PrintSummary(r, a.prefix, out);
  return kExitOk;
}

struct FitArgs {
  std::string input;
  std::string out = "components.csv";
  std::string algorithm = "roipca1";
  Index m = 5;
  std::optional<int> order;
  std::optional<std::string> mu;
  std::optional<Index> n0;
  std::optional<std::int64_t> recenter_every;
  std::optional<std::int64_t> reorth_every;
  bool header = false;
  std::optional<Index> label_column;
};

int Fit(const FitArgs& a, std::ostream& out) {
  RequireFile(a.input);
  CsvOptions csv;
  csv.header = a.header;
  csv.label_column = a.label_column;
  Matrix x;
  try {
    x = LoadCsvDataset(a.input, csv);
  } catch (const ParseError& e) {
    throw UsageError(a.input + ": " + e.what());
  }
  std::string name = a.algorithm;
  if (a.order || a.mu) {
    name += ":" + std::to_string(a.order.value_or(
                      name.back() == '2' ? 2 : 1));
    if (a.mu) name += ":" + *a.mu;
  }
  AlgorithmSpec alg;
  try {
    alg = ParseAlgorithm(name, a.m);
    alg.online.recenter_every = a.recenter_every;
    if (a.reorth_every) alg.online.reorthonormalize_every = *a.reorth_every;
    alg.online.Validate();
  } catch (const InvalidInputError& e) {
    throw UsageError(e.what());
  }
  const Index n0 =
      a.n0.value_or(std::min<Index>(x.rows(), std::max<Index>(4 * a.m, 20)));
  if (n0 > x.rows()) throw UsageError("--n0 exceeds the number of rows");
  std::unique_ptr<StreamingEstimator> est =
      MakeEstimator(alg, x.topRows(n0), a.m);
  for (Index i = n0; i < x.rows(); ++i) est->Ingest(x.row(i).transpose());
  const EigenPairs pairs = est->Estimate();

  const fs::path path(a.out);
  if (path.has_parent_path()) MakeDir(path.parent_path());
  fs::path sidecar = path;
  sidecar.replace_extension();
  sidecar += "_eigenvalues.csv";
  std::ofstream comp(path);
  std::ofstream vals(sidecar);
  if (!comp || !vals) throw UsageError("cannot write " + a.out);
  for (Index j = 0; j < pairs.vectors.cols(); ++j) {
    for (Index i = 0; i < pairs.vectors.rows(); ++i) {
      comp << (i ? "," : "") << Fmt(pairs.vectors(i, j));
    }
    comp << "\n";
    vals << Fmt(pairs.values[j]) << "\n";
  }
  out << "fit " << alg.label << ": " << est->count() << " samples, "
      << pairs.vectors.cols() << " components -> " << path.string() << ", "
      << sidecar.string() << "\n";
  return kExitOk;
}

struct CompareArgs {
  std::string out = "results";
  std::optional<std::string> input;
  bool header = false;
  std::optional<Index> label_column;
  Index m = 5;
  int trials = 0;  // 0: 20 for the Gaussian runs, 10 for the spiked run
  std::uint64_t seed = 0;
  bool quick = false;
};

void WriteRuntimeTable(const std::vector<std::pair<Index, ExperimentResult>>& rs,
                       std::ostream& out) {
  out << "d,algorithm,mean_iter_time_s,median_iter_time_s,"
         "mean_macs_per_ingest\n";
  for (const auto& [d, r] : rs) {
    for (const AlgorithmSummary& s : Summarize(r)) {
      out << d << "," << s.algorithm << "," << Fmt(s.mean_iter_time) << ","
          << Fmt(s.median_iter_time) << "," << Fmt(s.mean_macs) << "\n";
    }
  }
}

int Compare(const CompareArgs& a, std::ostream& out) {
  if (a.input) RequireFile(*a.input);
  MakeDir(a.out);
  const int gamma_trials = a.trials ? a.trials : (a.quick ? 2 : 20);
  const int spiked_trials = a.trials ? a.trials : (a.quick ? 2 : 10);

  for (Index d : {Index{10}, Index{100}}) {
    ExperimentSpec spec = GammaAccuracySpec(d, gamma_trials);
    spec.seed = a.seed;
    if (a.quick) spec.n_stream = 50;
    const ExperimentResult r = RunExperiment(spec);
    const std::string name = "gamma_d" + std::to_string(d);
    EmitResults(r, a.out, name, name);
    PrintSummary(r, name, out);
  }
  {
    ExperimentSpec spec = SpikedAccuracySpec(spiked_trials);
    spec.seed = a.seed;
    if (a.quick) spec.n_stream = 50;
    const ExperimentResult r = RunExperiment(spec);
    EmitResults(r, a.out, "spiked", "spiked");
    PrintSummary(r, "spiked", out);
  }
  {
    const std::vector<std::string> algs{"froipca1", "roipca1", "froipca2",
                                        "roipca2",  "ipca",    "ccipca"};
    std::vector<Index> dims;
    for (Index d = 100; d <= (a.quick ? 200 : 1500); d += 100) {
      dims.push_back(d);
    }
    std::vector<std::pair<Index, ExperimentResult>> rs;
    for (Index d : dims) {
      ExperimentSpec spec =
          RuntimeSpec(d, 10, a.quick ? 100 : 10000, 50, algs);
      spec.seed = a.seed;
      rs.emplace_back(d, RunExperiment(spec));
    }
    std::ofstream f(fs::path(a.out) / "runtime.csv");
    if (!f) throw UsageError("cannot write runtime.csv");
    WriteRuntimeTable(rs, f);
    out << "runtime sweep (m = 10)\n";
    std::ostringstream table;
    WriteRuntimeTable(rs, table);
    out << table.str();
  }
  if (a.input) {
    ExperimentSpec spec;
    spec.data.kind = GeneratorKind::kCsv;
    spec.data.path = *a.input;
    spec.data.csv.header = a.header;
    spec.data.csv.label_column = a.label_column;
    Matrix x;
    try {
      x = spec.data.Generate(0, 0);
    } catch (const ParseError& e) {
      throw UsageError(*a.input + ": " + e.what());
    }
    spec.m = a.m;
    spec.n0 = std::max<Index>(x.rows() / 3, a.m + 1);
    spec.n_stream = x.rows() - spec.n0;
    spec.algorithms = AccuracyAlgorithms(a.m);
    spec.seed = a.seed;
    const ExperimentResult r = RunExperiment(spec);
    EmitResults(r, a.out, "dataset", fs::path(*a.input).filename().string());
    PrintSummary(r, "dataset", out);
  }
  return kExitOk;
}

}  // namespace

int Dispatch(int argc, const char* const* argv, std::ostream& out,
             std::ostream& err) {
  CLI::App app{"Streaming PCA with rank-one eigenupdates", "roipca"};
  app.require_subcommand(1, 1);
  app.set_help_all_flag("--help-all", "Expand all help");

  const std::vector<std::string> algorithms{
      "roipca1", "roipca2", "froipca1", "froipca2", "ipca", "ccipca", "batch"};
  const std::vector<std::string> mus{"zero", "mean", "star"};

  RunArgs run;
  CLI::App* run_cmd = app.add_subcommand("run", "Run an experiment config");
  run_cmd->add_option("--spec", run.spec, "Config file")->required();
  run_cmd->add_option("--out", run.out, "Output directory")
      ->capture_default_str();
  run_cmd->add_option("--prefix", run.prefix, "Output file prefix")
      ->capture_default_str();
  run_cmd->add_option("--seed", run.seed, "Override the config seed");

  FitArgs fit;
  CLI::App* fit_cmd =
      app.add_subcommand("fit", "Stream a CSV file and write components");
  fit_cmd->add_option("--input", fit.input, "CSV data file")->required();
  fit_cmd->add_option("--out", fit.out, "Components file")
      ->capture_default_str();
  fit_cmd->add_option("--m", fit.m, "Number of components")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  fit_cmd->add_option("--algorithm", fit.algorithm, "Estimator")
      ->check(CLI::IsMember(algorithms))
      ->capture_default_str();
  fit_cmd->add_option("--order", fit.order, "Secular equation order")
      ->check(CLI::IsMember({1, 2}));
  fit_cmd->add_option("--mu", fit.mu, "Tail eigenvalue surrogate")
      ->check(CLI::IsMember(mus));
  fit_cmd->add_option("--n0", fit.n0, "Warm start rows")
      ->check(CLI::PositiveNumber);
  fit_cmd->add_option("--recenter-every", fit.recenter_every,
                      "Recenter after this many ingests")
      ->check(CLI::PositiveNumber);
  fit_cmd->add_option("--reorth-every", fit.reorth_every,
                      "Reorthonormalize after this many ingests")
      ->check(CLI::PositiveNumber);
  fit_cmd->add_option("--header", fit.header, "Skip the first line")
      ->capture_default_str();
  fit_cmd->add_option("--label-column", fit.label_column,
                      "0-based column to drop");

  CompareArgs cmp;
  CLI::App* cmp_cmd =
      app.add_subcommand("compare", "Run the canonical comparisons");
  cmp_cmd->add_option("--out", cmp.out, "Output directory")
      ->capture_default_str();
  cmp_cmd->add_option("--input", cmp.input, "Optional CSV data file");
  cmp_cmd->add_option("--header", cmp.header, "CSV has a header line")
      ->capture_default_str();
  cmp_cmd->add_option("--label-column", cmp.label_column,
                      "0-based column to drop");
  cmp_cmd->add_option("--m", cmp.m, "Components for the CSV run")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmp_cmd->add_option("--trials", cmp.trials, "Trials per experiment")
      ->check(CLI::PositiveNumber);
  cmp_cmd->add_option("--seed", cmp.seed, "Base seed")->capture_default_str();
  cmp_cmd->add_flag("--quick", cmp.quick, "Small sizes for smoke testing");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*run_cmd) return Run(run, out);
    if (*fit_cmd) return Fit(fit, out);
    return Compare(cmp, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    const CLI::App* sub = app.get_subcommands().front();
    err << sub->help();
    return kExitUsage;
  } catch (const InvalidInputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InsufficientDataError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace roipca
