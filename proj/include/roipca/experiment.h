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

#ifndef ROIPCA_EXPERIMENT_H_
#define ROIPCA_EXPERIMENT_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "roipca/data.h"
#include "roipca/linalg.h"
#include "roipca/online_pca.h"

namespace roipca {

enum class GeneratorKind { kGaussianGamma, kSpikedDiag, kRuntimeDiag, kCsv };

struct DataSource {
  GeneratorKind kind = GeneratorKind::kGaussianGamma;
  Index d = 10;
  Index spikes = 5;
  Range spike_range{5.0, 6.0};
  Range bulk_range{0.0, 1.0};
  std::string path;
  CsvOptions csv;

  // n rows for one trial. CSV data ignore n and seed.
  Matrix Generate(Index n, std::uint64_t seed) const;
};

enum class EstimatorKind { kRoipca, kIpca, kCcipca, kBatch };

struct AlgorithmSpec {
  std::string label;
  EstimatorKind kind = EstimatorKind::kRoipca;
  OnlinePcaConfig online;  // used for kRoipca
};

// Parses "roipca1", "froipca1", "roipca2", "froipca2", "ipca", "ccipca" or
// "batch", optionally followed by ":<order>" and ":<mu>" (for example
// "roipca2:1:star"). The ROIPCA variants default to order 1 for the
// covariance-free names and order 2 for the covariance names.
AlgorithmSpec ParseAlgorithm(std::string_view text, Index m,
                             MuPolicy default_mu = MuPolicy::kMean);

MuPolicy ParseMuPolicy(std::string_view text);

// A streaming estimator behind a common interface.
// Estimate() eigenvalues are on the covariance scale (scatter / n).
class StreamingEstimator {
 public:
  virtual ~StreamingEstimator() = default;
  virtual void Ingest(const Vector& x) = 0;
  virtual EigenPairs Estimate() const = 0;
  virtual std::int64_t count() const = 0;
};

// Warm-started estimator. kBatch recomputes the batch solution on request.
std::unique_ptr<StreamingEstimator> MakeEstimator(const AlgorithmSpec& spec,
                                                  const Matrix& x0, Index m);

struct ExperimentSpec {
  DataSource data;
  Index n0 = 250;
  Index n_stream = 500;
  Index m = 5;
  std::vector<AlgorithmSpec> algorithms;
  int trials = 1;
  std::uint64_t seed = 0;
  // Steps between reference recomputations; default 1 for d <= 100, else 10.
  std::optional<Index> reference_stride;
  bool compute_error = true;
  bool parallel_trials = true;

  void Validate() const;
};

struct RunRecord {
  std::string algorithm;
  int trial = 0;
  std::vector<double> error;      // NaN at steps without a reference
  std::vector<double> iter_time;  // seconds per ingest
  double final_error = 0.0;
  double mean_macs = 0.0;  // multiply-accumulates per ingest
  std::int64_t samples = 0;
};

struct ExperimentResult {
  std::vector<std::string> algorithms;
  Index n_stream = 0;
  Index reference_stride = 1;
  std::vector<RunRecord> runs;  // ordered by (algorithm, trial)
};

ExperimentResult RunExperiment(const ExperimentSpec& spec);

struct AlgorithmSummary {
  std::string algorithm;
  double median_final_error = 0.0;
  double mean_iter_time = 0.0;
  double median_iter_time = 0.0;
  double mean_macs = 0.0;
};

std::vector<AlgorithmSummary> Summarize(const ExperimentResult& result);

void WriteCsv(const ExperimentResult& result, std::ostream& out);
void WriteSummaryCsv(const ExperimentResult& result, std::ostream& out);
void WriteSvg(const ExperimentResult& result, std::ostream& out,
              std::string_view title = "");

// Writes <prefix>.csv, <prefix>_summary.csv and <prefix>.svg under dir.
void EmitResults(const ExperimentResult& result,
                 const std::filesystem::path& dir, const std::string& prefix,
                 std::string_view title = "");

// Flat key=value configuration with '#' comments.
// Algorithms of the accuracy comparisons: roipca1, roipca2, froipca1,
// froipca2, ipca, ccipca. The roipca variants recenter after every ingest and
// the fast variants reorthonormalize every 10 ingests.
std::vector<AlgorithmSpec> AccuracyAlgorithms(Index m);

// Gaussian process data with min(k, l) / d covariance; n0 = 250, 500 streamed,
// m = 5.
ExperimentSpec GammaAccuracySpec(Index d, int trials);

// d = 100, five spikes in [5, 6], bulk in [0, 1]; n0 = 500, 1000 streamed,
// m = 5.
ExperimentSpec SpikedAccuracySpec(int trials);

// Low-rank runtime data, no error tracking.
ExperimentSpec RuntimeSpec(Index d, Index m, Index n0, Index n_stream,
                           const std::vector<std::string>& algorithms);

ExperimentSpec ParseSpecConfig(std::string_view text);
ExperimentSpec LoadSpecConfig(const std::string& path);

}  // namespace roipca

#endif  // ROIPCA_EXPERIMENT_H_
