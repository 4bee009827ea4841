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

#ifndef ROIPCA_DATA_H_
#define ROIPCA_DATA_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "roipca/kernels.h"

namespace roipca {

struct Range {
  double lo = 0.0;
  double hi = 0.0;
};

// Zero-mean Gaussian rows with covariance min(k, l) / d (1-based k, l).
Matrix GenGaussianGamma(Index d, Index n, std::uint64_t seed);

// Gaussian rows with diagonal covariance: the first `spikes` variances are
// uniform in spike_range, the rest uniform in bulk_range.
Matrix GenSpikedDiag(Index d, Index spikes, Range spike_range, Range bulk_range,
                     Index n, std::uint64_t seed);

struct CsvOptions {
  bool header = false;
  std::optional<Index> label_column;  // 0-based column to drop
};

// Parses comma-separated decimal rows. Throws ParseError with the 1-based line
// number for ragged rows, non-numeric fields or empty input.
Matrix ParseCsv(std::string_view text, const CsvOptions& options = {});

Matrix LoadCsvDataset(const std::string& path, const CsvOptions& options = {});

}  // namespace roipca

#endif  // ROIPCA_DATA_H_
