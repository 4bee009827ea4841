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

#include "roipca/data.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <vector>

#include "roipca/error.h"

namespace roipca {
namespace {

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double ParseField(std::string_view field, std::size_t line) {
  field = Trim(field);
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  double value = 0.0;
  const auto [end, ec] =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (field.empty() || ec != std::errc() ||
      end != field.data() + field.size()) {
    throw ParseError("non-numeric field '" + std::string(field) + "'",
                     static_cast<long>(line));
  }
  return value;
}

}  // namespace

Matrix GenGaussianGamma(Index d, Index n, std::uint64_t seed) {
  if (d < 1 || n < 0) throw InvalidInputError("bad generator shape");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  // Cumulative sums of iid normals: cov(x_k, x_l) = min(k, l) / d.
  Matrix x(n, d);
  for (Index i = 0; i < n; ++i) {
    double sum = 0.0;
    for (Index k = 0; k < d; ++k) {
      sum += normal(rng);
      x(i, k) = scale * sum;
    }
  }
  return x;
}

Matrix GenSpikedDiag(Index d, Index spikes, Range spike_range, Range bulk_range,
                     Index n, std::uint64_t seed) {
  if (d < 1 || n < 0 || spikes < 0 || spikes > d) {
    throw InvalidInputError("bad generator shape");
  }
  if (spike_range.lo > spike_range.hi || bulk_range.lo > bulk_range.hi ||
      spike_range.lo < 0.0 || bulk_range.lo < 0.0) {
    throw InvalidInputError("bad variance range");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::normal_distribution<double> normal;
  Vector sd(d);
  for (Index k = 0; k < d; ++k) {
    const Range& r = k < spikes ? spike_range : bulk_range;
    sd[k] = std::sqrt(r.lo + (r.hi - r.lo) * unif(rng));
  }
  Matrix x(n, d);
  for (Index i = 0; i < n; ++i) {
    for (Index k = 0; k < d; ++k) x(i, k) = sd[k] * normal(rng);
  }
  return x;
}

Matrix ParseCsv(std::string_view text, const CsvOptions& options) {
  std::vector<std::vector<double>> rows;
  std::size_t line_no = 0;
  std::size_t width = 0;
  bool header_pending = options.header;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{}
                                        : text.substr(nl + 1);
    ++line_no;
    if (Trim(line).empty()) continue;
    if (header_pending) {
      header_pending = false;
      continue;
    }
    std::vector<double> row;
    std::size_t column = 0;
    while (true) {
      const auto comma = line.find(',');
      const std::string_view field = line.substr(0, comma);
      if (!options.label_column ||
          column != static_cast<std::size_t>(*options.label_column)) {
        row.push_back(ParseField(field, line_no));
      }
      ++column;
      if (comma == std::string_view::npos) break;
      line.remove_prefix(comma + 1);
    }
    if (options.label_column &&
        static_cast<std::size_t>(*options.label_column) >= column) {
      throw ParseError("label column out of range", static_cast<long>(line_no));
    }
    if (rows.empty()) {
      width = row.size();
    } else if (row.size() != width) {
      throw ParseError("ragged row", static_cast<long>(line_no));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty() || width == 0) {
    throw ParseError("no data rows",
                     static_cast<long>(std::max<std::size_t>(line_no, 1)));
  }
  Matrix x(static_cast<Index>(rows.size()), static_cast<Index>(width));
  for (Index i = 0; i < x.rows(); ++i) {
    for (Index j = 0; j < x.cols(); ++j) {
      x(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
  }
  return x;
}

Matrix LoadCsvDataset(const std::string& path, const CsvOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInputError("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ParseCsv(buffer.str(), options);
}

}  // namespace roipca
