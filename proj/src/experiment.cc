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

#include "roipca/experiment.h"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

#include "roipca/baselines.h"
#include "roipca/error.h"

namespace roipca {
namespace {

constexpr double kErrorFloor = 1e-16;

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> Split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  while (true) {
    const auto pos = s.find(sep);
    out.push_back(Trim(s.substr(0, pos)));
    if (pos == std::string_view::npos) break;
    s.remove_prefix(pos + 1);
  }
  return out;
}

double Median(std::vector<double> x) {
  std::erase_if(x, [](double v) { return std::isnan(v); });
  if (x.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(x.begin(), x.end());
  const std::size_t h = x.size() / 2;
  return x.size() % 2 ? x[h] : 0.5 * (x[h - 1] + x[h]);
}

double Mean(const std::vector<double>& x) {
  if (x.empty()) return std::numeric_limits<double>::quiet_NaN();
  double sum = 0.0;
  for (double v : x) sum += v;
  return sum / static_cast<double>(x.size());
}

class RoipcaEstimator : public StreamingEstimator {
 public:
  RoipcaEstimator(const OnlinePcaConfig& cfg, const Matrix& x0)
      : cfg_(cfg), state_(InitFromBatch(x0, cfg)) {}
  void Ingest(const Vector& x) override { roipca::Ingest(state_, x, cfg_); }
  EigenPairs Estimate() const override { return Components(state_); }
  std::int64_t count() const override { return state_.n; }

 private:
  OnlinePcaConfig cfg_;
  SpectralState state_;
};

class IpcaEstimator : public StreamingEstimator {
 public:
  IpcaEstimator(const Matrix& x0, Index m) : state_(IpcaInit(x0, m)) {}
  void Ingest(const Vector& x) override { IpcaIngest(state_, x); }
  EigenPairs Estimate() const override {
    return {state_.pairs.values / static_cast<double>(state_.n),
            state_.pairs.vectors};
  }
  std::int64_t count() const override { return state_.n; }

 private:
  IpcaState state_;
};

class CcipcaEstimator : public StreamingEstimator {
 public:
  CcipcaEstimator(const Matrix& x0, Index m) : state_(CcipcaInit(x0, m)) {}
  void Ingest(const Vector& x) override { CcipcaIngest(state_, x); }
  EigenPairs Estimate() const override { return state_.Components(); }
  std::int64_t count() const override { return state_.n; }

 private:
  CcipcaState state_;
};

// Running mean and co-moment of the samples seen so far.
class Welford {
 public:
  explicit Welford(const Matrix& x0)
      : n_(x0.rows()), mean_(x0.colwise().mean().transpose()),
        scatter_(SymmetricMatrix::Gram(x0.rowwise() - mean_.transpose())) {}

  void Add(const Vector& x) {
    ++n_;
    const Vector delta = x - mean_;
    mean_ += delta / static_cast<double>(n_);
    scatter_.AddRankOne(static_cast<double>(n_ - 1) / static_cast<double>(n_),
                        delta);
  }

  EigenPairs Leading(Index m) const { return SymEigh(scatter_).Leading(m); }
  std::int64_t count() const { return n_; }

 private:
  std::int64_t n_;
  Vector mean_;
  SymmetricMatrix scatter_;
};

class BatchEstimator : public StreamingEstimator {
 public:
  BatchEstimator(const Matrix& x0, Index m)
      : m_(m), moments_(x0), pairs_(moments_.Leading(m)) {}
  void Ingest(const Vector& x) override {
    moments_.Add(x);
    pairs_ = moments_.Leading(m_);
  }
  EigenPairs Estimate() const override {
    return {pairs_.values / static_cast<double>(moments_.count()),
            pairs_.vectors};
  }
  std::int64_t count() const override { return moments_.count(); }

 private:
  Index m_;
  Welford moments_;
  EigenPairs pairs_;
};

bool ParseBool(std::string_view v, long line) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ParseError("expected a boolean, got '" + std::string(v) + "'", line);
}

template <class T>
T ParseNumber(std::string_view v, long line) {
  T value{};
  const auto [end, ec] = std::from_chars(v.data(), v.data() + v.size(), value);
  if (v.empty() || ec != std::errc() || end != v.data() + v.size()) {
    throw ParseError("expected a number, got '" + std::string(v) + "'", line);
  }
  return value;
}

Range ParseRange(std::string_view v, long line) {
  const auto parts = Split(v, ',');
  if (parts.size() != 2) throw ParseError("expected 'lo,hi'", line);
  return {ParseNumber<double>(parts[0], line),
          ParseNumber<double>(parts[1], line)};
}

std::string XmlEscape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string Format(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), fmt, v);
  return buf;
}

}  // namespace

Matrix DataSource::Generate(Index n, std::uint64_t seed) const {
  switch (kind) {
    case GeneratorKind::kGaussianGamma:
      return GenGaussianGamma(d, n, seed);
    case GeneratorKind::kSpikedDiag:
      return GenSpikedDiag(d, spikes, spike_range, bulk_range, n, seed);
    case GeneratorKind::kRuntimeDiag:
      return GenSpikedDiag(d, spikes, {1.0, 2.0}, {0.0, 0.0}, n, seed);
    case GeneratorKind::kCsv:
      return LoadCsvDataset(path, csv);
  }
  return {};
}

MuPolicy ParseMuPolicy(std::string_view text) {
  if (text == "zero") return MuPolicy::kZero;
  if (text == "mean") return MuPolicy::kMean;
  if (text == "star") return MuPolicy::kStar;
  throw InvalidInputError("unknown mu policy '" + std::string(text) + "'");
}

AlgorithmSpec ParseAlgorithm(std::string_view text, Index m,
                             MuPolicy default_mu) {
  const auto parts = Split(text, ':');
  if (parts.size() > 3) {
    throw InvalidInputError("bad algorithm '" + std::string(text) + "'");
  }
  AlgorithmSpec spec;
  spec.label = std::string(Trim(text));
  spec.online.m = m;
  spec.online.mu = default_mu;
  const std::string_view name = parts[0];
  if (name == "ipca") {
    spec.kind = EstimatorKind::kIpca;
  } else if (name == "ccipca") {
    spec.kind = EstimatorKind::kCcipca;
  } else if (name == "batch") {
    spec.kind = EstimatorKind::kBatch;
  } else if (name == "roipca1" || name == "froipca1" || name == "roipca2" ||
             name == "froipca2") {
    const bool cov = name.back() == '2';
    spec.online.algorithm =
        cov ? Algorithm::kCovariance : Algorithm::kCovarianceFree;
    spec.online.order = cov ? 2 : 1;
    spec.online.formula = name.front() == 'f' ? EigvecFormula::kFast
                                              : EigvecFormula::kTruncated;
  } else {
    throw InvalidInputError("unknown algorithm '" + std::string(name) + "'");
  }
  if (spec.kind != EstimatorKind::kRoipca && parts.size() > 1) {
    throw InvalidInputError("options only apply to the roipca variants");
  }
  if (parts.size() > 1) {
    if (parts[1] == "1") {
      spec.online.order = 1;
    } else if (parts[1] == "2") {
      spec.online.order = 2;
    } else {
      throw InvalidInputError("order must be 1 or 2");
    }
  }
  if (parts.size() > 2) spec.online.mu = ParseMuPolicy(parts[2]);
  if (spec.kind == EstimatorKind::kRoipca) spec.online.Validate();
  return spec;
}

std::unique_ptr<StreamingEstimator> MakeEstimator(const AlgorithmSpec& spec,
                                                  const Matrix& x0, Index m) {
  switch (spec.kind) {
    case EstimatorKind::kRoipca: {
      OnlinePcaConfig cfg = spec.online;
      cfg.m = m;
      return std::make_unique<RoipcaEstimator>(cfg, x0);
    }
    case EstimatorKind::kIpca:
      return std::make_unique<IpcaEstimator>(x0, m);
    case EstimatorKind::kCcipca:
      return std::make_unique<CcipcaEstimator>(x0, m);
    case EstimatorKind::kBatch:
      return std::make_unique<BatchEstimator>(x0, m);
  }
  return nullptr;
}

void ExperimentSpec::Validate() const {
  if (m < 1) throw InvalidInputError("m must be positive");
  if (n0 < m + 1) throw InvalidInputError("n0 must be at least m + 1");
  if (trials < 1) throw InvalidInputError("trials must be positive");
  if (n_stream < 0) throw InvalidInputError("n_stream must be nonnegative");
  if (data.kind != GeneratorKind::kCsv) {
    if (n_stream < 1) throw InvalidInputError("n_stream must be positive");
    if (m > data.d) throw InvalidInputError("m exceeds the dimension");
  }
  if (reference_stride && *reference_stride < 1) {
    throw InvalidInputError("reference stride must be positive");
  }
  if (algorithms.empty()) throw InvalidInputError("no algorithms given");
}

ExperimentResult RunExperiment(const ExperimentSpec& spec) {
  spec.Validate();
  std::optional<Matrix> csv;
  Index d = spec.data.d;
  Index n_stream = spec.n_stream;
  if (spec.data.kind == GeneratorKind::kCsv) {
    csv = spec.data.Generate(0, 0);
    d = csv->cols();
    const Index available = csv->rows() - spec.n0;
    if (available < 1 || spec.m > d) {
      throw InsufficientDataError("dataset too small for n0 and m");
    }
    n_stream = n_stream == 0 ? available : std::min(n_stream, available);
  }
  ExperimentResult result;
  result.n_stream = n_stream;
  result.reference_stride = spec.reference_stride.value_or(d <= 100 ? 1 : 10);
  for (const AlgorithmSpec& a : spec.algorithms) {
    result.algorithms.push_back(a.label);
  }
  const auto num_algs = static_cast<Index>(spec.algorithms.size());
  result.runs.resize(static_cast<std::size_t>(num_algs * spec.trials));
  std::vector<std::exception_ptr> failures(
      static_cast<std::size_t>(spec.trials));
  const Index stride = result.reference_stride;

#pragma omp parallel for schedule(dynamic) if (spec.parallel_trials)
  for (int trial = 0; trial < spec.trials; ++trial) {
    try {
      const Matrix data =
          csv ? *csv
              : spec.data.Generate(spec.n0 + n_stream,
                                   spec.seed + static_cast<std::uint64_t>(trial));
      const Matrix x0 = data.topRows(spec.n0);
      std::vector<std::unique_ptr<StreamingEstimator>> est;
      for (const AlgorithmSpec& a : spec.algorithms) {
        est.push_back(MakeEstimator(a, x0, spec.m));
      }
      std::optional<Welford> reference;
      if (spec.compute_error) reference.emplace(x0);
      std::vector<RunRecord*> rec;
      for (Index a = 0; a < num_algs; ++a) {
        RunRecord& r = result.runs[static_cast<std::size_t>(a * spec.trials +
                                                            trial)];
        r.algorithm = spec.algorithms[static_cast<std::size_t>(a)].label;
        r.trial = trial;
        r.error.assign(static_cast<std::size_t>(n_stream),
                       std::numeric_limits<double>::quiet_NaN());
        r.iter_time.assign(static_cast<std::size_t>(n_stream), 0.0);
        rec.push_back(&r);
      }
      std::vector<double> macs(static_cast<std::size_t>(num_algs), 0.0);
      for (Index k = 0; k < n_stream; ++k) {
        const Vector x = data.row(spec.n0 + k).transpose();
        for (Index a = 0; a < num_algs; ++a) {
          const auto ua = static_cast<std::size_t>(a);
          kernels::ResetMacCount();
          const auto start = std::chrono::steady_clock::now();
          est[ua]->Ingest(x);
          const auto stop = std::chrono::steady_clock::now();
          macs[ua] += static_cast<double>(kernels::MacCount());
          rec[ua]->iter_time[static_cast<std::size_t>(k)] =
              std::chrono::duration<double>(stop - start).count();
        }
        if (!reference) continue;
        reference->Add(x);
        if ((k + 1) % stride != 0 && k + 1 != n_stream) continue;
        const EigenPairs ref = reference->Leading(spec.m);
        for (Index a = 0; a < num_algs; ++a) {
          const auto ua = static_cast<std::size_t>(a);
          EigenPairs e = est[ua]->Estimate();
          e.vectors = Orthonormalize(e.vectors).basis;
          rec[ua]->error[static_cast<std::size_t>(k)] = EigenspaceError(e, ref);
        }
      }
      for (Index a = 0; a < num_algs; ++a) {
        const auto ua = static_cast<std::size_t>(a);
        rec[ua]->final_error =
            rec[ua]->error.empty() ? 0.0 : rec[ua]->error.back();
        rec[ua]->mean_macs = macs[ua] / static_cast<double>(n_stream);
        rec[ua]->samples = est[ua]->count();
      }
    } catch (...) {
      failures[static_cast<std::size_t>(trial)] = std::current_exception();
    }
  }
  for (const std::exception_ptr& f : failures) {
    if (f) std::rethrow_exception(f);
  }
  return result;
}

std::vector<AlgorithmSummary> Summarize(const ExperimentResult& result) {
  std::vector<AlgorithmSummary> out;
  for (const std::string& name : result.algorithms) {
    std::vector<double> finals;
    std::vector<double> times;
    std::vector<double> macs;
    for (const RunRecord& r : result.runs) {
      if (r.algorithm != name) continue;
      finals.push_back(r.final_error);
      times.push_back(Mean(r.iter_time));
      macs.push_back(r.mean_macs);
    }
    out.push_back({name, Median(finals), Mean(times), Median(times),
                   Mean(macs)});
  }
  return out;
}

void WriteCsv(const ExperimentResult& result, std::ostream& out) {
  out << "step,algorithm,trial,error,iter_time_s\n";
  char buf[256];
  for (const RunRecord& r : result.runs) {
    for (std::size_t k = 0; k < r.error.size(); ++k) {
      std::snprintf(buf, sizeof(buf), "%zu,%s,%d,%.6g,%.6g\n", k + 1,
                    r.algorithm.c_str(), r.trial, r.error[k], r.iter_time[k]);
      out << buf;
    }
  }
}

void WriteSummaryCsv(const ExperimentResult& result, std::ostream& out) {
  out << "algorithm,median_final_error,mean_iter_time_s,median_iter_time_s,"
         "mean_macs_per_ingest,reference_stride\n";
  char buf[512];
  for (const AlgorithmSummary& s : Summarize(result)) {
    std::snprintf(buf, sizeof(buf), "%s,%.6g,%.6g,%.6g,%.6g,%lld\n",
                  s.algorithm.c_str(), s.median_final_error, s.mean_iter_time,
                  s.median_iter_time, s.mean_macs,
                  static_cast<long long>(result.reference_stride));
    out << buf;
  }
}

void WriteSvg(const ExperimentResult& result, std::ostream& out,
              std::string_view title) {
  constexpr double kWidth = 800.0;
  constexpr double kHeight = 500.0;
  constexpr double kLeft = 80.0;
  constexpr double kRight = 180.0;
  constexpr double kTop = 40.0;
  constexpr double kBottom = 60.0;
  static constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c",
                                            "#ff7f0e", "#9467bd", "#8c564b",
                                            "#e377c2", "#7f7f7f"};

  // Per-step median over trials of log10 error.
  std::vector<std::vector<std::pair<double, double>>> series;
  double ymin = std::numeric_limits<double>::infinity();
  double ymax = -std::numeric_limits<double>::infinity();
  for (const std::string& name : result.algorithms) {
    std::vector<std::pair<double, double>> pts;
    for (Index k = 0; k < result.n_stream; ++k) {
      std::vector<double> vals;
      for (const RunRecord& r : result.runs) {
        if (r.algorithm == name) {
          vals.push_back(r.error[static_cast<std::size_t>(k)]);
        }
      }
      const double med = Median(vals);
      if (std::isnan(med)) continue;
      const double y = std::log10(std::max(med, kErrorFloor));
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
      pts.emplace_back(static_cast<double>(k + 1), y);
    }
    series.push_back(std::move(pts));
  }
  if (!std::isfinite(ymin)) {
    ymin = -1.0;
    ymax = 0.0;
  }
  ymin = std::floor(ymin);
  ymax = std::max(std::ceil(ymax), ymin + 1.0);
  const double xmax = std::max<double>(1.0, static_cast<double>(result.n_stream));
  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto sx = [&](double x) { return kLeft + pw * (x - 1.0) / std::max(1.0, xmax - 1.0); };
  auto sy = [&](double y) { return kTop + ph * (ymax - y) / (ymax - ymin); };

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\""
      << kWidth << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth
      << ' ' << kHeight << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!title.empty()) {
    out << "<text x=\"" << kLeft + pw / 2 << "\" y=\"24\" text-anchor=\"middle\""
        << " font-family=\"sans-serif\" font-size=\"16\">" << XmlEscape(title)
        << "</text>\n";
  }
  out << "<g stroke=\"black\" fill=\"none\">\n"
      << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw
      << "\" height=\"" << ph << "\"/>\n</g>\n";
  out << "<g font-family=\"sans-serif\" font-size=\"12\">\n";
  for (double e = ymin; e <= ymax + 0.5; e += 1.0) {
    const double y = sy(e);
    out << "<line x1=\"" << kLeft << "\" x2=\"" << kLeft + pw << "\" y1=\""
        << y << "\" y2=\"" << y << "\" stroke=\"#dddddd\"/>\n"
        << "<text x=\"" << kLeft - 8 << "\" y=\"" << y + 4
        << "\" text-anchor=\"end\">1e" << static_cast<int>(e) << "</text>\n";
  }
  for (int i = 0; i <= 4; ++i) {
    const double step = 1.0 + (xmax - 1.0) * i / 4.0;
    out << "<text x=\"" << sx(step) << "\" y=\"" << kTop + ph + 18
        << "\" text-anchor=\"middle\">" << Format("%.0f", step) << "</text>\n";
  }
  out << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kHeight - 16
      << "\" text-anchor=\"middle\">step</text>\n"
      << "<text x=\"20\" y=\"" << kTop + ph / 2
      << "\" text-anchor=\"middle\" transform=\"rotate(-90 20 "
      << kTop + ph / 2 << ")\">eigenspace error</text>\n";
  for (std::size_t a = 0; a < series.size(); ++a) {
    const char* color = kColors[a % std::size(kColors)];
    if (!series[a].empty()) {
      out << "<polyline fill=\"none\" stroke=\"" << color
          << "\" stroke-width=\"1.5\" points=\"";
      for (const auto& [x, y] : series[a]) {
        out << Format("%.2f", sx(x)) << ',' << Format("%.2f", sy(y)) << ' ';
      }
      out << "\"/>\n";
    }
    const double ly = kTop + 16.0 + 20.0 * static_cast<double>(a);
    out << "<line x1=\"" << kLeft + pw + 12 << "\" x2=\"" << kLeft + pw + 36
        << "\" y1=\"" << ly << "\" y2=\"" << ly << "\" stroke=\"" << color
        << "\" stroke-width=\"2\"/>\n"
        << "<text x=\"" << kLeft + pw + 42 << "\" y=\"" << ly + 4 << "\">"
        << XmlEscape(result.algorithms[a]) << "</text>\n";
  }
  out << "</g>\n</svg>\n";
}

void EmitResults(const ExperimentResult& result,
                 const std::filesystem::path& dir, const std::string& prefix,
                 std::string_view title) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  auto open = [&](const std::string& name) {
    std::ofstream f(dir / name);
    if (!f) throw InvalidInputError("cannot write " + (dir / name).string());
    return f;
  };
  {
    std::ofstream f = open(prefix + ".csv");
    WriteCsv(result, f);
  }
  {
    std::ofstream f = open(prefix + "_summary.csv");
    WriteSummaryCsv(result, f);
  }
  {
    std::ofstream f = open(prefix + ".svg");
    WriteSvg(result, f, title);
  }
}

std::vector<AlgorithmSpec> AccuracyAlgorithms(Index m) {
  std::vector<AlgorithmSpec> out;
  for (const char* name :
       {"roipca1", "roipca2", "froipca1", "froipca2", "ipca", "ccipca"}) {
    AlgorithmSpec a = ParseAlgorithm(name, m);
    if (a.kind == EstimatorKind::kRoipca) {
      a.online.recenter_every = 1;
      if (a.online.formula == EigvecFormula::kFast) {
        a.online.reorthonormalize_every = 10;
      }
    }
    out.push_back(std::move(a));
  }
  return out;
}

ExperimentSpec GammaAccuracySpec(Index d, int trials) {
  ExperimentSpec spec;
  spec.data.kind = GeneratorKind::kGaussianGamma;
  spec.data.d = d;
  spec.n0 = 250;
  spec.n_stream = 500;
  spec.m = 5;
  spec.trials = trials;
  spec.algorithms = AccuracyAlgorithms(spec.m);
  return spec;
}

ExperimentSpec SpikedAccuracySpec(int trials) {
  ExperimentSpec spec;
  spec.data.kind = GeneratorKind::kSpikedDiag;
  spec.data.d = 100;
  spec.data.spikes = 5;
  spec.data.spike_range = {5.0, 6.0};
  spec.data.bulk_range = {0.0, 1.0};
  spec.n0 = 500;
  spec.n_stream = 1000;
  spec.m = 5;
  spec.trials = trials;
  spec.algorithms = AccuracyAlgorithms(spec.m);
  return spec;
}

ExperimentSpec RuntimeSpec(Index d, Index m, Index n0, Index n_stream,
                           const std::vector<std::string>& algorithms) {
  ExperimentSpec spec;
  spec.data.kind = GeneratorKind::kRuntimeDiag;
  spec.data.d = d;
  spec.data.spikes = m;
  spec.n0 = n0;
  spec.n_stream = n_stream;
  spec.m = m;
  spec.compute_error = false;
  spec.parallel_trials = false;
  for (const std::string& a : algorithms) {
    spec.algorithms.push_back(ParseAlgorithm(a, m));
  }
  return spec;
}

ExperimentSpec ParseSpecConfig(std::string_view text) {
  ExperimentSpec spec;
  std::vector<std::string> algorithms{"roipca1"};
  long algorithms_line = 0;
  MuPolicy mu = MuPolicy::kMean;
  std::optional<std::int64_t> recenter_every;
  std::optional<std::int64_t> reorth_every;
  long line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{}
                                        : text.substr(nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = Trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError("expected key=value", line_no);
    }
    const std::string_view key = Trim(line.substr(0, eq));
    const std::string_view value = Trim(line.substr(eq + 1));
    try {
      if (key == "generator") {
        static const std::map<std::string_view, GeneratorKind> kinds{
            {"gaussian_gamma", GeneratorKind::kGaussianGamma},
            {"spiked_diag", GeneratorKind::kSpikedDiag},
            {"runtime_diag", GeneratorKind::kRuntimeDiag},
            {"csv", GeneratorKind::kCsv}};
        const auto it = kinds.find(value);
        if (it == kinds.end()) {
          throw ParseError("unknown generator '" + std::string(value) + "'",
                           line_no);
        }
        spec.data.kind = it->second;
      } else if (key == "d") {
        spec.data.d = ParseNumber<Index>(value, line_no);
      } else if (key == "spikes") {
        spec.data.spikes = ParseNumber<Index>(value, line_no);
      } else if (key == "spike_range") {
        spec.data.spike_range = ParseRange(value, line_no);
      } else if (key == "bulk_range") {
        spec.data.bulk_range = ParseRange(value, line_no);
      } else if (key == "path") {
        spec.data.path = std::string(value);
      } else if (key == "header") {
        spec.data.csv.header = ParseBool(value, line_no);
      } else if (key == "label_column") {
        spec.data.csv.label_column = ParseNumber<Index>(value, line_no);
      } else if (key == "n0") {
        spec.n0 = ParseNumber<Index>(value, line_no);
      } else if (key == "n_stream") {
        spec.n_stream = ParseNumber<Index>(value, line_no);
      } else if (key == "m") {
        spec.m = ParseNumber<Index>(value, line_no);
      } else if (key == "trials") {
        spec.trials = ParseNumber<int>(value, line_no);
      } else if (key == "seed") {
        spec.seed = ParseNumber<std::uint64_t>(value, line_no);
      } else if (key == "reference_stride") {
        spec.reference_stride = ParseNumber<Index>(value, line_no);
      } else if (key == "compute_error") {
        spec.compute_error = ParseBool(value, line_no);
      } else if (key == "parallel_trials") {
        spec.parallel_trials = ParseBool(value, line_no);
      } else if (key == "mu") {
        mu = ParseMuPolicy(value);
      } else if (key == "recenter_every") {
        recenter_every = ParseNumber<std::int64_t>(value, line_no);
      } else if (key == "reorthonormalize_every") {
        reorth_every = ParseNumber<std::int64_t>(value, line_no);
      } else if (key == "algorithms") {
        algorithms.clear();
        for (std::string_view a : Split(value, ',')) {
          if (!a.empty()) algorithms.emplace_back(a);
        }
        algorithms_line = line_no;
      } else {
        throw ParseError("unknown key '" + std::string(key) + "'", line_no);
      }
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(e.what(), line_no);
    }
  }
  try {
    for (const std::string& a : algorithms) {
      AlgorithmSpec alg = ParseAlgorithm(a, spec.m, mu);
      alg.online.recenter_every = recenter_every;
      if (reorth_every) alg.online.reorthonormalize_every = *reorth_every;
      alg.online.Validate();
      spec.algorithms.push_back(std::move(alg));
    }
    spec.Validate();
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(e.what(), algorithms_line);
  }
  return spec;
}

ExperimentSpec LoadSpecConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInputError("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ParseSpecConfig(buffer.str());
}

}  // namespace roipca
