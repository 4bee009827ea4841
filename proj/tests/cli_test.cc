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

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "roipca/data.h"

namespace roipca {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome Call(std::vector<std::string> args) {
  args.insert(args.begin(), "roipca");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code =
      Dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> ReadLines(const fs::path& p) {
  std::ifstream in(p);
  std::vector<std::string> lines;
  for (std::string l; std::getline(in, l);) lines.push_back(l);
  return lines;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("roipca_cli_" + std::string(::testing::UnitTest::GetInstance()
                                            ->current_test_info()
                                            ->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string WriteData(Index d, Index n, bool header) {
    const fs::path p = dir_ / "data.csv";
    std::ofstream f(p);
    if (header) {
      for (Index j = 0; j < d; ++j) f << (j ? "," : "") << "c" << j;
      f << "\n";
    }
    const Matrix x = GenSpikedDiag(d, 5, {5.0, 6.0}, {0.0, 1.0}, n, 3);
    for (Index i = 0; i < n; ++i) {
      for (Index j = 0; j < d; ++j) f << (j ? "," : "") << x(i, j);
      f << "\n";
    }
    return p.string();
  }

  fs::path dir_;
};

TEST_F(CliTest, NoSubcommandIsUsageError) {
  EXPECT_EQ(Call({}).code, kExitUsage);
}

TEST_F(CliTest, HelpExitsZero) {
  const Outcome o = Call({"--help"});
  EXPECT_EQ(o.code, kExitOk);
  EXPECT_NE(o.out.find("fit"), std::string::npos);
}

TEST_F(CliTest, FitWithoutInputPrintsUsage) {
  const Outcome o = Call({"fit", "--m", "5"});
  EXPECT_EQ(o.code, kExitUsage);
  EXPECT_NE(o.err.find("--input"), std::string::npos);
}

TEST_F(CliTest, UnknownFlagAndBadValues) {
  const std::string data = WriteData(8, 40, false);
  EXPECT_EQ(Call({"fit", "--input", data, "--bogus"}).code, kExitUsage);
  EXPECT_EQ(Call({"fit", "--input", data, "--algorithm", "pca"}).code,
            kExitUsage);
  EXPECT_EQ(Call({"fit", "--input", data, "--order", "3"}).code, kExitUsage);
  EXPECT_EQ(Call({"fit", "--input", data, "--m", "0"}).code, kExitUsage);
  EXPECT_EQ(Call({"fit", "--input", data, "--algorithm", "roipca1", "--order",
                  "2"})
                .code,
            kExitUsage);
}

TEST_F(CliTest, MissingFileIsUsageError) {
  const Outcome o = Call({"fit", "--input", (dir_ / "none.csv").string()});
  EXPECT_EQ(o.code, kExitUsage);
  EXPECT_NE(o.err.find("no such file"), std::string::npos);
  EXPECT_EQ(Call({"run", "--spec", (dir_ / "none.cfg").string()}).code,
            kExitUsage);
}

TEST_F(CliTest, MalformedCsvIsUsageError) {
  const fs::path p = dir_ / "bad.csv";
  std::ofstream(p) << "1,2\n3,oops\n";
  const Outcome o = Call({"fit", "--input", p.string(), "--m", "1"});
  EXPECT_EQ(o.code, kExitUsage);
  EXPECT_NE(o.err.find("line 2"), std::string::npos);
}

TEST_F(CliTest, FitWritesComponentsAndEigenvalues) {
  const Index d = 12;
  const std::string data = WriteData(d, 200, true);
  const fs::path out = dir_ / "comp.csv";
  const Outcome o =
      Call({"fit", "--input", data, "--m", "5", "--algorithm", "roipca2",
            "--order", "2", "--mu", "mean", "--header", "true", "--n0", "50",
            "--out", out.string()});
  ASSERT_EQ(o.code, kExitOk) << o.err;
  const std::vector<std::string> rows = ReadLines(out);
  ASSERT_EQ(rows.size(), 5u);
  for (const std::string& r : rows) {
    const Matrix v = ParseCsv(r);
    EXPECT_EQ(v.cols(), d);
    EXPECT_NEAR(v.norm(), 1.0, 1e-4);
  }
  const std::vector<std::string> vals = ReadLines(dir_ / "comp_eigenvalues.csv");
  ASSERT_EQ(vals.size(), 5u);
  EXPECT_GT(std::stod(vals[0]), 4.0);
  EXPECT_GE(std::stod(vals[0]), std::stod(vals[4]));
}

TEST_F(CliTest, FitBaselines) {
  const std::string data = WriteData(10, 80, false);
  for (const char* alg : {"ipca", "ccipca", "batch", "froipca1"}) {
    const fs::path out = dir_ / (std::string(alg) + ".csv");
    const Outcome o = Call({"fit", "--input", data, "--m", "3", "--algorithm",
                            alg, "--out", out.string()});
    ASSERT_EQ(o.code, kExitOk) << alg << ": " << o.err;
    EXPECT_EQ(ReadLines(out).size(), 3u);
  }
}

TEST_F(CliTest, RunWritesCsvAndSvg) {
  const fs::path cfg = dir_ / "spec.cfg";
  std::ofstream(cfg) << "generator = gaussian_gamma\nd = 10\nn0 = 30\n"
                        "n_stream = 15\nm = 3\ntrials = 2\n"
                        "algorithms = roipca1, roipca2, ipca\n";
  const fs::path out = dir_ / "results";
  const Outcome o = Call({"run", "--spec", cfg.string(), "--out", out.string()});
  ASSERT_EQ(o.code, kExitOk) << o.err;
  EXPECT_EQ(ReadLines(out / "run.csv").size(), 1u + 3 * 2 * 15);
  EXPECT_TRUE(fs::exists(out / "run_summary.csv"));
  EXPECT_TRUE(fs::exists(out / "run.svg"));
  EXPECT_NE(o.out.find("roipca2"), std::string::npos);
}

TEST_F(CliTest, InvalidConfigIsUsageError) {
  const fs::path cfg = dir_ / "spec.cfg";
  std::ofstream(cfg) << "d = 10\nwidth = 3\n";
  const Outcome o = Call({"run", "--spec", cfg.string()});
  EXPECT_EQ(o.code, kExitUsage);
  EXPECT_NE(o.err.find("line 2"), std::string::npos);
}

TEST_F(CliTest, QuickCompareEmitsAllTables) {
  const std::string data = WriteData(8, 60, false);
  const fs::path out = dir_ / "cmp";
  const Outcome o = Call({"compare", "--quick", "--out", out.string(),
                          "--input", data, "--m", "3"});
  ASSERT_EQ(o.code, kExitOk) << o.err;
  for (const char* f : {"gamma_d10.csv", "gamma_d100.csv", "spiked.csv",
                        "dataset.csv", "runtime.csv", "spiked.svg"}) {
    EXPECT_TRUE(fs::exists(out / f)) << f;
  }
  EXPECT_EQ(ReadLines(out / "runtime.csv").size(), 1u + 2 * 6);
}

}  // namespace
}  // namespace roipca
