// Copyright 2026 The passv Authors.
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

#include "passv/cli.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

namespace passv::cli {
namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "passv");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = execute(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string hom_matrix_file() {
  const auto path = std::filesystem::temp_directory_path() / "passv_cli_hom.json";
  const double h = 1.0 / std::sqrt(2.0);
  io::json j = {{"m", 2}, {"kind", "orthogonal"}, {"re", {{h, -h}, {h, h}}}};
  io::write_file_atomic(path, j.dump());
  return path.string();
}

std::vector<std::string> data_rows(const std::string& csv) {
  std::vector<std::string> rows;
  std::istringstream is(csv);
  std::string line;
  while (std::getline(is, line)) {
    if (!line.empty() && line[0] != '#') rows.push_back(line);
  }
  return rows;
}

TEST(Cli, HongOuMandel) {
  const auto r = run({"sample-fock", "--n", "2", "--m", "2", "--matrix", hom_matrix_file()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto rows = data_rows(r.out);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0], "key,probability");
  auto value = [](const std::string& row, const std::string& key) {
    EXPECT_EQ(row.substr(0, key.size() + 1), key + ",");
    return std::stod(row.substr(key.size() + 1));
  };
  EXPECT_NEAR(value(rows[1], "\"2,0\""), 0.5, 1e-12);
  EXPECT_EQ(rows[2], "\"1,1\",0");
  EXPECT_NEAR(value(rows[3], "\"0,2\""), 0.5, 1e-12);
}

TEST(Cli, SampleFockJsonWithShots) {
  const auto r = run({"sample-fock", "--n", "1", "--m", "3", "--seed", "4", "--shots", "100", "--format", "json"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto j = io::json::parse(r.out);
  std::int64_t total = 0;
  for (const auto& row : j["distribution"]["support"]) total += row["count"].get<std::int64_t>();
  EXPECT_EQ(total, 100);
  EXPECT_EQ(j["config"]["seed"], 4);
}

TEST(Cli, MatrixOverridesKindWithWarning) {
  const auto r = run({"sample-fock", "--n", "1", "--matrix", hom_matrix_file(), "--kind", "unitary"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.err.find("warning"), std::string::npos);
}

TEST(Cli, ValidationFailuresExitOne) {
  EXPECT_EQ(run({"compare", "--n", "3", "--m", "2", "--seed", "1"}).code, kExitValidation);
  EXPECT_EQ(run({"frobnicate"}).code, kExitValidation);
  EXPECT_EQ(run({}).code, kExitValidation);
  EXPECT_EQ(run({"sample-fock", "--n", "1", "--m", "2"}).code, kExitValidation);  // no seed
  EXPECT_EQ(run({"sample-fock", "--n", "1", "--m", "2", "--bogus"}).code, kExitValidation);
  EXPECT_EQ(run({"sample-passv", "--n", "1", "--m", "2", "--xi", "0", "--variant", "subtracted", "--seed", "1"}).code,
            kExitValidation);
  EXPECT_EQ(run({"compare", "--n", "1", "--m", "2", "--seed", "1", "--xi", "0,abc"}).code, kExitValidation);
  EXPECT_EQ(run({"sample-fock", "--n", "1", "--matrix", "/nonexistent/m.json"}).code, kExitValidation);
}

TEST(Cli, SizeLimitsExitTwo) {
  EXPECT_EQ(run({"compare", "--n", "1", "--m", "6", "--seed", "1"}).code, kExitSizeLimit);
  EXPECT_EQ(run({"bench-permanent", "--n-min", "1", "--n-max", "31", "--seed", "1"}).code, kExitSizeLimit);
}

TEST(Cli, RepeatedRunsAreByteIdentical) {
  const std::vector<std::vector<std::string>> commands = {
      {"sample-fock", "--n", "2", "--m", "3", "--seed", "9", "--shots", "50"},
      {"sample-fock", "--n", "2", "--m", "3", "--kind", "unitary", "--seed", "9", "--format", "json"},
      {"sample-passv", "--n", "1", "--m", "2", "--xi", "0.3", "--seed", "9"},
      {"sample-passv", "--n", "1", "--m", "2", "--xi", "0.3", "--variant", "subtracted", "--seed", "9",
       "--format", "json"},
      {"compare", "--n", "1", "--m", "3", "--xi", "0,0.2", "--seed", "9"},
      {"compare", "--n", "1", "--m", "2", "--xi", "0.2", "--seed", "9", "--format", "csv"},
      {"decompose", "--m", "4", "--kind", "unitary", "--seed", "9"},
      {"embed", "--m", "2", "--seed", "9"},
  };
  for (const auto& c : commands) {
    const auto a = run(c);
    const auto b = run(c);
    EXPECT_EQ(a.code, kExitOk) << c[0] << ": " << a.err;
    EXPECT_EQ(a.out, b.out) << c[0];
    EXPECT_FALSE(a.out.empty()) << c[0];
  }
}

TEST(Cli, BenchmarkDeterministicColumns) {
  auto strip = [](const std::string& csv) {
    std::string kept;
    for (const auto& row : data_rows(csv)) {
      std::stringstream ss(row);
      std::string n, kernel, ns, checksum;
      std::getline(ss, n, ',');
      std::getline(ss, kernel, ',');
      std::getline(ss, ns, ',');
      std::getline(ss, checksum, ',');
      kept += n + "," + kernel + "," + checksum + "\n";
    }
    return kept;
  };
  const std::vector<std::string> c = {"bench-permanent", "--n-min", "2", "--n-max", "6", "--seed", "3"};
  const auto a = run(c);
  ASSERT_EQ(a.code, kExitOk) << a.err;
  EXPECT_EQ(strip(a.out), strip(run(c).out));
  EXPECT_EQ(data_rows(a.out).size(), 1u + 2u * 5u);
}

TEST(Cli, OutFileMatchesStdout) {
  const auto path = (std::filesystem::temp_directory_path() / "passv_cli_out.csv").string();
  const std::vector<std::string> base = {"sample-passv", "--n", "2", "--m", "3", "--xi", "0.2", "--seed", "2"};
  auto with_out = base;
  with_out.insert(with_out.end(), {"--out", path});
  ASSERT_EQ(run(with_out).code, kExitOk);
  // Only the recorded config differs: it names the output file.
  EXPECT_EQ(data_rows(io::read_file(path)), data_rows(run(base).out));
  EXPECT_NE(io::read_file(path).find(path), std::string::npos);
  std::filesystem::remove(path);
}

TEST(Cli, DecomposeReportsSmallError) {
  const auto r = run({"decompose", "--m", "5", "--kind", "orthogonal", "--seed", "12"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto j = io::json::parse(r.out);
  EXPECT_LE(j["reconstruction_error"].get<double>(), 1e-9);
  EXPECT_LE(j["elements"].size(), 10u);
}

}  // namespace
}  // namespace passv::cli
