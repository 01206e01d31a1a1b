// Copyright 2026 The covertfbl Authors
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
//
// End-to-end tests that drive the installed command-line binary as a child
// process.  The binary path arrives through the COVERTFBL_CLI_PATH compile
// definition.

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "json.hpp"

namespace {

struct RunResult {
  int exit_code;
  std::string output;  // standard output only
};

RunResult run_cli(const std::string& args) {
  const std::string command = std::string(COVERTFBL_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(command.c_str(), "r");
  EXPECT_NE(pipe, nullptr) << "failed to launch: " << command;
  std::string output;
  char buffer[4096];
  while (pipe != nullptr) {
    const std::size_t got = fread(buffer, 1, sizeof(buffer), pipe);
    if (got == 0) break;
    output.append(buffer, got);
  }
  const int status = pipe != nullptr ? pclose(pipe) : -1;
  const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return RunResult{code, output};
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream stream(line);
  std::string field;
  while (std::getline(stream, field, ',')) fields.push_back(field);
  return fields;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::stringstream stream(text);
  std::string line;
  while (std::getline(stream, line)) lines.push_back(line);
  return lines;
}

// Column value from a two-line CSV report (header + one row).
std::string csv_field(const std::string& csv, const std::string& column) {
  const std::vector<std::string> lines = lines_of(csv);
  EXPECT_GE(lines.size(), 2u) << "report too short:\n" << csv;
  const std::vector<std::string> header = split_line(lines[0]);
  const std::vector<std::string> row = split_line(lines[1]);
  EXPECT_EQ(header.size(), row.size());
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == column) return row[i];
  }
  ADD_FAILURE() << "column '" << column << "' missing from: " << lines[0];
  return "";
}

constexpr const char* kDesignHeader =
    "N,p_star,total_power,r_star,delta_star,eta_star,eta_per_use,constraint_mode,residual";

TEST(CliDesign, CsvMatchesFrozenSolution) {
  const RunResult r = run_cli("design --max-blocklength 100 --epsilon 0.1");
  ASSERT_EQ(r.exit_code, 0);
  const std::vector<std::string> lines = lines_of(r.output);
  ASSERT_EQ(lines.size(), 2u);
  EXPECT_EQ(lines[0], kDesignHeader);
  EXPECT_NEAR(std::stod(csv_field(r.output, "p_star")), 0.020269583, 1e-8);
  EXPECT_NEAR(std::stod(csv_field(r.output, "eta_star")), 3.324562, 1e-5);
  EXPECT_EQ(csv_field(r.output, "constraint_mode"), "kl");
}

TEST(CliDesign, CsvRoundTripsAtNineSignificantDigits) {
  const RunResult r = run_cli("design --max-blocklength 200 --epsilon 0.1");
  ASSERT_EQ(r.exit_code, 0);
  const std::vector<std::string> lines = lines_of(r.output);
  ASSERT_EQ(lines.size(), 2u);
  const std::vector<std::string> header = split_line(lines[0]);
  const std::vector<std::string> row = split_line(lines[1]);
  ASSERT_EQ(header.size(), row.size());
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (header[i] == "constraint_mode") continue;  // the one non-numeric column
    const double parsed = std::stod(row[i]);
    char reprinted[64];
    std::snprintf(reprinted, sizeof(reprinted), "%.9g", parsed);
    EXPECT_EQ(row[i], std::string(reprinted)) << "column " << header[i];
  }
}

TEST(CliDesign, JsonReportCarriesMetaAndRows) {
  const RunResult r = run_cli("design --max-blocklength 100 --epsilon 0.1 --format json");
  ASSERT_EQ(r.exit_code, 0);
  const nlohmann::json doc = nlohmann::json::parse(r.output);
  EXPECT_EQ(doc.at("meta").at("command"), "design");
  EXPECT_TRUE(doc.at("meta").contains("version"));
  const nlohmann::json& params = doc.at("meta").at("params");
  for (const char* key : {"sigma_b2", "sigma_w2", "epsilon", "max_blocklength", "mode",
                          "format", "precision", "seed", "trials"}) {
    EXPECT_TRUE(params.contains(key)) << "missing param " << key;
  }
  ASSERT_EQ(doc.at("rows").size(), 1u);
  EXPECT_NEAR(doc.at("rows")[0].at("p_star").get<double>(), 0.020269583, 1e-8);
}

TEST(CliRate, InvertsItself) {
  const RunResult forward =
      run_cli("rate --power 1 --max-blocklength 200 --delta 0.01 --precision 12");
  ASSERT_EQ(forward.exit_code, 0);
  const std::string rate = csv_field(forward.output, "rate");
  EXPECT_NEAR(std::stod(rate), 0.813584558088, 1e-9);

  const RunResult back =
      run_cli("rate --power 1 --max-blocklength 200 --rate " + rate + " --precision 12");
  ASSERT_EQ(back.exit_code, 0);
  EXPECT_NEAR(std::stod(csv_field(back.output, "delta")), 0.01, 1e-8);
}

TEST(CliDetect, MatchesClosedForm) {
  const RunResult r = run_cli("detect --power 1 --max-blocklength 1 --precision 15");
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_NEAR(std::stod(csv_field(r.output, "p_false")), 0.25, 1e-10);
  EXPECT_NEAR(std::stod(csv_field(r.output, "p_miss")), 0.5, 1e-10);
  EXPECT_NEAR(std::stod(csv_field(r.output, "xi")), 0.75, 1e-10);
  EXPECT_NEAR(std::stod(csv_field(r.output, "pinsker_bound")), 0.689237083486506, 1e-10);
}

TEST(CliSweep, EmitsOneRowPerGridValue) {
  const RunResult r = run_cli("sweep --variable N --values 100,200 --epsilon 0.1");
  ASSERT_EQ(r.exit_code, 0);
  const std::vector<std::string> lines = lines_of(r.output);
  ASSERT_EQ(lines.size(), 3u);
  EXPECT_EQ(lines[0], kDesignHeader);
  EXPECT_EQ(split_line(lines[1])[0], "100");
  EXPECT_EQ(split_line(lines[2])[0], "200");
}

TEST(CliSweep, GeneratesLogSpacedIntegerGrids) {
  const RunResult r =
      run_cli("sweep --variable N --from 100 --to 400 --count 3 --log --epsilon 0.1");
  ASSERT_EQ(r.exit_code, 0);
  const std::vector<std::string> lines = lines_of(r.output);
  ASSERT_EQ(lines.size(), 4u);
  EXPECT_EQ(split_line(lines[1])[0], "100");
  EXPECT_EQ(split_line(lines[2])[0], "200");
  EXPECT_EQ(split_line(lines[3])[0], "400");
}

TEST(CliValidate, PassesAndIsByteIdentical) {
  const RunResult first = run_cli("validate --trials 100000");
  const RunResult second = run_cli("validate --trials 100000");
  EXPECT_EQ(first.exit_code, 0);
  EXPECT_EQ(second.exit_code, 0);
  EXPECT_EQ(first.output, second.output);
  EXPECT_EQ(lines_of(first.output).size(), 10u);  // header + 9 grid points
}

TEST(CliExitCodes, DistinguishParameterErrors) {
  EXPECT_EQ(run_cli("design --epsilon 0.6").exit_code, 2);
  EXPECT_EQ(run_cli("validate --trials 0").exit_code, 2);
  EXPECT_EQ(run_cli("rate --power 1").exit_code, 2);
  EXPECT_EQ(run_cli("rate --power 1 --delta 0.1 --rate 0.5").exit_code, 2);
  EXPECT_EQ(run_cli("design --mode bogus").exit_code, 2);
  EXPECT_EQ(run_cli("sweep --variable N --values 400,200").exit_code, 2);
  EXPECT_EQ(run_cli("nonsense").exit_code, 2);
  EXPECT_EQ(run_cli("--help").exit_code, 0);
  EXPECT_EQ(run_cli("--version").exit_code, 0);
}

TEST(CliOutput, WritesReportToFile) {
  const std::filesystem::path path =
      std::filesystem::temp_directory_path() / "covertfbl_cli_test_out.csv";
  std::filesystem::remove(path);
  const RunResult r =
      run_cli("design --max-blocklength 100 --epsilon 0.1 --output " + path.string());
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_TRUE(r.output.empty());
  std::ifstream file(path);
  ASSERT_TRUE(file.good());
  std::string header;
  std::getline(file, header);
  EXPECT_EQ(header, kDesignHeader);
  file.close();
  std::filesystem::remove(path);
}

TEST(CliConfig, FlagsOverrideConfigFileOverridesDefaults) {
  const std::filesystem::path path =
      std::filesystem::temp_directory_path() / "covertfbl_cli_test_cfg.json";
  {
    std::ofstream file(path);
    file << "{\"epsilon\": 0.2, \"max-blocklength\": 100}\n";
  }
  // The explicit flag wins over the config key.
  const RunResult flagged = run_cli("design --config " + path.string() + " --epsilon 0.1");
  ASSERT_EQ(flagged.exit_code, 0);
  EXPECT_NEAR(std::stod(csv_field(flagged.output, "p_star")), 0.020269583, 1e-8);
  // Without the flag the config key applies and admits more power.
  const RunResult from_config = run_cli("design --config " + path.string());
  ASSERT_EQ(from_config.exit_code, 0);
  EXPECT_GT(std::stod(csv_field(from_config.output, "p_star")), 0.03);
  // Unknown keys are rejected outright.
  {
    std::ofstream file(path);
    file << "{\"unknown_key\": 1}\n";
  }
  EXPECT_EQ(run_cli("design --config " + path.string()).exit_code, 2);
  std::filesystem::remove(path);
}

}  // namespace
