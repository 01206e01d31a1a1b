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

#pragma once

// Command implementations behind the covertfbl binary, factored into a
// library so the tests can drive them without spawning processes.  Each
// cmd_* function renders its table to `out` and returns the process exit
// code: 0 success, 1 validation failure (empirical vs. analytic mismatch in
// `validate`), 2 invalid parameters, 3 solver non-convergence.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace covertfbl::cli {

// Fully resolved options: built-in defaults, overlaid by the optional
// config file, overlaid by explicit flags (precedence handled in main).
struct Options {
  double sigma_b2 = 1.0;
  double sigma_w2 = 1.0;
  double epsilon = 0.1;
  std::int64_t max_blocklength = 100;
  std::string mode = "kl";    // "kl" | "exact"
  std::string format = "csv"; // "csv" | "json"
  std::string output;         // output path; empty = standard output
  int precision = 9;          // significant digits in CSV output
  std::uint64_t seed = 42;
  std::int64_t trials = 100000;
  std::string config_path;  // optional JSON config; flags take precedence
};

// What a sweep iterates over.
enum class SweepVariable { kN, kEpsilon, kDelta, kPower };

// Grid definition: the swept variable and its values, which must be
// nonempty and strictly increasing.  All other parameters are pinned by
// Options.
struct SweepSpec {
  SweepVariable variable;
  std::vector<double> values;
};

// One output cell: integer column, numeric column, or the mode string.
using Value = std::variant<std::int64_t, double, std::string>;

// A rendered-to-be table: column names plus rows of cells.  CSV rendering
// formats numerics to Options::precision significant digits; JSON rendering
// keeps raw values and adds a meta object.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Value>> rows;
};

// Formats v with %.{precision}g.
std::string format_sig(double v, int precision);

// Renders `table` as CSV (header + LF rows) honoring opts.precision.
std::string render_csv(const Table& table, const Options& opts);

// Renders `table` as a JSON object {meta: {command, version, params...},
// rows: [...]} with raw (unrounded) numeric values.
std::string render_json(const Table& table, const Options& opts, const std::string& command);

// Point computation on the coded link: given --power and exactly one of
// --delta / --rate, reports the other plus throughput.
int cmd_rate(const Options& opts, double power, const double* delta, const double* rate,
             std::ostream& out, std::ostream& err);

// Point computation of the adversary's detector at --power.
int cmd_detect(const Options& opts, double power, std::ostream& out, std::ostream& err);

// Full design solve at (max_blocklength, epsilon, mode).
int cmd_design(const Options& opts, std::ostream& out, std::ostream& err);

// Grid sweep; emits one row per value in grid order.  A point that fails
// to converge aborts the sweep: rows computed so far are still emitted,
// a note goes to `err`, and the exit code is 3.
int cmd_sweep(const Options& opts, const SweepSpec& spec, std::ostream& out, std::ostream& err);

// Monte Carlo validation of the detector math over the grid
// n x P = {1, 10, 100} x {0.1, 1, 10}: per-point analytic vs. empirical
// rates with a 3-sigma binomial pass band.  Exit 0 iff every point passes.
int cmd_validate(const Options& opts, std::ostream& out, std::ostream& err);

}  // namespace covertfbl::cli
