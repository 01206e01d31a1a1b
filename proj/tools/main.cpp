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

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cli.hpp"
#include "covertfbl/version.hpp"

namespace {

using covertfbl::cli::Options;
using covertfbl::cli::SweepSpec;
using covertfbl::cli::SweepVariable;
using nlohmann::json;

void add_common_flags(CLI::App* sub, Options& opts) {
  sub->add_option("--sigma-b2", opts.sigma_b2, "Bob-channel noise variance");
  sub->add_option("--sigma-w2", opts.sigma_w2, "Willie-channel noise variance");
  sub->add_option("--epsilon", opts.epsilon, "covertness budget in (0, 0.5]");
  sub->add_option("--max-blocklength", opts.max_blocklength,
                  "maximum blocklength N (also the operating n)");
  sub->add_option("--mode", opts.mode, "covertness constraint mode")
      ->check(CLI::IsMember({"kl", "exact"}));
  sub->add_option("--output", opts.output, "write the report to this file instead of stdout");
  sub->add_option("--format", opts.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--precision", opts.precision, "significant digits in numeric output")
      ->check(CLI::Range(1, 17));
  sub->add_option("--seed", opts.seed, "random seed for Monte Carlo runs");
  sub->add_option("--trials", opts.trials, "Monte Carlo trials per grid point");
  sub->add_option("--config", opts.config_path,
                  "JSON config file; explicit flags override its keys");
}

// Applies config-file keys that were not overridden on the command line.
// Precedence: flags > config file > built-in defaults.
int apply_config(const CLI::App* sub, Options& opts) {
  if (opts.config_path.empty()) return 0;
  std::ifstream file(opts.config_path);
  if (!file) {
    std::cerr << "error: cannot open config file '" << opts.config_path << "'\n";
    return 2;
  }
  json config;
  try {
    file >> config;
  } catch (const json::exception& e) {
    std::cerr << "error: config file '" << opts.config_path << "' is not valid JSON: " << e.what()
              << "\n";
    return 2;
  }
  if (!config.is_object()) {
    std::cerr << "error: config file must hold a JSON object\n";
    return 2;
  }
  try {
    for (const auto& [key, value] : config.items()) {
      const std::string flag = "--" + key;
      // A key only applies when its flag exists on this subcommand and was
      // not given explicitly.
      const CLI::Option* opt =
          const_cast<CLI::App*>(sub)->get_option_no_throw(flag);
      if (opt == nullptr) {
        std::cerr << "error: unknown config key '" << key << "'\n";
        return 2;
      }
      if (opt->count() > 0) continue;
      if (key == "sigma-b2") {
        opts.sigma_b2 = value.get<double>();
      } else if (key == "sigma-w2") {
        opts.sigma_w2 = value.get<double>();
      } else if (key == "epsilon") {
        opts.epsilon = value.get<double>();
      } else if (key == "max-blocklength") {
        opts.max_blocklength = value.get<std::int64_t>();
      } else if (key == "mode") {
        opts.mode = value.get<std::string>();
      } else if (key == "output") {
        opts.output = value.get<std::string>();
      } else if (key == "format") {
        opts.format = value.get<std::string>();
      } else if (key == "precision") {
        opts.precision = value.get<int>();
      } else if (key == "seed") {
        opts.seed = value.get<std::uint64_t>();
      } else if (key == "trials") {
        opts.trials = value.get<std::int64_t>();
      } else {
        std::cerr << "error: config key '" << key << "' cannot be set from a file\n";
        return 2;
      }
    }
  } catch (const json::exception& e) {
    std::cerr << "error: config value has the wrong type: " << e.what() << "\n";
    return 2;
  }
  if (opts.mode != "kl" && opts.mode != "exact") {
    std::cerr << "error: mode must be 'kl' or 'exact', got '" << opts.mode << "'\n";
    return 2;
  }
  if (opts.format != "csv" && opts.format != "json") {
    std::cerr << "error: format must be 'csv' or 'json', got '" << opts.format << "'\n";
    return 2;
  }
  if (opts.precision < 1 || opts.precision > 17) {
    std::cerr << "error: precision must lie in [1, 17], got " << opts.precision << "\n";
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Covert-communication limits over AWGN channels at finite blocklength"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("covertfbl ") + covertfbl::kVersion);

  Options opts;

  // rate: single-point conversion between rate and decoding error.
  CLI::App* rate = app.add_subcommand("rate", "achievable rate / decoding error at one point");
  add_common_flags(rate, opts);
  double rate_power = 0.0;
  double rate_delta = 0.0;
  double rate_rate = 0.0;
  rate->add_option("--power", rate_power, "per-use transmit power")->required();
  CLI::Option* rate_delta_opt =
      rate->add_option("--delta", rate_delta, "decoding error probability in (0, 1)");
  CLI::Option* rate_rate_opt =
      rate->add_option("--rate", rate_rate, "transmission rate in bits per channel use");
  rate_delta_opt->excludes(rate_rate_opt);

  // detect: Willie's detector at one operating point.
  CLI::App* detect = app.add_subcommand("detect", "radiometer error probabilities at one point");
  add_common_flags(detect, opts);
  double detect_power = 0.0;
  detect->add_option("--power", detect_power, "per-use transmit power")->required();

  // design: full covert-throughput maximization.
  CLI::App* design =
      app.add_subcommand("design", "maximize covert throughput under the chosen constraint");
  add_common_flags(design, opts);

  // sweep: one design/rate table per value of the swept variable.
  CLI::App* sweep = app.add_subcommand("sweep", "tabulate designs over a swept variable");
  add_common_flags(sweep, opts);
  std::string sweep_variable;
  std::vector<double> sweep_values;
  double sweep_from = 0.0;
  double sweep_to = 0.0;
  std::int64_t sweep_count = 0;
  bool sweep_log = false;
  sweep->add_option("--variable", sweep_variable, "swept variable")
      ->check(CLI::IsMember({"N", "epsilon", "delta", "power"}))
      ->required();
  CLI::Option* values_opt =
      sweep->add_option("--values", sweep_values, "explicit grid values")->delimiter(',');
  CLI::Option* from_opt = sweep->add_option("--from", sweep_from, "grid start");
  CLI::Option* to_opt = sweep->add_option("--to", sweep_to, "grid end");
  CLI::Option* count_opt = sweep->add_option("--count", sweep_count, "grid size");
  sweep->add_flag("--log", sweep_log, "space generated grid logarithmically");
  values_opt->excludes(from_opt)->excludes(to_opt)->excludes(count_opt);

  // validate: Monte Carlo vs. closed-form detector grid.
  CLI::App* validate =
      app.add_subcommand("validate", "Monte Carlo check of the detector closed forms");
  add_common_flags(validate, opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    // Help/version exit 0; any parse problem is an invalid-parameter error.
    return code == 0 ? 0 : 2;
  }

  CLI::App* active = app.get_subcommands().front();
  if (const int code = apply_config(active, opts); code != 0) return code;

  if (app.got_subcommand(rate)) {
    const double* delta_arg = rate_delta_opt->count() > 0 ? &rate_delta : nullptr;
    const double* rate_arg = rate_rate_opt->count() > 0 ? &rate_rate : nullptr;
    return covertfbl::cli::cmd_rate(opts, rate_power, delta_arg, rate_arg, std::cout, std::cerr);
  }
  if (app.got_subcommand(detect)) {
    return covertfbl::cli::cmd_detect(opts, detect_power, std::cout, std::cerr);
  }
  if (app.got_subcommand(design)) {
    return covertfbl::cli::cmd_design(opts, std::cout, std::cerr);
  }
  if (app.got_subcommand(sweep)) {
    SweepSpec spec;
    if (sweep_variable == "N") {
      spec.variable = SweepVariable::kN;
    } else if (sweep_variable == "epsilon") {
      spec.variable = SweepVariable::kEpsilon;
    } else if (sweep_variable == "delta") {
      spec.variable = SweepVariable::kDelta;
    } else {
      spec.variable = SweepVariable::kPower;
    }
    if (values_opt->count() > 0) {
      spec.values = sweep_values;
    } else {
      if (count_opt->count() == 0 || from_opt->count() == 0 || to_opt->count() == 0) {
        std::cerr << "error: sweep needs either --values or all of --from/--to/--count\n";
        return 2;
      }
      if (sweep_count < 2) {
        std::cerr << "error: --count must be >= 2\n";
        return 2;
      }
      if (!(sweep_from < sweep_to)) {
        std::cerr << "error: --from must be strictly less than --to\n";
        return 2;
      }
      if (sweep_log && !(sweep_from > 0.0)) {
        std::cerr << "error: --log requires --from > 0\n";
        return 2;
      }
      spec.values.reserve(static_cast<std::size_t>(sweep_count));
      for (std::int64_t i = 0; i < sweep_count; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(sweep_count - 1);
        double v;
        if (sweep_log) {
          v = std::exp(std::log(sweep_from) + t * (std::log(sweep_to) - std::log(sweep_from)));
        } else {
          v = sweep_from + t * (sweep_to - sweep_from);
        }
        if (spec.variable == SweepVariable::kN) {
          v = static_cast<double>(std::llround(v));
        }
        spec.values.push_back(v);
      }
    }
    return covertfbl::cli::cmd_sweep(opts, spec, std::cout, std::cerr);
  }
  return covertfbl::cli::cmd_validate(opts, std::cout, std::cerr);
}
