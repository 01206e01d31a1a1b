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

#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "covertfbl/design.hpp"
#include "covertfbl/detection.hpp"
#include "covertfbl/errors.hpp"
#include "covertfbl/montecarlo.hpp"
#include "covertfbl/version.hpp"

namespace covertfbl::cli {

namespace {

using nlohmann::json;

ConstraintMode parse_mode(const std::string& mode) {
  if (mode == "kl") return ConstraintMode::kKl;
  if (mode == "exact") return ConstraintMode::kExact;
  throw std::invalid_argument("mode must be 'kl' or 'exact', got '" + mode + "'");
}

const char* variable_name(SweepVariable v) {
  switch (v) {
    case SweepVariable::kN: return "N";
    case SweepVariable::kEpsilon: return "epsilon";
    case SweepVariable::kDelta: return "delta";
    case SweepVariable::kPower: return "power";
  }
  return "?";
}

// Maps library exceptions to process exit codes; commands run their bodies
// through this.
template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

// Writes the rendered payload to opts.output, or to `out` if no path given.
int emit(const std::string& payload, const Options& opts, std::ostream& out, std::ostream& err) {
  if (opts.output.empty()) {
    out << payload;
    return 0;
  }
  std::ofstream file(opts.output);
  if (!file) {
    err << "error: cannot open output file '" << opts.output << "'\n";
    return 2;
  }
  file << payload;
  return 0;
}

std::string render(const Table& table, const Options& opts, const std::string& command,
                   const json& extra_meta) {
  if (opts.format == "csv") return render_csv(table, opts);
  if (opts.format != "json") {
    throw std::invalid_argument("format must be 'csv' or 'json', got '" + opts.format + "'");
  }
  json meta = {
      {"command", command},
      {"version", kVersion},
      {"params",
       {{"sigma_b2", opts.sigma_b2},
        {"sigma_w2", opts.sigma_w2},
        {"epsilon", opts.epsilon},
        {"max_blocklength", opts.max_blocklength},
        {"mode", opts.mode},
        {"format", opts.format},
        {"precision", opts.precision},
        {"seed", opts.seed},
        {"trials", opts.trials}}},
  };
  for (auto& [key, value] : extra_meta.items()) meta[key] = value;

  json rows = json::array();
  for (const auto& row : table.rows) {
    json obj = json::object();
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      const Value& cell = row[c];
      if (std::holds_alternative<std::int64_t>(cell)) {
        obj[table.columns[c]] = std::get<std::int64_t>(cell);
      } else if (std::holds_alternative<double>(cell)) {
        obj[table.columns[c]] = std::get<double>(cell);
      } else {
        obj[table.columns[c]] = std::get<std::string>(cell);
      }
    }
    rows.push_back(std::move(obj));
  }
  const json document = {{"meta", std::move(meta)}, {"rows", std::move(rows)}};
  return document.dump(2) + "\n";
}

const char* mode_name(ConstraintMode mode) {
  return mode == ConstraintMode::kKl ? "kl" : "exact";
}

std::vector<std::string> design_columns(const std::string& variable) {
  return {variable,   "p_star",      "total_power",     "r_star",  "delta_star",
          "eta_star", "eta_per_use", "constraint_mode", "residual"};
}

std::vector<Value> design_row(Value swept, const DesignResult& result) {
  return {std::move(swept),
          result.p_star,
          result.total_power,
          result.r_star,
          result.delta_star.value(),
          result.eta_star,
          result.eta_star / static_cast<double>(result.n_star),
          std::string(mode_name(result.mode)),
          result.residual};
}

void check_sweep_values(const SweepSpec& spec) {
  if (spec.values.empty()) {
    throw std::invalid_argument("sweep: values must be nonempty");
  }
  for (std::size_t i = 0; i + 1 < spec.values.size(); ++i) {
    if (!(spec.values[i] < spec.values[i + 1])) {
      throw std::invalid_argument("sweep: values must be strictly increasing");
    }
  }
  for (const double v : spec.values) {
    if (!std::isfinite(v)) throw std::invalid_argument("sweep: values must be finite");
    switch (spec.variable) {
      case SweepVariable::kN:
        if (v < 1.0 || v != std::floor(v)) {
          throw std::invalid_argument("sweep: N values must be integers >= 1");
        }
        break;
      case SweepVariable::kEpsilon:
        if (!(v > 0.0 && v <= 0.5)) {
          throw std::invalid_argument("sweep: epsilon values must lie in (0, 0.5]");
        }
        break;
      case SweepVariable::kDelta:
        if (!(v > 0.0 && v < 1.0)) {
          throw std::invalid_argument("sweep: delta values must lie strictly inside (0, 1)");
        }
        break;
      case SweepVariable::kPower:
        if (!(v > 0.0)) {
          throw std::invalid_argument("sweep: power values must be > 0");
        }
        break;
    }
  }
}

}  // namespace

std::string format_sig(double v, int precision) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.*g", precision, v);
  return buffer;
}

std::string render_csv(const Table& table, const Options& opts) {
  std::ostringstream out;
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c) out << ',';
    out << table.columns[c];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << ',';
      const Value& cell = row[c];
      if (std::holds_alternative<std::int64_t>(cell)) {
        out << std::get<std::int64_t>(cell);
      } else if (std::holds_alternative<double>(cell)) {
        out << format_sig(std::get<double>(cell), opts.precision);
      } else {
        out << std::get<std::string>(cell);
      }
    }
    out << '\n';
  }
  return out.str();
}

std::string render_json(const Table& table, const Options& opts, const std::string& command) {
  return render(table, opts, command, json::object());
}

int cmd_rate(const Options& opts, double power, const double* delta, const double* rate,
             std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if ((delta == nullptr) == (rate == nullptr)) {
      throw std::invalid_argument("rate: exactly one of --delta and --rate is required");
    }
    const ChannelParams params(opts.sigma_b2, opts.sigma_w2, power);
    const std::int64_t n = opts.max_blocklength;
    double d, r;
    if (delta != nullptr) {
      d = *delta;
      r = achievable_rate(params, n, Probability(d));
    } else {
      r = *rate;
      d = decoding_error(params, n, r).value();
    }
    const double eta = effective_throughput(CodingPoint(n, std::max(r, 0.0), Probability(d)));
    Table table{{"n", "power", "gamma_b", "delta", "rate", "eta"},
                {{n, power, params.gamma_b(), d, r, eta}}};
    return emit(render(table, opts, "rate", json::object()), opts, out, err);
  });
}

int cmd_detect(const Options& opts, double power, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const ChannelParams params(opts.sigma_b2, opts.sigma_w2, power);
    const DetectionReport report = total_error(params, opts.max_blocklength);
    Table table{{"n", "power", "threshold", "p_false", "p_miss", "xi", "kl", "pinsker_bound"},
                {{opts.max_blocklength, power, report.threshold, report.p_false.value(),
                  report.p_miss.value(), report.xi, report.kl, report.pinsker_bound}}};
    return emit(render(table, opts, "detect", json::object()), opts, out, err);
  });
}

int cmd_design(const Options& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const CovertConstraint constraint(opts.epsilon, parse_mode(opts.mode));
    const DesignResult result =
        optimize_design(opts.max_blocklength, constraint, opts.sigma_b2, opts.sigma_w2);
    Table table{design_columns("N"), {design_row(result.n_star, result)}};
    return emit(render(table, opts, "design", json::object()), opts, out, err);
  });
}

int cmd_sweep(const Options& opts, const SweepSpec& spec, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    check_sweep_values(spec);
    const ConstraintMode mode = parse_mode(opts.mode);
    const std::string variable = variable_name(spec.variable);
    Table table{design_columns(variable), {}};

    // Everything that can be rejected before computing rows, is: a sweep
    // never emits partial output for bad parameters, only for a point that
    // fails to converge.
    if (spec.variable != SweepVariable::kEpsilon) {
      (void)CovertConstraint(opts.epsilon, mode);  // validates
    }

    try {
      switch (spec.variable) {
        case SweepVariable::kN: {
          const CovertConstraint constraint(opts.epsilon, mode);
          for (const double v : spec.values) {
            const auto n = static_cast<std::int64_t>(v);
            const DesignResult r = optimize_design(n, constraint, opts.sigma_b2, opts.sigma_w2);
            table.rows.push_back(design_row(n, r));
          }
          break;
        }
        case SweepVariable::kEpsilon: {
          for (const double v : spec.values) {
            const CovertConstraint constraint(v, mode);
            const DesignResult r =
                optimize_design(opts.max_blocklength, constraint, opts.sigma_b2, opts.sigma_w2);
            table.rows.push_back(design_row(v, r));
          }
          break;
        }
        case SweepVariable::kDelta: {
          const CovertConstraint constraint(opts.epsilon, mode);
          const std::int64_t n = opts.max_blocklength;
          const PowerSolution power =
              mode == ConstraintMode::kKl ? max_power_kl(n, constraint, opts.sigma_w2)
                                          : max_power_exact(n, constraint, opts.sigma_w2);
          const ChannelParams params(opts.sigma_b2, opts.sigma_w2, power.power);
          for (const double d : spec.values) {
            const double raw = achievable_rate(params, n, Probability(d));
            const double r_clamped = std::max(raw, 0.0);
            const double eta = effective_throughput(CodingPoint(n, r_clamped, Probability(d)));
            table.rows.push_back({d, power.power, static_cast<double>(n) * power.power,
                                  r_clamped, d, eta, eta / static_cast<double>(n),
                                  std::string(mode_name(mode)), power.residual});
          }
          break;
        }
        case SweepVariable::kPower: {
          const CovertConstraint constraint(opts.epsilon, mode);
          const std::int64_t n = opts.max_blocklength;
          for (const double p : spec.values) {
            const ChannelParams params(opts.sigma_b2, opts.sigma_w2, p);
            const RatePoint point = optimize_rate(params, n);
            // Covertness slack at this power: relative KL residual against
            // the budget, or signed exact total-error slack.  Positive KL
            // residual / negative exact slack means the constraint is
            // violated at this power.
            double residual;
            if (mode == ConstraintMode::kKl) {
              const double budget = 2.0 * constraint.epsilon * constraint.epsilon;
              residual = (kl_divergence(params, n) - budget) / budget;
            } else {
              const DetectionReport report = total_error(params, n);
              residual = report.xi - (1.0 - constraint.epsilon);
            }
            table.rows.push_back({p, p, static_cast<double>(n) * p, point.r_star,
                                  point.delta_star.value(), point.eta_star,
                                  point.eta_star / static_cast<double>(n),
                                  std::string(mode_name(mode)), residual});
          }
          break;
        }
      }
    } catch (const ConvergenceError& e) {
      const std::size_t done = table.rows.size();
      const int code = emit(render(table, opts, "sweep",
                                   json{{"variable", variable}, {"values", spec.values}}),
                            opts, out, err);
      err << "error: sweep aborted at " << variable << " = "
          << format_sig(spec.values[done], opts.precision) << ": " << e.what() << " (emitted "
          << done << " of " << spec.values.size() << " rows)\n";
      return code == 0 ? 3 : code;
    }

    return emit(render(table, opts, "sweep",
                       json{{"variable", variable}, {"values", spec.values}}),
                opts, out, err);
  });
}

int cmd_validate(const Options& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (opts.trials < 1) {
      throw std::invalid_argument("validate: trials must be >= 1");
    }
    static constexpr std::int64_t kGridN[] = {1, 10, 100};
    static constexpr double kGridPower[] = {0.1, 1.0, 10.0};

    Table table{{"n", "power", "p_false", "p_false_hat", "p_miss", "p_miss_hat", "z_false",
                 "z_miss", "pass"},
                {}};
    // Per-point seeds derive from one stream so points are decorrelated but
    // the whole report stays a pure function of --seed.
    SplitMix64 seeder(opts.seed);
    bool all_pass = true;
    const double trials = static_cast<double>(opts.trials);
    for (const std::int64_t n : kGridN) {
      for (const double power : kGridPower) {
        const ChannelParams params(opts.sigma_b2, opts.sigma_w2, power);
        const DetectionReport analytic = total_error(params, n);
        const McConfig config{params, n, opts.trials, seeder.next()};
        const McEstimate estimate = simulate_detection(config);

        const double sd_false =
            std::sqrt(analytic.p_false.value() * (1.0 - analytic.p_false.value()) / trials);
        const double sd_miss =
            std::sqrt(analytic.p_miss.value() * (1.0 - analytic.p_miss.value()) / trials);
        const double z_false =
            sd_false > 0.0
                ? (estimate.p_false_hat.value() - analytic.p_false.value()) / sd_false
                : 0.0;
        const double z_miss =
            sd_miss > 0.0 ? (estimate.p_miss_hat.value() - analytic.p_miss.value()) / sd_miss
                          : 0.0;
        const bool pass = std::abs(z_false) <= 3.0 && std::abs(z_miss) <= 3.0;
        all_pass = all_pass && pass;
        table.rows.push_back({n, power, analytic.p_false.value(),
                              estimate.p_false_hat.value(), analytic.p_miss.value(),
                              estimate.p_miss_hat.value(), z_false, z_miss,
                              static_cast<std::int64_t>(pass ? 1 : 0)});
      }
    }
    const int code = emit(render(table, opts, "validate", json::object()), opts, out, err);
    if (code != 0) return code;
    return all_pass ? 0 : 1;
  });
}

}  // namespace covertfbl::cli
