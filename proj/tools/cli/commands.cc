// Copyright 2026 The ucoalign Authors
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


#include "cli/commands.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "cli/csv.h"
#include "cli/svg.h"
#include "json.hpp"
#include "ucoalign/autodiff.h"
#include "ucoalign/derand.h"
#include "ucoalign/facility.h"
#include "ucoalign/instance_io.h"
#include "ucoalign/misalign.h"
#include "ucoalign/quadratic.h"
#include "ucoalign/train.h"

namespace ucoalign::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr const char* kDefaultTemperatures = "10,1,0.1,0.01,0.001";

// Bad flag values detected after parsing; reported with exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::uint64_t seed = 0;
  std::size_t jobs = 0;
  std::string out_dir = "results";
  bool plot = false;

  std::size_t n = 0;  // per-command default
  std::size_t samples = 100;
  std::size_t trials = 5;
  std::string schemes;
  std::string temperatures = kDefaultTemperatures;
  std::size_t steps = 0;

  std::size_t epochs = 300;
  double lr = 0.01;
  std::size_t k = 20;
  double beta = 50.0;
  double init_logit = 0.0;
  std::string instance;

  std::string problem = "facility";
  std::string pipeline = "none";
  double tau = 0.1;
  std::size_t points = 20;
  double threshold = 1e-4;
  double h = 1e-6;
};

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::string item;
  for (char c : text + ",") {
    if (c == ',') {
      const auto b = item.find_first_not_of(' ');
      const auto e = item.find_last_not_of(' ');
      if (b != std::string::npos) items.push_back(item.substr(b, e - b + 1));
      item.clear();
    } else {
      item += c;
    }
  }
  return items;
}

std::vector<double> parse_temperatures(const std::string& text) {
  std::vector<double> out;
  for (const std::string& item : split_list(text)) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size()) {
      throw UsageError("--temperatures: not a number: '" + item + "'");
    }
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw UsageError("--temperatures: temperatures must be finite and > 0");
    }
    out.push_back(v);
  }
  if (out.empty()) throw UsageError("--temperatures: empty list");
  return out;
}

std::vector<Scheme> parse_schemes(const std::string& text,
                                  std::initializer_list<Scheme> allowed) {
  std::vector<Scheme> out;
  for (const std::string& item : split_list(text)) {
    Scheme s;
    try {
      s = parse_scheme(item);
    } catch (const std::invalid_argument& e) {
      throw UsageError(std::string("--scheme: ") + e.what());
    }
    if (std::find(allowed.begin(), allowed.end(), s) == allowed.end()) {
      throw UsageError("--scheme: '" + item + "' is not valid for this command");
    }
    if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
  }
  if (out.empty()) throw UsageError("--scheme: empty list");
  return out;
}

std::string scheme_list(std::span<const Scheme> schemes) {
  std::string out;
  for (Scheme s : schemes) {
    if (!out.empty()) out += ',';
    out += scheme_name(s);
  }
  return out;
}

void write_file(const fs::path& path, const std::string& text) {
  write_text_file(path, text);
}

void write_config(const Options& o, const std::string& command, json config) {
  config["command"] = command;
  config["seed"] = o.seed;
  config["jobs"] = o.jobs;
  config["out"] = o.out_dir;
  if (command == "toy-soft" || command == "train-fl") config["plot"] = o.plot;
  std::string file = command;
  std::replace(file.begin(), file.end(), '-', '_');
  write_file(fs::path(o.out_dir) / (file + "_config.json"),
             config.dump(2) + "\n");
}

std::string temperature_field(const std::optional<double>& t) {
  return t ? format_number(*t) : std::string();
}

// ---- toy-misalign -----------------------------------------------------------

int cmd_toy_misalign(const Options& o, std::ostream& out, std::ostream&) {
  ToyMisalignConfig c;
  c.n = o.n;
  c.samples = o.samples;
  c.trials = o.trials;
  c.schemes = parse_schemes(o.schemes.empty() ? "iterative,greedy" : o.schemes,
                            {Scheme::kIterative, Scheme::kGreedy});
  c.seed = o.seed;
  c.jobs = o.jobs;
  if (c.n < 1 || c.trials < 1) throw UsageError("--n and --trials must be >= 1");
  write_config(o, "toy-misalign",
               {{"n", c.n},
                {"samples", c.samples},
                {"trials", c.trials},
                {"scheme", scheme_list(c.schemes)}});

  const std::vector<TrialReport> reports = run_toy_misalign(c);
  CsvTable csv({"trial", "scheme", "temperature", "bad_count", "total_pairs",
                "fraction"});
  for (const TrialReport& r : reports) {
    csv.add_row({std::to_string(r.trial), std::string(scheme_name(r.scheme)),
                 temperature_field(r.temperature), std::to_string(r.bad_count),
                 std::to_string(r.total_pairs), format_number(r.fraction)});
  }
  const std::size_t pairs = c.samples * (c.samples - 1) / 2;
  out << fmt::format("{:<10} {:>6} {:>14} {:>14}\n", "scheme", "trials",
                     "mean bad pairs", "mean fraction");
  for (const ReportSummary& s : summarize(reports)) {
    csv.add_row({"mean", std::string(scheme_name(s.scheme)), "",
                 format_number(s.mean_bad_count), std::to_string(pairs),
                 format_number(s.mean_fraction)});
    out << fmt::format("{:<10} {:>6} {:>14.1f} {:>13.1f}%\n",
                       scheme_name(s.scheme), s.trials, s.mean_bad_count,
                       100.0 * s.mean_fraction);
  }
  write_file(fs::path(o.out_dir) / "toy_misalign.csv", csv.str());
  return kExitOk;
}

// ---- toy-soft ---------------------------------------------------------------

int cmd_toy_soft(const Options& o, std::ostream& out, std::ostream&) {
  SoftSweepConfig c;
  c.n = o.n;
  c.samples = o.samples;
  c.trials = o.trials;
  c.schemes = parse_schemes(
      o.schemes.empty() ? "soft-iterative,soft-greedy" : o.schemes,
      {Scheme::kSoftIterative, Scheme::kSoftGreedy});
  c.temperatures = parse_temperatures(o.temperatures);
  c.steps = o.steps;
  c.seed = o.seed;
  c.jobs = o.jobs;
  if (c.n < 1 || c.trials < 1) throw UsageError("--n and --trials must be >= 1");
  const std::size_t steps = c.steps == 0 ? 2 * c.n : c.steps;
  write_config(o, "toy-soft",
               {{"n", c.n},
                {"samples", c.samples},
                {"trials", c.trials},
                {"scheme", scheme_list(c.schemes)},
                {"temperatures", c.temperatures},
                {"steps", steps}});

  const std::vector<TrialReport> reports = soft_sweep(c);
  CsvTable csv({"trial", "scheme", "temperature", "bad_count", "total_pairs",
                "fraction"});
  for (const TrialReport& r : reports) {
    csv.add_row({std::to_string(r.trial), std::string(scheme_name(r.scheme)),
                 temperature_field(r.temperature), std::to_string(r.bad_count),
                 std::to_string(r.total_pairs), format_number(r.fraction)});
  }
  write_file(fs::path(o.out_dir) / "toy_soft.csv", csv.str());

  const std::vector<ReportSummary> summary = summarize(reports);
  CsvTable means({"scheme", "temperature", "trials", "mean_bad_count",
                  "mean_fraction"});
  LineChart chart{"Bad pairs after soft rounding", "temperature (log scale)",
                  "mean bad-pair fraction", true, {}};
  out << fmt::format("{:<15} {:>12} {:>14}\n", "scheme", "temperature",
                     "mean fraction");
  for (const ReportSummary& s : summary) {
    means.add_row({std::string(scheme_name(s.scheme)),
                   temperature_field(s.temperature), std::to_string(s.trials),
                   format_number(s.mean_bad_count),
                   format_number(s.mean_fraction)});
    out << fmt::format("{:<15} {:>12g} {:>13.1f}%\n", scheme_name(s.scheme),
                       *s.temperature, 100.0 * s.mean_fraction);
    const std::string label(scheme_name(s.scheme));
    auto it = std::find_if(chart.series.begin(), chart.series.end(),
                           [&](const Series& x) { return x.label == label; });
    if (it == chart.series.end()) {
      chart.series.push_back({label, {}});
      it = std::prev(chart.series.end());
    }
    it->points.emplace_back(*s.temperature, s.mean_fraction);
  }
  write_file(fs::path(o.out_dir) / "toy_soft_summary.csv", means.str());
  if (o.plot) write_file(fs::path(o.out_dir) / "toy_soft.svg", render_svg(chart));
  return kExitOk;
}

// ---- train-fl ---------------------------------------------------------------

std::string run_label(const SweepRun& run) {
  if (!run.soft_scheme) return "baseline";
  return fmt::format("{}_tau{}", scheme_name(*run.soft_scheme),
                     format_number(*run.temperature));
}

std::string curve_csv(const TrainResult& result) {
  CsvTable csv({"epoch", "train_loss", "test_iterative", "test_greedy",
                "feasible_iterative", "feasible_greedy"});
  for (const EpochRecord& r : result.curve) {
    csv.add_row({std::to_string(r.epoch), format_number(r.train_loss),
                 format_number(r.test_iterative), format_number(r.test_greedy),
                 r.feasible_iterative ? "1" : "0",
                 r.feasible_greedy ? "1" : "0"});
  }
  return csv.str();
}

int cmd_train_fl(const Options& o, bool init_given, std::ostream& out,
                 std::ostream& err) {
  const std::vector<Scheme> schemes = parse_schemes(
      o.schemes.empty() ? "soft-iterative,soft-greedy" : o.schemes,
      {Scheme::kSoftIterative, Scheme::kSoftGreedy});
  const std::vector<double> temps = parse_temperatures(o.temperatures);
  const SeedStream instance_seed{o.seed, 0};

  std::optional<FacilityProblem> problem;
  if (!o.instance.empty()) {
    try {
      problem.emplace(facility_from_json(read_text_file(o.instance)));
    } catch (const std::invalid_argument& e) {
      throw UsageError(std::string("--instance: ") + e.what());
    }
  } else {
    if (o.k < 1 || o.k > o.n) throw UsageError("--k must satisfy 1 <= k <= n");
    if (!(o.beta > 0.0)) throw UsageError("--beta must be > 0");
    problem.emplace(sample_facility(o.n, o.k, o.beta, instance_seed));
  }
  const FacilityProblem& p = *problem;

  TrainConfig base;
  base.epochs = o.epochs;
  base.learning_rate = o.lr;
  base.steps = o.steps;
  if (init_given) {
    base.init_logit = o.init_logit;
  } else {
    // Start at the budget's density, clamped away from the corners.
    const double density = std::clamp(
        static_cast<double>(p.budget()) / static_cast<double>(p.dimension()),
        0.01, 0.99);
    base.init_logit = std::log(density / (1.0 - density));
  }
  base.seed = {o.seed, 1};
  try {
    validate(base);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  const json config = {{"n", p.dimension()},
                       {"k", p.budget()},
                       {"beta", p.beta()},
                       {"instance", o.instance},
                       {"epochs", base.epochs},
                       {"lr", base.learning_rate},
                       {"steps", resolved_soft_steps(base, p.dimension())},
                       {"init-logit", base.init_logit},
                       {"scheme", scheme_list(schemes)},
                       {"temperatures", temps}};
  write_config(o, "train-fl", config);
  const fs::path dir(o.out_dir);
  write_file(dir / "instance.json", facility_to_json(p) + "\n");

  const std::vector<SweepRun> runs =
      sweep_temperatures(p, base, schemes, temps, o.jobs);

  bool failed = false;
  out << fmt::format("{:<26} {:>7} {:>12} {:>12} {:>12} {:>12}\n", "run",
                     "epochs", "loss[0]", "loss[end]", "test_iter", "test_greedy");
  for (const SweepRun& run : runs) {
    const std::string label = run_label(run);
    const TrainResult& r = run.result;
    write_file(dir / ("train_" + label + ".csv"), curve_csv(r));
    json meta = {{"run", label},
                 {"soft_scheme", run.soft_scheme
                                     ? json(scheme_name(*run.soft_scheme))
                                     : json(nullptr)},
                 {"temperature",
                  run.temperature ? json(*run.temperature) : json(nullptr)},
                 {"soft_steps", r.soft_steps},
                 {"records", r.curve.size()},
                 {"aborted", r.aborted},
                 {"instance_seed",
                  {{"root_seed", instance_seed.root_seed},
                   {"stream_index", instance_seed.stream_index}}},
                 {"config", config}};
    if (r.aborted) {
      meta["abort_epoch"] = r.abort_epoch;
      meta["abort_reason"] = r.abort_reason;
      err << "warning: " << label << " stopped early: " << r.abort_reason
          << " (partial curve with " << r.curve.size() << " records)\n";
    }
    if (!run.error.empty()) {
      meta["error"] = run.error;
      err << "error: " << label << " failed: " << run.error << "\n";
      failed = true;
    }
    write_file(dir / ("train_" + label + ".json"), meta.dump(2) + "\n");
    if (!r.curve.empty()) {
      const EpochRecord& first = r.curve.front();
      const EpochRecord& last = r.curve.back();
      out << fmt::format("{:<26} {:>7} {:>12.6g} {:>12.6g} {:>11.6g}{} {:>11.6g}{}\n",
                         label, last.epoch, first.train_loss, last.train_loss,
                         last.test_iterative, last.feasible_iterative ? ' ' : '*',
                         last.test_greedy, last.feasible_greedy ? ' ' : '*');
    }
  }
  out << "(* = infeasible rounding)\n";

  // The tau = 0.1 comparison is informational only.
  const auto& baseline = runs.front().result.curve;
  for (const SweepRun& run : runs) {
    if (!run.temperature || *run.temperature != 0.1 || run.result.curve.empty() ||
        baseline.empty()) {
      continue;
    }
    const bool greedy = *run.soft_scheme == Scheme::kSoftGreedy;
    const double soft = greedy ? run.result.curve.back().test_greedy
                               : run.result.curve.back().test_iterative;
    const double base_value =
        greedy ? baseline.back().test_greedy : baseline.back().test_iterative;
    out << fmt::format("{} tau=0.1 final test objective {:.6g} vs baseline {:.6g}\n",
                       scheme_name(*run.soft_scheme), soft, base_value);
  }

  if (o.plot) {
    for (Scheme s : schemes) {
      const bool greedy = s == Scheme::kSoftGreedy;
      LineChart loss{fmt::format("Training loss, {}", scheme_name(s)), "epoch",
                     "training loss", false, {}};
      LineChart test{fmt::format("Test objective ({} rounding), {}",
                                 greedy ? "greedy" : "iterative", scheme_name(s)),
                     "epoch", "test objective (feasible roundings)", false, {}};
      for (const SweepRun& run : runs) {
        if (run.soft_scheme && *run.soft_scheme != s) continue;
        const std::string label =
            run.soft_scheme ? "tau=" + format_number(*run.temperature) : "baseline";
        Series a{label, {}}, b{label, {}};
        for (const EpochRecord& r : run.result.curve) {
          const double x = static_cast<double>(r.epoch);
          a.points.emplace_back(x, r.train_loss);
          // Infeasible roundings are left out of the test panel.
          const bool feasible = greedy ? r.feasible_greedy : r.feasible_iterative;
          b.points.emplace_back(
              x, !feasible ? std::nan("")
                           : greedy ? r.test_greedy : r.test_iterative);
        }
        loss.series.push_back(std::move(a));
        test.series.push_back(std::move(b));
      }
      const std::string name(scheme_name(s));
      write_file(dir / (name + "_train_loss.svg"), render_svg(loss));
      write_file(dir / (name + "_test_objective.svg"), render_svg(test));
    }
  }
  return failed ? kExitFailure : kExitOk;
}

// ---- grad-check -------------------------------------------------------------

int cmd_grad_check(const Options& o, std::ostream& out, std::ostream& err) {
  if (!(o.tau > 0.0)) throw UsageError("--tau must be > 0");
  if (o.problem != "quadratic" && o.problem != "facility") {
    throw UsageError("--problem must be 'quadratic' or 'facility'");
  }
  std::optional<Scheme> pipeline;
  if (o.pipeline != "none") {
    pipeline = parse_schemes(o.pipeline,
                             {Scheme::kSoftIterative, Scheme::kSoftGreedy})[0];
  }
  if (o.n < 1) throw UsageError("--n must be >= 1");
  if (!(o.h > 0.0 && o.h < 0.05)) throw UsageError("--fd-step must lie in (0, 0.05)");
  if (o.problem == "facility" && (o.k < 1 || o.k > o.n)) {
    throw UsageError("--k must satisfy 1 <= k <= n");
  }
  if (!(o.beta > 0.0)) throw UsageError("--beta must be > 0");
  const std::size_t steps = o.steps == 0 ? o.n : o.steps;
  write_config(o, "grad-check",
               {{"problem", o.problem},
                {"pipeline", o.pipeline},
                {"tau", o.tau},
                {"points", o.points},
                {"n", o.n},
                {"k", o.k},
                {"beta", o.beta},
                {"steps", steps},
                {"threshold", o.threshold},
                {"fd-step", o.h}});

  const SeedStream instance_seed{o.seed, 0};
  std::unique_ptr<Problem> problem;
  if (o.problem == "quadratic") {
    problem = std::make_unique<QuadraticProblem>(sample_quadratic(o.n, instance_seed));
  } else {
    problem = std::make_unique<FacilityProblem>(
        sample_facility(o.n, o.k, o.beta, instance_seed));
  }
  const RoundingOrder order = RoundingOrder::Identity(o.n);
  const SoftConfig soft{o.tau, steps};
  const GraphFunction f = [&](Tape& tape, std::span<const Var> x) {
    if (!pipeline) return problem->surrogate(tape, x);
    const std::vector<Var> y =
        *pipeline == Scheme::kSoftIterative
            ? soft_iterative(*problem, tape, x, order, o.tau)
            : soft_greedy(*problem, tape, x, soft);
    return problem->surrogate(tape, y);
  };

  Rng rng({o.seed, 1});
  CsvTable csv({"point", "max_rel_error"});
  out << fmt::format("{} surrogate, pipeline {}, tau {}\n", o.problem, o.pipeline,
                     format_number(o.tau));
  out << fmt::format("{:>6} {:>14}\n", "point", "max rel error");
  double worst = 0.0;
  for (std::size_t i = 0; i < o.points; ++i) {
    std::vector<double> x(o.n);
    for (double& v : x) v = 0.05 + 0.9 * rng.uniform();
    const double e = grad_check(f, x, o.h);
    worst = std::max(worst, std::isnan(e) ? INFINITY : e);
    csv.add_row({std::to_string(i), format_number(e)});
    out << fmt::format("{:>6} {:>14.3e}\n", i, e);
  }
  write_file(fs::path(o.out_dir) / "grad_check.csv", csv.str());
  const bool ok = worst < o.threshold;
  out << fmt::format("max {:.3e} {} threshold {:.1e}: {}\n", worst,
                     ok ? "<" : ">=", o.threshold, ok ? "PASS" : "FAIL");
  if (!ok) err << "gradient check failed\n";
  return ok ? kExitOk : kExitFailure;
}

// ---- config files -----------------------------------------------------------

std::string json_to_arg(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_unsigned()) return std::to_string(v.get<std::uint64_t>());
  if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
  if (v.is_number_float()) return format_number(v.get<double>());
  if (v.is_array()) {
    std::string joined;
    for (const json& item : v) {
      if (item.is_array() || item.is_object()) break;
      if (!joined.empty()) joined += ',';
      joined += json_to_arg(item);
    }
    return joined;
  }
  throw UsageError("unsupported config value: " + v.dump());
}

// Turns the --config document into flags placed before the explicit ones, so
// that explicit flags (last value wins) override file values.
std::vector<std::string> expand_config(const std::vector<std::string>& args,
                                       const CLI::App& app) {
  if (args.empty() || args[0].empty() || args[0][0] == '-') return args;
  std::string path;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty()) return args;
  const CLI::App* sub = nullptr;
  try {
    sub = app.get_subcommand(args[0]);
  } catch (const CLI::OptionNotFound&) {
    return args;  // let the parser report the unknown command
  }
  json doc;
  try {
    doc = json::parse(read_text_file(path));
  } catch (const std::exception& e) {
    throw UsageError("--config " + path + ": " + e.what());
  }
  if (!doc.is_object()) throw UsageError("--config: expected a JSON object");

  std::vector<std::string> expanded{args[0]};
  for (const auto& [key, value] : doc.items()) {
    if (key == "command") {
      if (value != args[0]) {
        throw UsageError("--config: file is for command " + value.dump());
      }
      continue;
    }
    if (key == "config" || sub->get_option_no_throw("--" + key) == nullptr) {
      throw UsageError("--config: unknown key '" + key + "' for " + args[0]);
    }
    if (value.is_null()) continue;
    if (value.is_boolean()) {
      if (value.get<bool>()) expanded.push_back("--" + key);
      continue;
    }
    expanded.push_back("--" + key);
    expanded.push_back(json_to_arg(value));
  }
  expanded.insert(expanded.end(), args.begin() + 1, args.end());
  return expanded;
}

void add_common(CLI::App* cmd, Options& o, std::string& config_path) {
  cmd->add_option("--seed", o.seed, "Root seed")->capture_default_str();
  cmd->add_option("--jobs", o.jobs, "Worker threads (0 = all cores)")
      ->capture_default_str();
  cmd->add_option("--out", o.out_dir, "Output directory")->capture_default_str();
  cmd->add_option("--config", config_path,
                  "JSON file of flag values; explicit flags win");
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Training/test misalignment experiments for derandomized "
               "unsupervised combinatorial optimization"};
  app.name("ucoalign");
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);

  std::string config_path;
  Options toy, soft, train, check;
  toy.n = 50;
  soft.n = 50;
  train.n = 200;
  check.n = 8;
  check.k = 2;
  check.beta = 1.0;

  CLI::App* c_toy = app.add_subcommand(
      "toy-misalign", "Bad pairs between surrogate and rounded objective values");
  add_common(c_toy, toy, config_path);
  c_toy->add_option("--n", toy.n, "Decision dimension")->capture_default_str();
  c_toy->add_option("--samples", toy.samples, "Random decisions per trial")
      ->capture_default_str();
  c_toy->add_option("--trials", toy.trials)->capture_default_str();
  c_toy->add_option("--scheme", toy.schemes,
                    "Comma list of iterative, greedy (default both)");

  CLI::App* c_soft = app.add_subcommand(
      "toy-soft", "Bad pairs after soft rounding, across temperatures");
  add_common(c_soft, soft, config_path);
  c_soft->add_option("--n", soft.n)->capture_default_str();
  c_soft->add_option("--samples", soft.samples)->capture_default_str();
  c_soft->add_option("--trials", soft.trials)->capture_default_str();
  c_soft->add_option("--scheme", soft.schemes,
                     "Comma list of soft-iterative, soft-greedy (default both)");
  c_soft->add_option("--temperatures", soft.temperatures, "Comma list")
      ->capture_default_str();
  c_soft->add_option("--steps", soft.steps, "Soft-greedy updates (0 = 2n)")
      ->capture_default_str();
  c_soft->add_flag("--plot", soft.plot, "Also write toy_soft.svg");

  CLI::App* c_train = app.add_subcommand(
      "train-fl", "Train facility-location decisions through soft rounding");
  add_common(c_train, train, config_path);
  c_train->add_option("--n", train.n, "Locations")->capture_default_str();
  c_train->add_option("--k", train.k, "Center budget")->capture_default_str();
  c_train->add_option("--beta", train.beta, "Constraint coefficient")
      ->capture_default_str();
  c_train->add_option("--instance", train.instance,
                      "Load the instance from JSON instead of sampling it");
  c_train->add_option("--epochs", train.epochs)->capture_default_str();
  c_train->add_option("--lr", train.lr, "Learning rate")->capture_default_str();
  c_train->add_option("--scheme", train.schemes,
                      "Comma list of soft-iterative, soft-greedy (default both)");
  c_train->add_option("--temperatures", train.temperatures, "Comma list")
      ->capture_default_str();
  c_train->add_option("--steps", train.steps, "Soft-greedy updates (0 = min(n, 50))")
      ->capture_default_str();
  CLI::Option* init_opt = c_train->add_option(
      "--init-logit", train.init_logit,
      "Initial logit of every entry (default: logit(k/n))");
  c_train->add_flag("--plot", train.plot, "Also write SVG panels");

  CLI::App* c_check = app.add_subcommand(
      "grad-check", "Compare reverse-mode gradients with central differences");
  add_common(c_check, check, config_path);
  c_check->add_option("--problem", check.problem, "quadratic or facility")
      ->capture_default_str();
  c_check->add_option("--pipeline", check.pipeline,
                      "none, soft-iterative or soft-greedy")
      ->capture_default_str();
  c_check->add_option("--tau", check.tau)->capture_default_str();
  c_check->add_option("--points", check.points, "Random interior points")
      ->capture_default_str();
  c_check->add_option("--n", check.n)->capture_default_str();
  c_check->add_option("--k", check.k)->capture_default_str();
  c_check->add_option("--beta", check.beta)->capture_default_str();
  c_check->add_option("--steps", check.steps, "Soft-greedy updates (0 = n)")
      ->capture_default_str();
  c_check->add_option("--threshold", check.threshold)->capture_default_str();
  c_check->add_option("--fd-step", check.h, "Finite-difference step")
      ->capture_default_str();

  try {
    std::vector<std::string> expanded = expand_config(args, app);
    std::reverse(expanded.begin(), expanded.end());
    try {
      app.parse(expanded);
    } catch (const CLI::ParseError& e) {
      const int code = app.exit(e, out, err);
      return code == 0 ? kExitOk : kExitUsage;
    }
    if (c_toy->parsed()) return cmd_toy_misalign(toy, out, err);
    if (c_soft->parsed()) return cmd_toy_soft(soft, out, err);
    if (c_train->parsed()) {
      return cmd_train_fl(train, init_opt->count() > 0, out, err);
    }
    return cmd_grad_check(check, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace ucoalign::cli
