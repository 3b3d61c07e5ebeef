/*
 * Copyright 2026 The Mignow Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// mignow: command-line entry point.

#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mignow/analysis.h"
#include "mignow/attribution.h"
#include "mignow/csv.h"
#include "mignow/datamodel.h"
#include "mignow/error.h"
#include "mignow/ingest.h"
#include "mignow/pipeline.h"
#include "mignow/report.h"
#include "mignow/scale.h"
#include "mignow/stats.h"
#include "mignow/synthetic.h"
#include "mignow/temporal.h"

namespace fs = std::filesystem;

namespace mignow {
namespace {

int ExitCode(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInput:
      return 2;
    case ErrorKind::kNumerical:
      return 3;
    case ErrorKind::kInvariant:
      return 4;
  }
  return 4;
}

std::vector<ModelSpec> LoadSchema(const std::string& schema) {
  if (schema == "default") return DefaultSchema();
  return ParseSchemaJson(ReadFile(schema));
}

std::vector<Snapshot> ReadSnapshots(const std::vector<std::string>& paths) {
  std::vector<Snapshot> out;
  for (const auto& p : paths) out.push_back(ReadSnapshotFile(p));
  std::sort(out.begin(), out.end(),
            [](const Snapshot& a, const Snapshot& b) { return a.date < b.date; });
  return out;
}

void Report(const fs::path& path) { std::cout << "wrote " << path.string() << "\n"; }

void Emit(const fs::path& dir, const std::string& name, const std::string& text) {
  WriteFile(dir / name, text);
  Report(dir / name);
}

// ---- ingest ----------------------------------------------------------------

struct IngestArgs {
  std::vector<std::string> snapshots;
  std::string indicators;
  std::string seniority;
  std::string out = "ingested";
};

void RunIngest(const IngestArgs& a) {
  for (const Snapshot& snap : ReadSnapshots(a.snapshots)) {
    Emit(a.out, "snapshot_" + FormatDate(snap.date) + ".csv", SnapshotToCsv(snap));
  }
  if (!a.indicators.empty()) {
    auto indicators = ReadIndicatorsFile(a.indicators);
    for (const auto& ind : indicators) {
      for (const Violation& v : ValidateIndicators(ind)) {
        std::cerr << "warning: " << v.key << ": " << v.rule << "\n";
      }
    }
    Emit(a.out, "indicators.csv", IndicatorsToCsv(indicators));
  }
  if (!a.seniority.empty()) {
    Emit(a.out, "seniority.csv", SeniorityToCsv(ReadSeniorityFile(a.seniority)));
  }
}

// ---- scale -----------------------------------------------------------------

struct ScaleArgs {
  std::vector<std::string> snapshots;
  std::string indicators;
  std::string out = "scaled";
  std::string panel_date;
  bool include_zero = true;
};

std::vector<ScaledEstimate> AllBreakdowns(const Snapshot& snap,
                                          const PenetrationTable& pen) {
  std::vector<ScaledEstimate> all;
  for (Breakdown b : {Breakdown::kNone, Breakdown::kGender, Breakdown::kGenderAge}) {
    auto part = CountryTotals(snap, pen, b);
    all.insert(all.end(), part.begin(), part.end());
  }
  return all;
}

void RunScale(const ScaleArgs& a) {
  const auto indicators = ReadIndicatorsFile(a.indicators);
  const auto snapshots = ReadSnapshots(a.snapshots);
  const bool single = snapshots.size() == 1;
  std::optional<Date> panel_date;
  if (!a.panel_date.empty()) {
    panel_date = ParseDate(a.panel_date);
    if (!panel_date) throw InputError("invalid --panel-date '" + a.panel_date + "'");
  }
  bool panel_written = false;
  for (const Snapshot& snap : snapshots) {
    const PenetrationTable pen = Penetration(snap, indicators);
    for (const auto& line : pen.log) std::cerr << "notice: " << line << "\n";
    const fs::path dir = single ? fs::path(a.out) : fs::path(a.out) / FormatDate(snap.date);
    Emit(dir, "scaled_estimates.csv", ScaledEstimatesCsv(AllBreakdowns(snap, pen)));
    Emit(dir, "penetration.csv", PenetrationCsv(pen));
    if (!panel_written && (!panel_date || *panel_date == snap.date)) {
      PanelAssembly assembly =
          AssemblePanel(TotalsByCountry(snap, pen), indicators, a.include_zero);
      assembly.panel.provenance.snapshot_date = snap.date;
      Emit(a.out, "panel.csv", PanelCsv(assembly.panel));
      Emit(a.out, "drop_log.csv", DropLogCsv(assembly.drop_log));
      panel_written = true;
    }
  }
  if (!panel_written) throw InputError("no snapshot dated " + a.panel_date);
}

// ---- diff ------------------------------------------------------------------

struct DiffArgs {
  std::vector<std::string> inputs;
  std::vector<std::string> windows;
  std::string out = "temporal";
};

void RunDiff(const DiffArgs& a) {
  if (a.inputs.size() < 2) throw InputError("diff needs at least two inputs");
  std::map<Date, std::vector<ScaledEstimate>> by_date;
  for (const std::string& input : a.inputs) {
    std::optional<Date> date;
    std::string path = input;
    if (auto eq = input.find('='); eq != std::string::npos) {
      date = ParseDate(input.substr(0, eq));
      path = input.substr(eq + 1);
    } else {
      date = DateFromPath(path);
    }
    if (!date) throw InputError(input + ": cannot infer date; use DATE=PATH");
    if (by_date.contains(*date)) {
      throw InputError("two inputs share date " + FormatDate(*date));
    }
    by_date[*date] = ParseScaledEstimates(ReadFile(path), path);
  }
  std::vector<std::pair<Date, std::vector<ScaledEstimate>>> series(by_date.begin(),
                                                                   by_date.end());
  std::vector<Window> windows;
  for (const auto& w : a.windows) windows.push_back(ParseWindow(w));
  if (windows.empty()) {
    std::vector<Date> dates;
    for (const auto& [d, est] : series) dates.push_back(d);
    windows = DefaultWindows(dates);
  }
  const TemporalReport report = AnalyzeWindows(series, windows);
  for (const auto& line : report.log) std::cerr << "notice: " << line << "\n";
  Emit(a.out, "diffs.csv", DiffsCsv(report.diffs));
  Emit(a.out, "stability.csv", StabilityCsv(report.summaries));
}

// ---- fit / shap / validate -------------------------------------------------

struct FitArgs {
  std::string panel;
  std::string schema = "default";
  std::string out = "fit";
  std::string model = "Model 14";
  bool log_linkedin = false;
  bool exact = false;
};

CountryPanel LoadPanel(const std::string& path) {
  return ParsePanel(ReadFile(path), path);
}

int RunFit(const FitArgs& a) {
  const CountryPanel panel = LoadPanel(a.panel);
  const auto schema = LoadSchema(a.schema);
  const auto outcomes = RunSchema(panel, schema, OlsOptions{a.log_linkedin});
  Emit(a.out, "fits.csv", FitsCsv(outcomes));
  Emit(a.out, "fit_summary.csv", FitSummaryCsv(outcomes));
  std::optional<ErrorKind> worst;
  for (const auto& o : outcomes) {
    if (o.result) continue;
    std::cerr << "error: " << o.spec.name << ": " << o.error << "\n";
    if (!worst) worst = o.error_kind.value_or(ErrorKind::kNumerical);
  }
  return worst ? ExitCode(*worst) : 0;
}

void RunShap(const FitArgs& a) {
  const CountryPanel panel = LoadPanel(a.panel);
  const auto schema = LoadSchema(a.schema);
  auto it = std::find_if(schema.begin(), schema.end(),
                         [&](const ModelSpec& s) { return s.name == a.model; });
  if (it == schema.end()) throw InputError("model '" + a.model + "' is not in the schema");
  const FitResult fit = OlsFit(*it, panel, OlsOptions{a.log_linkedin});
  const ShapResult shap = ShapReport(fit, panel);
  Emit(a.out, "shap_values.csv", ShapValuesCsv(shap));
  Emit(a.out, "shap_summary.csv", ShapSummaryCsv(shap));
}

void RunValidate(const FitArgs& a) {
  const CountryPanel panel = LoadPanel(a.panel);
  std::map<CountryCode, double> totals;
  std::map<CountryCode, double> unhcr;
  for (const PanelRow& row : panel.rows) {
    totals[row.country] = row.scaled_estimate;
    unhcr[row.country] = static_cast<double>(row.unhcr_refugees);
  }
  const ValidationResult v = ValidationJoin(totals, unhcr, SpearmanOptions{a.exact});
  Emit(a.out, "validation_pairs.csv", ValidationPairsCsv(v));
  Emit(a.out, "validation.csv", ValidationSummaryCsv(v));
}

// ---- seniority -------------------------------------------------------------

struct SeniorityArgs {
  std::string input;
  std::string out = "seniority";
  bool include_empty = false;
};

void RunSeniority(const SeniorityArgs& a) {
  const auto shares = ComputeSeniorityShares(ReadSeniorityFile(a.input));
  Emit(a.out, "seniority_shares.csv", SenioritySharesCsv(shares));
  Emit(a.out, "seniority_medians.csv",
       SeniorityMediansCsv(ComputeSeniorityMedians(shares, a.include_empty)));
}

// ---- simulate --------------------------------------------------------------

struct SimulateArgs {
  SyntheticParams params;
  std::string beta;
  std::string out = "sample";
  bool no_censoring = false;
};

void RunSimulate(SimulateArgs a) {
  if (!a.beta.empty()) {
    a.params.beta.clear();
    std::stringstream ss(a.beta);
    std::string item;
    while (std::getline(ss, item, ',')) {
      auto v = ParseReal(item);
      if (!v) throw InputError("invalid --beta entry '" + item + "'");
      a.params.beta.push_back(*v);
    }
  }
  a.params.censoring = !a.no_censoring;
  const SyntheticPanel panel = GenerateSyntheticPanel(a.params);
  WriteSyntheticPanel(panel, a.out);
  Report(a.out);
}

// ---- run -------------------------------------------------------------------

struct RunArgs {
  std::string config;
  std::string out;
  std::optional<bool> include_zero;
  bool log_linkedin = false;
  bool fixed_clock = false;
};

void RunRun(const RunArgs& a) {
  const PipelineConfig config = LoadConfig(a.config);
  RunOptions options;
  if (!a.out.empty()) options.output_dir = a.out;
  options.include_zero_estimates = a.include_zero;
  if (a.log_linkedin) options.log_linkedin = true;
  options.fixed_clock = a.fixed_clock;
  const RunSummary summary = RunPipeline(config, options);
  std::cout << "wrote " << summary.files.size() << " files to "
            << summary.output_dir.string() << "\n";
}

int Main(int argc, char** argv) {
  CLI::App app{"Scaled migration estimates from ad-platform audience snapshots"};
  app.set_version_flag("--version", std::string(ToolVersion()));
  app.require_subcommand(1);

  IngestArgs ingest;
  auto* ingest_cmd = app.add_subcommand("ingest", "Validate and normalize input files");
  ingest_cmd->add_option("--snapshot", ingest.snapshots, "Snapshot CSV")->check(CLI::ExistingFile);
  ingest_cmd->add_option("--indicators", ingest.indicators, "Indicator CSV")->check(CLI::ExistingFile);
  ingest_cmd->add_option("--seniority", ingest.seniority, "Seniority CSV")->check(CLI::ExistingFile);
  ingest_cmd->add_option("--out", ingest.out, "Output directory");

  ScaleArgs scale;
  auto* scale_cmd = app.add_subcommand("scale", "Penetration-scale snapshot counts");
  scale_cmd->add_option("--snapshot", scale.snapshots, "Snapshot CSV")->required()->check(CLI::ExistingFile);
  scale_cmd->add_option("--indicators", scale.indicators, "Indicator CSV")->required()->check(CLI::ExistingFile);
  scale_cmd->add_option("--out", scale.out, "Output directory");
  scale_cmd->add_option("--panel-date", scale.panel_date, "Snapshot used for panel.csv");
  scale_cmd->add_option("--include-zero-estimates", scale.include_zero,
                        "Keep countries whose scaled estimate is zero");

  DiffArgs diff;
  auto* diff_cmd = app.add_subcommand("diff", "Temporal differences between snapshots");
  diff_cmd->add_option("inputs", diff.inputs, "scaled_estimates.csv files (DATE=PATH)")->required();
  diff_cmd->add_option("--window", diff.windows, "YYYY-MM-DD:YYYY-MM-DD");
  diff_cmd->add_option("--out", diff.out, "Output directory");

  FitArgs fit;
  auto* fit_cmd = app.add_subcommand("fit", "Fit the regression schema");
  auto* shap_cmd = app.add_subcommand("shap", "Shapley attributions for one model");
  auto* validate_cmd = app.add_subcommand("validate", "Spearman check against UNHCR");
  for (auto* cmd : {fit_cmd, shap_cmd, validate_cmd}) {
    cmd->add_option("--panel", fit.panel, "panel.csv")->required()->check(CLI::ExistingFile);
    cmd->add_option("--out", fit.out, "Output directory");
  }
  for (auto* cmd : {fit_cmd, shap_cmd}) {
    cmd->add_option("--schema", fit.schema, "\"default\" or a schema JSON file");
    cmd->add_flag("--log-linkedin", fit.log_linkedin, "log1p the LinkedIn column");
  }
  shap_cmd->add_option("--model", fit.model, "Model name");
  validate_cmd->add_flag("--exact", fit.exact, "Exact permutation p-value (n <= 10)");

  SeniorityArgs seniority;
  auto* seniority_cmd = app.add_subcommand("seniority", "Seniority shares and medians");
  seniority_cmd->add_option("--input", seniority.input, "Seniority CSV")->required()->check(CLI::ExistingFile);
  seniority_cmd->add_option("--out", seniority.out, "Output directory");
  seniority_cmd->add_flag("--include-empty", seniority.include_empty,
                          "Count all-censored slices in medians");

  SimulateArgs simulate;
  auto* simulate_cmd = app.add_subcommand("simulate", "Write a synthetic sample");
  simulate_cmd->add_option("--out", simulate.out, "Output directory");
  simulate_cmd->add_option("--seed", simulate.params.seed, "RNG seed");
  simulate_cmd->add_option("--countries", simulate.params.n_countries, "Number of countries");
  simulate_cmd->add_option("--beta", simulate.beta, "Comma-separated coefficients");
  simulate_cmd->add_option("--noise", simulate.params.noise, "Noise SD (standardized scale)");
  simulate_cmd->add_flag("--no-censoring", simulate.no_censoring, "Disable the 300 floor");

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "Run the full pipeline");
  run_cmd->add_option("--config", run.config, "Config JSON")->required();
  run_cmd->add_option("--out", run.out, "Output directory (overrides config)");
  run_cmd->add_option("--include-zero-estimates", run.include_zero,
                      "Keep countries whose scaled estimate is zero");
  run_cmd->add_flag("--log-linkedin", run.log_linkedin, "log1p the LinkedIn column");
  run_cmd->add_flag("--fixed-clock", run.fixed_clock, "Fixed manifest timestamp");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*ingest_cmd) RunIngest(ingest);
    if (*scale_cmd) RunScale(scale);
    if (*diff_cmd) RunDiff(diff);
    if (*fit_cmd) return RunFit(fit);
    if (*shap_cmd) RunShap(fit);
    if (*validate_cmd) RunValidate(fit);
    if (*seniority_cmd) RunSeniority(seniority);
    if (*simulate_cmd) RunSimulate(simulate);
    if (*run_cmd) RunRun(run);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ExitCode(e.kind());
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  }
  return 0;
}

}  // namespace
}  // namespace mignow

int main(int argc, char** argv) { return mignow::Main(argc, argv); }
