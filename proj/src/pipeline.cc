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

#include "mignow/pipeline.h"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <functional>
#include <iostream>
#include <set>
#include <tuple>

#include "json.hpp"
#include "mignow/analysis.h"
#include "mignow/attribution.h"
#include "mignow/csv.h"
#include "mignow/digest.h"
#include "mignow/error.h"
#include "mignow/ingest.h"
#include "mignow/report.h"
#include "mignow/scale.h"

#ifndef MIGNOW_VERSION
#define MIGNOW_VERSION "dev"
#endif

namespace mignow {
namespace {

using nlohmann::json;

constexpr std::string_view kFixedClock = "1970-01-01T00:00:00Z";

json ParseJson(std::string_view text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw InputError(what + ": invalid JSON: " + e.what());
  }
}

std::string RequireString(const json& j, const std::string& key) {
  if (!j.is_string()) throw InputError("config key '" + key + "' must be a string");
  return j.get<std::string>();
}

bool RequireBool(const json& j, const std::string& key) {
  if (!j.is_boolean()) throw InputError("config key '" + key + "' must be a boolean");
  return j.get<bool>();
}

ModelSpec ParseModelSpec(const json& j) {
  if (!j.is_object() || !j.contains("name") || !j.contains("predictors")) {
    throw InputError("schema entries need 'name' and 'predictors'");
  }
  ModelSpec spec;
  spec.name = RequireString(j["name"], "name");
  if (!j["predictors"].is_array()) {
    throw InputError("schema predictors must be an array");
  }
  for (const json& p : j["predictors"]) {
    const std::string text = RequireString(p, "predictors");
    auto pred = ParsePredictor(text);
    if (!pred) throw InputError("unknown predictor '" + text + "'");
    spec.predictors.push_back(*pred);
  }
  ValidateModelSpec(spec);
  return spec;
}

std::vector<ModelSpec> SchemaFromJson(const json& j) {
  if (!j.is_array()) throw InputError("schema must be \"default\" or an array");
  std::vector<ModelSpec> specs;
  std::set<std::string> names;
  for (const json& entry : j) {
    specs.push_back(ParseModelSpec(entry));
    if (!names.insert(specs.back().name).second) {
      throw InputError("duplicate model name '" + specs.back().name + "'");
    }
  }
  return specs;
}

std::string UtcNow() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Files produced so far, keyed by name; written out only at the end.
using Bundle = std::map<std::string, std::string>;

class StageRunner {
 public:
  template <typename F>
  auto Run(const std::string& stage, const std::string& input, F&& body) {
    try {
      return body();
    } catch (const Error& e) {
      throw Error(e.kind(), Prefix(stage, input) + e.what());
    } catch (const std::filesystem::filesystem_error& e) {
      throw InputError(Prefix(stage, input) + e.what());
    } catch (const std::exception& e) {
      throw InvariantError(Prefix(stage, input) + e.what());
    }
  }

 private:
  static std::string Prefix(const std::string& stage, const std::string& input) {
    std::string out = "stage " + stage;
    if (!input.empty()) out += " [" + input + "]";
    return out + ": ";
  }
};

std::vector<ScaledEstimate> AllBreakdowns(const Snapshot& snapshot,
                                          const PenetrationTable& pen) {
  std::vector<ScaledEstimate> all;
  for (Breakdown b : {Breakdown::kNone, Breakdown::kGender, Breakdown::kGenderAge}) {
    auto part = CountryTotals(snapshot, pen, b);
    all.insert(all.end(), part.begin(), part.end());
  }
  auto key = [](const ScaledEstimate& e) {
    return std::make_tuple(e.country, e.gender ? static_cast<int>(*e.gender) : -1,
                           e.age ? static_cast<int>(*e.age) : -1);
  };
  std::stable_sort(all.begin(), all.end(),
                   [&](const ScaledEstimate& a, const ScaledEstimate& b) {
                     return key(a) < key(b);
                   });
  return all;
}

void WriteBundle(const Bundle& bundle, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  for (const auto& [name, contents] : bundle) WriteFile(dir / name, contents);
}

json ConfigJson(const PipelineConfig& c, bool include_zero, bool log_linkedin) {
  json j;
  j["snapshots"] = c.snapshots;
  j["indicators"] = c.indicators;
  j["seniority"] = c.seniority ? json(*c.seniority) : json(nullptr);
  if (c.default_schema) {
    j["schema"] = "default";
  } else {
    json schema = json::array();
    for (const ModelSpec& spec : c.schema) {
      json preds = json::array();
      for (Predictor p : spec.predictors) preds.push_back(PredictorName(p));
      schema.push_back({{"name", spec.name}, {"predictors", preds}});
    }
    j["schema"] = schema;
  }
  j["panel_snapshot"] =
      c.panel_snapshot ? json(FormatDate(*c.panel_snapshot)) : json(nullptr);
  json windows = json::array();
  for (const Window& w : c.windows) {
    windows.push_back(FormatDate(w.older) + ":" + FormatDate(w.newer));
  }
  j["windows"] = windows;
  j["include_zero_estimates"] = include_zero;
  j["log_linkedin"] = log_linkedin;
  j["shap_model"] = c.shap_model;
  j["spearman_exact"] = c.spearman_exact;
  return j;
}

}  // namespace

std::string_view ToolVersion() { return MIGNOW_VERSION; }

std::filesystem::path PipelineConfig::Resolve(const std::string& path) const {
  std::filesystem::path p(path);
  return p.is_absolute() ? p : base_dir / p;
}

Window ParseWindow(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw InputError("window must look like YYYY-MM-DD:YYYY-MM-DD, got '" +
                     std::string(text) + "'");
  }
  auto older = ParseDate(text.substr(0, colon));
  auto newer = ParseDate(text.substr(colon + 1));
  if (!older || !newer) {
    throw InputError("invalid window dates in '" + std::string(text) + "'");
  }
  if (*newer < *older) {
    throw InputError("window '" + std::string(text) + "' is not chronological");
  }
  return Window{*older, *newer};
}

std::vector<ModelSpec> ParseSchemaJson(std::string_view json_text) {
  return SchemaFromJson(ParseJson(json_text, "schema"));
}

PipelineConfig ParseConfig(std::string_view json_text,
                           const std::filesystem::path& base_dir) {
  const json j = ParseJson(json_text, "config");
  if (!j.is_object()) throw InputError("config must be a JSON object");
  static const std::set<std::string> kKnown = {
      "snapshots",      "indicators",   "seniority",
      "output_dir",     "schema",       "panel_snapshot",
      "windows",        "include_zero_estimates", "log_linkedin",
      "shap_model",     "spearman_exact"};
  for (const auto& [key, value] : j.items()) {
    if (!kKnown.contains(key)) throw InputError("unknown config key '" + key + "'");
  }
  if (!j.contains("snapshots") || !j.contains("indicators")) {
    throw InputError("config needs 'snapshots' and 'indicators'");
  }

  PipelineConfig c;
  c.base_dir = base_dir;
  if (!j["snapshots"].is_array() || j["snapshots"].empty()) {
    throw InputError("config key 'snapshots' must be a non-empty array");
  }
  for (const json& s : j["snapshots"]) c.snapshots.push_back(RequireString(s, "snapshots"));
  c.indicators = RequireString(j["indicators"], "indicators");
  if (j.contains("seniority") && !j["seniority"].is_null()) {
    c.seniority = RequireString(j["seniority"], "seniority");
  }
  if (j.contains("output_dir")) c.output_dir = RequireString(j["output_dir"], "output_dir");
  if (j.contains("schema")) {
    const json& schema = j["schema"];
    if (schema.is_string()) {
      if (schema.get<std::string>() != "default") {
        throw InputError("schema must be \"default\" or an array");
      }
    } else {
      c.default_schema = false;
      c.schema = SchemaFromJson(schema);
    }
  }
  if (c.default_schema) c.schema = DefaultSchema();
  if (j.contains("panel_snapshot") && !j["panel_snapshot"].is_null()) {
    const std::string text = RequireString(j["panel_snapshot"], "panel_snapshot");
    c.panel_snapshot = ParseDate(text);
    if (!c.panel_snapshot) throw InputError("invalid panel_snapshot '" + text + "'");
  }
  if (j.contains("windows")) {
    if (!j["windows"].is_array()) throw InputError("windows must be an array");
    for (const json& w : j["windows"]) {
      c.windows.push_back(ParseWindow(RequireString(w, "windows")));
    }
  }
  if (j.contains("include_zero_estimates")) {
    c.include_zero_estimates =
        RequireBool(j["include_zero_estimates"], "include_zero_estimates");
  }
  if (j.contains("log_linkedin")) {
    c.log_linkedin = RequireBool(j["log_linkedin"], "log_linkedin");
  }
  if (j.contains("shap_model")) c.shap_model = RequireString(j["shap_model"], "shap_model");
  if (j.contains("spearman_exact")) {
    c.spearman_exact = RequireBool(j["spearman_exact"], "spearman_exact");
  }
  return c;
}

PipelineConfig LoadConfig(const std::filesystem::path& path) {
  const std::string text = ReadFile(path);
  auto base = path.parent_path();
  if (base.empty()) base = ".";
  return ParseConfig(text, base);
}

RunSummary RunPipeline(const PipelineConfig& config, const RunOptions& options) {
  if (!options.output_dir && config.output_dir.empty()) {
    throw InputError("no output directory: set output_dir or pass --out");
  }
  const std::filesystem::path output_dir =
      options.output_dir ? *options.output_dir : config.Resolve(config.output_dir);
  const bool include_zero =
      options.include_zero_estimates.value_or(config.include_zero_estimates);
  const bool log_linkedin = options.log_linkedin.value_or(config.log_linkedin);

  std::filesystem::path trimmed = output_dir;
  if (!trimmed.has_filename()) trimmed = trimmed.parent_path();
  const std::filesystem::path staging = trimmed.string() + ".partial";
  const std::filesystem::path quarantine = trimmed.string() + ".quarantine";

  Bundle bundle;
  std::vector<std::string> notices;
  json inputs = json::array();
  StageRunner stages;
  auto notice = [&](const std::string& text) {
    notices.push_back(text);
    std::cerr << "notice: " << text << "\n";
  };

  try {
    // ingest
    std::vector<Snapshot> snapshots;
    for (const std::string& name : config.snapshots) {
      snapshots.push_back(stages.Run("ingest", name, [&] {
        const auto path = config.Resolve(name);
        const std::string text = ReadFile(path);
        inputs.push_back({{"path", name},
                          {"sha256", Sha256Hex(text)},
                          {"bytes", text.size()}});
        return ParseSnapshot(text, name, DateFromPath(path.filename()));
      }));
    }
    std::sort(snapshots.begin(), snapshots.end(),
              [](const Snapshot& a, const Snapshot& b) { return a.date < b.date; });
    for (std::size_t i = 1; i < snapshots.size(); ++i) {
      if (snapshots[i].date == snapshots[i - 1].date) {
        throw InputError("stage ingest: two snapshots share date " +
                         FormatDate(snapshots[i].date));
      }
    }
    const auto indicators = stages.Run("ingest", config.indicators, [&] {
      const std::string text = ReadFile(config.Resolve(config.indicators));
      inputs.push_back({{"path", config.indicators},
                        {"sha256", Sha256Hex(text)},
                        {"bytes", text.size()}});
      return ParseIndicators(text, config.indicators);
    });
    std::vector<SenioritySlice> seniority;
    if (config.seniority) {
      seniority = stages.Run("ingest", *config.seniority, [&] {
        const std::string text = ReadFile(config.Resolve(*config.seniority));
        inputs.push_back({{"path", *config.seniority},
                          {"sha256", Sha256Hex(text)},
                          {"bytes", text.size()}});
        return ParseSeniority(text, *config.seniority);
      });
    }

    // scale
    std::vector<std::pair<Date, std::vector<ScaledEstimate>>> series;
    std::map<Date, PenetrationTable> penetration;
    stages.Run("scale", "", [&] {
      for (const Snapshot& snap : snapshots) {
        const std::string date = FormatDate(snap.date);
        PenetrationTable pen = Penetration(snap, indicators);
        for (const std::string& line : pen.log) {
          notice("penetration " + date + ": " + line);
        }
        auto estimates = AllBreakdowns(snap, pen);
        bundle["scaled_estimates_" + date + ".csv"] = ScaledEstimatesCsv(estimates);
        bundle["penetration_" + date + ".csv"] = PenetrationCsv(pen);
        series.emplace_back(snap.date, std::move(estimates));
        penetration.emplace(snap.date, std::move(pen));
      }
      return 0;
    });

    // temporal
    if (snapshots.size() >= 2) {
      stages.Run("temporal", "", [&] {
        std::vector<Date> dates;
        for (const Snapshot& s : snapshots) dates.push_back(s.date);
        const std::vector<Window> windows =
            config.windows.empty() ? DefaultWindows(dates) : config.windows;
        TemporalReport report = AnalyzeWindows(series, windows);
        for (const std::string& line : report.log) notice("temporal: " + line);
        bundle["diffs.csv"] = DiffsCsv(report.diffs);
        bundle["stability.csv"] = StabilityCsv(report.summaries);
        return 0;
      });
    } else {
      notice("temporal stage skipped: needs at least two snapshots");
    }

    // panel
    const Date panel_date =
        config.panel_snapshot.value_or(snapshots.front().date);
    const auto panel_snapshot =
        std::find_if(snapshots.begin(), snapshots.end(),
                     [&](const Snapshot& s) { return s.date == panel_date; });
    if (panel_snapshot == snapshots.end()) {
      throw InputError("stage panel: no snapshot dated " + FormatDate(panel_date));
    }
    const std::map<CountryCode, double> totals =
        TotalsByCountry(*panel_snapshot, penetration.at(panel_date));
    const PanelAssembly assembly = stages.Run("panel", "", [&] {
      PanelAssembly a = AssemblePanel(totals, indicators, include_zero);
      a.panel.provenance.snapshot_date = panel_date;
      return a;
    });
    for (const DropLogEntry& d : assembly.drop_log) {
      std::string fields;
      for (const auto& f : d.missing_fields) fields += (fields.empty() ? "" : ",") + f;
      notice("panel: dropped " + d.country.str() + " (missing " + fields + ")");
    }
    bundle["panel.csv"] = PanelCsv(assembly.panel);
    bundle["drop_log.csv"] = DropLogCsv(assembly.drop_log);

    // fit
    const std::vector<FitOutcome> outcomes = stages.Run("fit", "", [&] {
      return RunSchema(assembly.panel, config.schema, OlsOptions{log_linkedin});
    });
    for (const FitOutcome& o : outcomes) {
      if (!o.result) notice("fit: " + o.spec.name + " failed: " + o.error);
    }
    bundle["schema.csv"] = SchemaCsv(config.schema);
    bundle["fits.csv"] = FitsCsv(outcomes);
    bundle["fit_summary.csv"] = FitSummaryCsv(outcomes);

    // shap
    stages.Run("shap", "", [&] {
      auto it = std::find_if(outcomes.begin(), outcomes.end(), [&](const FitOutcome& o) {
        return o.spec.name == config.shap_model;
      });
      if (it == outcomes.end()) {
        throw InputError("model '" + config.shap_model + "' is not in the schema");
      }
      if (!it->result) {
        throw Error(it->error_kind.value_or(ErrorKind::kNumerical),
                    "model '" + config.shap_model + "' failed: " + it->error);
      }
      const ShapResult shap = ShapReport(*it->result, assembly.panel);
      bundle["shap_values.csv"] = ShapValuesCsv(shap);
      bundle["shap_summary.csv"] = ShapSummaryCsv(shap);
      return 0;
    });

    // validate
    stages.Run("validate", "", [&] {
      std::map<CountryCode, double> unhcr;
      for (const CountryIndicators& ind : indicators) {
        if (ind.unhcr_refugees) {
          unhcr[ind.country] = static_cast<double>(*ind.unhcr_refugees);
        }
      }
      const ValidationResult v =
          ValidationJoin(totals, unhcr, SpearmanOptions{config.spearman_exact});
      bundle["validation_pairs.csv"] = ValidationPairsCsv(v);
      bundle["validation.csv"] = ValidationSummaryCsv(v);
      return 0;
    });

    // seniority
    if (config.seniority) {
      stages.Run("seniority", *config.seniority, [&] {
        const auto shares = ComputeSeniorityShares(seniority);
        bundle["seniority_shares.csv"] = SenioritySharesCsv(shares);
        bundle["seniority_medians.csv"] =
            SeniorityMediansCsv(ComputeSeniorityMedians(shares));
        return 0;
      });
    } else {
      notice("seniority stage skipped: no seniority file configured");
    }

    // manifest
    json outputs = json::array();
    for (const auto& [name, contents] : bundle) {
      outputs.push_back({{"file", name},
                         {"sha256", Sha256Hex(contents)},
                         {"bytes", contents.size()}});
    }
    json manifest;
    manifest["tool"] = "mignow";
    manifest["version"] = ToolVersion();
    manifest["created_at"] = options.fixed_clock ? std::string(kFixedClock) : UtcNow();
    manifest["config"] = ConfigJson(config, include_zero, log_linkedin);
    manifest["inputs"] = inputs;
    manifest["outputs"] = outputs;
    manifest["notices"] = notices;
    bundle["run_manifest.json"] = manifest.dump(2) + "\n";

    std::filesystem::remove_all(staging);
    WriteBundle(bundle, staging);
    std::filesystem::remove_all(output_dir);
    if (output_dir.has_parent_path()) {
      std::filesystem::create_directories(output_dir.parent_path());
    }
    std::filesystem::rename(staging, trimmed);
  } catch (const Error& e) {
    std::error_code ec;
    std::filesystem::remove_all(staging, ec);
    std::filesystem::remove_all(quarantine, ec);
    bundle["error.txt"] = std::string(e.what()) + "\n";
    try {
      WriteBundle(bundle, quarantine);
    } catch (const std::exception&) {
    }
    std::filesystem::create_directories(output_dir, ec);
    throw;
  }

  RunSummary summary;
  summary.output_dir = output_dir;
  for (const auto& [name, contents] : bundle) summary.files.push_back(name);
  summary.notices = std::move(notices);
  return summary;
}

}  // namespace mignow
