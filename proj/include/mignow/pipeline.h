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

#ifndef MIGNOW_PIPELINE_H_
#define MIGNOW_PIPELINE_H_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mignow/datamodel.h"
#include "mignow/stats.h"
#include "mignow/temporal.h"

namespace mignow {

// Version string recorded in run manifests.
std::string_view ToolVersion();

// Pipeline configuration, read from a single JSON file. Relative paths are
// resolved against the directory holding the config.
//
//   {
//     "snapshots": ["snapshot_2023-02-27.csv", ...],
//     "indicators": "indicators.csv",
//     "seniority": "seniority.csv",            (optional)
//     "output_dir": "report",
//     "schema": "default" | [{"name": "...", "predictors": ["linkedin", ...]}],
//     "panel_snapshot": "2023-02-27",           (optional, default earliest)
//     "windows": ["2023-02-27:2023-05-12"],    (optional)
//     "include_zero_estimates": true,
//     "log_linkedin": false,
//     "shap_model": "Model 14",
//     "spearman_exact": false
//   }
struct PipelineConfig {
  std::filesystem::path base_dir;
  std::vector<std::string> snapshots;
  std::string indicators;
  std::optional<std::string> seniority;
  std::string output_dir = "report";
  bool default_schema = true;
  std::vector<ModelSpec> schema;
  std::optional<Date> panel_snapshot;
  std::vector<Window> windows;
  bool include_zero_estimates = true;
  bool log_linkedin = false;
  std::string shap_model = "Model 14";
  bool spearman_exact = false;

  std::filesystem::path Resolve(const std::string& path) const;
};

// Throws InputError for unknown keys, wrong types or missing required keys.
PipelineConfig ParseConfig(std::string_view json_text,
                           const std::filesystem::path& base_dir);
PipelineConfig LoadConfig(const std::filesystem::path& path);

// Model list from JSON: [{"name": ..., "predictors": [...]}, ...].
std::vector<ModelSpec> ParseSchemaJson(std::string_view json_text);

// Parses "YYYY-MM-DD:YYYY-MM-DD".
Window ParseWindow(std::string_view text);

struct RunOptions {
  std::optional<std::filesystem::path> output_dir;  // Overrides the config.
  std::optional<bool> include_zero_estimates;
  std::optional<bool> log_linkedin;
  bool fixed_clock = false;
};

struct RunSummary {
  std::filesystem::path output_dir;
  std::vector<std::string> files;
  std::vector<std::string> notices;
};

// Runs ingest -> scale -> temporal -> panel -> fit -> shap -> validate ->
// seniority, then writes every CSV plus run_manifest.json. Outputs are
// staged and only moved into the output directory on success; on failure
// the partial bundle goes to "<output_dir>.quarantine" and the error is
// rethrown with its stage name.
RunSummary RunPipeline(const PipelineConfig& config, const RunOptions& options);

}  // namespace mignow

#endif  // MIGNOW_PIPELINE_H_
