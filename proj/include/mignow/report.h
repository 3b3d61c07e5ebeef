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

#ifndef MIGNOW_REPORT_H_
#define MIGNOW_REPORT_H_

// CSV renderings of every pipeline product, plus readers for the files
// that feed later subcommands (scaled estimates, panels).

#include <string>
#include <string_view>
#include <vector>

#include "mignow/analysis.h"
#include "mignow/attribution.h"
#include "mignow/datamodel.h"
#include "mignow/scale.h"
#include "mignow/stats.h"
#include "mignow/temporal.h"

namespace mignow {

// country,gender,age,value,censored  ("any" for collapsed dimensions)
std::string ScaledEstimatesCsv(const std::vector<ScaledEstimate>& estimates);
std::vector<ScaledEstimate> ParseScaledEstimates(std::string_view text,
                                                 const std::string& source);

// country,penetration
std::string PenetrationCsv(const PenetrationTable& table);

// country,gender,date_i,date_j,abs_diff,pct_diff
std::string DiffsCsv(const std::vector<DiffRecord>& diffs);
std::string StabilityCsv(const std::vector<StabilitySummary>& summaries);

// country,scaled_estimate,sci,distance_km,gpi,gdp_usd,unhcr_refugees
std::string PanelCsv(const CountryPanel& panel);
CountryPanel ParsePanel(std::string_view text, const std::string& source);
std::string DropLogCsv(const std::vector<DropLogEntry>& drops);

// model,predictor,coef,se,t,p,stars
std::string FitsCsv(const std::vector<FitOutcome>& outcomes);
// model,n,r2,r2_adj,f,f_p,f_stars,status
std::string FitSummaryCsv(const std::vector<FitOutcome>& outcomes);
// model,predictors  (predictor names joined by ';')
std::string SchemaCsv(const std::vector<ModelSpec>& specs);

// country,feature,phi,feature_value
std::string ShapValuesCsv(const ShapResult& shap);
// feature,mean_abs,rank
std::string ShapSummaryCsv(const ShapResult& shap);

// country,scaled_estimate,unhcr_refugees
std::string ValidationPairsCsv(const ValidationResult& result);
// rho,p
std::string ValidationSummaryCsv(const ValidationResult& result);

// date,country,gender,<ten role columns>,total,empty
std::string SenioritySharesCsv(const std::vector<SeniorityShares>& shares);
// gender,role,median,countries
std::string SeniorityMediansCsv(const std::vector<SeniorityMedian>& medians);

}  // namespace mignow

#endif  // MIGNOW_REPORT_H_
