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

#include "mignow/report.h"

#include <cctype>
#include <cmath>
#include <map>
#include <tuple>

#include "mignow/csv.h"
#include "mignow/error.h"

namespace mignow {
namespace {

std::string GenderOrAny(const std::optional<Gender>& g) {
  return g ? std::string(GenderLabel(*g)) : "any";
}

std::string Bool(bool b) { return b ? "true" : "false"; }

std::string Lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

double RequireReal(const CsvTable& table, const CsvTable::Record& rec,
                   std::string_view column) {
  const std::string& text = table.Field(rec, column);
  auto v = ParseReal(text);
  if (!v || !std::isfinite(*v)) {
    throw InputError(table.Where(rec) + ": invalid " + std::string(column) +
                     " '" + text + "'");
  }
  return *v;
}

}  // namespace

std::string ScaledEstimatesCsv(const std::vector<ScaledEstimate>& estimates) {
  CsvWriter out({"country", "gender", "age", "value", "censored"});
  for (const ScaledEstimate& e : estimates) {
    out.Row({e.country.str(), GenderOrAny(e.gender),
             e.age ? std::string(AgeLabel(*e.age)) : "any",
             FormatDouble(e.value), Bool(e.censored)});
  }
  return out.text();
}

std::vector<ScaledEstimate> ParseScaledEstimates(std::string_view text,
                                                 const std::string& source) {
  const CsvTable table = CsvTable::Parse(text, source);
  table.RequireColumns({"country", "gender", "age", "value", "censored"});
  std::vector<ScaledEstimate> out;
  for (const auto& rec : table.records()) {
    ScaledEstimate e;
    e.country = CountryCode(table.Field(rec, "country"));
    if (const auto& g = table.Field(rec, "gender"); Lower(g) != "any") {
      e.gender = ParseGender(g);
      if (!e.gender) throw InputError(table.Where(rec) + ": invalid gender");
    }
    if (const auto& a = table.Field(rec, "age"); Lower(a) != "any") {
      e.age = ParseAge(a);
      if (!e.age) throw InputError(table.Where(rec) + ": invalid age");
    }
    e.value = RequireReal(table, rec, "value");
    if (e.value < 0.0) {
      throw InputError(table.Where(rec) + ": negative scaled estimate");
    }
    const std::string censored = Lower(table.Field(rec, "censored"));
    if (censored != "true" && censored != "false") {
      throw InputError(table.Where(rec) + ": censored must be true or false");
    }
    e.censored = censored == "true";
    out.push_back(e);
  }
  return out;
}

std::string PenetrationCsv(const PenetrationTable& table) {
  CsvWriter out({"country", "penetration"});
  for (const auto& [country, value] : table.values) {
    out.Row({country.str(), FormatDouble(value)});
  }
  return out.text();
}

std::string DiffsCsv(const std::vector<DiffRecord>& diffs) {
  CsvWriter out({"country", "gender", "date_i", "date_j", "abs_diff", "pct_diff"});
  for (const DiffRecord& d : diffs) {
    out.Row({d.country.str(), GenderOrAny(d.gender), FormatDate(d.window.older),
             FormatDate(d.window.newer), FormatDouble(d.abs_diff),
             d.pct_diff ? FormatDouble(*d.pct_diff) : std::string()});
  }
  return out.text();
}

std::string StabilityCsv(const std::vector<StabilitySummary>& summaries) {
  CsvWriter out({"date_i", "date_j", "gender", "n", "q1", "median", "q3", "iqr",
                 "lower_fence", "upper_fence", "whisker_low", "whisker_high",
                 "outliers"});
  for (const StabilitySummary& s : summaries) {
    std::string outliers;
    for (const auto& [country, value] : s.outliers) {
      if (!outliers.empty()) outliers += ';';
      outliers += country.str() + ":" + FormatDouble(value);
    }
    out.Row({FormatDate(s.window.older), FormatDate(s.window.newer),
             GenderOrAny(s.gender), std::to_string(s.n),
             FormatDouble(s.quartiles.q1), FormatDouble(s.quartiles.median),
             FormatDouble(s.quartiles.q3), FormatDouble(s.iqr),
             FormatDouble(s.lower_fence), FormatDouble(s.upper_fence),
             FormatDouble(s.whisker_low), FormatDouble(s.whisker_high),
             outliers});
  }
  return out.text();
}

std::string PanelCsv(const CountryPanel& panel) {
  CsvWriter out({"country", "scaled_estimate", "sci", "distance_km", "gpi",
                 "gdp_usd", "unhcr_refugees"});
  for (const PanelRow& r : panel.rows) {
    out.Row({r.country.str(), FormatDouble(r.scaled_estimate),
             FormatDouble(r.sci), FormatDouble(r.distance_km),
             FormatDouble(r.gpi), FormatDouble(r.gdp_usd),
             std::to_string(r.unhcr_refugees)});
  }
  return out.text();
}

CountryPanel ParsePanel(std::string_view text, const std::string& source) {
  const CsvTable table = CsvTable::Parse(text, source);
  table.RequireColumns({"country", "scaled_estimate", "sci", "distance_km",
                        "gpi", "gdp_usd", "unhcr_refugees"});
  std::map<CountryCode, PanelRow> rows;
  for (const auto& rec : table.records()) {
    PanelRow row;
    row.country = CountryCode(table.Field(rec, "country"));
    row.scaled_estimate = RequireReal(table, rec, "scaled_estimate");
    row.sci = RequireReal(table, rec, "sci");
    row.distance_km = RequireReal(table, rec, "distance_km");
    row.gpi = RequireReal(table, rec, "gpi");
    row.gdp_usd = RequireReal(table, rec, "gdp_usd");
    auto refugees = ParseInt(table.Field(rec, "unhcr_refugees"));
    if (!refugees || *refugees < 0) {
      throw InputError(table.Where(rec) + ": invalid unhcr_refugees");
    }
    row.unhcr_refugees = *refugees;
    if (!rows.emplace(row.country, row).second) {
      throw InputError(table.Where(rec) + ": duplicate country " +
                       row.country.str());
    }
  }
  CountryPanel panel;
  for (auto& [country, row] : rows) panel.rows.push_back(row);
  return panel;
}

std::string DropLogCsv(const std::vector<DropLogEntry>& drops) {
  CsvWriter out({"country", "missing_fields"});
  for (const DropLogEntry& d : drops) {
    std::string fields;
    for (const std::string& f : d.missing_fields) {
      if (!fields.empty()) fields += ';';
      fields += f;
    }
    out.Row({d.country.str(), fields});
  }
  return out.text();
}

std::string FitsCsv(const std::vector<FitOutcome>& outcomes) {
  CsvWriter out({"model", "predictor", "coef", "se", "t", "p", "stars"});
  for (const FitOutcome& o : outcomes) {
    if (!o.result) continue;
    const FitResult& f = *o.result;
    for (std::size_t j = 0; j < f.spec.predictors.size(); ++j) {
      out.Row({f.spec.name, std::string(PredictorName(f.spec.predictors[j])),
               FormatDouble(f.coefficients[j]), FormatDouble(f.std_errors[j]),
               FormatDouble(f.t_stats[j]), FormatDouble(f.p_values[j]),
               std::string(StarsLabel(f.stars[j]))});
    }
  }
  return out.text();
}

std::string FitSummaryCsv(const std::vector<FitOutcome>& outcomes) {
  CsvWriter out({"model", "n", "r2", "r2_adj", "f", "f_p", "f_stars", "status"});
  for (const FitOutcome& o : outcomes) {
    if (!o.result) {
      out.Row({o.spec.name, "", "", "", "", "", "", "error: " + o.error});
      continue;
    }
    const FitResult& f = *o.result;
    out.Row({f.spec.name, std::to_string(f.n), FormatDouble(f.r2),
             FormatDouble(f.r2_adjusted), FormatDouble(f.f_stat),
             FormatDouble(f.f_p_value), std::string(StarsLabel(f.f_stars)),
             "ok"});
  }
  return out.text();
}

std::string SchemaCsv(const std::vector<ModelSpec>& specs) {
  CsvWriter out({"model", "predictors"});
  for (const ModelSpec& spec : specs) {
    std::string names;
    for (Predictor p : spec.predictors) {
      if (!names.empty()) names += ';';
      names += PredictorName(p);
    }
    out.Row({spec.name, names});
  }
  return out.text();
}

std::string ShapValuesCsv(const ShapResult& shap) {
  CsvWriter out({"country", "feature", "phi", "feature_value"});
  for (const CountryAttribution& c : shap.countries) {
    for (std::size_t j = 0; j < shap.features.size(); ++j) {
      out.Row({c.country.str(), std::string(PredictorName(shap.features[j])),
               FormatDouble(c.phi[j]), FormatDouble(c.feature_values[j])});
    }
  }
  return out.text();
}

std::string ShapSummaryCsv(const ShapResult& shap) {
  CsvWriter out({"feature", "mean_abs", "rank"});
  for (const FeatureImportance& f : shap.importance) {
    out.Row({std::string(PredictorName(f.feature)), FormatDouble(f.mean_abs),
             std::to_string(f.rank)});
  }
  return out.text();
}

std::string ValidationPairsCsv(const ValidationResult& result) {
  CsvWriter out({"country", "scaled_estimate", "unhcr_refugees"});
  for (const ValidationPair& p : result.pairs) {
    out.Row({p.country.str(), FormatDouble(p.scaled_estimate),
             FormatDouble(p.unhcr_refugees)});
  }
  return out.text();
}

std::string ValidationSummaryCsv(const ValidationResult& result) {
  CsvWriter out({"rho", "p"});
  out.Row({FormatDouble(result.spearman.rho),
           FormatDouble(result.spearman.p_value)});
  return out.text();
}

std::string SenioritySharesCsv(const std::vector<SeniorityShares>& shares) {
  std::vector<std::string> header = {"date", "country", "gender"};
  for (SeniorityRole role : kAllSeniorityRoles) {
    header.emplace_back(RoleLabel(role));
  }
  header.emplace_back("total");
  header.emplace_back("empty");
  CsvWriter out(header);
  for (const SeniorityShares& s : shares) {
    std::vector<std::string> row = {FormatDate(s.date), s.country.str(),
                                    std::string(GenderLabel(s.gender))};
    for (double pct : s.percent) row.push_back(FormatDouble(pct));
    row.push_back(std::to_string(s.total));
    row.push_back(Bool(s.empty));
    out.Row(row);
  }
  return out.text();
}

std::string SeniorityMediansCsv(const std::vector<SeniorityMedian>& medians) {
  CsvWriter out({"gender", "role", "median", "countries"});
  for (const SeniorityMedian& m : medians) {
    out.Row({std::string(GenderLabel(m.gender)), std::string(RoleLabel(m.role)),
             FormatDouble(m.median), std::to_string(m.countries)});
  }
  return out.text();
}

}  // namespace mignow
