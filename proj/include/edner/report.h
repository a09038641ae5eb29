// Copyright 2026 The edner Authors.
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

// Rendering of evaluation reports. Every figure is a percentage with two
// decimals, rounded half-up from the exact ratio.

#ifndef EDNER_REPORT_H_
#define EDNER_REPORT_H_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "edner/scorer.h"

namespace edner {

enum class ReportFormat { kJson, kTable, kCsv };

std::optional<ReportFormat> parse_report_format(std::string_view text);

// "33.33", "100.00".
std::string format_percent(const Ratio& r);

// Canonical machine format with keys in a fixed order:
//
//   {"config": {...},
//    "exact": {"per_class": {"PER": {"precision": 33.33, "recall": 50.0,
//                                    "f1": 40.0, "tp": 1, "fp": 2, "fn": 1},
//                            "LOC": {...}, "WORK": {...}},
//              "micro": {... same keys ...},
//              "macro": {"precision": ..., "recall": ..., "f1": ...}},
//    "fuzzy": {...}}
//
// `provenance`, when non-empty, must hold a JSON object; it is emitted under
// "config".
std::string render_json(std::span<const EvaluationReport> reports,
                        std::string_view provenance = {});

// Inverse of render_json; metrics are rebuilt from the stored counts.
std::vector<EvaluationReport> parse_report_json(std::string_view json);

// Rows Precision/Recall/F1, columns PER LOC WORK Avg. Micro, one column
// block per report.
std::string render_table(std::span<const EvaluationReport> reports);

// mode,scope,precision,recall,f1,tp,fp,fn with scope in
// PER, LOC, WORK, micro, macro.
std::string render_csv(std::span<const EvaluationReport> reports);

std::string render_report(std::span<const EvaluationReport> reports, ReportFormat format,
                          std::string_view provenance = {});

}  // namespace edner

#endif  // EDNER_REPORT_H_
