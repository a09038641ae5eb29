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

#include "edner/report.h"

#include <cstdio>
#include <sstream>

#include "edner/csv.h"
#include "edner/error.h"
#include "json.hpp"

namespace edner {
namespace {

using Json = nlohmann::ordered_json;

double percent_value(const Ratio& r) {
  return static_cast<double>(r.percent_hundredths()) / 100.0;
}

Json metrics_json(const Metrics& m) {
  Json j;
  j["precision"] = percent_value(m.precision);
  j["recall"] = percent_value(m.recall);
  j["f1"] = percent_value(m.f1);
  return j;
}

Json counted_json(const Metrics& m, const ClassCounts& c) {
  Json j = metrics_json(m);
  j["tp"] = c.tp;
  j["fp"] = c.fp;
  j["fn"] = c.fn;
  return j;
}

Json report_json(const EvaluationReport& r) {
  Json per_class = Json::object();
  for (EntityType t : kEntityTypes) {
    per_class[std::string(to_string(t))] = counted_json(r.metrics(t), r.totals.counts(t));
  }
  Json j;
  j["per_class"] = std::move(per_class);
  j["micro"] = counted_json(r.micro, r.totals.pooled());
  j["macro"] = metrics_json(r.macro);
  return j;
}

ClassCounts counts_from(const Json& j) {
  return {j.at("tp").get<std::size_t>(), j.at("fp").get<std::size_t>(),
          j.at("fn").get<std::size_t>()};
}

std::string pad_left(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

std::string pad_right(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

}  // namespace

std::optional<ReportFormat> parse_report_format(std::string_view text) {
  if (text == "json") return ReportFormat::kJson;
  if (text == "table" || text == "text" || text == "text-table") return ReportFormat::kTable;
  if (text == "csv") return ReportFormat::kCsv;
  return std::nullopt;
}

std::string format_percent(const Ratio& r) {
  const std::int64_t h = r.percent_hundredths();
  char buf[32];
  std::snprintf(buf, sizeof buf, "%lld.%02lld", static_cast<long long>(h / 100),
                static_cast<long long>(h % 100));
  return buf;
}

std::string render_json(std::span<const EvaluationReport> reports, std::string_view provenance) {
  Json root = Json::object();
  if (!provenance.empty()) {
    Json config = Json::parse(provenance);
    if (!config.is_object()) throw PreconditionError("provenance must be a JSON object");
    root["config"] = std::move(config);
  }
  for (const EvaluationReport& r : reports) root[std::string(to_string(r.mode))] = report_json(r);
  return root.dump(2, ' ', false, Json::error_handler_t::replace) + "\n";
}

std::vector<EvaluationReport> parse_report_json(std::string_view json) {
  try {
    const Json root = Json::parse(json);
    std::vector<EvaluationReport> reports;
    for (const auto& [key, value] : root.items()) {
      const auto mode = parse_match_mode(key);
      if (!mode) continue;  // "config"
      MatchResult totals;
      for (EntityType t : kEntityTypes) {
        totals.per_class[static_cast<std::size_t>(t)] =
            counts_from(value.at("per_class").at(std::string(to_string(t))));
      }
      reports.push_back(make_report(*mode, std::move(totals)));
    }
    return reports;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("report JSON: ") + e.what());
  }
}

std::string render_table(std::span<const EvaluationReport> reports) {
  constexpr std::size_t kLabel = 11;
  constexpr std::size_t kCell = 8;
  const std::array<std::string, 5> columns = {"PER", "LOC", "WORK", "Avg.", "Micro"};
  const std::string separator = "  |";

  std::ostringstream out;
  out << std::string(kLabel, ' ');
  for (std::size_t i = 0; i < reports.size(); ++i) {
    if (i) out << separator;
    std::string title(to_string(reports[i].mode));
    title[0] = static_cast<char>(title[0] - 'a' + 'A');
    std::string cell = " " + title;
    if (i + 1 < reports.size()) cell = pad_right(cell, kCell * columns.size());
    out << cell;
  }
  out << "\n" << std::string(kLabel, ' ');
  for (std::size_t i = 0; i < reports.size(); ++i) {
    if (i) out << separator;
    for (const auto& c : columns) out << pad_left(c, kCell);
  }
  out << "\n";

  const std::array<std::pair<const char*, Ratio Metrics::*>, 3> rows = {
      std::pair{"Precision", &Metrics::precision}, std::pair{"Recall", &Metrics::recall},
      std::pair{"F1", &Metrics::f1}};
  for (const auto& [name, field] : rows) {
    out << pad_right(name, kLabel);
    for (std::size_t i = 0; i < reports.size(); ++i) {
      if (i) out << separator;
      const EvaluationReport& r = reports[i];
      for (EntityType t : kEntityTypes) out << pad_left(format_percent(r.metrics(t).*field), kCell);
      out << pad_left(format_percent(r.macro.*field), kCell);
      out << pad_left(format_percent(r.micro.*field), kCell);
    }
    out << "\n";
  }
  return out.str();
}

std::string render_csv(std::span<const EvaluationReport> reports) {
  std::string out =
      csv::format_record({"mode", "scope", "precision", "recall", "f1", "tp", "fp", "fn"});
  for (const EvaluationReport& r : reports) {
    const std::string mode(to_string(r.mode));
    const auto row = [&](std::string_view scope, const Metrics& m, const ClassCounts* c) {
      out += csv::format_record(
          {mode, scope, format_percent(m.precision), format_percent(m.recall), format_percent(m.f1),
           c ? std::to_string(c->tp) : "", c ? std::to_string(c->fp) : "",
           c ? std::to_string(c->fn) : ""});
    };
    for (EntityType t : kEntityTypes) row(to_string(t), r.metrics(t), &r.totals.counts(t));
    const ClassCounts pooled = r.totals.pooled();
    row("micro", r.micro, &pooled);
    row("macro", r.macro, nullptr);
  }
  return out;
}

std::string render_report(std::span<const EvaluationReport> reports, ReportFormat format,
                          std::string_view provenance) {
  switch (format) {
    case ReportFormat::kJson: return render_json(reports, provenance);
    case ReportFormat::kTable: return render_table(reports);
    case ReportFormat::kCsv: return render_csv(reports);
  }
  return {};
}

}  // namespace edner
