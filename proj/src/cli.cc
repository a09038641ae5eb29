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

#include "edner/cli.h"

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <numeric>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "edner/corpus_io.h"
#include "edner/csv.h"
#include "edner/corpus_ops.h"
#include "edner/edition.h"
#include "edner/error.h"
#include "edner/finetune_export.h"
#include "edner/postprocess.h"
#include "edner/report.h"
#include "edner/scorer.h"
#include "json.hpp"

namespace edner::cli {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

constexpr std::string_view kVersion = "0.1.0";

// Thrown for bad flag values found after CLI11 has accepted the command line.
class UsageError : public Error {
 public:
  using Error::Error;
};

void print_warnings(std::ostream& err, const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) err << "warning: " << w << "\n";
}

void require_dir(const std::string& path, std::string_view flag) {
  if (!fs::is_directory(path)) {
    throw UsageError(std::string(flag) + ": directory not found: " + path);
  }
}

void require_file(const std::string& path, std::string_view flag) {
  if (!fs::is_regular_file(path)) {
    throw UsageError(std::string(flag) + ": file not found: " + path);
  }
}

// Writes to `path`, or to `out` when the path is empty or "-".
void emit(const std::string& path, std::string_view content, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
  } else {
    write_file(path, content);
  }
}

std::optional<std::uint64_t> parse_u64(std::string_view s) {
  std::uint64_t v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

// "9/10" or "0.9".
std::pair<std::uint64_t, std::uint64_t> parse_ratio(const std::string& text) {
  const auto bad = [&] { return UsageError("--ratio: expected N/D or a decimal, got '" + text + "'"); };
  if (const auto slash = text.find('/'); slash != std::string::npos) {
    const auto n = parse_u64(std::string_view(text).substr(0, slash));
    const auto d = parse_u64(std::string_view(text).substr(slash + 1));
    if (!n || !d) throw bad();
    return {*n, *d};
  }
  const auto dot = text.find('.');
  if (dot == std::string::npos) throw bad();
  const std::string_view whole = std::string_view(text).substr(0, dot);
  const std::string_view frac = std::string_view(text).substr(dot + 1);
  if (frac.empty() || frac.size() > 18) throw bad();
  const auto w = whole.empty() ? std::optional<std::uint64_t>(0) : parse_u64(whole);
  const auto f = parse_u64(frac);
  if (!w || !f) throw bad();
  std::uint64_t den = 1;
  for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
  const std::uint64_t num = *w * den + *f;
  const std::uint64_t g = std::gcd(num, den);
  return {g ? num / g : num, g ? den / g : den};
}

Corpus load_corpus(const std::string& dir, std::ostream& err) {
  std::vector<std::string> warnings;
  Corpus corpus = import_corpus(dir, &warnings);
  print_warnings(err, warnings);
  return corpus;
}

// ---------------------------------------------------------------- ingest

struct IngestArgs {
  std::string pages;
  std::string from_html;
  std::string config;
  std::string out;
  std::optional<std::string> base_url;
  std::optional<int> delay_ms;
  std::optional<int> retries;
  std::optional<int> timeout_ms;
  std::optional<int> jobs;
};

int do_ingest(const IngestArgs& a, std::ostream& err) {
  if (a.pages.empty() == a.from_html.empty()) {
    throw UsageError("ingest: give exactly one of --pages or --from-html");
  }
  if (!a.config.empty()) require_file(a.config, "--config");
  if (!a.from_html.empty()) require_dir(a.from_html, "--from-html");

  IngestConfig config = a.config.empty() ? IngestConfig{} : IngestConfig::load(a.config);
  config.apply_environment();
  if (a.base_url) config.base_url = *a.base_url;
  if (a.delay_ms) config.delay_ms = *a.delay_ms;
  if (a.retries) config.retries = *a.retries;
  if (a.timeout_ms) config.timeout_ms = *a.timeout_ms;
  if (a.jobs) config.parallelism = *a.jobs;
  if (!a.pages.empty()) config.pages = a.pages;

  std::vector<std::string> warnings;
  Corpus corpus;
  if (!a.from_html.empty()) {
    corpus = ingest_html_dir(a.from_html, config, &warnings);
  } else {
    try {
      parse_page_spec(config.pages);
    } catch (const PreconditionError& e) {
      throw UsageError(e.what());
    }
    corpus = ingest_edition(config, http_page_sources(config), &warnings);
  }
  print_warnings(err, warnings);
  export_corpus(corpus, a.out);
  err << "ingested " << corpus.size() << " notes, " << corpus.annotations().size()
      << " annotations into " << a.out << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------- stats

struct NamedCorpus {
  std::string name;
  std::string dir;
};

NamedCorpus parse_named(const std::string& arg) {
  if (const auto eq = arg.find('='); eq != std::string::npos && eq > 0) {
    return {arg.substr(0, eq), arg.substr(eq + 1)};
  }
  fs::path p(arg);
  std::string name = p.filename().string();
  if (name.empty()) name = p.parent_path().filename().string();
  return {name.empty() ? arg : name, arg};
}

std::string format_median(double v) {
  std::ostringstream s;
  s << v;
  return s.str();
}

std::string render_stats(const std::vector<NamedCorpus>& names,
                         const std::vector<CorpusStats>& stats, ReportFormat format) {
  if (format == ReportFormat::kJson) {
    Json root = Json::object();
    for (std::size_t i = 0; i < names.size(); ++i) {
      const CorpusStats& s = stats[i];
      Json j;
      j["path"] = names[i].dir;
      j["documents"] = s.documents;
      j["annotations"] = s.annotations;
      for (EntityType t : kEntityTypes) j[std::string(to_string(t))] = s.count(t);
      j["tokens"] = {{"min", s.min_tokens}, {"median", s.median_tokens}, {"max", s.max_tokens}};
      root[names[i].name] = std::move(j);
    }
    return root.dump(2) + "\n";
  }

  std::vector<std::pair<std::string, std::vector<std::string>>> rows;
  const auto add = [&](std::string label, auto value) {
    std::vector<std::string> cells;
    for (const CorpusStats& s : stats) cells.push_back(value(s));
    rows.emplace_back(std::move(label), std::move(cells));
  };
  for (EntityType t : kEntityTypes) {
    add(std::string(to_string(t)), [t](const CorpusStats& s) { return std::to_string(s.count(t)); });
  }
  add("Total", [](const CorpusStats& s) { return std::to_string(s.annotations); });
  add("Documents", [](const CorpusStats& s) { return std::to_string(s.documents); });
  add("Tokens min", [](const CorpusStats& s) { return std::to_string(s.min_tokens); });
  add("Tokens median", [](const CorpusStats& s) { return format_median(s.median_tokens); });
  add("Tokens max", [](const CorpusStats& s) { return std::to_string(s.max_tokens); });

  if (format == ReportFormat::kCsv) {
    std::vector<std::string> header = {"statistic"};
    for (const auto& n : names) header.push_back(n.name);
    std::string out = csv::format_record(header);
    for (const auto& [label, cells] : rows) {
      std::vector<std::string> rec = {label};
      rec.insert(rec.end(), cells.begin(), cells.end());
      out += csv::format_record(rec);
    }
    return out;
  }

  std::size_t label_width = 0;
  for (const auto& r : rows) label_width = std::max(label_width, r.first.size());
  std::vector<std::size_t> widths;
  for (std::size_t i = 0; i < names.size(); ++i) {
    std::size_t w = names[i].name.size();
    for (const auto& r : rows) w = std::max(w, r.second[i].size());
    widths.push_back(w);
  }
  std::ostringstream out;
  out << std::string(label_width, ' ');
  for (std::size_t i = 0; i < names.size(); ++i) {
    out << "  " << std::string(widths[i] - names[i].name.size(), ' ') << names[i].name;
  }
  out << "\n";
  for (const auto& [label, cells] : rows) {
    out << label << std::string(label_width - label.size(), ' ');
    for (std::size_t i = 0; i < cells.size(); ++i) {
      out << "  " << std::string(widths[i] - cells[i].size(), ' ') << cells[i];
    }
    out << "\n";
  }
  return out.str();
}

int do_stats(const std::vector<std::string>& corpora, const std::string& format_name,
             std::ostream& out, std::ostream& err) {
  const auto format = parse_report_format(format_name);
  if (!format) throw UsageError("--format: unknown format '" + format_name + "'");
  std::vector<NamedCorpus> names;
  for (const auto& c : corpora) {
    names.push_back(parse_named(c));
    require_dir(names.back().dir, "--corpus");
  }
  std::vector<CorpusStats> stats;
  for (const auto& n : names) stats.push_back(corpus_stats(load_corpus(n.dir, err)));
  out << render_stats(names, stats, *format);
  return kExitOk;
}

// ---------------------------------------------------------------- evaluate

struct EvaluateArgs {
  std::string gold;
  std::string pred;
  std::string mode = "both";
  std::string format = "json";
  std::string out;
};

int do_evaluate(const EvaluateArgs& a, std::ostream& out, std::ostream& err) {
  require_dir(a.gold, "--gold");
  require_file(a.pred, "--pred");
  const auto format = parse_report_format(a.format);
  if (!format) throw UsageError("--format: unknown format '" + a.format + "'");
  std::vector<MatchMode> modes;
  if (a.mode == "both") {
    modes = {MatchMode::kExact, MatchMode::kFuzzy};
  } else if (const auto m = parse_match_mode(a.mode)) {
    modes = {*m};
  } else {
    throw UsageError("--mode: expected exact, fuzzy or both, got '" + a.mode + "'");
  }

  const Corpus gold = load_corpus(a.gold, err);
  const std::vector<Prediction> preds = read_predictions(a.pred);
  std::vector<EvaluationReport> reports;
  for (MatchMode m : modes) reports.push_back(evaluate(gold, preds, m));

  Json config;
  config["tool"] = "edner " + std::string(kVersion);
  config["gold"] = a.gold;
  config["pred"] = a.pred;
  config["mode"] = a.mode;
  config["format"] = a.format;
  config["gold_documents"] = gold.size();
  config["gold_annotations"] = gold.annotations().size();
  config["predictions"] = preds.size();
  emit(a.out, render_report(reports, *format, config.dump()), out);
  return kExitOk;
}

std::string build_usage_footer() {
  return "\nExit status: 0 success, 1 data or validation error, 2 usage error.";
}

int dispatch(CLI::App& app, const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err) {
  IngestArgs ingest;
  auto* ingest_cmd = app.add_subcommand("ingest", "Build a corpus from the digital edition");
  ingest_cmd->add_option("--pages", ingest.pages,
                         "Note ids and ranges, e.g. p2721_1,p2700_1..p3000");
  ingest_cmd->add_option("--from-html", ingest.from_html,
                         "Parse saved <note-id>.html pages instead of fetching");
  ingest_cmd->add_option("--config", ingest.config, "JSON ingestion config");
  ingest_cmd->add_option("--out", ingest.out, "Output corpus directory")->required();
  ingest_cmd->add_option("--base-url", ingest.base_url, "Edition base URL");
  ingest_cmd->add_option("--delay-ms", ingest.delay_ms, "Delay between requests")
      ->check(CLI::NonNegativeNumber);
  ingest_cmd->add_option("--retries", ingest.retries, "Retries per request")
      ->check(CLI::NonNegativeNumber);
  ingest_cmd->add_option("--timeout-ms", ingest.timeout_ms, "Request timeout")
      ->check(CLI::PositiveNumber);
  ingest_cmd->add_option("--jobs", ingest.jobs, "Concurrent fetch workers")
      ->check(CLI::PositiveNumber);

  std::vector<std::string> stats_corpora;
  std::string stats_format = "table";
  auto* stats_cmd = app.add_subcommand("stats", "Per-class annotation counts");
  stats_cmd->add_option("--corpus", stats_corpora, "Corpus directory, optionally NAME=DIR")
      ->required();
  stats_cmd->add_option("--format", stats_format, "table, json or csv");

  std::string filter_corpus, filter_out;
  std::size_t max_tokens = 350;
  std::size_t min_annotations = 1;
  auto* filter_cmd = app.add_subcommand("filter", "Keep short, annotated notes");
  filter_cmd->add_option("--corpus", filter_corpus, "Input corpus directory")->required();
  filter_cmd->add_option("--out", filter_out, "Output corpus directory")->required();
  filter_cmd->add_option("--max-tokens", max_tokens, "Maximum whitespace tokens per note");
  filter_cmd->add_option("--min-annotations", min_annotations, "Minimum annotations per note");

  std::string split_corpus, train_out, val_out, ratio = "9/10";
  std::uint64_t seed = 0;
  auto* split_cmd = app.add_subcommand("split", "Seeded train/validation split");
  split_cmd->add_option("--corpus", split_corpus, "Input corpus directory")->required();
  split_cmd->add_option("--train-out", train_out, "Training corpus directory")->required();
  split_cmd->add_option("--val-out", val_out, "Validation corpus directory")->required();
  split_cmd->add_option("--ratio", ratio, "Training fraction, N/D or decimal");
  split_cmd->add_option("--seed", seed, "Shuffle seed");

  std::string pp_corpus, pp_answers, pp_out, pp_diagnostics, pp_mode;
  auto* pp_cmd = app.add_subcommand("postprocess", "Raw model answers to predictions CSV");
  pp_cmd->add_option("--corpus", pp_corpus, "Corpus holding the source documents")->required();
  pp_cmd->add_option("--answers", pp_answers, "Raw answers, JSON Lines")->required();
  pp_cmd->add_option("--out", pp_out, "Predictions CSV (default stdout)");
  pp_cmd->add_option("--diagnostics", pp_diagnostics, "Alignment diagnostics, JSON Lines");
  pp_cmd->add_option("--mode", pp_mode, "Only use records of this prompt mode");

  EvaluateArgs eval;
  auto* eval_cmd = app.add_subcommand("evaluate", "Score predictions against a gold corpus");
  eval_cmd->add_option("--gold", eval.gold, "Gold corpus directory")->required();
  eval_cmd->add_option("--pred", eval.pred, "Predictions CSV")->required();
  eval_cmd->add_option("--mode", eval.mode, "exact, fuzzy or both");
  eval_cmd->add_option("--format", eval.format, "json, table or csv");
  eval_cmd->add_option("--out", eval.out, "Report file (default stdout)");

  std::string ft_corpus, ft_out;
  auto* ft_cmd = app.add_subcommand("export-finetune", "Training JSON for span NER models");
  ft_cmd->add_option("--corpus", ft_corpus, "Corpus directory")->required();
  ft_cmd->add_option("--out", ft_out, "Output file (default stdout)");

  app.require_subcommand(1, 1);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (ingest_cmd->parsed()) return do_ingest(ingest, err);
  if (stats_cmd->parsed()) return do_stats(stats_corpora, stats_format, out, err);

  if (filter_cmd->parsed()) {
    require_dir(filter_corpus, "--corpus");
    const Corpus kept = filter_training_notes(load_corpus(filter_corpus, err), max_tokens,
                                              min_annotations);
    export_corpus(kept, filter_out);
    err << "kept " << kept.size() << " notes\n";
    return kExitOk;
  }

  if (split_cmd->parsed()) {
    require_dir(split_corpus, "--corpus");
    const auto [num, den] = parse_ratio(ratio);
    if (den == 0 || num == 0 || num >= den) {
      throw UsageError("--ratio must lie strictly between 0 and 1");
    }
    const auto [train, val] = split_train_val(load_corpus(split_corpus, err), {num, den, seed});
    export_corpus(train, train_out);
    export_corpus(val, val_out);
    err << "train " << train.size() << " notes, validation " << val.size() << " notes\n";
    return kExitOk;
  }

  if (pp_cmd->parsed()) {
    require_dir(pp_corpus, "--corpus");
    require_file(pp_answers, "--answers");
    std::optional<PromptMode> only;
    if (!pp_mode.empty()) {
      only = parse_prompt_mode(pp_mode);
      if (!only) throw UsageError("--mode: expected generative or extractive");
    }
    const Corpus corpus = load_corpus(pp_corpus, err);
    std::vector<RawAnswer> answers = parse_raw_answers(read_file(pp_answers), pp_answers);
    if (only) std::erase_if(answers, [&](const RawAnswer& r) { return r.mode != *only; });
    const PostprocessResult result = postprocess_answers(corpus, answers);
    emit(pp_out, render_predictions_csv(result.predictions), out);
    if (!pp_diagnostics.empty()) write_file(pp_diagnostics, result.diagnostics_jsonl);
    err << "wrote " << result.predictions.size() << " predictions from " << answers.size()
        << " answers\n";
    return kExitOk;
  }

  if (eval_cmd->parsed()) return do_evaluate(eval, out, err);

  if (ft_cmd->parsed()) {
    require_dir(ft_corpus, "--corpus");
    emit(ft_out, render_finetune_json(load_corpus(ft_corpus, err)), out);
    return kExitOk;
  }
  return kExitUsage;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app("Annotated corpus builder and NER scorer for the Zibaldone digital edition",
               "edner");
  app.footer(build_usage_footer());
  app.set_version_flag("--version", std::string(kVersion));
  try {
    return dispatch(app, args, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace edner::cli
