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

#include "edner/scorer.h"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <tuple>

#include "edner/error.h"

namespace edner {
namespace {

struct Group {
  std::vector<std::size_t> gold;
  std::vector<std::size_t> preds;
};

using GroupKey = std::pair<std::string_view, EntityType>;

void check_gold_disjoint(std::span<const Annotation> gold) {
  std::vector<std::size_t> order(gold.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::tie(gold[a].doc_id, gold[a].start_pos, gold[a].end_pos) <
           std::tie(gold[b].doc_id, gold[b].start_pos, gold[b].end_pos);
  });
  std::size_t reach = 0;
  for (std::size_t k = 1; k < order.size(); ++k) {
    const Annotation& prev = gold[order[reach]];
    const Annotation& cur = gold[order[k]];
    if (prev.doc_id != cur.doc_id) {
      reach = k;
      continue;
    }
    if (cur.start_pos < prev.end_pos) {
      throw ValidationError("overlapping gold spans in '" + cur.doc_id + "': [" +
                            std::to_string(prev.start_pos) + ", " +
                            std::to_string(prev.end_pos) + ") and [" +
                            std::to_string(cur.start_pos) + ", " +
                            std::to_string(cur.end_pos) + ")");
    }
    if (cur.end_pos > prev.end_pos) reach = k;
  }
}

std::map<GroupKey, Group> group_spans(std::span<const Annotation> gold,
                                      std::span<const Prediction> preds) {
  std::map<GroupKey, Group> groups;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    groups[{gold[i].doc_id, gold[i].type}].gold.push_back(i);
  }
  for (std::size_t i = 0; i < preds.size(); ++i) {
    groups[{preds[i].doc_id, preds[i].type}].preds.push_back(i);
  }
  return groups;
}

// Pairs identical spans; marks used entries.
void exact_pass(const Group& g, std::span<const Annotation> gold, std::span<const Prediction> preds,
                std::vector<bool>& gold_used, std::vector<bool>& pred_used,
                std::vector<MatchPair>& pairs) {
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> by_span;
  for (std::size_t gi : g.gold) by_span.emplace(std::pair(gold[gi].start_pos, gold[gi].end_pos), gi);
  for (std::size_t pi : g.preds) {
    auto it = by_span.find({preds[pi].start_pos, preds[pi].end_pos});
    if (it == by_span.end() || gold_used[it->second]) continue;
    gold_used[it->second] = true;
    pred_used[pi] = true;
    pairs.push_back({it->second, pi});
  }
}

void overlap_pass(const Group& g, std::span<const Annotation> gold,
                  std::span<const Prediction> preds, std::vector<bool>& gold_used,
                  std::vector<bool>& pred_used, std::vector<MatchPair>& pairs) {
  struct Candidate {
    std::size_t overlap;
    std::size_t gold;
    std::size_t pred;
  };
  std::vector<Candidate> candidates;
  for (std::size_t gi : g.gold) {
    if (gold_used[gi]) continue;
    for (std::size_t pi : g.preds) {
      if (pred_used[pi]) continue;
      const std::size_t lo = std::max(gold[gi].start_pos, preds[pi].start_pos);
      const std::size_t hi = std::min(gold[gi].end_pos, preds[pi].end_pos);
      if (hi > lo) candidates.push_back({hi - lo, gi, pi});
    }
  }
  std::sort(candidates.begin(), candidates.end(), [&](const Candidate& a, const Candidate& b) {
    const Annotation& ga = gold[a.gold];
    const Annotation& gb = gold[b.gold];
    const Prediction& pa = preds[a.pred];
    const Prediction& pb = preds[b.pred];
    if (a.overlap != b.overlap) return a.overlap > b.overlap;
    // Keys after the starts only make the order total for duplicate-start
    // predictions.
    return std::tie(ga.start_pos, pa.start_pos, ga.end_pos, pa.end_pos, a.pred) <
           std::tie(gb.start_pos, pb.start_pos, gb.end_pos, pb.end_pos, b.pred);
  });
  for (const Candidate& c : candidates) {
    if (gold_used[c.gold] || pred_used[c.pred]) continue;
    gold_used[c.gold] = true;
    pred_used[c.pred] = true;
    pairs.push_back({c.gold, c.pred});
  }
}

MatchResult run_matcher(std::span<const Annotation> gold, std::span<const Prediction> preds,
                        MatchMode mode) {
  check_gold_disjoint(gold);
  std::vector<bool> gold_used(gold.size(), false);
  std::vector<bool> pred_used(preds.size(), false);
  MatchResult result;
  for (const auto& [key, group] : group_spans(gold, preds)) {
    exact_pass(group, gold, preds, gold_used, pred_used, result.pairs);
    if (mode == MatchMode::kFuzzy) {
      overlap_pass(group, gold, preds, gold_used, pred_used, result.pairs);
    }
  }
  std::sort(result.pairs.begin(), result.pairs.end(),
            [](const MatchPair& a, const MatchPair& b) { return a.gold < b.gold; });

  for (const Annotation& a : gold) ++result.per_class[static_cast<std::size_t>(a.type)].fn;
  for (const Prediction& p : preds) ++result.per_class[static_cast<std::size_t>(p.type)].fp;
  for (const MatchPair& m : result.pairs) {
    ClassCounts& c = result.per_class[static_cast<std::size_t>(gold[m.gold].type)];
    ++c.tp;
    --c.fn;
    --c.fp;
  }
  return result;
}

}  // namespace

std::string_view to_string(MatchMode mode) {
  return mode == MatchMode::kExact ? "exact" : "fuzzy";
}

std::optional<MatchMode> parse_match_mode(std::string_view text) {
  if (text == "exact") return MatchMode::kExact;
  if (text == "fuzzy") return MatchMode::kFuzzy;
  return std::nullopt;
}

ClassCounts MatchResult::pooled() const {
  ClassCounts total;
  for (const ClassCounts& c : per_class) total += c;
  return total;
}

MatchResult match_exact(std::span<const Annotation> gold, std::span<const Prediction> preds) {
  return run_matcher(gold, preds, MatchMode::kExact);
}

MatchResult match_fuzzy(std::span<const Annotation> gold, std::span<const Prediction> preds) {
  return run_matcher(gold, preds, MatchMode::kFuzzy);
}

MatchResult match(std::span<const Annotation> gold, std::span<const Prediction> preds,
                  MatchMode mode) {
  return run_matcher(gold, preds, mode);
}

Ratio::Ratio(std::int64_t num, std::int64_t den) {
  if (num < 0 || den < 0) throw PreconditionError("negative ratio");
  if (den == 0) {
    num_ = 0;
    den_ = 1;
    return;
  }
  const std::int64_t g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

std::int64_t Ratio::percent_hundredths() const {
  const __int128 scaled = static_cast<__int128>(num_) * 10000 * 2 + den_;
  return static_cast<std::int64_t>(scaled / (static_cast<__int128>(den_) * 2));
}

Ratio operator+(const Ratio& a, const Ratio& b) {
  const std::int64_t g = std::gcd(a.den_, b.den_);
  const std::int64_t den = a.den_ / g * b.den_;
  return Ratio(a.num_ * (b.den_ / g) + b.num_ * (a.den_ / g), den);
}

Ratio Ratio::divided_by(std::int64_t k) const { return Ratio(num_, den_ * k); }

Metrics prf(std::size_t tp, std::size_t fp, std::size_t fn) {
  const auto n = [](std::size_t v) { return static_cast<std::int64_t>(v); };
  Metrics m;
  m.precision = Ratio(n(tp), n(tp + fp));
  m.recall = Ratio(n(tp), n(tp + fn));
  // 2PR/(P+R) reduces to 2tp/(2tp+fp+fn), and is 0 when tp == 0.
  m.f1 = Ratio(2 * n(tp), 2 * n(tp) + n(fp) + n(fn));
  return m;
}

EvaluationReport make_report(MatchMode mode, MatchResult totals) {
  EvaluationReport report;
  report.mode = mode;
  Ratio p, r, f;
  for (std::size_t i = 0; i < kEntityTypes.size(); ++i) {
    const ClassCounts& c = totals.per_class[i];
    report.per_class[i] = prf(c.tp, c.fp, c.fn);
    p = p + report.per_class[i].precision;
    r = r + report.per_class[i].recall;
    f = f + report.per_class[i].f1;
  }
  const auto k = static_cast<std::int64_t>(kEntityTypes.size());
  report.macro = {p.divided_by(k), r.divided_by(k), f.divided_by(k)};
  const ClassCounts pooled = totals.pooled();
  report.micro = prf(pooled.tp, pooled.fp, pooled.fn);
  report.totals = std::move(totals);
  return report;
}

EvaluationReport evaluate(const Corpus& gold, std::span<const Prediction> preds, MatchMode mode) {
  std::set<std::string> unknown;
  for (const Prediction& p : preds) {
    if (!gold.contains(p.doc_id)) unknown.insert(p.doc_id);
  }
  if (!unknown.empty()) {
    std::string list;
    for (const auto& id : unknown) list += (list.empty() ? "" : ", ") + id;
    throw ValidationError("predictions reference " + std::to_string(unknown.size()) +
                          " unknown doc_id(s): " + list);
  }
  std::vector<std::string> invalid;
  std::size_t invalid_count = 0;
  for (std::size_t i = 0; i < preds.size(); ++i) {
    const ValidationResult v = validate_prediction(*gold.find(preds[i].doc_id), preds[i]);
    if (!v.has_errors()) continue;
    if (++invalid_count <= 20) {
      invalid.push_back("prediction " + std::to_string(i + 1) + ": " + v.summary());
    }
  }
  if (invalid_count > 0) {
    std::string msg = std::to_string(invalid_count) + " invalid prediction(s):";
    for (const auto& line : invalid) msg += "\n  " + line;
    throw ValidationError(msg);
  }
  const std::vector<Prediction> unique = dedupe_predictions(preds);
  return make_report(mode, match(gold.annotations(), unique, mode));
}

}  // namespace edner
