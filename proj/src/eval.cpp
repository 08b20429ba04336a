#include "termbench/eval.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "termbench/error.hpp"
#include "termbench/io_util.hpp"

namespace termbench {

namespace {

using Json = nlohmann::json;

EvalMetrics metrics_over(const std::vector<TermCandidate>& entries,
                         std::size_t limit, const GoldStandard& gold,
                         std::string_view language) {
  const auto& index = gold.index(language);
  if (gold.entries.empty())
    throw Error("empty gold standard: recall is undefined");

  std::set<std::string> unique_terms;
  std::set<std::size_t> matched_entries;
  const auto count = std::min(limit, entries.size());
  for (std::size_t i = 0; i < count; ++i) {
    const auto& term = entries[i].surface;
    unique_terms.insert(term);
    auto it = index.find(term);
    if (it != index.end()) matched_entries.insert(it->second);
  }

  std::size_t hits = 0;
  for (const auto& term : unique_terms)
    if (index.count(term) != 0) ++hits;

  EvalMetrics metrics;
  metrics.precision = unique_terms.empty()
                          ? 0.0
                          : static_cast<double>(hits) / unique_terms.size();
  metrics.recall =
      static_cast<double>(matched_entries.size()) / gold.entries.size();
  const double sum = metrics.precision + metrics.recall;
  metrics.f_measure =
      sum > 0.0 ? 2.0 * metrics.precision * metrics.recall / sum : 0.0;
  return metrics;
}

std::string format_metric(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", value);
  return buf;
}

}  // namespace

EvalMetrics compute_metrics(const RankedTermList& extracted,
                            const GoldStandard& gold,
                            std::string_view language) {
  return metrics_over(extracted.entries, extracted.entries.size(), gold,
                      language);
}

std::vector<CurvePoint> metrics_at_k(const RankedTermList& extracted,
                                     const GoldStandard& gold,
                                     std::string_view language,
                                     const std::vector<int>& ks) {
  auto sorted = ks;
  std::sort(sorted.begin(), sorted.end());
  std::vector<CurvePoint> curve;
  curve.reserve(sorted.size());
  for (const int k : sorted) {
    if (k < 1) throw Error("metrics-at-k cutoffs must be >= 1");
    CurvePoint point;
    point.k = k;
    point.metrics = metrics_over(extracted.entries,
                                 static_cast<std::size_t>(k), gold, language);
    curve.push_back(point);
  }
  return curve;
}

const std::vector<int>& default_ks() {
  static const std::vector<int> ks = {25, 50, 100, 150, 200, 250, 300, 354};
  return ks;
}

ErrorReport error_report(const RankedTermList& extracted,
                         const GoldStandard& gold, std::string_view language,
                         int top_n) {
  if (top_n < 1) throw Error("error report size must be >= 1");
  const auto& index = gold.index(language);
  ErrorReport report;
  report.top_n = top_n;
  const auto count = std::min(extracted.entries.size(),
                              static_cast<std::size_t>(top_n));
  for (std::size_t i = 0; i < count; ++i) {
    const auto& entry = extracted.entries[i];
    AnalyzedTerm row;
    row.rank = entry.rank;
    row.term = entry.surface;
    auto it = index.find(entry.surface);
    if (it != index.end()) {
      row.matched = true;
      row.gold_index = it->second;
      ++report.matched_count;
    } else {
      ++report.unmatched_count;
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

EvalReport evaluate(const RankedTermList& extracted, const GoldStandard& gold,
                    std::string_view language, const std::vector<int>& ks,
                    int top_n) {
  EvalReport report;
  report.method = extracted.method;
  report.language = std::string(language);
  report.metrics = compute_metrics(extracted, gold, language);
  report.curve = metrics_at_k(extracted, gold, language, ks);
  report.top_terms = error_report(extracted, gold, language, top_n);

  const auto& index = gold.index(language);
  std::set<std::string> seen;
  for (const auto& entry : extracted.entries) {
    if (!seen.insert(entry.surface).second) continue;
    auto it = index.find(entry.surface);
    if (it == index.end()) continue;
    MatchedTerm matched;
    matched.term = entry.surface;
    matched.gold_index = it->second;
    matched.gold_en = gold.entries[it->second].en_term;
    matched.gold_ru = gold.entries[it->second].ru_term;
    report.matched.push_back(std::move(matched));
  }
  return report;
}

RankedTermList parse_ranked_list(std::string_view text,
                                 std::string_view language,
                                 std::string_view method_id,
                                 const std::string& origin,
                                 std::vector<std::string>* warnings) {
  RankedTermList list;
  list.method = std::string(method_id);
  list.language = std::string(language);

  const auto rules = NormalizationRules::defaults(language);
  const auto lines = io::split_lines(text);

  // Files written by ranked_list_to_tsv carry their own rank and
  // frequency columns; generic exports put the term first.
  std::size_t start = 0;
  bool own_format = false;
  if (!lines.empty() &&
      io::trim(lines[0]) == "rank\tsurface\tfrequency\tn") {
    own_format = true;
    start = 1;
  }

  std::map<std::string, std::size_t> seen;  // normalized -> entry slot
  for (std::size_t i = start; i < lines.size(); ++i) {
    if (io::trim(lines[i]).empty()) continue;
    const auto cells = io::split(lines[i], '\t');
    std::string_view term;
    std::uint64_t frequency = 0;
    if (own_format) {
      if (cells.size() < 4)
        throw Error(origin + ":" + std::to_string(i + 1) +
                    ": expected 4 columns");
      term = io::trim(cells[1]);
      try {
        frequency = std::stoull(std::string(io::trim(cells[2])));
      } catch (const std::exception&) {
        throw Error(origin + ":" + std::to_string(i + 1) +
                    ": bad frequency value");
      }
    } else {
      term = io::trim(cells[0]);
      if (cells.size() > 1) {
        // Second column is an optional frequency/score; ignore junk.
        try {
          frequency = std::stoull(std::string(io::trim(cells[1])));
        } catch (const std::exception&) {
          frequency = 0;
        }
      }
    }
    if (term.empty()) continue;
    const auto normalized = normalize_term(term, rules);
    if (normalized.empty()) continue;
    auto it = seen.find(normalized);
    if (it != seen.end()) {
      // Duplicate after normalization keeps its best (earliest) rank.
      list.entries[it->second].frequency =
          std::max(list.entries[it->second].frequency, frequency);
      continue;
    }
    TermCandidate entry;
    entry.tokens = io::split(normalized, ' ');
    entry.surface = normalized;
    entry.n = static_cast<int>(entry.tokens.size());
    entry.frequency = frequency;
    entry.rank = static_cast<int>(list.entries.size()) + 1;
    seen.emplace(normalized, list.entries.size());
    list.entries.push_back(std::move(entry));
  }

  if (list.entries.empty() && warnings)
    warnings->push_back(origin + ": no terms imported");
  return list;
}

RankedTermList import_ranked_list(const std::string& path,
                                  std::string_view language,
                                  std::string_view method_id,
                                  std::vector<std::string>* warnings) {
  return parse_ranked_list(io::read_file_utf8(path), language, method_id,
                           path, warnings);
}

std::string curve_to_csv(const std::vector<CurvePoint>& curve) {
  std::ostringstream out;
  out << "k,precision,recall,f_measure\n";
  for (const auto& point : curve) {
    out << point.k << ',' << format_metric(point.metrics.precision) << ','
        << format_metric(point.metrics.recall) << ','
        << format_metric(point.metrics.f_measure) << '\n';
  }
  return out.str();
}

namespace {

Json metrics_to_json(const EvalMetrics& metrics) {
  return Json{{"precision", metrics.precision},
              {"recall", metrics.recall},
              {"f_measure", metrics.f_measure}};
}

}  // namespace

std::string eval_report_to_json(const EvalReport& report) {
  Json doc;
  doc["method"] = report.method;
  doc["language"] = report.language;
  doc["metrics"] = metrics_to_json(report.metrics);

  doc["curve"] = Json::array();
  for (const auto& point : report.curve) {
    auto entry = metrics_to_json(point.metrics);
    entry["k"] = point.k;
    doc["curve"].push_back(std::move(entry));
  }

  doc["matched"] = Json::array();
  for (const auto& match : report.matched) {
    doc["matched"].push_back(Json{{"term", match.term},
                                  {"gold_index", match.gold_index},
                                  {"gold_en", match.gold_en},
                                  {"gold_ru", match.gold_ru}});
  }

  doc["top_terms"] = Json{{"top_n", report.top_terms.top_n},
                          {"matched_count", report.top_terms.matched_count},
                          {"unmatched_count", report.top_terms.unmatched_count},
                          {"rows", Json::array()}};
  for (const auto& row : report.top_terms.rows) {
    Json item{{"rank", row.rank}, {"term", row.term}, {"matched", row.matched}};
    if (row.gold_index) item["gold_index"] = *row.gold_index;
    doc["top_terms"]["rows"].push_back(std::move(item));
  }
  return doc.dump(2) + "\n";
}

}  // namespace termbench
