#ifndef TERMBENCH_EVAL_HPP
#define TERMBENCH_EVAL_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "termbench/extract_stat.hpp"
#include "termbench/gold.hpp"

namespace termbench {

struct EvalMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f_measure = 0.0;
};

struct CurvePoint {
  int k = 0;
  EvalMetrics metrics;
};

struct MatchedTerm {
  std::string term;  // normalized extracted form
  std::size_t gold_index = 0;
  std::string gold_en;
  std::string gold_ru;
};

struct AnalyzedTerm {
  int rank = 0;
  std::string term;
  bool matched = false;
  std::optional<std::size_t> gold_index;
};

struct ErrorReport {
  int top_n = 0;
  int matched_count = 0;
  int unmatched_count = 0;
  std::vector<AnalyzedTerm> rows;
};

struct EvalReport {
  std::string method;
  std::string language;
  EvalMetrics metrics;
  std::vector<CurvePoint> curve;
  std::vector<MatchedTerm> matched;
  ErrorReport top_terms;
};

// Set metrics over unique normalized extracted terms vs the gold index
// of the language. Precision is 0 for an empty extraction; an empty
// gold standard is an error (recall has no denominator).
EvalMetrics compute_metrics(const RankedTermList& extracted,
                            const GoldStandard& gold,
                            std::string_view language);

// compute_metrics on the first min(k, size) entries for each cutoff;
// result sorted by k ascending.
std::vector<CurvePoint> metrics_at_k(const RankedTermList& extracted,
                                     const GoldStandard& gold,
                                     std::string_view language,
                                     const std::vector<int>& ks);

const std::vector<int>& default_ks();

ErrorReport error_report(const RankedTermList& extracted,
                         const GoldStandard& gold, std::string_view language,
                         int top_n = 50);

EvalReport evaluate(const RankedTermList& extracted, const GoldStandard& gold,
                    std::string_view language, const std::vector<int>& ks,
                    int top_n = 50);

// TSV import: column 1 = term, optional column 2 = frequency; row order
// is the ranking. Files exported by this toolkit (rank/surface/
// frequency/n header) are recognized and read accordingly. Terms are
// normalized; duplicates keep the lowest rank.
RankedTermList import_ranked_list(const std::string& path,
                                  std::string_view language,
                                  std::string_view method_id,
                                  std::vector<std::string>* warnings = nullptr);
RankedTermList parse_ranked_list(std::string_view text,
                                 std::string_view language,
                                 std::string_view method_id,
                                 const std::string& origin,
                                 std::vector<std::string>* warnings = nullptr);

std::string curve_to_csv(const std::vector<CurvePoint>& curve);
std::string eval_report_to_json(const EvalReport& report);

}  // namespace termbench

#endif
