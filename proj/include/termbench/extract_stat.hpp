#ifndef TERMBENCH_EXTRACT_STAT_HPP
#define TERMBENCH_EXTRACT_STAT_HPP

#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "termbench/corpus.hpp"
#include "termbench/tokenize.hpp"

namespace termbench {

struct TermCandidate {
  std::vector<std::string> tokens;
  std::string surface;  // space-joined normalized form
  int n = 1;
  std::uint64_t frequency = 1;
  int rank = 0;
};

enum class StopwordPolicy { boundary, any };

StopwordPolicy stopword_policy_from_string(std::string_view name);
std::string_view to_string(StopwordPolicy policy);

struct ExtractionConfig {
  int min_n = 1;
  int max_n = 3;
  std::uint64_t min_freq = 2;
  StopwordPolicy stopword_policy = StopwordPolicy::boundary;
  bool prune_nested = true;
};

struct RankedTermList {
  std::string method;
  std::string language;
  std::vector<TermCandidate> entries;
};

// Candidate multiset: space-joined normalized n-gram -> frequency.
// An ordered map keeps every pipeline stage deterministic.
using CandidateCounts = std::map<std::string, std::uint64_t>;

// Counts every contiguous window of min_n..max_n tokens. Windows never
// cross the stream, so callers pass per-sentence/per-document streams.
CandidateCounts generate_ngrams(std::span<const std::string> tokens,
                                int min_n, int max_n);
void accumulate_ngrams(CandidateCounts& counts,
                       std::span<const std::string> tokens, int min_n,
                       int max_n);

CandidateCounts filter_stopwords(const CandidateCounts& candidates,
                                 const std::set<std::string>& stopwords,
                                 StopwordPolicy policy);

// normalize_term per token; empty candidates dropped, duplicates after
// normalization merged with frequencies summed.
CandidateCounts clean_candidates(const CandidateCounts& candidates,
                                 const NormalizationRules& rules);

// Drops a candidate when a strictly longer candidate contains its token
// sequence contiguously at the same frequency.
CandidateCounts prune_nested(const CandidateCounts& candidates);

// Drops frequency < min_freq, sorts by (frequency desc, n desc, surface
// asc) and assigns 1-based ranks.
RankedTermList rank_candidates(const CandidateCounts& candidates,
                               std::uint64_t min_freq);

RankedTermList extract_statistical(const Corpus& corpus,
                                   std::string_view language,
                                   const ExtractionConfig& config,
                                   const std::set<std::string>& stopwords,
                                   const NormalizationRules& rules,
                                   int jobs = 1);

// TSV: rank, surface, frequency, n (with a header line).
std::string ranked_list_to_tsv(const RankedTermList& list);
std::string ranked_list_to_json(const RankedTermList& list);

}  // namespace termbench

#endif
