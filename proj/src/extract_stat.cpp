#include "termbench/extract_stat.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "termbench/error.hpp"
#include "termbench/io_util.hpp"
#include "termbench/parallel.hpp"

namespace termbench {

StopwordPolicy stopword_policy_from_string(std::string_view name) {
  if (name == "boundary") return StopwordPolicy::boundary;
  if (name == "any") return StopwordPolicy::any;
  throw Error("unknown stopword policy: " + std::string(name) +
              " (expected 'boundary' or 'any')");
}

std::string_view to_string(StopwordPolicy policy) {
  switch (policy) {
    case StopwordPolicy::boundary: return "boundary";
    case StopwordPolicy::any: return "any";
  }
  return "boundary";
}

void accumulate_ngrams(CandidateCounts& counts,
                       std::span<const std::string> tokens, int min_n,
                       int max_n) {
  if (min_n < 1 || max_n < min_n) {
    throw Error("invalid n-gram range: min_n=" + std::to_string(min_n) +
                " max_n=" + std::to_string(max_n));
  }
  const auto total = tokens.size();
  for (std::size_t start = 0; start < total; ++start) {
    std::string gram;
    const std::size_t longest =
        std::min(total - start, static_cast<std::size_t>(max_n));
    for (std::size_t len = 1; len <= longest; ++len) {
      if (len > 1) gram += ' ';
      gram += tokens[start + len - 1];
      if (len >= static_cast<std::size_t>(min_n)) ++counts[gram];
    }
  }
}

CandidateCounts generate_ngrams(std::span<const std::string> tokens,
                                int min_n, int max_n) {
  CandidateCounts counts;
  accumulate_ngrams(counts, tokens, min_n, max_n);
  return counts;
}

namespace {

std::vector<std::string> split_gram(const std::string& gram) {
  return io::split(gram, ' ');
}

std::string join_window(const std::vector<std::string>& words,
                        std::size_t start, std::size_t len) {
  std::string out = words[start];
  for (std::size_t i = 1; i < len; ++i) {
    out += ' ';
    out += words[start + i];
  }
  return out;
}

}  // namespace

CandidateCounts filter_stopwords(const CandidateCounts& candidates,
                                 const std::set<std::string>& stopwords,
                                 StopwordPolicy policy) {
  CandidateCounts kept;
  for (const auto& [gram, freq] : candidates) {
    const auto words = split_gram(gram);
    bool rejected = false;
    if (policy == StopwordPolicy::any) {
      rejected = std::any_of(words.begin(), words.end(),
                             [&](const std::string& w) {
                               return stopwords.count(w) != 0;
                             });
    } else {
      rejected = stopwords.count(words.front()) != 0 ||
                 stopwords.count(words.back()) != 0;
    }
    if (!rejected) kept.emplace(gram, freq);
  }
  return kept;
}

CandidateCounts clean_candidates(const CandidateCounts& candidates,
                                 const NormalizationRules& rules) {
  CandidateCounts cleaned;
  for (const auto& [gram, freq] : candidates) {
    std::vector<std::string> out;
    for (const auto& word : split_gram(gram)) {
      auto normalized = normalize_term(word, rules);
      if (!normalized.empty()) out.push_back(std::move(normalized));
    }
    if (out.empty()) continue;
    cleaned[io::join(out, " ")] += freq;
  }
  return cleaned;
}

CandidateCounts prune_nested(const CandidateCounts& candidates) {
  // For each candidate, enumerate its proper contiguous sub-windows and
  // mark any that appear with the same frequency. Window counts are small
  // (max_n is typically <= 4) so this stays near-linear in practice.
  std::set<std::string> doomed;
  for (const auto& [gram, freq] : candidates) {
    const auto words = split_gram(gram);
    if (words.size() < 2) continue;
    for (std::size_t len = 1; len < words.size(); ++len) {
      for (std::size_t start = 0; start + len <= words.size(); ++start) {
        const auto window = join_window(words, start, len);
        auto it = candidates.find(window);
        if (it != candidates.end() && it->second == freq)
          doomed.insert(window);
      }
    }
  }
  CandidateCounts kept;
  for (const auto& [gram, freq] : candidates)
    if (doomed.count(gram) == 0) kept.emplace(gram, freq);
  return kept;
}

RankedTermList rank_candidates(const CandidateCounts& candidates,
                               std::uint64_t min_freq) {
  RankedTermList list;
  for (const auto& [gram, freq] : candidates) {
    if (freq < min_freq) continue;
    TermCandidate candidate;
    candidate.tokens = split_gram(gram);
    candidate.surface = gram;
    candidate.n = static_cast<int>(candidate.tokens.size());
    candidate.frequency = freq;
    list.entries.push_back(std::move(candidate));
  }
  std::sort(list.entries.begin(), list.entries.end(),
            [](const TermCandidate& a, const TermCandidate& b) {
              if (a.frequency != b.frequency) return a.frequency > b.frequency;
              if (a.n != b.n) return a.n > b.n;
              return a.surface < b.surface;
            });
  int rank = 0;
  for (auto& entry : list.entries) entry.rank = ++rank;
  return list;
}

RankedTermList extract_statistical(const Corpus& corpus,
                                   std::string_view language,
                                   const ExtractionConfig& config,
                                   const std::set<std::string>& stopwords,
                                   const NormalizationRules& rules,
                                   int jobs) {
  if (config.min_n < 1 || config.max_n < config.min_n) {
    throw Error("invalid n-gram range: min_n=" + std::to_string(config.min_n) +
                " max_n=" + std::to_string(config.max_n));
  }

  std::vector<const Document*> documents;
  for (const auto& doc : corpus.documents)
    if (doc.language == language) documents.push_back(&doc);

  // Per-document counting runs in parallel; the merge walks documents in
  // corpus order so the result is independent of the job count.
  std::vector<CandidateCounts> per_doc(documents.size());
  parallel_for(documents.size(), jobs, [&](std::size_t i) {
    CandidateCounts counts;
    for (const auto& segment :
         token_segments(documents[i]->text, documents[i]->language))
      accumulate_ngrams(counts, segment, config.min_n, config.max_n);
    per_doc[i] = std::move(counts);
  });

  CandidateCounts merged;
  for (const auto& counts : per_doc)
    for (const auto& [gram, freq] : counts) merged[gram] += freq;

  auto filtered =
      filter_stopwords(merged, stopwords, config.stopword_policy);
  auto cleaned = clean_candidates(filtered, rules);
  if (config.prune_nested) cleaned = prune_nested(cleaned);

  auto list = rank_candidates(cleaned, config.min_freq);
  list.method = "ngram";
  list.language = std::string(language);
  return list;
}

std::string ranked_list_to_tsv(const RankedTermList& list) {
  std::ostringstream out;
  out << "rank\tsurface\tfrequency\tn\n";
  for (const auto& entry : list.entries) {
    out << entry.rank << '\t' << entry.surface << '\t' << entry.frequency
        << '\t' << entry.n << '\n';
  }
  return out.str();
}

std::string ranked_list_to_json(const RankedTermList& list) {
  nlohmann::json doc;
  doc["method"] = list.method;
  doc["language"] = list.language;
  doc["entries"] = nlohmann::json::array();
  for (const auto& entry : list.entries) {
    doc["entries"].push_back({{"rank", entry.rank},
                              {"surface", entry.surface},
                              {"frequency", entry.frequency},
                              {"n", entry.n}});
  }
  return doc.dump(2) + "\n";
}

}  // namespace termbench
