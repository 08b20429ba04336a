#ifndef TERMBENCH_EXTRACT_LLM_HPP
#define TERMBENCH_EXTRACT_LLM_HPP

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "termbench/chat_client.hpp"
#include "termbench/corpus.hpp"
#include "termbench/extract_stat.hpp"

namespace termbench {

struct LlmExtractionConfig {
  int max_rounds = 8;
  int min_new_per_round = 1;
  bool grounding_enabled = true;
  int retry_limit = 2;
  int chunk_size = 2000;  // words of corpus text per prompt
};

struct LlmTerm {
  std::string surface;     // as the model emitted it
  std::string normalized;  // shared normalizer output
  std::optional<std::string> category;
  int round = 0;  // 1-based round the term first appeared in
};

struct LlmTermList {
  std::vector<LlmTerm> terms;  // first-seen order, duplicate-free
  struct {
    std::vector<std::string> not_in_corpus;
    std::vector<std::string> duplicates;
  } discarded;
  int rounds_used = 0;      // summed over chunks
  int unparsed_lines = 0;   // response lines nothing could be read from
  std::vector<std::string> errors;  // aborted chunks etc.
};

struct ParsedTerm {
  std::string term;
  std::optional<std::string> category;
};

struct ParsedResponse {
  std::vector<ParsedTerm> terms;  // response order
  int unparsed_lines = 0;
};

// Fills the template's {text} and {exclusions} placeholders. An empty
// exclusion list renders no exclusion clause at all.
std::string build_extraction_prompt(std::string_view chunk,
                                    const std::vector<std::string>& already_found,
                                    const PromptTemplate& tmpl);

// Reads numbered lists, bullet lists and comma-separated lines. A short
// line ending in ':' is a category heading for the items that follow.
// Prose lines yield nothing and are counted.
ParsedResponse parse_term_response(std::string_view message);

// A term passes iff its lowercased token sequence occurs contiguously
// in at least one document of the language.
std::pair<std::vector<std::string>, std::vector<std::string>> ground_in_corpus(
    const std::vector<std::string>& terms, const Corpus& corpus,
    std::string_view language);

// Splits the corpus text of one language into prompt-sized chunks;
// documents shorter than chunk_size stay whole, longer ones are split
// on word boundaries.
std::vector<std::string> build_chunks(const Corpus& corpus,
                                      std::string_view language,
                                      int chunk_size);

// Iterative extraction: per chunk, prompt -> parse -> normalize ->
// dedupe -> ground, stopping when a round yields fewer than
// min_new_per_round new grounded terms or max_rounds is reached.
LlmTermList extract_llm_terms(const Corpus& corpus, std::string_view language,
                              ChatClient& client,
                              const LlmExtractionConfig& config,
                              const PromptTemplate& tmpl);

// Rank = first-seen emission order (the model leads with what it deems
// most relevant).
RankedTermList ranked_view(const LlmTermList& list, std::string_view language);

std::string llm_terms_to_json(const LlmTermList& list,
                              std::string_view language);

}  // namespace termbench

#endif
