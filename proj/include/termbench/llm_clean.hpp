#ifndef TERMBENCH_LLM_CLEAN_HPP
#define TERMBENCH_LLM_CLEAN_HPP

#include <set>
#include <string>
#include <string_view>

#include "termbench/chat_client.hpp"

namespace termbench {

enum class CleanFlag { ok, over_reduction, hallucination };

std::string_view to_string(CleanFlag flag);

struct CleanResult {
  std::string cleaned;
  double containment = 0.0;  // share of original content words preserved
  double novelty = 0.0;      // share of cleaned content words not in original
  CleanFlag flagged = CleanFlag::ok;
  int retries_used = 0;
};

struct LlmCleanOptions {
  double retention_threshold = 0.6;
  double novelty_threshold = 0.15;
  int retry_limit = 2;
};

// Unique normalized tokens that are not stopwords.
std::set<std::string> content_words(std::string_view text,
                                    std::string_view language,
                                    const std::set<std::string>& stopwords);

// Asks the model to clean `raw` using `tmpl` (placeholder {text}) and
// guards the reply: low containment flags a summary-style over-
// reduction, high novelty flags hallucinated content. Flagged results
// must not be accepted silently by callers.
CleanResult llm_clean(std::string_view raw, std::string_view language,
                      ChatClient& client, const PromptTemplate& tmpl,
                      const LlmCleanOptions& options,
                      const std::set<std::string>& stopwords);

}  // namespace termbench

#endif
